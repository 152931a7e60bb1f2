/// A subset of `0..degree` backed by a bitmap, with a cached cardinality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    words: Vec<u64>,
    degree: usize,
    count: usize,
}

impl PointSet {
    pub fn new(degree: usize) -> Self {
        PointSet { words: vec![0; degree.div_ceil(64)], degree, count: 0 }
    }

    pub fn full(degree: usize) -> Self {
        let mut words = vec![u64::MAX; degree.div_ceil(64)];
        if degree % 64 != 0 {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (degree % 64)) - 1;
            }
        }
        PointSet { words, degree, count: degree }
    }

    pub fn singleton(degree: usize, x: u32) -> Self {
        let mut s = PointSet::new(degree);
        s.insert(x);
        s
    }

    pub fn from_points(degree: usize, points: impl IntoIterator<Item = u32>) -> Self {
        let mut s = PointSet::new(degree);
        for x in points {
            s.insert(x);
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Cardinality.
    #[inline]
    pub fn len(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.count == self.degree
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let x = x as usize;
        x < self.degree && self.words[x >> 6] & (1 << (x & 63)) != 0
    }

    /// Inserts `x`, returning whether it was new.
    ///
    /// Panics if `x` is outside `0..degree`.
    #[inline]
    pub fn insert(&mut self, x: u32) -> bool {
        let x = x as usize;
        assert!(x < self.degree, "point {x} out of range for degree {}", self.degree);
        let (w, bit) = (x >> 6, 1u64 << (x & 63));
        let fresh = self.words[w] & bit == 0;
        self.words[w] |= bit;
        self.count += fresh as usize;
        fresh
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
        self.count = 0;
    }

    /// Points in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some((wi as u32) << 6 | bit)
            })
        })
    }

    pub fn union_with(&mut self, other: &PointSet) {
        debug_assert_eq!(self.degree, other.degree);
        let mut count = 0usize;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
            count += a.count_ones() as usize;
        }
        self.count = count;
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn recount(&mut self) {
        self.count = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }
}
