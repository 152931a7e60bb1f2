//! Seeded randomness and generator multisets.
//!
//! All randomness flows from a 64-bit master seed. Each trial gets its own
//! [`SeededRng`] through [`derive_trial_seed`], so trials can run on any
//! worker in any order and still produce the same draws.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{ActionInstance, GroupElement};
use crate::error::{Error, Result};

/// Deterministic RNG: ChaCha8 keyed by a 64-bit seed.
///
/// The stream depends only on the seed, not on platform or endianness.
#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { seed, inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent child RNG for trial `index`, derived from this RNG's seed.
    pub fn trial(&self, index: u64) -> SeededRng {
        SeededRng::new(derive_trial_seed(self.seed, index))
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer, a bijection on u64.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for trial `index` under `master`.
///
/// For a fixed master this is injective in `index`.
pub fn derive_trial_seed(master: u64, index: u64) -> u64 {
    mix64(mix64(master).wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// An ordered multiset of group elements (the draw order is kept).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMultiset {
    elements: Vec<GroupElement>,
}

impl GeneratorMultiset {
    pub fn new(elements: Vec<GroupElement>) -> Self {
        GeneratorMultiset { elements }
    }

    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<GroupElement> {
        self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.elements.iter()
    }

    /// Concatenation in order, `self` first.
    pub fn concat(&self, other: &GeneratorMultiset) -> GeneratorMultiset {
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&other.elements);
        GeneratorMultiset { elements }
    }
}

impl<'a> IntoIterator for &'a GeneratorMultiset {
    type Item = &'a GroupElement;
    type IntoIter = std::slice::Iter<'a, GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// k i.i.d. uniform elements, i.e. a draw from μ_G(k).
pub fn sample_multiset<R: RngCore + ?Sized>(
    instance: &ActionInstance,
    k: usize,
    rng: &mut R,
) -> Result<GeneratorMultiset> {
    if k == 0 {
        return Err(Error::EmptyGeneratorSet);
    }
    Ok(GeneratorMultiset { elements: (0..k).map(|_| instance.sample_uniform(rng)).collect() })
}

/// A uniformly random k-subset of G (pairwise distinct elements), drawn by
/// resampling duplicates.
pub fn sample_set_distinct<R: RngCore + ?Sized>(
    instance: &ActionInstance,
    k: usize,
    rng: &mut R,
) -> Result<GeneratorMultiset> {
    if k == 0 {
        return Err(Error::EmptyGeneratorSet);
    }
    if let Some(order) = instance.order().exact {
        if k as u64 > order {
            return Err(Error::RetryExhausted { k, attempts: 0 });
        }
    }
    let cap = 64 * k + 1024;
    let mut seen = std::collections::HashSet::with_capacity(k);
    let mut elements = Vec::with_capacity(k);
    let mut attempts = 0;
    while elements.len() < k {
        if attempts == cap {
            return Err(Error::RetryExhausted { k, attempts });
        }
        attempts += 1;
        let g = instance.sample_uniform(rng);
        if seen.insert(g.clone()) {
            elements.push(g);
        }
    }
    Ok(GeneratorMultiset { elements })
}

/// Elementwise inverse, same order.
pub fn invert_multiset(instance: &ActionInstance, a: &GeneratorMultiset) -> Result<GeneratorMultiset> {
    let elements = a.iter().map(|g| instance.invert(g)).collect::<Result<_>>()?;
    Ok(GeneratorMultiset { elements })
}

/// Consecutive slices of a multiset plus the unused tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub parts: Vec<GeneratorMultiset>,
    pub remainder: GeneratorMultiset,
}

/// Cuts `a` into consecutive parts of the given sizes, in draw order.
///
/// Since the draws are i.i.d., each part is itself a μ_G(size) sample and the
/// parts are independent.
pub fn split_multiset(a: &GeneratorMultiset, sizes: &[usize]) -> Result<Split> {
    let total = sizes.iter().try_fold(0usize, |acc, &s| acc.checked_add(s)).unwrap_or(usize::MAX);
    if total > a.k() {
        return Err(Error::SizesExceedK { total, k: a.k() });
    }
    let mut rest = a.elements.as_slice();
    let mut parts = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let (head, tail) = rest.split_at(size);
        parts.push(GeneratorMultiset { elements: head.to_vec() });
        rest = tail;
    }
    Ok(Split { parts, remainder: GeneratorMultiset { elements: rest.to_vec() } })
}
