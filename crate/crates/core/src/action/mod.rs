//! Group-action families: element arithmetic, the right action on points,
//! and exact uniform sampling.
//!
//! Everything here uses the right-action convention: `compose(g, h)` applies
//! `g` first, so `act(compose(g, h), p) == act(h, act(g, p))`. This matches
//! reading a word `a_1 a_2 ... a_t` as a walk from left to right.

mod arith;
mod element;
mod spec;

use rand::seq::SliceRandom;
use rand::Rng;

pub use element::GroupElement;
pub use spec::{FamilySpec, FAMILY_GRAMMARS};

pub(crate) use arith::is_prime;
pub(crate) use spec::{split_params, take_keys};

use crate::error::{Error, Result};
use arith::{add_mod, gcd, inv_mod_prime, mul_mod, neg_mod};
use element::{det_mod, normalize_projective, TupleCodec};

/// A point of Ω, identified with its index in `0..degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub u32);

impl Point {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// |G|, exact when below 2^63, always with its natural log.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupOrder {
    pub exact: Option<u64>,
    pub ln: f64,
}

impl GroupOrder {
    fn from_u128(v: Option<u128>, ln: f64) -> Self {
        let exact = v.filter(|&v| v < 1u128 << 63).map(|v| v as u64);
        GroupOrder { exact, ln }
    }
}

/// Largest supported degree; points are stored as `u32`.
pub const MAX_DEGREE: usize = u32::MAX as usize;

/// A concrete transitive action G ↻ Ω.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionInstance {
    spec: FamilySpec,
    degree: usize,
    order: GroupOrder,
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

fn factorial_u128(n: usize) -> Option<u128> {
    (2..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidFamilyParams(msg.into())
}

fn checked_degree(v: Option<u128>, what: &str) -> Result<usize> {
    match v {
        Some(0) => Err(invalid(format!("{what}: empty domain"))),
        Some(v) if v <= MAX_DEGREE as u128 => Ok(v as usize),
        _ => Err(invalid(format!("{what}: degree exceeds {MAX_DEGREE}"))),
    }
}

/// Builds an [`ActionInstance`], validating the family parameters.
pub fn build_action(spec: FamilySpec) -> Result<ActionInstance> {
    ActionInstance::new(spec)
}

impl ActionInstance {
    pub fn new(spec: FamilySpec) -> Result<Self> {
        let (degree, order) = match spec {
            FamilySpec::SymmetricNatural { n } => {
                let degree = checked_degree(Some(n as u128), "sym")?;
                (degree, GroupOrder::from_u128(factorial_u128(n), ln_factorial(n)))
            }
            FamilySpec::SymmetricTuples { n, r } => {
                if r == 0 || r > n {
                    return Err(invalid(format!("sym-tuples needs 1 <= r <= n, got n={n}, r={r}")));
                }
                let falling = (0..r).try_fold(1u128, |acc, i| acc.checked_mul((n - i) as u128));
                let degree = checked_degree(falling, "sym-tuples")?;
                (degree, GroupOrder::from_u128(factorial_u128(n), ln_factorial(n)))
            }
            FamilySpec::CyclicRegular { m } => {
                let degree = checked_degree(Some(m as u128), "cyclic")?;
                (degree, GroupOrder::from_u128(Some(m as u128), (m as f64).ln()))
            }
            FamilySpec::AbelianPower { m, d } => {
                if d == 0 {
                    return Err(invalid("abelian needs d >= 1"));
                }
                let size = (0..d).try_fold(1u128, |acc, _| acc.checked_mul(m as u128));
                let degree = checked_degree(size, "abelian")?;
                (degree, GroupOrder::from_u128(size, d as f64 * (m as f64).ln()))
            }
            FamilySpec::Dihedral { m } => {
                let degree = checked_degree(Some(m as u128), "dihedral")?;
                let order = 2 * m as u128;
                (degree, GroupOrder::from_u128(Some(order), (order as f64).ln()))
            }
            FamilySpec::AffinePrime { p } => {
                if !is_prime(p) {
                    return Err(invalid(format!("affine needs a prime p, got {p}")));
                }
                let degree = checked_degree(Some(p as u128), "affine")?;
                let order = p as u128 * (p as u128 - 1);
                (degree, GroupOrder::from_u128(Some(order), (p as f64).ln() + ((p - 1) as f64).ln()))
            }
            FamilySpec::ProjectiveLine { p } => {
                if !is_prime(p) {
                    return Err(invalid(format!("proj needs a prime p, got {p}")));
                }
                let degree = checked_degree(Some(p as u128 + 1), "proj")?;
                let p128 = p as u128;
                let order = p128.checked_mul(p128 * p128 - 1);
                let pf = p as f64;
                (degree, GroupOrder::from_u128(order, pf.ln() + (pf - 1.0).ln() + (pf + 1.0).ln()))
            }
        };
        Ok(ActionInstance { spec, degree, order })
    }

    pub fn spec(&self) -> FamilySpec {
        self.spec
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> GroupOrder {
        self.order
    }

    /// Stabilizer order |G|/n, when |G| is known exactly.
    pub fn stabilizer_order(&self) -> Option<u64> {
        let order = self.order.exact?;
        debug_assert_eq!(order % self.degree as u64, 0);
        Some(order / self.degree as u64)
    }

    fn mismatch(&self) -> Error {
        Error::FamilyMismatch { expected: self.spec.to_string() }
    }

    /// Checks that `g` is a valid payload for this family.
    pub fn validate(&self, g: &GroupElement) -> Result<()> {
        let ok = match (self.spec, g) {
            (
                FamilySpec::SymmetricNatural { n } | FamilySpec::SymmetricTuples { n, .. },
                GroupElement::Perm(t),
            ) => t.len() == n,
            (FamilySpec::CyclicRegular { m }, GroupElement::Cyclic(v)) => *v < m,
            (FamilySpec::AbelianPower { m, d }, GroupElement::Abelian(v)) => {
                v.len() == d as usize && v.iter().all(|&x| x < m)
            }
            (FamilySpec::Dihedral { m }, GroupElement::Dihedral { rot, .. }) => *rot < m,
            (FamilySpec::AffinePrime { p }, GroupElement::Affine { a, b }) => {
                *a < p && *b < p && gcd(*a, p) == 1
            }
            (FamilySpec::ProjectiveLine { p }, GroupElement::Projective(mat)) => {
                mat.iter().all(|&x| x < p)
                    && det_mod(mat, p) != 0
                    && normalize_projective(*mat, p) == *mat
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch())
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self.spec {
            FamilySpec::SymmetricNatural { n } | FamilySpec::SymmetricTuples { n, .. } => {
                GroupElement::Perm((0..n as u32).collect())
            }
            FamilySpec::CyclicRegular { .. } => GroupElement::Cyclic(0),
            FamilySpec::AbelianPower { d, .. } => GroupElement::Abelian(vec![0; d as usize].into()),
            FamilySpec::Dihedral { .. } => GroupElement::Dihedral { rot: 0, flip: false },
            FamilySpec::AffinePrime { .. } => GroupElement::Affine { a: 1, b: 0 },
            FamilySpec::ProjectiveLine { .. } => GroupElement::Projective([1, 0, 0, 1]),
        }
    }

    /// Image of `p` under the right action of `g`.
    pub fn act(&self, g: &GroupElement, p: Point) -> Result<Point> {
        if p.index() >= self.degree {
            return Err(Error::PointOutOfRange { point: p.0 as u64, degree: self.degree });
        }
        self.validate(g)?;
        Ok(Point(self.act_unchecked(g, p.0)))
    }

    /// Right action without validation; `g` must belong to this family.
    pub(crate) fn act_unchecked(&self, g: &GroupElement, x: u32) -> u32 {
        match (self.spec, g) {
            (FamilySpec::SymmetricNatural { .. }, GroupElement::Perm(t)) => t[x as usize],
            (FamilySpec::SymmetricTuples { n, r }, GroupElement::Perm(t)) => {
                let codec = TupleCodec { n: n as u32, r: r as u32 };
                let mut buf = vec![0u32; r];
                codec.decode(x, &mut buf);
                for v in buf.iter_mut() {
                    *v = t[*v as usize];
                }
                codec.encode(&buf)
            }
            (FamilySpec::CyclicRegular { m }, GroupElement::Cyclic(v)) => add_mod(x as u64, *v, m) as u32,
            (FamilySpec::AbelianPower { m, .. }, GroupElement::Abelian(v)) => {
                let mut rest = x as u64;
                let mut out = 0u64;
                let mut scale = 1u64;
                for &shift in v.iter() {
                    let digit = rest % m;
                    rest /= m;
                    out += ((digit + shift) % m) * scale;
                    scale = scale.wrapping_mul(m);
                }
                out as u32
            }
            (FamilySpec::Dihedral { m }, GroupElement::Dihedral { rot, flip }) => {
                let x = x as u64;
                let base = if *flip { neg_mod(x, m) } else { x };
                add_mod(base, *rot, m) as u32
            }
            (FamilySpec::AffinePrime { p }, GroupElement::Affine { a, b }) => {
                add_mod(mul_mod(*a, x as u64, p), *b, p) as u32
            }
            (FamilySpec::ProjectiveLine { p }, GroupElement::Projective(mat)) => {
                let [a, b, c, d] = *mat;
                // row vector (x, 1), or (1, 0) for the point at infinity
                let (u, v) = if x as u64 == p {
                    (a, b)
                } else {
                    let x = x as u64;
                    (add_mod(mul_mod(x, a, p), c, p), add_mod(mul_mod(x, b, p), d, p))
                };
                if v == 0 {
                    p as u32
                } else {
                    mul_mod(u, inv_mod_prime(v, p), p) as u32
                }
            }
            _ => unreachable!("element does not belong to {}", self.spec),
        }
    }

    /// The product `gh`: apply `g`, then `h`.
    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.validate(g)?;
        self.validate(h)?;
        Ok(match (self.spec, g, h) {
            (_, GroupElement::Perm(g), GroupElement::Perm(h)) => {
                GroupElement::Perm(g.iter().map(|&x| h[x as usize]).collect())
            }
            (FamilySpec::CyclicRegular { m }, GroupElement::Cyclic(a), GroupElement::Cyclic(b)) => {
                GroupElement::Cyclic(add_mod(*a, *b, m))
            }
            (FamilySpec::AbelianPower { m, .. }, GroupElement::Abelian(a), GroupElement::Abelian(b)) => {
                GroupElement::Abelian(a.iter().zip(b.iter()).map(|(&x, &y)| add_mod(x, y, m)).collect())
            }
            (
                FamilySpec::Dihedral { m },
                GroupElement::Dihedral { rot: r1, flip: f1 },
                GroupElement::Dihedral { rot: r2, flip: f2 },
            ) => {
                // h(g(x)) = s2 (s1 x + r1) + r2
                let carried = if *f2 { neg_mod(*r1, m) } else { *r1 };
                GroupElement::Dihedral { rot: add_mod(carried, *r2, m), flip: f1 ^ f2 }
            }
            (
                FamilySpec::AffinePrime { p },
                GroupElement::Affine { a: a1, b: b1 },
                GroupElement::Affine { a: a2, b: b2 },
            ) => GroupElement::Affine {
                a: mul_mod(*a2, *a1, p),
                b: add_mod(mul_mod(*a2, *b1, p), *b2, p),
            },
            (FamilySpec::ProjectiveLine { p }, GroupElement::Projective(x), GroupElement::Projective(y)) => {
                let e = |i: usize, j: usize| {
                    add_mod(mul_mod(x[2 * i], y[j], p), mul_mod(x[2 * i + 1], y[2 + j], p), p)
                };
                GroupElement::Projective(normalize_projective([e(0, 0), e(0, 1), e(1, 0), e(1, 1)], p))
            }
            _ => return Err(self.mismatch()),
        })
    }

    pub fn invert(&self, g: &GroupElement) -> Result<GroupElement> {
        self.validate(g)?;
        Ok(match (self.spec, g) {
            (_, GroupElement::Perm(t)) => {
                let mut inv = vec![0u32; t.len()];
                for (i, &x) in t.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                GroupElement::Perm(inv.into())
            }
            (FamilySpec::CyclicRegular { m }, GroupElement::Cyclic(v)) => GroupElement::Cyclic(neg_mod(*v, m)),
            (FamilySpec::AbelianPower { m, .. }, GroupElement::Abelian(v)) => {
                GroupElement::Abelian(v.iter().map(|&x| neg_mod(x, m)).collect())
            }
            (FamilySpec::Dihedral { m }, GroupElement::Dihedral { rot, flip }) => {
                // y = s x + r  =>  x = s y - s r
                let rot = if *flip { *rot } else { neg_mod(*rot, m) };
                GroupElement::Dihedral { rot, flip: *flip }
            }
            (FamilySpec::AffinePrime { p }, GroupElement::Affine { a, b }) => {
                let ai = inv_mod_prime(*a, p);
                GroupElement::Affine { a: ai, b: neg_mod(mul_mod(ai, *b, p), p) }
            }
            (FamilySpec::ProjectiveLine { p }, GroupElement::Projective([a, b, c, d])) => {
                GroupElement::Projective(normalize_projective([*d, neg_mod(*b, p), neg_mod(*c, p), *a], p))
            }
            _ => return Err(self.mismatch()),
        })
    }

    /// Draws one element exactly uniformly from G.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        self.sample_counting(rng).0
    }

    /// Like [`Self::sample_uniform`], also returning the number of draws the
    /// projective rejection loop needed (1 for the other families).
    pub(crate) fn sample_counting<R: Rng + ?Sized>(&self, rng: &mut R) -> (GroupElement, u32) {
        let el = match self.spec {
            FamilySpec::SymmetricNatural { n } | FamilySpec::SymmetricTuples { n, .. } => {
                let mut t: Vec<u32> = (0..n as u32).collect();
                t.shuffle(rng);
                GroupElement::Perm(t.into())
            }
            FamilySpec::CyclicRegular { m } => GroupElement::Cyclic(rng.random_range(0..m)),
            FamilySpec::AbelianPower { m, d } => {
                GroupElement::Abelian((0..d).map(|_| rng.random_range(0..m)).collect())
            }
            FamilySpec::Dihedral { m } => GroupElement::Dihedral {
                rot: rng.random_range(0..m),
                flip: rng.random_bool(0.5),
            },
            FamilySpec::AffinePrime { p } => GroupElement::Affine {
                a: rng.random_range(1..p),
                b: rng.random_range(0..p),
            },
            FamilySpec::ProjectiveLine { p } => {
                // Uniform over GL(2, p), then canonical scalar class: every
                // PGL class has exactly p - 1 preimages, so this is uniform.
                let mut attempts = 0;
                loop {
                    attempts += 1;
                    let m: [u64; 4] = std::array::from_fn(|_| rng.random_range(0..p));
                    if det_mod(&m, p) != 0 {
                        return (GroupElement::Projective(normalize_projective(m, p)), attempts);
                    }
                }
            }
        };
        (el, 1)
    }

    /// Permutation table of `g` on Ω: `table[x] = act(g, x)`.
    pub fn materialize(&self, g: &GroupElement) -> Result<Vec<u32>> {
        self.validate(g)?;
        let n = self.degree;
        Ok(match (self.spec, g) {
            (FamilySpec::SymmetricNatural { .. }, GroupElement::Perm(t)) => t.to_vec(),
            (FamilySpec::SymmetricTuples { n: base, r }, GroupElement::Perm(t)) => {
                let codec = TupleCodec { n: base as u32, r: r as u32 };
                let mut buf = vec![0u32; r];
                (0..n as u32)
                    .map(|x| {
                        codec.decode(x, &mut buf);
                        for v in buf.iter_mut() {
                            *v = t[*v as usize];
                        }
                        codec.encode(&buf)
                    })
                    .collect()
            }
            (FamilySpec::CyclicRegular { m }, GroupElement::Cyclic(v)) => {
                let v = *v as usize;
                let m = m as usize;
                (0..m).map(|x| ((x + v) % m) as u32).collect()
            }
            (FamilySpec::AbelianPower { m, .. }, GroupElement::Abelian(v)) => {
                // coordinates are independent: grow the table one digit at a time
                let mut table: Vec<u32> = vec![0];
                let mut scale = 1u64;
                for &shift in v.iter() {
                    let prev = std::mem::take(&mut table);
                    table.reserve(prev.len() * m as usize);
                    for digit in 0..m {
                        let add = ((digit + shift) % m * scale) as u32;
                        table.extend(prev.iter().map(|&t| t + add));
                    }
                    scale *= m;
                }
                table
            }
            _ => (0..n as u32).map(|x| self.act_unchecked(g, x)).collect(),
        })
    }

    /// Every element of G exactly once, if |G| fits in `budget`.
    pub fn enumerate_group(&self, budget: u64) -> Result<Vec<GroupElement>> {
        let order = match self.order.exact {
            Some(o) if o <= budget => o,
            Some(o) => return Err(Error::BudgetExceeded { required: o, budget }),
            None => return Err(Error::BudgetExceeded { required: u64::MAX, budget }),
        };
        let mut out = Vec::with_capacity(order as usize);
        match self.spec {
            FamilySpec::SymmetricNatural { n } | FamilySpec::SymmetricTuples { n, .. } => {
                let mut perm: Vec<u32> = (0..n as u32).collect();
                loop {
                    out.push(GroupElement::Perm(perm.clone().into()));
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
            FamilySpec::CyclicRegular { m } => out.extend((0..m).map(GroupElement::Cyclic)),
            FamilySpec::AbelianPower { m, d } => {
                let mut v = vec![0u64; d as usize];
                for _ in 0..order {
                    out.push(GroupElement::Abelian(v.clone().into()));
                    for x in v.iter_mut() {
                        *x += 1;
                        if *x < m {
                            break;
                        }
                        *x = 0;
                    }
                }
            }
            FamilySpec::Dihedral { m } => {
                for flip in [false, true] {
                    out.extend((0..m).map(|rot| GroupElement::Dihedral { rot, flip }));
                }
            }
            FamilySpec::AffinePrime { p } => {
                for a in 1..p {
                    out.extend((0..p).map(|b| GroupElement::Affine { a, b }));
                }
            }
            FamilySpec::ProjectiveLine { p } => {
                // normal forms: [[1, b], [c, d]] with d != bc, or [[0, 1], [c, d]] with c != 0
                for b in 0..p {
                    for c in 0..p {
                        for d in 0..p {
                            if d != mul_mod(b, c, p) {
                                out.push(GroupElement::Projective([1, b, c, d]));
                            }
                        }
                    }
                }
                for c in 1..p {
                    out.extend((0..p).map(|d| GroupElement::Projective([0, 1, c, d])));
                }
            }
        }
        debug_assert_eq!(out.len() as u64, order);
        Ok(out)
    }
}

/// Advances to the next permutation in lexicographic order.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn inst(s: &str) -> ActionInstance {
        build_action(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn build_examples() {
        let s5 = inst("sym:n=5");
        assert_eq!(s5.degree(), 5);
        assert_eq!(s5.order().exact, Some(120));
        assert_eq!(inst("sym-tuples:n=5,r=2").degree(), 20);
        assert!(matches!(
            build_action(FamilySpec::AffinePrime { p: 4 }),
            Err(Error::InvalidFamilyParams(_))
        ));
        assert!(build_action(FamilySpec::ProjectiveLine { p: 9 }).is_err());
        assert!(build_action(FamilySpec::SymmetricTuples { n: 3, r: 4 }).is_err());
        assert!(build_action(FamilySpec::CyclicRegular { m: 0 }).is_err());
        assert!(build_action(FamilySpec::AbelianPower { m: 2, d: 40 }).is_err());
        assert_eq!(inst("proj:p=7").order().exact, Some(7 * 48));
        assert_eq!(inst("proj:p=7").degree(), 8);
        assert_eq!(inst("dihedral:m=5").order().exact, Some(10));
        assert_eq!(inst("dihedral:m=5").degree(), 5);
        assert_eq!(inst("abelian:m=3,d=4").degree(), 81);
        // 21! no longer fits below 2^63
        let s21 = inst("sym:n=21");
        assert_eq!(s21.order().exact, None);
        assert!((s21.order().ln - ln_factorial(21)).abs() < 1e-9);
        assert_eq!(inst("sym:n=20").order().exact, Some(2_432_902_008_176_640_000));
    }

    #[test]
    fn act_examples() {
        let s4 = inst("sym:n=4");
        let g = GroupElement::Perm(vec![1, 2, 3, 0].into());
        assert_eq!(s4.act(&g, Point(3)).unwrap(), Point(0));
        let c6 = inst("cyclic:m=6");
        assert_eq!(c6.act(&GroupElement::Cyclic(2), Point(5)).unwrap(), Point(1));
        let p5 = inst("proj:p=5");
        assert_eq!(p5.act(&p5.identity(), Point(3)).unwrap(), Point(3));
        assert!(matches!(
            c6.act(&GroupElement::Cyclic(7), Point(0)),
            Err(Error::FamilyMismatch { .. })
        ));
        assert!(c6.act(&GroupElement::Affine { a: 1, b: 0 }, Point(0)).is_err());
        assert!(c6.act(&GroupElement::Cyclic(1), Point(6)).is_err());
    }

    #[test]
    fn compose_and_invert_examples() {
        let c6 = inst("cyclic:m=6");
        let plus = |v| GroupElement::Cyclic(v);
        assert_eq!(c6.compose(&plus(2), &plus(3)).unwrap(), plus(5));
        assert_eq!(c6.compose(&c6.identity(), &plus(4)).unwrap(), plus(4));
        assert_eq!(c6.invert(&plus(2)).unwrap(), plus(4));
        assert_eq!(c6.invert(&c6.identity()).unwrap(), c6.identity());

        let s3 = inst("sym:n=3");
        let g = GroupElement::Perm(vec![1, 0, 2].into());
        let h = GroupElement::Perm(vec![0, 2, 1].into());
        assert_eq!(s3.compose(&g, &h).unwrap(), GroupElement::Perm(vec![2, 0, 1].into()));

        let a7 = inst("affine:p=7");
        let g = GroupElement::Affine { a: 3, b: 1 };
        let gi = a7.invert(&g).unwrap();
        assert_eq!(gi, GroupElement::Affine { a: 5, b: 2 });
        assert_eq!(a7.compose(&g, &gi).unwrap(), a7.identity());
    }

    #[test]
    fn materialize_examples() {
        let c4 = inst("cyclic:m=4");
        assert_eq!(c4.materialize(&GroupElement::Cyclic(1)).unwrap(), vec![1, 2, 3, 0]);
        assert_eq!(c4.materialize(&c4.identity()).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn materialize_matches_act_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in [
            "sym:n=9", "sym-tuples:n=6,r=3", "cyclic:m=17", "abelian:m=3,d=4", "abelian:m=2,d=6",
            "abelian:m=5,d=1", "dihedral:m=11", "affine:p=13", "proj:p=11",
        ] {
            let a = inst(s);
            for _ in 0..10 {
                let g = a.sample_uniform(&mut rng);
                let t = a.materialize(&g).unwrap();
                for x in 0..a.degree() as u32 {
                    assert_eq!(t[x as usize], a.act_unchecked(&g, x), "{s} at {x}");
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(inst("cyclic:m=6").enumerate_group(10).unwrap().len(), 6);
        assert_eq!(inst("sym:n=4").enumerate_group(30).unwrap().len(), 24);
        assert!(matches!(
            inst("sym:n=8").enumerate_group(1000),
            Err(Error::BudgetExceeded { required: 40320, .. })
        ));
        assert!(matches!(
            inst("sym:n=30").enumerate_group(1000),
            Err(Error::BudgetExceeded { required: u64::MAX, .. })
        ));
    }

    #[test]
    fn enumeration_lists_distinct_valid_elements() {
        for s in [
            "sym:n=5", "sym-tuples:n=4,r=2", "cyclic:m=9", "abelian:m=3,d=3", "dihedral:m=7",
            "affine:p=11", "proj:p=5", "proj:p=2",
        ] {
            let a = inst(s);
            let all = a.enumerate_group(10_000).unwrap();
            assert_eq!(all.len() as u64, a.order().exact.unwrap(), "{s}");
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len(), "{s} has duplicates");
            for g in &all {
                a.validate(g).unwrap();
            }
        }
    }

    #[test]
    fn projective_acts_as_mobius() {
        // x -> (a x + c) / (b x + d) with [[a, b], [c, d]]
        let p5 = inst("proj:p=5");
        let g = GroupElement::Projective([1, 1, 2, 3]);
        // x = 1: (1 + 2) / (1 + 3) = 3 / 4 = 3 * 4 = 12 = 2 mod 5
        assert_eq!(p5.act(&g, Point(1)).unwrap(), Point(2));
        // x = 1 makes b x + d = 4 != 0; x = 2: 2 + 3 = 0, maps to infinity
        assert_eq!(p5.act(&g, Point(2)).unwrap(), Point(5));
        // infinity -> a / b = 1
        assert_eq!(p5.act(&g, Point(5)).unwrap(), Point(1));
    }

    #[test]
    fn projective_rejection_rate() {
        // a random 2x2 matrix over F_3 is invertible with probability (1 - 1/3)(1 - 1/9)
        let p3 = inst("proj:p=3");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 100_000;
        let total: u64 = (0..draws).map(|_| p3.sample_counting(&mut rng).1 as u64).sum();
        let accept = 16.0 / 27.0;
        let mean = total as f64 / draws as f64;
        let se = ((1.0 - accept) / (accept * accept) / draws as f64).sqrt();
        assert!((mean - 1.0 / accept).abs() < 5.0 * se, "mean attempts {mean}");
    }
}
