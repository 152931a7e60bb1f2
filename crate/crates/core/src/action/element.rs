use super::arith::{inv_mod_prime, mul_mod};

/// One group element, tagged by the shape of its payload.
///
/// Each variant is only meaningful together with the [`super::ActionInstance`]
/// it was produced for; the instance validates payloads before use.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Image table of a permutation of `0..n` (symmetric families).
    Perm(Box<[u32]>),
    /// Residue modulo m.
    Cyclic(u64),
    /// Residue vector over (Z_m)^d, coordinate 0 least significant.
    Abelian(Box<[u64]>),
    /// x -> x + rot, or x -> -x + rot when `flip` is set.
    Dihedral { rot: u64, flip: bool },
    /// x -> a x + b with a invertible mod p.
    Affine { a: u64, b: u64 },
    /// Row-major 2x2 matrix [[a, b], [c, d]] over F_p with nonzero
    /// determinant, scaled so its first nonzero entry is 1.
    Projective([u64; 4]),
}

/// Scales a nonsingular matrix so that its first nonzero entry is 1.
pub(crate) fn normalize_projective(m: [u64; 4], p: u64) -> [u64; 4] {
    let lead = m.iter().copied().find(|&v| v != 0).unwrap_or(1);
    let s = inv_mod_prime(lead, p);
    m.map(|v| mul_mod(v, s, p))
}

pub(crate) fn det_mod(m: &[u64; 4], p: u64) -> u64 {
    let ad = mul_mod(m[0], m[3], p);
    let bc = mul_mod(m[1], m[2], p);
    (ad + p - bc) % p
}

/// Mixed-radix codec between ordered r-tuples of distinct points of
/// `0..n` and indices in `0..n(n-1)...(n-r+1)`.
///
/// Digit i is the rank of the i-th coordinate among the values not used by
/// the earlier coordinates, with radix `n - i`; coordinate 0 is the most
/// significant digit.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TupleCodec {
    pub n: u32,
    pub r: u32,
}

impl TupleCodec {
    pub fn encode(&self, tuple: &[u32]) -> u32 {
        let mut idx: u64 = 0;
        for (i, &x) in tuple.iter().enumerate() {
            let smaller_before = tuple[..i].iter().filter(|&&y| y < x).count() as u64;
            idx = idx * (self.n as u64 - i as u64) + (x as u64 - smaller_before);
        }
        idx as u32
    }

    pub fn decode(&self, mut idx: u32, out: &mut [u32]) {
        let r = self.r as usize;
        for i in (0..r).rev() {
            let radix = self.n - i as u32;
            out[i] = idx % radix;
            idx /= radix;
        }
        for i in 1..r {
            // smallest v with v - #{j < i : out[j] <= v} == digit
            let digit = out[i];
            let mut v = digit;
            loop {
                let next = digit + out[..i].iter().filter(|&&u| u <= v).count() as u32;
                if next == v {
                    break;
                }
                v = next;
            }
            out[i] = v;
        }
    }
}
