use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A transitive action family together with its parameters.
///
/// String form follows `name:key=val[,key=val]*`, e.g. `sym:n=30`,
/// `sym-tuples:n=10,r=2`, `abelian:m=2,d=12`, `proj:p=1009`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilySpec {
    /// Sym(n) on n points.
    SymmetricNatural { n: usize },
    /// Sym(n) on ordered r-tuples of distinct points.
    SymmetricTuples { n: usize, r: usize },
    /// Z_m acting on itself by translation.
    CyclicRegular { m: u64 },
    /// (Z_m)^d acting on itself by translation.
    AbelianPower { m: u64, d: u32 },
    /// The dihedral group of order 2m on the m vertices of an m-gon.
    Dihedral { m: u64 },
    /// x -> ax + b over F_p.
    AffinePrime { p: u64 },
    /// PGL(2, p) on the p + 1 points of the projective line.
    ProjectiveLine { p: u64 },
}

/// Family names with their parameter grammars, in `info` order.
pub const FAMILY_GRAMMARS: [(&str, &str, &str); 7] = [
    ("sym", "sym:n=<N>", "symmetric group on N points (natural action)"),
    ("sym-tuples", "sym-tuples:n=<N>,r=<R>", "symmetric group on ordered R-tuples of distinct points"),
    ("cyclic", "cyclic:m=<M>", "cyclic group Z_M, regular action"),
    ("abelian", "abelian:m=<M>,d=<D>", "abelian group (Z_M)^D, regular action"),
    ("dihedral", "dihedral:m=<M>", "dihedral group of order 2M on the vertices of an M-gon"),
    ("affine", "affine:p=<P>", "affine group AGL(1,P) on F_P, P prime"),
    ("proj", "proj:p=<P>", "PGL(2,P) on the projective line, P prime"),
];

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::SymmetricNatural { .. } => "sym",
            FamilySpec::SymmetricTuples { .. } => "sym-tuples",
            FamilySpec::CyclicRegular { .. } => "cyclic",
            FamilySpec::AbelianPower { .. } => "abelian",
            FamilySpec::Dihedral { .. } => "dihedral",
            FamilySpec::AffinePrime { .. } => "affine",
            FamilySpec::ProjectiveLine { .. } => "proj",
        }
    }

    /// True when the action is regular, i.e. the Schreier graph is a Cayley graph.
    pub fn is_regular(&self) -> bool {
        matches!(
            self,
            FamilySpec::CyclicRegular { .. } | FamilySpec::AbelianPower { .. }
        )
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::SymmetricNatural { n } => write!(f, "sym:n={n}"),
            FamilySpec::SymmetricTuples { n, r } => write!(f, "sym-tuples:n={n},r={r}"),
            FamilySpec::CyclicRegular { m } => write!(f, "cyclic:m={m}"),
            FamilySpec::AbelianPower { m, d } => write!(f, "abelian:m={m},d={d}"),
            FamilySpec::Dihedral { m } => write!(f, "dihedral:m={m}"),
            FamilySpec::AffinePrime { p } => write!(f, "affine:p={p}"),
            FamilySpec::ProjectiveLine { p } => write!(f, "proj:p={p}"),
        }
    }
}

/// Splits `name:key=val,...` into the name and its key/value pairs.
pub(crate) fn split_params(s: &str) -> Result<(&str, Vec<(&str, u64)>)> {
    let bad = || Error::FamilyParse(s.to_string());
    let (name, rest) = match s.split_once(':') {
        Some((name, rest)) => (name, Some(rest)),
        None => (s, None),
    };
    if name.is_empty() {
        return Err(bad());
    }
    let mut params = Vec::new();
    if let Some(rest) = rest {
        for pair in rest.split(',') {
            let (k, v) = pair.split_once('=').ok_or_else(bad)?;
            let v: u64 = v.trim().parse().map_err(|_| bad())?;
            let k = k.trim();
            if k.is_empty() || params.iter().any(|(seen, _)| *seen == k) {
                return Err(bad());
            }
            params.push((k, v));
        }
    }
    Ok((name.trim(), params))
}

/// Pulls the required keys out of `params`, rejecting extra or missing ones.
pub(crate) fn take_keys<const N: usize>(
    src: &str,
    params: &[(&str, u64)],
    keys: [&str; N],
) -> Result<[u64; N]> {
    if params.len() != N {
        return Err(Error::FamilyParse(src.to_string()));
    }
    let mut out = [0u64; N];
    for (slot, key) in out.iter_mut().zip(keys) {
        *slot = params
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::FamilyParse(src.to_string()))?;
    }
    Ok(out)
}

fn to_usize(v: u64) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = split_params(s)?;
        Ok(match name {
            "sym" => {
                let [n] = take_keys(s, &params, ["n"])?;
                FamilySpec::SymmetricNatural { n: to_usize(n) }
            }
            "sym-tuples" => {
                let [n, r] = take_keys(s, &params, ["n", "r"])?;
                FamilySpec::SymmetricTuples { n: to_usize(n), r: to_usize(r) }
            }
            "cyclic" => {
                let [m] = take_keys(s, &params, ["m"])?;
                FamilySpec::CyclicRegular { m }
            }
            "abelian" => {
                let [m, d] = take_keys(s, &params, ["m", "d"])?;
                let d = u32::try_from(d).map_err(|_| Error::FamilyParse(s.to_string()))?;
                FamilySpec::AbelianPower { m, d }
            }
            "dihedral" => {
                let [m] = take_keys(s, &params, ["m"])?;
                FamilySpec::Dihedral { m }
            }
            "affine" => {
                let [p] = take_keys(s, &params, ["p"])?;
                FamilySpec::AffinePrime { p }
            }
            "proj" => {
                let [p] = take_keys(s, &params, ["p"])?;
                FamilySpec::ProjectiveLine { p }
            }
            _ => return Err(Error::FamilyParse(s.to_string())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_documented_form() {
        let cases = [
            ("sym:n=30", FamilySpec::SymmetricNatural { n: 30 }),
            ("sym-tuples:n=10,r=2", FamilySpec::SymmetricTuples { n: 10, r: 2 }),
            ("cyclic:m=4096", FamilySpec::CyclicRegular { m: 4096 }),
            ("abelian:m=2,d=12", FamilySpec::AbelianPower { m: 2, d: 12 }),
            ("dihedral:m=500", FamilySpec::Dihedral { m: 500 }),
            ("affine:p=1009", FamilySpec::AffinePrime { p: 1009 }),
            ("proj:p=1009", FamilySpec::ProjectiveLine { p: 1009 }),
        ];
        for (text, spec) in cases {
            assert_eq!(text.parse::<FamilySpec>().unwrap(), spec);
            assert_eq!(spec.to_string(), text);
        }
        // key order is free
        assert_eq!(
            "sym-tuples:r=2,n=10".parse::<FamilySpec>().unwrap(),
            FamilySpec::SymmetricTuples { n: 10, r: 2 }
        );
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in [
            "", "sym", "sym:", "sym:n", "sym:n=x", "sym:n=3,n=4", "sym:m=3",
            "cyclic:m=3,d=2", "torus:m=3", ":n=3", "abelian:m=2",
        ] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad:?} should fail");
        }
    }
}
