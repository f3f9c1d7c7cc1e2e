//! The 40 canonical KFG words and their families.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::topology::Topology;

/// Even words in catalog order. Index `j + 20` holds the odd word `a·EVEN[j]`.
pub const EVEN: [&str; 20] = [
    "id", "b", "i", "bi", "ib", "bib", "ibi", "0", "f", "if", "fif", "bif", "ff", "fb", "fi",
    "fbi", "fib", "g", "bg", "fbg",
];

pub const ODD: [&str; 20] = [
    "a", "ab", "ai", "abi", "aib", "abib", "aibi", "1", "af", "aif", "afif", "abif", "aff", "afb",
    "afi", "afbi", "afib", "ag", "abg", "afbg",
];

pub const CATALOG_LEN: usize = 40;

pub const ID: usize = 0;
pub const B: usize = 1;
pub const I: usize = 2;
pub const BI: usize = 3;
pub const IB: usize = 4;
pub const BIB: usize = 5;
pub const IBI: usize = 6;
pub const ZERO: usize = 7;
pub const F: usize = 8;
pub const IF: usize = 9;
pub const FIF: usize = 10;
pub const BIF: usize = 11;
pub const FF: usize = 12;
pub const FB: usize = 13;
pub const FI: usize = 14;
pub const FBI: usize = 15;
pub const FIB: usize = 16;
pub const G: usize = 17;
pub const BG: usize = 18;
pub const FBG: usize = 19;
pub const A: usize = 20;
pub const ONE: usize = 27;

/// Name of catalog entry `idx`.
pub fn name(idx: usize) -> &'static str {
    if idx < 20 {
        EVEN[idx]
    } else {
        ODD[idx - 20]
    }
}

/// Catalog index of a canonical name.
pub fn index_of(name: &str) -> Option<usize> {
    EVEN.iter()
        .position(|&w| w == name)
        .or_else(|| ODD.iter().position(|&w| w == name).map(|j| j + 20))
}

pub fn is_even(idx: usize) -> bool {
    idx < 20
}

/// Index of `a·w`.
#[inline]
pub fn left_a(idx: usize) -> usize {
    if idx < 20 {
        idx + 20
    } else {
        idx - 20
    }
}

/// Name of `a·w` in canonical spelling.
pub fn left_a_name(w: &str) -> String {
    match w {
        "id" => "a".into(),
        "a" => "id".into(),
        "0" => "1".into(),
        "1" => "0".into(),
        _ => match w.strip_prefix('a') {
            Some(rest) => rest.into(),
            None => format!("a{w}"),
        },
    }
}

const EVEN_DUAL: [Option<usize>; 20] = [
    Some(ID),
    Some(I),
    Some(B),
    Some(IB),
    Some(BI),
    Some(IBI),
    Some(BIB),
    Some(ONE),
    Some(F + 20),
    Some(IF + 20),
    Some(FIF + 20),
    Some(BIF + 20),
    Some(FF + 20),
    Some(FI + 20),
    Some(FB + 20),
    Some(FIB + 20),
    Some(FBI + 20),
    None,
    None,
    None,
];

/// Catalog index of `d(w) = a w a`, when it lies in the catalog. Border words
/// have no catalog dual.
pub fn dual(idx: usize) -> Option<usize> {
    if idx < 20 {
        EVEN_DUAL[idx]
    } else {
        // d(a w) = a d(w)
        EVEN_DUAL[idx - 20].map(left_a)
    }
}

/// A subfamily of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    K0,
    K,
    KF0,
    KF,
    KFG0,
    KFG,
}

const K0_IDX: [u8; 7] = [0, 1, 2, 3, 4, 5, 6];
const K_IDX: [u8; 14] = [0, 1, 2, 3, 4, 5, 6, 20, 21, 22, 23, 24, 25, 26];
const KF0_IDX: [u8; 17] = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16];
const KF_IDX: [u8; 34] = [
    0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 20, 21, 22, 23, 24, 25, 26, 27, 28,
    29, 30, 31, 32, 33, 34, 35, 36,
];
const KFG0_IDX: [u8; 20] = [
    0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19,
];
const KFG_IDX: [u8; 40] = [
    0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25,
    26, 27, 28, 29, 30, 31, 32, 33, 34, 35, 36, 37, 38, 39,
];

impl Family {
    pub const ALL: [Family; 6] = [
        Family::K0,
        Family::K,
        Family::KF0,
        Family::KF,
        Family::KFG0,
        Family::KFG,
    ];

    /// Catalog indices of the members, in catalog order.
    pub fn members(self) -> &'static [u8] {
        match self {
            Family::K0 => &K0_IDX,
            Family::K => &K_IDX,
            Family::KF0 => &KF0_IDX,
            Family::KF => &KF_IDX,
            Family::KFG0 => &KFG0_IDX,
            Family::KFG => &KFG_IDX,
        }
    }

    pub fn len(self) -> usize {
        self.members().len()
    }

    pub fn contains(self, idx: usize) -> bool {
        self.members().contains(&(idx as u8))
    }

    /// Bit mask over catalog indices.
    pub fn mask(self) -> u64 {
        self.members().iter().fold(0u64, |m, &i| m | 1 << i)
    }

    pub fn names(self) -> Vec<&'static str> {
        self.members().iter().map(|&i| name(i as usize)).collect()
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::K0 => "K0",
            Family::K => "K",
            Family::KF0 => "KF0",
            Family::KF => "KF",
            Family::KFG0 => "KFG0",
            Family::KFG => "KFG",
        }
    }
}

/// A recognized operator spelling: a catalog word, or a catalog word followed
/// by a trailing `a` (right composition with complement).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperatorWord {
    name: String,
}

impl OperatorWord {
    pub fn parse(s: &str) -> Result<Self> {
        if index_of(s).is_some() {
            return Ok(Self {
                name: s.to_string(),
            });
        }
        if let Some(stem) = s.strip_suffix('a') {
            if !matches!(stem, "id" | "a" | "0" | "1") && index_of(stem).is_some() {
                return Ok(Self {
                    name: s.to_string(),
                });
            }
        }
        Err(Error::UnknownWord(s.to_string()))
    }

    pub fn catalog(idx: usize) -> Self {
        Self {
            name: name(idx).to_string(),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.name
    }

    /// Position in the 40-word catalog, if the word is one of them.
    pub fn catalog_index(&self) -> Option<usize> {
        index_of(&self.name)
    }

    /// Every recognized spelling, catalog words first.
    pub fn all_forms() -> Vec<OperatorWord> {
        let mut out: Vec<OperatorWord> = (0..CATALOG_LEN).map(Self::catalog).collect();
        for idx in 0..CATALOG_LEN {
            let w = name(idx);
            if !matches!(w, "id" | "a" | "0" | "1") {
                out.push(Self {
                    name: format!("{w}a"),
                });
            }
        }
        out
    }

    /// Apply the word to subset `s` of `t`, rightmost letter first.
    pub fn apply(&self, t: &Topology, s: u32) -> u32 {
        eval_letters(t, &self.name, s)
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorWord({})", self.name)
    }
}

impl std::str::FromStr for OperatorWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for OperatorWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

impl<'de> Deserialize<'de> for OperatorWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        OperatorWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Evaluate a string over `a b i f g 0 1` (or `id`) right to left.
pub(crate) fn eval_letters(t: &Topology, word: &str, s: u32) -> u32 {
    let m = t.mask();
    if word == "id" {
        return s;
    }
    word.bytes().rev().fold(s, |v, c| match c {
        b'a' => !v & m,
        b'b' => t.cl(v),
        b'i' => t.int(v),
        b'f' => t.cl(v) & t.cl(!v & m),
        b'g' => v & t.cl(!v & m),
        b'0' => 0,
        b'1' => m,
        other => panic!("letter {:?} outside the operator alphabet", other as char),
    })
}

/// Values of all 40 catalog words at `s`.
pub fn orbit40(t: &Topology, s: u32) -> [u32; CATALOG_LEN] {
    let m = t.mask();
    let mut v = [0u32; CATALOG_LEN];
    let b = t.cl(s);
    let i = t.int(s);
    let bi = t.cl(i);
    let ib = t.int(b);
    let bib = t.cl(ib);
    let ibi = t.int(bi);
    let f = b & !i;
    let iff = t.int(f);
    let bif = t.cl(iff);
    let g = s & !i;
    let bg = t.cl(g);
    v[ID] = s;
    v[B] = b;
    v[I] = i;
    v[BI] = bi;
    v[IB] = ib;
    v[BIB] = bib;
    v[IBI] = ibi;
    v[ZERO] = 0;
    v[F] = f;
    v[IF] = iff;
    v[FIF] = bif & !iff;
    v[BIF] = bif;
    v[FF] = f & t.cl(!f & m);
    v[FB] = b & !ib;
    v[FI] = bi & !i;
    v[FBI] = bi & !ibi;
    v[FIB] = bib & !ib;
    v[G] = g;
    v[BG] = bg;
    v[FBG] = bg & !t.int(bg);
    for j in 0..20 {
        v[j + 20] = !v[j] & m;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        assert_eq!(Family::KF.len(), 34);
        assert_eq!(Family::KFG.len(), 40);
        assert_eq!(Family::K.len(), 14);
        assert_eq!(OperatorWord::all_forms().len(), 76);
        for idx in 0..CATALOG_LEN {
            assert_eq!(index_of(name(idx)), Some(idx));
            assert_eq!(left_a(left_a(idx)), idx);
            assert_eq!(left_a_name(name(idx)), name(left_a(idx)));
        }
    }

    #[test]
    fn dual_is_involution_on_kf() {
        for &idx in Family::KF.members() {
            let d = dual(idx as usize).unwrap();
            assert!(Family::KF.contains(d));
            assert_eq!(dual(d), Some(idx as usize));
        }
        for idx in [G, BG, FBG, G + 20] {
            assert_eq!(dual(idx), None);
        }
        // even words in K0 swap i and b
        for &idx in &Family::K0.members()[1..] {
            let swapped: String = name(idx as usize)
                .chars()
                .map(|c| match c {
                    'i' => 'b',
                    'b' => 'i',
                    c => c,
                })
                .collect();
            assert_eq!(name(dual(idx as usize).unwrap()), swapped);
        }
    }

    #[test]
    fn parser_is_closed() {
        assert!(OperatorWord::parse("fbg").is_ok());
        assert!(OperatorWord::parse("fa").is_ok());
        assert!(OperatorWord::parse("bia").is_ok());
        assert!(matches!(
            OperatorWord::parse("bb"),
            Err(Error::UnknownWord(_))
        ));
        assert!(OperatorWord::parse("ida").is_err());
        assert!(OperatorWord::parse("aa").is_err());
    }

    #[test]
    fn orbit40_matches_letter_evaluation() {
        let t = Topology::from_letter_base(&["w", "x y", "w x y z"]).unwrap();
        for s in 0..16 {
            let v = orbit40(&t, s);
            for idx in 0..CATALOG_LEN {
                assert_eq!(
                    v[idx],
                    eval_letters(&t, name(idx), s),
                    "{} at {s}",
                    name(idx)
                );
            }
        }
    }
}
