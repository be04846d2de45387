//! k-subsets of [n], stored as bitmasks (bit i-1 for element i).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_N: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    mask: u64,
}

impl KSubset {
    pub fn from_mask(mask: u64) -> Self {
        KSubset { mask }
    }

    pub fn empty() -> Self {
        KSubset { mask: 0 }
    }

    /// Builds a subset from 1-based members. Duplicates and out of range
    /// entries are rejected.
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &m in members {
            if m == 0 || m > n {
                return Err(Error::Malformed(format!("element {m} outside [1,{n}]")));
            }
            let bit = 1u64 << (m - 1);
            if mask & bit != 0 {
                return Err(Error::Malformed(format!("repeated element {m}")));
            }
            mask |= bit;
        }
        Ok(KSubset { mask })
    }

    /// Reduces arbitrary integers mod n into [1,n].
    pub fn from_residues(n: usize, members: impl IntoIterator<Item = i64>) -> Self {
        let mut mask = 0u64;
        for m in members {
            mask |= 1u64 << (residue(m, n) - 1);
        }
        KSubset { mask }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= MAX_N && self.mask & (1u64 << (i - 1)) != 0
    }

    pub fn insert(&self, i: usize) -> Self {
        KSubset { mask: self.mask | (1u64 << (i - 1)) }
    }

    pub fn remove(&self, i: usize) -> Self {
        KSubset { mask: self.mask & !(1u64 << (i - 1)) }
    }

    pub fn members(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.mask;
        while m != 0 {
            let t = m.trailing_zeros() as usize;
            out.push(t + 1);
            m &= m - 1;
        }
        out
    }

    /// Members ordered by the cyclic order starting at `a`.
    pub fn cyclic_members(&self, n: usize, a: usize) -> Vec<usize> {
        let mut v = self.members();
        v.sort_by_key(|&x| (x + n - a) % n);
        v
    }

    /// Compact text form such as `124`, or comma separated once n exceeds 9.
    pub fn label(&self, n: usize) -> String {
        let m = self.members();
        if n <= 9 {
            m.iter().map(|x| x.to_string()).collect()
        } else {
            m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

/// Residue of `x` in [1,n].
pub fn residue(x: i64, n: usize) -> usize {
    let n = n as i64;
    ((x - 1).rem_euclid(n) + 1) as usize
}

impl Ord for KSubset {
    /// Lexicographic order on the sorted member sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        if self.mask == other.mask {
            return Ordering::Equal;
        }
        if self.len() == other.len() {
            let d = self.mask ^ other.mask;
            let low = d & d.wrapping_neg();
            if self.mask & low != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else {
            self.members().cmp(&other.members())
        }
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members())
    }
}

impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(s)
    }
}

impl<'de> Deserialize<'de> for KSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        KSubset::new(MAX_N, &v).map_err(serde::de::Error::custom)
    }
}

/// All k-subsets of [n] in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<KSubset> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(KSubset::new(n, &idx).expect("in range"));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Parses `"1,2,4"` (or whitespace separated) into a subset of [n].
pub fn parse_subset(n: usize, s: &str) -> Result<KSubset> {
    let mut v = Vec::new();
    for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
        if tok.is_empty() {
            continue;
        }
        let x: usize = tok
            .parse()
            .map_err(|_| Error::Malformed(format!("bad subset element {tok:?}")))?;
        v.push(x);
    }
    KSubset::new(n, &v)
}
