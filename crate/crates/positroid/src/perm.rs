//! Cyclic Gale orders, Grassmann necklaces, bounded affine permutations and
//! the positroid they determine.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{k_subsets, residue, KSubset};

/// A bijection of the integers with `pi(a + n) = pi(a) + n` and
/// `a <= pi(a) <= a + n`, stored by its values on 1..=n.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct BoundedAffinePermutation {
    values: Vec<i64>,
}

impl TryFrom<Vec<i64>> for BoundedAffinePermutation {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<BoundedAffinePermutation> for Vec<i64> {
    fn from(p: BoundedAffinePermutation) -> Self {
        p.values
    }
}

impl fmt::Debug for BoundedAffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

impl BoundedAffinePermutation {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for (i, &v) in values.iter().enumerate() {
            let a = i as i64 + 1;
            if v < a || v > a + n as i64 {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} at {a} outside [{a},{}]",
                    a + n as i64
                )));
            }
            let r = residue(v, n) - 1;
            if seen[r] {
                return Err(Error::InvalidPermutation(format!(
                    "residue {} repeated",
                    r + 1
                )));
            }
            seen[r] = true;
        }
        Ok(BoundedAffinePermutation { values })
    }

    /// Parses `"3,5,6,7,8,10"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            v.push(
                tok.parse::<i64>()
                    .map_err(|_| Error::Malformed(format!("bad permutation entry {tok:?}")))?,
            );
        }
        Self::new(v)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The type k = (1/n) sum (pi(a) - a).
    pub fn k(&self) -> usize {
        let s: i64 = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| v - (i as i64 + 1))
            .sum();
        (s / self.n() as i64) as usize
    }

    pub fn at(&self, a: i64) -> i64 {
        let n = self.n() as i64;
        let r = residue(a, self.n()) as i64;
        debug_assert_eq!((a - r) % n, 0);
        self.values[(r - 1) as usize] + (a - r)
    }

    /// pi^{-1}(b).
    pub fn inv_at(&self, b: i64) -> i64 {
        let n = self.n();
        let r = residue(b, n);
        let p = self
            .values
            .iter()
            .position(|&v| residue(v, n) == r)
            .expect("residues form a permutation");
        p as i64 + 1 + (b - self.values[p])
    }

    /// Values of pi^{-1} on 1..=n; each lies in [a-n, a].
    pub fn inverse_values(&self) -> Vec<i64> {
        (1..=self.n() as i64).map(|b| self.inv_at(b)).collect()
    }

    pub fn is_fixed_point(&self, a: usize) -> bool {
        let v = self.values[a - 1];
        v == a as i64 || v == (a + self.n()) as i64
    }

    /// a pi-implies b: b < a <= pi(a) < pi(b).
    pub fn implies(&self, a: i64, b: i64) -> bool {
        b < a && a <= self.at(a) && self.at(a) < self.at(b)
    }

    /// All integers b with a pi-implies b.
    pub fn implied_by(&self, a: i64) -> Vec<i64> {
        let pa = self.at(a);
        let lo = pa - self.n() as i64 + 1;
        (lo..a).filter(|&b| self.implies(a, b)).collect()
    }

    /// Number of pairs (a,b) with a in [1,n] and a pi-implies b.
    pub fn length(&self) -> usize {
        (1..=self.n() as i64).map(|a| self.implied_by(a).len()).sum()
    }

    /// s_i applied on the left: values congruent to i and i+1 are swapped.
    pub fn s_left(&self, i: usize) -> Result<Self> {
        let n = self.n();
        let v = self.values.iter().map(|&x| s_apply(n, i, x)).collect();
        Self::new(v)
    }

    /// s_i applied on the right: positions i and i+1 are swapped.
    pub fn s_right(&self, i: usize) -> Result<Self> {
        let n = self.n();
        let v = (1..=n as i64).map(|a| self.at(s_apply(n, i, a))).collect();
        Self::new(v)
    }

    /// Every bounded affine permutation with period n, in lexicographic order
    /// of value vectors.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(n: usize, a: usize, used: &mut [bool], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if a > n {
                out.push(cur.clone());
                return;
            }
            for v in a as i64..=(a + n) as i64 {
                let r = residue(v, n) - 1;
                if used[r] {
                    continue;
                }
                used[r] = true;
                cur.push(v);
                rec(n, a + 1, used, cur, out);
                cur.pop();
                used[r] = false;
            }
        }
        let mut out = Vec::new();
        rec(n, 1, &mut vec![false; n], &mut Vec::new(), &mut out);
        out.into_iter().map(|v| BoundedAffinePermutation { values: v }).collect()
    }
}

/// The simple transposition s_i of the integers, periodic mod n.
pub fn s_apply(n: usize, i: usize, j: i64) -> i64 {
    let r = residue(j, n);
    if r == residue(i as i64, n) {
        j + 1
    } else if r == residue(i as i64 + 1, n) {
        j - 1
    } else {
        j
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Reverse,
}

/// Grassmann necklace. Forward element a is the a-minimal basis; reverse
/// element a is the maximal basis for the order starting at a+1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrassmannNecklace {
    pub n: usize,
    pub direction: Direction,
    pub elements: Vec<KSubset>,
}

/// Members of `s` sorted by the cyclic order starting at `a`, as ranks.
fn ranks(s: &KSubset, n: usize, a: usize) -> Vec<usize> {
    let mut v: Vec<usize> = s.members().into_iter().map(|x| (x + n - a) % n).collect();
    v.sort_unstable();
    v
}

/// x precedes-or-equals y in the Gale order for the cyclic order starting at a.
pub fn gale_leq(x: &KSubset, y: &KSubset, n: usize, a: usize) -> bool {
    let rx = ranks(x, n, a);
    let ry = ranks(y, n, a);
    rx.len() == ry.len() && rx.iter().zip(&ry).all(|(p, q)| p <= q)
}

/// The unique minimum of `bases` in the Gale order starting at a.
pub fn gale_min(bases: &BTreeSet<KSubset>, n: usize, a: usize) -> Result<KSubset> {
    let cand = bases
        .iter()
        .min_by_key(|b| ranks(b, n, a))
        .ok_or(Error::EmptyBases)?;
    if bases.iter().all(|b| gale_leq(cand, b, n, a)) {
        Ok(*cand)
    } else {
        Err(Error::NoGaleExtremum(a))
    }
}

/// The unique maximum of `bases` in the Gale order starting at a.
pub fn gale_max(bases: &BTreeSet<KSubset>, n: usize, a: usize) -> Result<KSubset> {
    let cand = bases
        .iter()
        .max_by_key(|b| ranks(b, n, a))
        .ok_or(Error::EmptyBases)?;
    if bases.iter().all(|b| gale_leq(b, cand, n, a)) {
        Ok(*cand)
    } else {
        Err(Error::NoGaleExtremum(a))
    }
}

pub fn necklace_from_bases(
    bases: &BTreeSet<KSubset>,
    n: usize,
    direction: Direction,
) -> Result<GrassmannNecklace> {
    let elements = (1..=n)
        .map(|a| match direction {
            Direction::Forward => gale_min(bases, n, a),
            Direction::Reverse => gale_max(bases, n, a % n + 1),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GrassmannNecklace { n, direction, elements })
}

pub fn necklace_from_perm(pi: &BoundedAffinePermutation, direction: Direction) -> GrassmannNecklace {
    let n = pi.n();
    let ni = n as i64;
    let elements = (1..=ni)
        .map(|a| match direction {
            Direction::Forward => {
                KSubset::from_residues(n, (a - ni..a).map(|b| pi.at(b)).filter(|&v| v >= a))
            }
            Direction::Reverse => {
                KSubset::from_residues(n, (a - ni + 1..=a).filter(|&b| pi.at(b) > a))
            }
        })
        .collect();
    GrassmannNecklace { n, direction, elements }
}

impl GrassmannNecklace {
    pub fn k(&self) -> usize {
        self.elements.first().map(|s| s.len()).unwrap_or(0)
    }

    /// Element a (1-based, taken cyclically).
    pub fn at(&self, a: i64) -> KSubset {
        self.elements[residue(a, self.n) - 1]
    }

    /// The bounded affine permutation of the necklace.
    pub fn perm(&self) -> Result<BoundedAffinePermutation> {
        let n = self.n;
        let k = self.k();
        if self.elements.len() != n || self.elements.iter().any(|s| s.len() != k) {
            return Err(Error::InvalidNecklace("elements differ in size".into()));
        }
        let ni = n as i64;
        match self.direction {
            Direction::Forward => {
                let mut v = Vec::with_capacity(n);
                for a in 1..=ni {
                    let cur = self.at(a);
                    let next = self.at(a + 1);
                    let au = a as usize;
                    if !cur.contains(au) {
                        if cur != next {
                            return Err(Error::InvalidNecklace(format!(
                                "{a} not in I_{a} but I_{a} != I_{}",
                                a + 1
                            )));
                        }
                        v.push(a);
                        continue;
                    }
                    let rest = cur.remove(au);
                    if rest.mask() & !next.mask() != 0 {
                        return Err(Error::InvalidNecklace(format!(
                            "I_{a} minus {a} not contained in I_{}",
                            a + 1
                        )));
                    }
                    if next == cur {
                        v.push(a + ni);
                    } else {
                        let j = KSubset::from_mask(next.mask() & !rest.mask()).members()[0] as i64;
                        v.push(if j > a { j } else { j + ni });
                    }
                }
                BoundedAffinePermutation::new(v)
            }
            Direction::Reverse => {
                // Mirrored rule; yields pi^{-1}(a) in [a-n, a].
                let mut inv = Vec::with_capacity(n);
                for a in 1..=ni {
                    let cur = self.at(a);
                    let prev = self.at(a - 1);
                    let au = a as usize;
                    if !cur.contains(au) {
                        if cur != prev {
                            return Err(Error::InvalidNecklace(format!(
                                "{a} not in J_{a} but J_{a} != J_{}",
                                a - 1
                            )));
                        }
                        inv.push(a);
                        continue;
                    }
                    let rest = cur.remove(au);
                    if rest.mask() & !prev.mask() != 0 {
                        return Err(Error::InvalidNecklace(format!(
                            "J_{a} minus {a} not contained in J_{}",
                            a - 1
                        )));
                    }
                    if prev == cur {
                        inv.push(a - ni);
                    } else {
                        let j = KSubset::from_mask(prev.mask() & !rest.mask()).members()[0] as i64;
                        inv.push(if j < a { j } else { j - ni });
                    }
                }
                let mut v = vec![0i64; n];
                for (i, &b) in inv.iter().enumerate() {
                    let a = i as i64 + 1;
                    let r = residue(b, n) as i64;
                    v[(r - 1) as usize] = a + (r - b);
                }
                BoundedAffinePermutation::new(v)
            }
        }
    }
}

/// A positroid, stored by its set of bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Positroid {
    pub n: usize,
    pub k: usize,
    pub bases: BTreeSet<KSubset>,
}

impl Positroid {
    pub fn necklace(&self, direction: Direction) -> Result<GrassmannNecklace> {
        necklace_from_bases(&self.bases, self.n, direction)
    }

    pub fn perm(&self) -> Result<BoundedAffinePermutation> {
        self.necklace(Direction::Forward)?.perm()
    }
}

/// Bases cut out by the necklace: all J with I_a Gale-below J for every a
/// (reverse necklaces use the mirrored condition).
pub fn positroid_from_necklace(nk: &GrassmannNecklace) -> Positroid {
    let n = nk.n;
    let k = nk.k();
    let bases = k_subsets(n, k)
        .into_iter()
        .filter(|j| {
            (1..=n).all(|a| match nk.direction {
                Direction::Forward => gale_leq(&nk.elements[a - 1], j, n, a),
                Direction::Reverse => gale_leq(j, &nk.elements[a - 1], n, a % n + 1),
            })
        })
        .collect();
    Positroid { n, k, bases }
}
