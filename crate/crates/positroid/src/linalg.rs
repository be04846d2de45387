//! Exact rational matrices, maximal minors and the twist maps.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{BoundedAffinePermutation, Direction, GrassmannNecklace};
use crate::rational::{fmt_q, parse_q, Q};
use crate::subset::{k_subsets, residue, KSubset};

/// Dense matrix with exact rational entries. Columns may be addressed by any
/// integer, reduced mod the column count.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    k: usize,
    n: usize,
    rows: Vec<Vec<Q>>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.k, self.n)?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(fmt_q).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    k: usize,
    n: usize,
    rows: Vec<Vec<String>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            k: self.k,
            n: self.n,
            rows: self.rows.iter().map(|r| r.iter().map(fmt_q).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        let rows = raw
            .rows
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let m = RationalMatrix::new(rows).map_err(serde::de::Error::custom)?;
        if m.k != raw.k || m.n != raw.n {
            return Err(serde::de::Error::custom(format!(
                "declared {}x{} but rows give {}x{}",
                raw.k, raw.n, m.k, m.n
            )));
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistSide {
    Left,
    Right,
}

impl TwistSide {
    /// The necklace whose bases the twist dualizes against.
    pub fn necklace_direction(self) -> Direction {
        match self {
            TwistSide::Right => Direction::Forward,
            TwistSide::Left => Direction::Reverse,
        }
    }
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        Ok(RationalMatrix { k, n, rows })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Q::from_integer(v.into())).collect())
            .collect();
        Self::new(rows).expect("rectangular literal")
    }

    pub fn zeros(k: usize, n: usize) -> Self {
        RationalMatrix { k, n, rows: vec![vec![Q::zero(); n]; k] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.rows[i][i] = Q::one();
        }
        m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.rows[r][c] = v;
    }

    /// Column a, taken cyclically (1-based).
    pub fn col(&self, a: i64) -> Vec<Q> {
        let c = residue(a, self.n) - 1;
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    pub fn set_col(&mut self, a: i64, v: &[Q]) {
        let c = residue(a, self.n) - 1;
        for (r, x) in self.rows.iter_mut().zip(v) {
            r[c] = x.clone();
        }
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.n)
            .map(|c| self.rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        RationalMatrix { k: self.n, n: self.k, rows }
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.n != other.k {
            return Err(Error::Precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.k, self.n, other.k, other.n
            )));
        }
        let mut out = Self::zeros(self.k, other.n);
        for i in 0..self.k {
            for j in 0..other.n {
                let mut s = Q::zero();
                for t in 0..self.n {
                    if !self.rows[i][t].is_zero() && !other.rows[t][j].is_zero() {
                        s += &self.rows[i][t] * &other.rows[t][j];
                    }
                }
                out.rows[i][j] = s;
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.k != self.n {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        let k = self.k;
        let mut out = Self::zeros(k, k);
        for j in 0..k {
            let mut e = vec![Q::zero(); k];
            e[j] = Q::one();
            let x = solve(&self.rows, &e).ok_or(Error::RankDeficient { rank: self.rank(), k })?;
            for i in 0..k {
                out.rows[i][j] = x[i].clone();
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rank_of(self.rows.clone())
    }

    /// det(A_{i1}, ..., A_{ik}) with the columns in the given integer order.
    pub fn minor(&self, idx: &[i64]) -> Result<Q> {
        if idx.len() != self.k {
            return Err(Error::WrongCardinality { expected: self.k, got: idx.len() });
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Malformed(format!("column indices not increasing: {idx:?}")));
        }
        Ok(self.minor_unchecked(idx))
    }

    fn minor_unchecked(&self, idx: &[i64]) -> Q {
        let cols: Vec<Vec<Q>> = idx.iter().map(|&a| self.col(a)).collect();
        det(cols)
    }

    /// Minor on a subset of [n], columns in increasing order.
    pub fn minor_of(&self, s: &KSubset) -> Q {
        let idx: Vec<i64> = s.members().into_iter().map(|m| m as i64).collect();
        self.minor_unchecked(&idx)
    }

    pub fn pluecker(&self) -> PlueckerVector {
        let coords = k_subsets(self.n, self.k)
            .into_iter()
            .map(|s| {
                let v = self.minor_of(&s);
                (s, v)
            })
            .collect();
        PlueckerVector { n: self.n, k: self.k, coords }
    }

    fn require_full_rank(&self) -> Result<()> {
        let r = self.rank();
        if r != self.k {
            return Err(Error::RankDeficient { rank: r, k: self.k });
        }
        Ok(())
    }

    /// Greedy column basis. Forward element a scans a, a+1, ...; reverse
    /// element a scans a, a-1, ....
    pub fn necklace(&self, direction: Direction) -> Result<GrassmannNecklace> {
        self.require_full_rank()?;
        let n = self.n as i64;
        let elements = (1..=n)
            .map(|a| {
                let mut chosen: Vec<Vec<Q>> = Vec::new();
                let mut picked = Vec::new();
                for step in 0..n {
                    if chosen.len() == self.k {
                        break;
                    }
                    let c = match direction {
                        Direction::Forward => a + step,
                        Direction::Reverse => a - step,
                    };
                    let v = self.col(c);
                    chosen.push(v);
                    if rank_of(chosen.clone()) == chosen.len() {
                        picked.push(c);
                    } else {
                        chosen.pop();
                    }
                }
                KSubset::from_residues(self.n, picked)
            })
            .collect();
        Ok(GrassmannNecklace { n: self.n, direction, elements })
    }

    /// pi(a) = min r >= a with A_a in the span of A_{a+1}, ..., A_r.
    pub fn knutson_perm(&self) -> Result<BoundedAffinePermutation> {
        self.require_full_rank()?;
        let n = self.n as i64;
        let mut values = Vec::with_capacity(self.n);
        for a in 1..=n {
            let target = self.col(a);
            let mut span: Vec<Vec<Q>> = Vec::new();
            let mut found = None;
            for r in a..=a + n {
                if r > a {
                    span.push(self.col(r));
                }
                if in_span(&target, &span) {
                    found = Some(r);
                    break;
                }
            }
            values.push(found.expect("A_a lies in the span of all columns"));
        }
        BoundedAffinePermutation::new(values)
    }

    /// Right twist dualizes column a against the forward necklace basis at a,
    /// left twist against the reverse one. Zero columns stay zero.
    pub fn twist(&self, side: TwistSide) -> Result<Self> {
        let nk = self.necklace(side.necklace_direction())?;
        let mut out = Self::zeros(self.k, self.n);
        for a in 1..=self.n {
            let col = self.col(a as i64);
            if col.iter().all(|x| x.is_zero()) {
                continue;
            }
            let basis = nk.elements[a - 1];
            let sys: Vec<Vec<Q>> = basis.members().iter().map(|&b| self.col(b as i64)).collect();
            let rhs: Vec<Q> = basis
                .members()
                .iter()
                .map(|&b| if b == a { Q::one() } else { Q::zero() })
                .collect();
            let x = solve(&sys, &rhs).ok_or(Error::RankDeficient { rank: self.rank(), k: self.k })?;
            out.set_col(a as i64, &x);
        }
        Ok(out)
    }

    pub fn twist_times(&self, side: TwistSide, times: usize) -> Result<Self> {
        let mut m = self.clone();
        for _ in 0..times {
            m = m.twist(side)?;
        }
        Ok(m)
    }

    /// The double-twist comparison map. Column i is A_{pi(i)} times the ratio
    /// of consecutive forward necklace minors, with a sign depending on the
    /// implication count at i and on whether pi(i) wraps past n.
    pub fn mu(&self) -> Result<Self> {
        let pi = self.knutson_perm()?;
        let nk = self.necklace(Direction::Forward)?;
        let n = self.n;
        let k = self.k as i64;
        let minors: Vec<Q> = nk.elements.iter().map(|s| self.minor_of(s)).collect();
        if let Some(a) = minors.iter().position(|m| m.is_zero()) {
            return Err(Error::ZeroNecklaceMinor(a + 1));
        }
        let mut out = Self::zeros(self.k, n);
        for i in 1..=n {
            let pii = pi.at(i as i64);
            let implied = pi.implied_by(i as i64).len() as i64;
            let wraps = i64::from(pii > n as i64);
            let exp = implied + (k - 1) * (1 + wraps);
            let mut scale = &minors[i - 1] / &minors[i % n];
            if exp % 2 != 0 {
                scale = -scale;
            }
            let col: Vec<Q> = self.col(pii).into_iter().map(|x| x * &scale).collect();
            out.set_col(i as i64, &col);
        }
        Ok(out)
    }
}

/// Determinant of a square matrix given as a list of rows (or columns).
pub fn det(mut m: Vec<Vec<Q>>) -> Q {
    let k = m.len();
    let mut acc = Q::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        let piv = m[c][c].clone();
        acc *= &piv;
        for r in c + 1..k {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for j in c..k {
                let d = &f * &m[c][j];
                m[r][j] -= d;
            }
        }
    }
    acc
}

/// Rank of a list of vectors.
pub fn rank_of(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        let piv = m[rank][c].clone();
        for r in 0..rows {
            if r == rank || m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for j in c..cols {
                let d = &f * &m[rank][j];
                m[r][j] -= d;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn in_span(v: &[Q], span: &[Vec<Q>]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let base = rank_of(span.to_vec());
    let mut ext = span.to_vec();
    ext.push(v.to_vec());
    rank_of(ext) == base
}

/// Solves `sum_j rows[i][j] x_j = rhs[i]` for a square nonsingular system.
pub fn solve(rows: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let k = rows.len();
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let piv = m[c][c].clone();
        for j in c..=k {
            m[c][j] /= &piv;
        }
        for r in 0..k {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for j in c..=k {
                let d = &f * &m[c][j];
                m[r][j] -= d;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}

/// Point of the affine cone over Gr(k,n): a value for every k-subset.
#[derive(Clone, PartialEq, Eq)]
pub struct PlueckerVector {
    pub n: usize,
    pub k: usize,
    coords: BTreeMap<KSubset, Q>,
}

impl fmt::Debug for PlueckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (s, v) in &self.coords {
            m.entry(&s.label(self.n), &fmt_q(v));
        }
        m.finish()
    }
}

#[derive(Serialize, Deserialize)]
struct PlueckerEntry {
    #[serde(rename = "I")]
    i: Vec<usize>,
    value: String,
}

impl Serialize for PlueckerVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<PlueckerEntry> = self
            .coords
            .iter()
            .map(|(k, v)| PlueckerEntry { i: k.members(), value: fmt_q(v) })
            .collect();
        v.serialize(s)
    }
}

impl PlueckerVector {
    /// Builds a total vector; subsets missing from `values` are zero.
    pub fn new(n: usize, k: usize, values: impl IntoIterator<Item = (KSubset, Q)>) -> Result<Self> {
        let mut coords: BTreeMap<KSubset, Q> =
            k_subsets(n, k).into_iter().map(|s| (s, Q::zero())).collect();
        for (s, v) in values {
            match coords.get_mut(&s) {
                Some(slot) => *slot = v,
                None => {
                    return Err(Error::Malformed(format!(
                        "subset {:?} is not a {k}-subset of [{n}]",
                        s.members()
                    )))
                }
            }
        }
        Ok(PlueckerVector { n, k, coords })
    }

    /// Parses the JSON list form `[{"I": [..], "value": "p/q"}, ...]`.
    pub fn from_json(n: usize, k: usize, v: &serde_json::Value) -> Result<Self> {
        let entries: Vec<PlueckerEntry> = serde_json::from_value(v.clone())
            .map_err(|e| Error::Malformed(format!("Pluecker JSON: {e}")))?;
        let vals = entries
            .into_iter()
            .map(|e| Ok((KSubset::new(n, &e.i)?, parse_q(&e.value)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, vals)
    }

    pub fn get(&self, s: &KSubset) -> Q {
        self.coords.get(s).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&KSubset, &Q)> {
        self.coords.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.values().all(|v| v.is_zero())
    }

    pub fn support(&self) -> Vec<KSubset> {
        self.coords.iter().filter(|(_, v)| !v.is_zero()).map(|(s, _)| *s).collect()
    }

    pub fn scale(&self, c: &Q) -> Self {
        PlueckerVector {
            n: self.n,
            k: self.k,
            coords: self.coords.iter().map(|(s, v)| (*s, v * c)).collect(),
        }
    }

    /// Three-term relations Δ_{Sac}Δ_{Sbd} = Δ_{Sab}Δ_{Scd} + Δ_{Sad}Δ_{Sbc}
    /// for every (k-2)-subset S and a<b<c<d outside S. Returns the first
    /// violation.
    pub fn three_term_violation(&self) -> Option<String> {
        if self.k < 2 || self.n < self.k + 2 {
            return None;
        }
        for s in k_subsets(self.n, self.k - 2) {
            let free: Vec<usize> = (1..=self.n).filter(|&i| !s.contains(i)).collect();
            for (ia, &a) in free.iter().enumerate() {
                for (ib, &b) in free.iter().enumerate().skip(ia + 1) {
                    for (ic, &c) in free.iter().enumerate().skip(ib + 1) {
                        for &d in free.iter().skip(ic + 1) {
                            let g = |x: usize, y: usize| self.get(&s.insert(x).insert(y));
                            let lhs = g(a, c) * g(b, d);
                            let rhs = g(a, b) * g(c, d) + g(a, d) * g(b, c);
                            if lhs != rhs {
                                return Some(format!(
                                    "relation fails for S={:?}, (a,b,c,d)=({a},{b},{c},{d})",
                                    s.members()
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

/// A matrix whose maximal minors are exactly `p`. The pivot is the
/// lexicographically least nonzero subset.
pub fn matrix_from_pluecker(p: &PlueckerVector) -> Result<RationalMatrix> {
    let (n, k) = (p.n, p.k);
    let (pivot, pv) = p
        .iter()
        .find(|(_, v)| !v.is_zero())
        .map(|(s, v)| (*s, v.clone()))
        .ok_or_else(|| Error::NotPluecker("all coordinates vanish".into()))?;
    let piv_members = pivot.members();
    let mut a = RationalMatrix::zeros(k, n);
    for c in 1..=n {
        for (r, &ir) in piv_members.iter().enumerate() {
            if pivot.contains(c) {
                if c == ir {
                    a.rows[r][c - 1] = Q::one();
                }
                continue;
            }
            let j = pivot.remove(ir).insert(c);
            let q = j.members().iter().position(|&x| x == c).expect("c in J");
            let mut v = p.get(&j) / &pv;
            if (q as i64 - r as i64).abs() % 2 == 1 {
                v = -v;
            }
            a.rows[r][c - 1] = v;
        }
    }
    if k > 0 {
        for x in a.rows[0].iter_mut() {
            *x *= &pv;
        }
    }
    let back = a.pluecker();
    if &back != p {
        let bad = p
            .iter()
            .find(|(s, v)| back.get(s) != **v)
            .map(|(s, _)| s.label(n))
            .unwrap_or_default();
        return Err(Error::NotPluecker(format!("reconstruction differs at {bad}")));
    }
    Ok(a)
}

/// Sign-free helper used by tests and the CLI: whether every entry is integral.
pub fn is_integral(m: &RationalMatrix) -> bool {
    m.rows.iter().flatten().all(|x| x.is_integer())
}

/// Largest absolute numerator, handy for growth diagnostics.
pub fn max_abs_numer(m: &RationalMatrix) -> Q {
    m.rows
        .iter()
        .flatten()
        .map(|x| Q::from_integer(x.numer().abs()))
        .max()
        .unwrap_or_else(Q::zero)
}
