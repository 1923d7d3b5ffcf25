//! Sparse exact linear algebra over `Q(ζ_M)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclo::{CycNumber, CycloField};

/// A sparse vector: strictly increasing indices with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, CycNumber)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, field: &Arc<CycloField>) -> Self {
        SparseVec { entries: vec![(i, CycNumber::root_in(field, 0))] }
    }

    pub fn single(i: usize, c: CycNumber) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from unsorted, possibly repeated entries.
    pub fn from_entries(items: impl IntoIterator<Item = (usize, CycNumber)>) -> Self {
        let mut map: BTreeMap<usize, CycNumber> = BTreeMap::new();
        for (i, c) in items {
            match map.get_mut(&i) {
                Some(v) => *v = &*v + &c,
                None => {
                    map.insert(i, c);
                }
            }
        }
        SparseVec { entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, CycNumber)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize) -> Option<&CycNumber> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<&(usize, CycNumber)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &CycNumber) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self += c·other`, by merging.
    pub fn axpy(&mut self, c: &CycNumber, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, v * c));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = &x + &(y * c);
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, v * c));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut s = self.clone();
        if let Some((_, c)) = other.entries.first() {
            let one = CycNumber::root_in(c.field(), 0);
            s.axpy(&one, other);
        }
        s
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut s = self.clone();
        if let Some((_, c)) = other.entries.first() {
            let m1 = -CycNumber::root_in(c.field(), 0);
            s.axpy(&m1, other);
        }
        s
    }

    /// Re-indexes entries through `f`, summing collisions.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    pub fn into_entries(self) -> Vec<(usize, CycNumber)> {
        self.entries
    }
}

/// Incremental row echelon form; every stored row has leading coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduces `v` against the stored rows.
    pub fn reduce(&self, v: &mut SparseVec) {
        self.reduce_tracked(v, None, &BTreeMap::new());
    }

    fn reduce_tracked(
        &self,
        v: &mut SparseVec,
        mut comb: Option<&mut SparseVec>,
        combs: &BTreeMap<usize, SparseVec>,
    ) {
        let mut pos = 0;
        while pos < v.entries.len() {
            let (k, c) = &v.entries[pos];
            let k = *k;
            match self.rows.get(&k) {
                Some(row) => {
                    let c = -c.clone();
                    if let Some(cb) = comb.as_deref_mut() {
                        cb.axpy(&c, &combs[&k]);
                    }
                    v.axpy(&c, row);
                }
                None => pos += 1,
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        self.reduce(&mut v);
        self.push_reduced(v).is_some()
    }

    fn push_reduced(&mut self, v: SparseVec) -> Option<(usize, CycNumber)> {
        let (k, c) = v.leading()?.clone();
        let inv = c.inverse().expect("nonzero leading coefficient");
        self.rows.insert(k, v.scale(&inv));
        Some((k, inv))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// The reduced row echelon basis, sorted by pivot.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&k, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            // clear every later pivot column
            let mut pos = 1;
            while pos < r.entries.len() {
                let (j, c) = &r.entries[pos];
                match done.get(j) {
                    Some(other) => {
                        let c = -c.clone();
                        r.axpy(&c, other);
                    }
                    None => pos += 1,
                }
            }
            done.insert(k, r);
        }
        done.into_values().collect()
    }
}

/// Canonical reduced row echelon basis of the span of `vectors`.
pub fn rref(vectors: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rref()
}

pub fn rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Column system `Σ x_j c_j`, for kernels and solves.
#[derive(Clone, Debug, Default)]
pub struct ColumnSystem {
    echelon: Echelon,
    combs: BTreeMap<usize, SparseVec>,
    kernel: Vec<SparseVec>,
    columns: usize,
}

impl ColumnSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends column `c_j` with `j` the current column count.
    pub fn push(&mut self, c: SparseVec, field: &Arc<CycloField>) {
        let j = self.columns;
        self.columns += 1;
        let mut v = c;
        let mut comb = SparseVec::unit(j, field);
        self.echelon.reduce_tracked(&mut v, Some(&mut comb), &self.combs);
        match self.echelon.push_reduced(v) {
            None => self.kernel.push(comb),
            Some((k, inv)) => {
                self.combs.insert(k, comb.scale(&inv));
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Canonical (RREF) basis of `{x : Σ x_j c_j = 0}`.
    pub fn kernel(&self) -> Vec<SparseVec> {
        rref(self.kernel.iter().cloned())
    }

    /// Some `x` with `Σ x_j c_j = b`.
    pub fn solve(&self, b: &SparseVec, field: &Arc<CycloField>) -> Option<SparseVec> {
        let mut v = b.clone();
        let mut comb = SparseVec::new();
        // track -x: reduce records the negated combination
        self.echelon.reduce_tracked(&mut v, Some(&mut comb), &self.combs);
        if !v.is_zero() {
            return None;
        }
        let m1 = -CycNumber::root_in(field, 0);
        Some(comb.scale(&m1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Arc<CycloField> {
        CycloField::get(3)
    }

    fn int(n: i64) -> CycNumber {
        CycNumber::from_int(3, n)
    }

    fn vec_of(xs: &[i64]) -> SparseVec {
        SparseVec::from_entries(xs.iter().enumerate().map(|(i, &x)| (i, int(x))))
    }

    #[test]
    fn axpy_merges_and_cancels() {
        let mut a = vec_of(&[1, 0, 2]);
        a.axpy(&int(-2), &vec_of(&[0, 3, 1]));
        assert_eq!(a, vec_of(&[1, -6, 0]));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn rref_is_canonical() {
        let a = rref(vec![vec_of(&[1, 2, 3]), vec_of(&[2, 4, 7])]);
        let b = rref(vec![vec_of(&[0, 0, 5]), vec_of(&[3, 6, 0])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec_of(&[1, 2, 0]), vec_of(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_and_solve() {
        let field = f();
        let mut s = ColumnSystem::new();
        for c in [vec_of(&[1, 1]), vec_of(&[2, 2]), vec_of(&[0, 1])] {
            s.push(c, &field);
        }
        assert_eq!(s.rank(), 2);
        let half = CycNumber::from_rational(3, crate::Rational::new(-1, 2));
        assert_eq!(s.kernel(), vec![SparseVec::from_entries([(0, int(1)), (1, half)])]);
        let b = vec_of(&[3, 5]);
        let x = s.solve(&b, &field).unwrap();
        // oracle: Σ x_j c_j = b
        let cols = [vec_of(&[1, 1]), vec_of(&[2, 2]), vec_of(&[0, 1])];
        let mut acc = SparseVec::new();
        for (j, c) in x.iter() {
            acc.axpy(c, &cols[*j]);
        }
        assert_eq!(acc, b);
        let mut t = ColumnSystem::new();
        t.push(vec_of(&[1, 1]), &field);
        assert!(t.solve(&vec_of(&[1, 0]), &field).is_none());
    }
}
