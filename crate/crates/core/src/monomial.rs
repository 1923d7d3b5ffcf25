//! Normal-form multiplication shared by `A(𝔾)` and `A_{σ,a}(𝔾)`.
//!
//! Basis element `x·yⁱ` (resp. `u_x u_yⁱ`) has index `x·d + i`. Products are
//! reduced left to right: a grouplike letter `x'` moves past `yⁱ` picking up
//! `χ(x')ⁱ` and merges with `x` through `σ(x, x')`; the letter `y` raises the
//! power, and `y^d` is replaced by a fixed group-algebra element.

use std::sync::Arc;

use crate::cyclo::{CycNumber, CycloField};
use crate::fingroup::{FiniteGroup, GroupDatum};
use crate::linalg::SparseVec;

/// A finite-dimensional unital algebra given by structure constants on a basis.
pub trait Algebra {
    fn dim(&self) -> usize;
    fn field(&self) -> &Arc<CycloField>;
    /// Product of basis elements `i` and `j`.
    fn mul_basis(&self, i: usize, j: usize) -> &SparseVec;
    /// The unit, as a coordinate vector.
    fn one(&self) -> SparseVec;

    fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a.iter() {
            for (j, e) in b.iter() {
                out.axpy(&(c * e), self.mul_basis(*i, *j));
            }
        }
        out
    }
}

/// Multiplication in `L ⊗ R` with index `l·dim(R) + r`.
pub fn tensor_mul(left: &dyn Algebra, right: &dyn Algebra, s: &SparseVec, t: &SparseVec) -> SparseVec {
    let dr = right.dim();
    let mut items = Vec::new();
    for (a, c) in s.iter() {
        let (a1, a2) = (a / dr, a % dr);
        for (b, e) in t.iter() {
            let (b1, b2) = (b / dr, b % dr);
            let ce = c * e;
            let p = left.mul_basis(a1, b1);
            let q = right.mul_basis(a2, b2);
            for (i, u) in p.iter() {
                let cu = &ce * u;
                for (j, v) in q.iter() {
                    items.push((i * dr + j, &cu * v));
                }
            }
        }
    }
    SparseVec::from_entries(items)
}

/// `a ⊗ b` with index `i·dim_b + j`.
pub fn tensor(a: &SparseVec, b: &SparseVec, dim_b: usize) -> SparseVec {
    let mut items = Vec::new();
    for (i, c) in a.iter() {
        for (j, e) in b.iter() {
            items.push((i * dim_b + j, c * e));
        }
    }
    SparseVec::from_entries(items)
}

#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    field: Arc<CycloField>,
    group: Arc<FiniteGroup>,
    d: usize,
    chi: Vec<u32>,
    sigma: Option<Vec<Vec<CycNumber>>>,
    ypow: Vec<(usize, CycNumber)>,
    table: Vec<Vec<SparseVec>>,
}

impl MonomialAlgebra {
    /// `sigma = None` means the trivial cocycle; `ypow` is `y^d` as a
    /// combination of grouplikes.
    pub fn new(datum: &GroupDatum, sigma: Option<Vec<Vec<CycNumber>>>, ypow: Vec<(usize, CycNumber)>) -> Self {
        Self::with_powers(datum, sigma, ypow, datum.d())
    }

    /// Same rewriting with `y^powers` replaced by `ypow`; with an empty `ypow`
    /// this is the truncation of the skew group algebra at `y`-degree `powers`.
    pub fn with_powers(
        datum: &GroupDatum,
        sigma: Option<Vec<Vec<CycNumber>>>,
        ypow: Vec<(usize, CycNumber)>,
        powers: usize,
    ) -> Self {
        let mut alg = MonomialAlgebra {
            field: datum.field(),
            group: Arc::clone(datum.group()),
            d: powers,
            chi: datum.chi().exponents().to_vec(),
            sigma,
            ypow: ypow.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            table: Vec::new(),
        };
        let dim = alg.group.order() * alg.d;
        alg.table = (0..dim).map(|a| (0..dim).map(|b| alg.compute_product(a, b)).collect()).collect();
        alg
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn index(&self, x: usize, i: usize) -> usize {
        x * self.d + i
    }

    pub fn split(&self, b: usize) -> (usize, usize) {
        (b / self.d, b % self.d)
    }

    fn sigma(&self, x: usize, y: usize) -> CycNumber {
        match &self.sigma {
            Some(s) => s[x][y].clone(),
            None => CycNumber::root_in(&self.field, 0),
        }
    }

    fn compute_product(&self, a: usize, b: usize) -> SparseVec {
        let (x, i) = self.split(a);
        let (x2, j) = self.split(b);
        let g = &self.group;
        let chi = CycNumber::root_in(&self.field, (self.chi[x2] as i64) * i as i64);
        let mut state = SparseVec::single(self.index(g.mul(x, x2), i), &chi * &self.sigma(x, x2));
        for _ in 0..j {
            let mut items = Vec::new();
            for (s, c) in state.iter() {
                let (z, k) = self.split(*s);
                if k + 1 < self.d {
                    items.push((self.index(z, k + 1), c.clone()));
                } else {
                    for (h, ch) in &self.ypow {
                        items.push((self.index(g.mul(z, *h), 0), &(c * ch) * &self.sigma(z, *h)));
                    }
                }
            }
            state = SparseVec::from_entries(items);
        }
        state
    }

    pub fn basis_label(&self, b: usize) -> String {
        basis_text(b, self.d())
    }

    /// `3/2*e2*y + z(4)^1*e0`, terms in basis order.
    pub fn format_element(&self, v: &SparseVec) -> String {
        format_terms(v.iter().map(|(b, c)| (c, self.basis_label(*b))))
    }
}

/// Joins `coefficient*label` terms, folding signs of rational coefficients.
/// An empty label stands for a bare scalar.
/// `e3`, `e3*y`, `e3*y^2` for basis index `b` with `d` powers per element.
pub fn basis_text(b: usize, d: usize) -> String {
    match (b / d, b % d) {
        (x, 0) => format!("e{x}"),
        (x, 1) => format!("e{x}*y"),
        (x, i) => format!("e{x}*y^{i}"),
    }
}

pub fn format_terms<'a>(terms: impl Iterator<Item = (&'a CycNumber, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        let (neg, abs) = match c.as_rational() {
            Some(r) if r.is_negative() => (true, CycNumber::rational_in(c.field(), r.abs())),
            _ => (false, c.clone()),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if label.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&label);
        } else {
            out.push_str(&format!("{abs}*{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// An algebra stored only through its multiplication table.
#[derive(Clone, Debug)]
pub struct TableAlgebra {
    field: Arc<CycloField>,
    table: Vec<Vec<SparseVec>>,
    one: SparseVec,
}

impl TableAlgebra {
    pub fn new(field: Arc<CycloField>, table: Vec<Vec<SparseVec>>, one: SparseVec) -> Self {
        TableAlgebra { field, table, one }
    }
}

impl Algebra for TableAlgebra {
    fn dim(&self) -> usize {
        self.table.len()
    }

    fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    fn one(&self) -> SparseVec {
        self.one.clone()
    }
}

impl Algebra for MonomialAlgebra {
    fn dim(&self) -> usize {
        self.table.len()
    }

    fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    fn one(&self) -> SparseVec {
        SparseVec::unit(0, &self.field)
    }
}
