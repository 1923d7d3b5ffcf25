//! The monomial Hopf algebra `A(𝔾)`: product, coproduct, counit, antipode,
//! convolution inverses and an exhaustive axiom checker.

use std::sync::Arc;

use crate::cyclo::{CycNumber, CycloField};
use crate::fingroup::GroupDatum;
use crate::linalg::{ColumnSystem, SparseVec};
use crate::monomial::{tensor, tensor_mul, Algebra, MonomialAlgebra};

#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    datum: Arc<GroupDatum>,
    alg: MonomialAlgebra,
    delta: Vec<SparseVec>,
    antipode: Vec<SparseVec>,
}

/// Outcome of one axiom: `None` on success, else a witness description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.failure.is_some())
    }
}

impl HopfAlgebra {
    pub fn new(datum: Arc<GroupDatum>) -> HopfAlgebra {
        let field = datum.field();
        // y^d = μ·1 − μ·g^d
        let mu = datum.mu().clone();
        let ypow = vec![(0, mu.clone()), (datum.gd(), -mu)];
        let ypow = if datum.gd() == 0 { vec![(0, CycNumber::zero_in(&field))] } else { ypow };
        let alg = MonomialAlgebra::new(&datum, None, ypow);
        let mut h = HopfAlgebra { datum, alg, delta: Vec::new(), antipode: Vec::new() };
        h.delta = h.compute_delta();
        let sy = h.default_antipode_of_y();
        h.antipode = h.compute_antipode(&sy);
        h
    }

    pub fn datum(&self) -> &Arc<GroupDatum> {
        &self.datum
    }

    pub fn algebra(&self) -> &MonomialAlgebra {
        &self.alg
    }

    pub fn index(&self, x: usize, i: usize) -> usize {
        self.alg.index(x, i)
    }

    pub fn split(&self, b: usize) -> (usize, usize) {
        self.alg.split(b)
    }

    pub fn basis(&self, x: usize, i: usize) -> SparseVec {
        SparseVec::unit(self.index(x, i), self.field())
    }

    pub fn y(&self) -> SparseVec {
        self.basis(0, 1 % self.alg.d())
    }

    pub fn label(&self, b: usize) -> String {
        self.alg.basis_label(b)
    }

    pub fn format(&self, v: &SparseVec) -> String {
        self.alg.format_element(v)
    }

    fn compute_delta(&self) -> Vec<SparseVec> {
        let dim = self.dim();
        let field = self.field().clone();
        let d = self.alg.d();
        let g = self.datum.g();
        let one = CycNumber::one(field.conductor());
        // Δ(y) = 1⊗y + y⊗g
        let dy = SparseVec::from_entries([
            (self.index(0, 0) * dim + self.index(0, 1 % d), one.clone()),
            (self.index(0, 1 % d) * dim + self.index(g, 0), one.clone()),
        ]);
        let mut out = vec![SparseVec::new(); dim];
        for x in 0..self.datum.group().order() {
            let mut cur = SparseVec::unit(self.index(x, 0) * dim + self.index(x, 0), &field);
            out[self.index(x, 0)] = cur.clone();
            for i in 1..d {
                cur = tensor_mul(&self.alg, &self.alg, &cur, &dy);
                out[self.index(x, i)] = cur.clone();
            }
        }
        out
    }

    /// `S(y) = −y·g⁻¹`.
    pub fn default_antipode_of_y(&self) -> SparseVec {
        let ginv = self.datum.group().inv(self.datum.g());
        let m1 = -CycNumber::one(self.field().conductor());
        self.mul(&self.y(), &self.basis(ginv, 0)).scale(&m1)
    }

    fn compute_antipode(&self, sy: &SparseVec) -> Vec<SparseVec> {
        let group = self.datum.group();
        let mut out = vec![SparseVec::new(); self.dim()];
        for x in 0..group.order() {
            let sx = self.basis(group.inv(x), 0);
            let mut pow = self.one();
            for i in 0..self.alg.d() {
                out[self.index(x, i)] = self.mul(&pow, &sx);
                pow = self.mul(&pow, sy);
            }
        }
        out
    }

    /// A copy whose antipode is the anti-multiplicative extension of the given `S(y)`.
    pub fn with_antipode_of_y(&self, sy: &SparseVec) -> HopfAlgebra {
        let mut h = self.clone();
        h.antipode = h.compute_antipode(sy);
        h
    }

    pub fn coproduct(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (b, c) in a.iter() {
            out.axpy(c, &self.delta[*b]);
        }
        out
    }

    pub fn coproduct_basis(&self, b: usize) -> &SparseVec {
        &self.delta[b]
    }

    /// Terms `(b₁, b₂, c)` of `Δ(b)`.
    pub fn sweedler(&self, b: usize) -> impl Iterator<Item = (usize, usize, &CycNumber)> + '_ {
        let dim = self.dim();
        self.delta[b].iter().map(move |(t, c)| (t / dim, t % dim, c))
    }

    pub fn counit_basis(&self, b: usize) -> bool {
        self.split(b).1 == 0
    }

    pub fn counit(&self, a: &SparseVec) -> CycNumber {
        let mut acc = CycNumber::zero_in(self.field());
        for (b, c) in a.iter() {
            if self.counit_basis(*b) {
                acc = &acc + c;
            }
        }
        acc
    }

    pub fn antipode(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (b, c) in a.iter() {
            out.axpy(c, &self.antipode[*b]);
        }
        out
    }

    pub fn antipode_basis(&self, b: usize) -> &SparseVec {
        &self.antipode[b]
    }

    /// Exhaustive check of the bialgebra and antipode axioms on basis elements.
    pub fn axiom_report(&self) -> AxiomReport {
        let dim = self.dim();
        let field = self.field().clone();
        let label = |b: usize| self.label(b);
        let mut checks = Vec::new();
        let mut record = |name: &'static str, failure: Option<String>| checks.push(AxiomCheck { name, failure });

        record(
            "closure",
            (0..dim)
                .flat_map(|a| (0..dim).map(move |b| (a, b)))
                .find(|&(a, b)| self.mul_basis(a, b).iter().any(|(i, _)| *i >= dim))
                .map(|(a, b)| format!("{} * {}", label(a), label(b))),
        );

        let mut assoc = None;
        'a: for a in 0..dim {
            for b in 0..dim {
                let ab = self.mul_basis(a, b).clone();
                for c in 0..dim {
                    let l = self.mul(&ab, &SparseVec::unit(c, &field));
                    let r = self.mul(&SparseVec::unit(a, &field), self.mul_basis(b, c));
                    if l != r {
                        assoc = Some(format!("({}, {}, {})", label(a), label(b), label(c)));
                        break 'a;
                    }
                }
            }
        }
        record("associativity", assoc);

        record(
            "unit",
            (0..dim)
                .find(|&b| {
                    let e = SparseVec::unit(b, &field);
                    self.mul_basis(0, b) != &e || self.mul_basis(b, 0) != &e
                })
                .map(label),
        );

        record(
            "coassociativity",
            (0..dim)
                .find(|&b| {
                    let mut left = SparseVec::new();
                    let mut right = SparseVec::new();
                    for (b1, b2, c) in self.sweedler(b) {
                        left.axpy(c, &tensor(&self.delta[b1], &SparseVec::unit(b2, &field), dim));
                        right.axpy(c, &tensor(&SparseVec::unit(b1, &field), &self.delta[b2], dim * dim));
                    }
                    left != right
                })
                .map(label),
        );

        record(
            "counit",
            (0..dim)
                .find(|&b| {
                    let mut left = SparseVec::new();
                    let mut right = SparseVec::new();
                    for (b1, b2, c) in self.sweedler(b) {
                        if self.counit_basis(b1) {
                            left.axpy(c, &SparseVec::unit(b2, &field));
                        }
                        if self.counit_basis(b2) {
                            right.axpy(c, &SparseVec::unit(b1, &field));
                        }
                    }
                    let e = SparseVec::unit(b, &field);
                    left != e || right != e
                })
                .map(label),
        );

        let mut dmul = None;
        let mut emul = None;
        'd: for a in 0..dim {
            for b in 0..dim {
                let prod = self.mul_basis(a, b);
                if dmul.is_none() {
                    let l = self.coproduct(prod);
                    let r = tensor_mul(&self.alg, &self.alg, &self.delta[a], &self.delta[b]);
                    if l != r {
                        dmul = Some(format!("({}, {})", label(a), label(b)));
                    }
                }
                if emul.is_none() {
                    let l = self.counit(prod);
                    let r = self.counit_basis(a) && self.counit_basis(b);
                    if l != CycNumber::from_int(field.conductor(), r as i64) {
                        emul = Some(format!("({}, {})", label(a), label(b)));
                    }
                }
                if dmul.is_some() && emul.is_some() {
                    break 'd;
                }
            }
        }
        record("coproduct_multiplicative", dmul);
        record("counit_multiplicative", emul);

        record(
            "antipode",
            (0..dim)
                .find(|&b| {
                    let mut left = SparseVec::new();
                    let mut right = SparseVec::new();
                    for (b1, b2, c) in self.sweedler(b) {
                        left.axpy(c, &self.mul(&self.antipode[b1], &SparseVec::unit(b2, &field)));
                        right.axpy(c, &self.mul(&SparseVec::unit(b1, &field), &self.antipode[b2]));
                    }
                    let e = if self.counit_basis(b) { self.one() } else { SparseVec::new() };
                    left != e || right != e
                })
                .map(label),
        );
        AxiomReport { checks }
    }

    /// `(f * g)(h) = Σ f(h₁)·g(h₂)` for maps `H → A` given column-wise.
    pub fn convolution(&self, target: &dyn Algebra, f: &[SparseVec], g: &[SparseVec]) -> Vec<SparseVec> {
        (0..self.dim())
            .map(|h| {
                let mut acc = SparseVec::new();
                for (h1, h2, c) in self.sweedler(h) {
                    acc.axpy(c, &target.mul(&f[h1], &g[h2]));
                }
                acc
            })
            .collect()
    }

    /// The unit `ηε` of the convolution algebra `Hom(H, A)`.
    pub fn convolution_unit(&self, target: &dyn Algebra) -> Vec<SparseVec> {
        (0..self.dim()).map(|h| if self.counit_basis(h) { target.one() } else { SparseVec::new() }).collect()
    }

    /// Solves `φ * ψ = ηε` for `ψ` and checks `ψ * φ = ηε` as well.
    pub fn convolution_inverse(&self, target: &dyn Algebra, phi: &[SparseVec]) -> Option<Vec<SparseVec>> {
        let dh = self.dim();
        let da = target.dim();
        if phi.len() != dh {
            return None;
        }
        let field = target.field().clone();
        // unknown ψ_{k,h'} (coefficient of basis k in ψ(h')) has index h'·da + k;
        // equation block h holds the coordinates of Σ φ(h₁)ψ(h₂)
        let mut columns: Vec<Vec<(usize, CycNumber)>> = vec![Vec::new(); dh * da];
        for h in 0..dh {
            for (h1, h2, c) in self.sweedler(h) {
                for k in 0..da {
                    let p = target.mul(&phi[h1], &SparseVec::unit(k, &field));
                    for (i, v) in p.iter() {
                        columns[h2 * da + k].push((h * da + i, c * v));
                    }
                }
            }
        }
        let mut sys = ColumnSystem::new();
        for col in columns {
            sys.push(SparseVec::from_entries(col), &field);
        }
        let rhs = SparseVec::from_entries(
            (0..dh).filter(|&h| self.counit_basis(h)).map(|h| (h * da, CycNumber::root_in(&field, 0))),
        );
        let x = sys.solve(&rhs, &field)?;
        let mut psi = vec![Vec::new(); dh];
        for (idx, c) in x.iter() {
            psi[idx / da].push((idx % da, c.clone()));
        }
        let psi: Vec<SparseVec> = psi.into_iter().map(SparseVec::from_entries).collect();
        let unit = self.convolution_unit(target);
        (self.convolution(target, phi, &psi) == unit && self.convolution(target, &psi, phi) == unit).then_some(psi)
    }

    /// Identity map `H → H` as columns.
    pub fn identity_map(&self) -> Vec<SparseVec> {
        (0..self.dim()).map(|b| SparseVec::unit(b, self.field())).collect()
    }
}

impl Algebra for HopfAlgebra {
    fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn field(&self) -> &Arc<CycloField> {
        self.alg.field()
    }

    fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        self.alg.mul_basis(i, j)
    }

    fn one(&self) -> SparseVec {
        self.alg.one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::FiniteGroup;

    pub(crate) fn taft(n: usize) -> Arc<GroupDatum> {
        let g = Arc::new(FiniteGroup::cyclic(n).unwrap());
        let chi: Vec<_> = (0..n).map(|k| CycNumber::root_of_unity(n as u32, k as i64)).collect();
        Arc::new(GroupDatum::validate(g, 1, &chi, &CycNumber::zero(n as u32)).unwrap())
    }

    #[test]
    fn taft4_products() {
        let h = HopfAlgebra::new(taft(2));
        let y = h.y();
        assert!(h.mul(&y, &y).is_zero());
        let g = h.basis(1, 0);
        // y·g = χ(g)·g·y = −g·y
        let m1 = -CycNumber::one(4);
        assert_eq!(h.mul(&y, &g), h.basis(1, 1).scale(&m1));
        assert_eq!(h.mul(&h.one(), &y), y);
    }

    #[test]
    fn taft4_coalgebra() {
        let h = HopfAlgebra::new(taft(2));
        let dim = h.dim();
        assert_eq!(h.coproduct(&h.basis(1, 0)), tensor(&h.basis(1, 0), &h.basis(1, 0), dim));
        assert_eq!(h.coproduct(&h.one()), tensor(&h.one(), &h.one(), dim));
        let y = h.y();
        assert!(h.coproduct(&h.mul(&y, &y)).is_zero());
        assert!(h.counit(&y).is_zero());
        assert!(h.counit(&h.basis(1, 0)).is_one());
        assert_eq!(h.antipode(&h.one()), h.one());
        // S²(y) = −y ≠ y
        let s2 = h.antipode(&h.antipode(&y));
        assert_eq!(s2, y.scale(&-CycNumber::one(4)));
    }

    #[test]
    fn axioms_hold_on_taft_algebras() {
        for n in [2, 3, 4] {
            let r = HopfAlgebra::new(taft(n)).axiom_report();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
    }

    #[test]
    fn corrupted_antipode_is_detected() {
        let h = HopfAlgebra::new(taft(2));
        let bad = h.default_antipode_of_y().scale(&-CycNumber::one(4));
        let r = h.with_antipode_of_y(&bad).axiom_report();
        let f = r.first_failure().unwrap();
        assert_eq!(f.name, "antipode");
        assert_eq!(f.failure.as_deref(), Some("e0*y"));
    }

    #[test]
    fn convolution_inverses() {
        let h = HopfAlgebra::new(taft(3));
        let inv = h.convolution_inverse(&h, &h.identity_map()).unwrap();
        let s: Vec<SparseVec> = (0..h.dim()).map(|b| h.antipode_basis(b).clone()).collect();
        assert_eq!(inv, s);
        let unit = h.convolution_unit(&h);
        assert_eq!(h.convolution_inverse(&h, &unit).unwrap(), unit);
    }
}
