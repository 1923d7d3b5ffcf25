//! Hopf 2-cocycles `α` on `A(𝔾)`, the twisted algebra `ᵅH`, and the checks
//! relating `ᵅH` to a Galois object `A_{σ,a}(𝔾)`.

use std::sync::Arc;

use crate::cyclo::{CycNumber, CycloField};
use crate::error::{Error, Result};
use crate::galois::{galois_condition, GaloisAlgebra, GaloisSpec};
use crate::hopf::HopfAlgebra;
use crate::linalg::{ColumnSystem, SparseVec};
use crate::monomial::{tensor, Algebra};

/// `α(b, b')` on basis pairs of `A(𝔾)`, extended bilinearly.
#[derive(Clone, Debug)]
pub struct HopfCocycle {
    hopf: Arc<HopfAlgebra>,
    values: Vec<Vec<CycNumber>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub normalization: Option<String>,
    pub cocycle: Option<String>,
    pub invertible: bool,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.normalization.is_none() && self.cocycle.is_none() && self.invertible
    }
}

impl HopfCocycle {
    pub fn new(hopf: Arc<HopfAlgebra>, values: Vec<Vec<CycNumber>>) -> Result<HopfCocycle> {
        let dim = hopf.dim();
        if values.len() != dim || values.iter().any(|r| r.len() != dim) {
            return Err(Error::Usage(format!("cocycle matrix must be {dim} x {dim}")));
        }
        Ok(HopfCocycle { hopf, values })
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
    }

    pub fn value(&self, b: usize, c: usize) -> &CycNumber {
        &self.values[b][c]
    }

    pub fn values(&self) -> &[Vec<CycNumber>] {
        &self.values
    }

    pub fn set_value(&mut self, b: usize, c: usize, v: CycNumber) {
        self.values[b][c] = v;
    }

    fn zero(&self) -> CycNumber {
        CycNumber::zero_in(self.hopf.field())
    }

    /// `α(u, v)` for arbitrary elements.
    pub fn eval(&self, u: &SparseVec, v: &SparseVec) -> CycNumber {
        let mut acc = self.zero();
        for (i, c) in u.iter() {
            for (j, e) in v.iter() {
                acc = &acc + &(&(c * e) * &self.values[*i][*j]);
            }
        }
        acc
    }

    /// `α(b, 1) = α(1, b) = ε(b)`.
    pub fn normalization_failure(&self) -> Option<String> {
        let h = &self.hopf;
        let m = h.field().conductor();
        (0..h.dim())
            .find(|&b| {
                let e = CycNumber::from_int(m, h.counit_basis(b) as i64);
                self.values[b][0] != e || self.values[0][b] != e
            })
            .map(|b| h.label(b))
    }

    /// `α(x₁, y₁)α(x₂y₂, z) = α(y₁, z₁)α(x, y₂z₂)` on every basis triple.
    pub fn cocycle_failure(&self) -> Option<String> {
        let h = &self.hopf;
        let dim = h.dim();
        let field = h.field().clone();
        for x in 0..dim {
            for y in 0..dim {
                // left side as a functional in z
                let mut left = vec![self.zero(); dim];
                for (x1, x2, c) in h.sweedler(x) {
                    for (y1, y2, e) in h.sweedler(y) {
                        let w = &(c * e) * &self.values[x1][y1];
                        if w.is_zero() {
                            continue;
                        }
                        for (p, f) in h.mul_basis(x2, y2).iter() {
                            let wf = &w * f;
                            for (z, l) in left.iter_mut().enumerate() {
                                *l = &*l + &(&wf * &self.values[*p][z]);
                            }
                        }
                    }
                }
                for (z, l) in left.iter().enumerate() {
                    let mut right = self.zero();
                    for (y1, y2, c) in h.sweedler(y) {
                        for (z1, z2, e) in h.sweedler(z) {
                            let w = &(c * e) * &self.values[y1][z1];
                            if !w.is_zero() {
                                right = &right + &(&w * &self.eval(&SparseVec::unit(x, &field), h.mul_basis(y2, z2)));
                            }
                        }
                    }
                    if *l != right {
                        return Some(format!("({}, {}, {})", h.label(x), h.label(y), h.label(z)));
                    }
                }
            }
        }
        None
    }

    /// Convolution inverse in `Hom(H ⊗ H, k)`, checked on both sides.
    pub fn convolution_inverse(&self) -> Option<HopfCocycle> {
        let h = &self.hopf;
        let dim = h.dim();
        let field = h.field().clone();
        let mut columns: Vec<Vec<(usize, CycNumber)>> = vec![Vec::new(); dim * dim];
        for x in 0..dim {
            for y in 0..dim {
                for (x1, x2, c) in h.sweedler(x) {
                    for (y1, y2, e) in h.sweedler(y) {
                        let w = &(c * e) * &self.values[x1][y1];
                        if !w.is_zero() {
                            columns[x2 * dim + y2].push((x * dim + y, w));
                        }
                    }
                }
            }
        }
        let mut sys = ColumnSystem::new();
        for col in columns {
            sys.push(SparseVec::from_entries(col), &field);
        }
        let one = CycNumber::root_in(&field, 0);
        let mut items = Vec::new();
        for x in (0..dim).filter(|&x| h.counit_basis(x)) {
            for y in (0..dim).filter(|&y| h.counit_basis(y)) {
                items.push((x * dim + y, one.clone()));
            }
        }
        let rhs = SparseVec::from_entries(items);
        let sol = sys.solve(&rhs, &field)?;
        let mut values = vec![vec![self.zero(); dim]; dim];
        for (k, c) in sol.iter() {
            values[k / dim][k % dim] = c.clone();
        }
        let inv = HopfCocycle { hopf: Arc::clone(h), values };
        (convolve(self, &inv) && convolve(&inv, self)).then_some(inv)
    }

    pub fn report(&self) -> CocycleReport {
        CocycleReport {
            normalization: self.normalization_failure(),
            cocycle: self.cocycle_failure(),
            invertible: self.convolution_inverse().is_some(),
        }
    }

    /// Restriction to grouplike pairs `(x, x')`.
    pub fn grouplike_values(&self) -> Vec<Vec<CycNumber>> {
        let h = &self.hopf;
        let order = h.datum().group().order();
        (0..order).map(|x| (0..order).map(|y| self.values[h.index(x, 0)][h.index(y, 0)].clone()).collect()).collect()
    }
}

/// Whether `f * g = ε ⊗ ε` in `Hom(H ⊗ H, k)`.
fn convolve(f: &HopfCocycle, g: &HopfCocycle) -> bool {
    let h = &f.hopf;
    let dim = h.dim();
    let m = h.field().conductor();
    (0..dim).all(|x| {
        (0..dim).all(|y| {
            let mut acc = f.zero();
            for (x1, x2, c) in h.sweedler(x) {
                for (y1, y2, e) in h.sweedler(y) {
                    acc = &acc + &(&(&(c * e) * &f.values[x1][y1]) * &g.values[x2][y2]);
                }
            }
            acc == CycNumber::from_int(m, (h.counit_basis(x) && h.counit_basis(y)) as i64)
        })
    })
}

/// `α(x, y) = φ(x₁)φ(y₁)φ⁻¹(x₂y₂)` with `φ = Ψ`.
pub fn extract_alpha(spec: &GaloisSpec) -> Result<HopfCocycle> {
    if !galois_condition(spec) {
        return Err(Error::Usage("specification is not a Galois object".into()));
    }
    let ga = GaloisAlgebra::new(spec);
    let hopf = Arc::clone(ga.hopf());
    let dim = hopf.dim();
    let phi = crate::galois::comodule_iso_psi(spec)?;
    let phi_inv = hopf
        .convolution_inverse(&ga, &phi)
        .ok_or_else(|| Error::Internal("Psi has no convolution inverse".into()))?;
    let apply_inv = |v: &SparseVec| {
        let mut out = SparseVec::new();
        for (b, c) in v.iter() {
            out.axpy(c, &phi_inv[*b]);
        }
        out
    };
    let zero = CycNumber::zero_in(hopf.field());
    let mut values = vec![vec![zero.clone(); dim]; dim];
    for x in 0..dim {
        for y in 0..dim {
            let mut acc = SparseVec::new();
            for (x1, x2, c) in hopf.sweedler(x) {
                for (y1, y2, e) in hopf.sweedler(y) {
                    let ce = c * e;
                    let left = ga.mul(&phi[x1], &phi[y1]);
                    let right = apply_inv(hopf.mul_basis(x2, y2));
                    acc.axpy(&ce, &ga.mul(&left, &right));
                }
            }
            if acc.iter().any(|(b, _)| *b != 0) {
                return Err(Error::Internal(format!("alpha({}, {}) is not a scalar", hopf.label(x), hopf.label(y))));
            }
            values[x][y] = acc.get(0).cloned().unwrap_or_else(|| zero.clone());
        }
    }
    HopfCocycle::new(hopf, values)
}

/// `ᵅH` with `v_x v_y = α(x₁, y₁) v_{x₂y₂}` on the basis of `H`.
#[derive(Clone, Debug)]
pub struct TwistedAlgebra {
    alpha: HopfCocycle,
    table: Vec<Vec<SparseVec>>,
}

impl TwistedAlgebra {
    pub fn new(alpha: &HopfCocycle) -> TwistedAlgebra {
        let h = alpha.hopf();
        let dim = h.dim();
        let table = (0..dim)
            .map(|x| {
                (0..dim)
                    .map(|y| {
                        let mut acc = SparseVec::new();
                        for (x1, x2, c) in h.sweedler(x) {
                            for (y1, y2, e) in h.sweedler(y) {
                                let w = &(c * e) * alpha.value(x1, y1);
                                acc.axpy(&w, h.mul_basis(x2, y2));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        TwistedAlgebra { alpha: alpha.clone(), table }
    }

    pub fn alpha(&self) -> &HopfCocycle {
        &self.alpha
    }

    /// `δ(v_b) = v_{b₁} ⊗ b₂`.
    pub fn coaction_basis(&self, b: usize) -> &SparseVec {
        self.alpha.hopf().coproduct_basis(b)
    }
}

impl Algebra for TwistedAlgebra {
    fn dim(&self) -> usize {
        self.table.len()
    }

    fn field(&self) -> &Arc<CycloField> {
        self.alpha.hopf().field()
    }

    fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    fn one(&self) -> SparseVec {
        SparseVec::unit(0, self.field())
    }
}

pub fn twisted_mul(alpha: &HopfCocycle, p: &SparseVec, q: &SparseVec) -> SparseVec {
    TwistedAlgebra::new(alpha).mul(p, q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FReport {
    pub algebra_map: Option<String>,
    pub comodule_map: Option<String>,
}

impl FReport {
    pub fn passed(&self) -> bool {
        self.algebra_map.is_none() && self.comodule_map.is_none()
    }
}

/// Checks that `v_{x yⁱ} ↦ u_x u_yⁱ` is an algebra and comodule map `ᵅH → A_{σ,a}`.
pub fn verify_f(spec: &GaloisSpec, alpha: &HopfCocycle) -> FReport {
    let ga = GaloisAlgebra::new(spec);
    let tw = TwistedAlgebra::new(alpha);
    let dim = ga.dim();
    let mut algebra_map = None;
    'outer: for i in 0..dim {
        for j in 0..dim {
            if tw.mul_basis(i, j) != ga.mul_basis(i, j) {
                algebra_map = Some(format!("({}, {})", ga.label(i), ga.label(j)));
                break 'outer;
            }
        }
    }
    let comodule_map = (0..dim).find(|&b| tw.coaction_basis(b) != ga.coaction_basis(b)).map(|b| ga.label(b));
    FReport { algebra_map, comodule_map }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub beta_gamma: Option<String>,
    pub gamma_beta: Option<String>,
    /// `φ` from the closed formula equals the convolution inverse of `b ↦ v_b`.
    pub phi_is_inverse: bool,
}

impl GammaReport {
    pub fn passed(&self) -> bool {
        self.beta_gamma.is_none() && self.gamma_beta.is_none() && self.phi_is_inverse
    }
}

/// Builds `φ(x) = α⁻¹(S(x₂), x₃)·v_{S(x₁)}` and `γ(v_x ⊗ y) = v_x φ(y₁) ⊗ v_{y₂}`,
/// and checks that `γ` inverts `β(v_x ⊗ v_y) = v_x v_{y₁} ⊗ y₂`.
pub fn gamma_inverse_check(alpha: &HopfCocycle) -> Result<GammaReport> {
    let h = Arc::clone(alpha.hopf());
    let dim = h.dim();
    let field = h.field().clone();
    let tw = TwistedAlgebra::new(alpha);
    let inv = alpha
        .convolution_inverse()
        .ok_or_else(|| Error::Internal("alpha has no convolution inverse".into()))?;
    let phi: Vec<SparseVec> = (0..dim)
        .map(|x| {
            let mut acc = SparseVec::new();
            for (x1, rest, c) in h.sweedler(x) {
                let s1 = h.antipode_basis(x1);
                for (x2, x3, e) in h.sweedler(rest) {
                    let w = &(c * e) * &inv.eval(h.antipode_basis(x2), &SparseVec::unit(x3, &field));
                    acc.axpy(&w, s1);
                }
            }
            acc
        })
        .collect();
    let iota = h.identity_map();
    let phi_is_inverse = h.convolution_inverse(&tw, &iota).is_some_and(|p| p == phi);

    let beta = |x: usize, y: usize| {
        let mut out = SparseVec::new();
        for (y1, y2, c) in h.sweedler(y) {
            out.axpy(c, &tensor(tw.mul_basis(x, y1), &SparseVec::unit(y2, &field), dim));
        }
        out
    };
    let gamma = |x: usize, y: usize| {
        let mut out = SparseVec::new();
        for (y1, y2, c) in h.sweedler(y) {
            let left = tw.mul(&SparseVec::unit(x, &field), &phi[y1]);
            out.axpy(c, &tensor(&left, &SparseVec::unit(y2, &field), dim));
        }
        out
    };
    let apply = |f: &dyn Fn(usize, usize) -> SparseVec, v: &SparseVec| {
        let mut out = SparseVec::new();
        for (t, c) in v.iter() {
            out.axpy(c, &f(t / dim, t % dim));
        }
        out
    };
    let mut beta_gamma = None;
    let mut gamma_beta = None;
    for x in 0..dim {
        for y in 0..dim {
            let e = SparseVec::unit(x * dim + y, &field);
            if beta_gamma.is_none() && apply(&beta, &gamma(x, y)) != e {
                beta_gamma = Some(format!("({}, {})", h.label(x), h.label(y)));
            }
            if gamma_beta.is_none() && apply(&gamma, &beta(x, y)) != e {
                gamma_beta = Some(format!("({}, {})", h.label(x), h.label(y)));
            }
        }
    }
    Ok(GammaReport { beta_gamma, gamma_beta, phi_is_inverse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{cyclic4_sign, taft};

    #[test]
    fn trivial_twist_on_taft4() {
        let spec = GaloisSpec::trivial(taft(2), 0);
        let alpha = extract_alpha(&spec).unwrap();
        let r = alpha.report();
        assert!(r.passed(), "{r:?}");
        for row in alpha.grouplike_values() {
            assert!(row.iter().all(|v| v.is_one()));
        }
        assert!(verify_f(&spec, &alpha).passed());
        let g = gamma_inverse_check(&alpha).unwrap();
        assert!(g.passed(), "{g:?}");
    }

    #[test]
    fn twisted_power_of_v_y() {
        let spec = GaloisSpec::trivial(cyclic4_sign(0), 1);
        let alpha = extract_alpha(&spec).unwrap();
        let tw = TwistedAlgebra::new(&alpha);
        let h = alpha.hopf();
        let vy = SparseVec::unit(h.index(0, 1), h.field());
        // v_y² = a·v_{g²}
        assert_eq!(tw.mul(&vy, &vy), SparseVec::unit(h.index(2, 0), h.field()));
        assert!(verify_f(&spec, &alpha).passed());
    }

    #[test]
    fn mutated_alpha_is_caught() {
        let spec = GaloisSpec::trivial(taft(2), 1);
        let mut alpha = extract_alpha(&spec).unwrap();
        let h = Arc::clone(alpha.hopf());
        let (b, c) = (h.index(1, 1), h.index(0, 1));
        let v = alpha.value(b, c) + &CycNumber::one(4);
        alpha.set_value(b, c, v);
        let r = verify_f(&spec, &alpha);
        assert_eq!(r.algebra_map.as_deref(), Some("(e1*y, e0*y)"));
    }
}
