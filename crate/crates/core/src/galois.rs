//! Galois objects `A_{σ,a}(𝔾)`: construction, coaction, the Galois test,
//! type classification, normalization of `a` and the isomorphism test.
//!
//! For `μ ≠ 0` the last relation is `u_y^d = a·u_{g^d} + μ`; without the `μ`
//! term the coaction does not respect the relation. For `μ = 0` this is the
//! usual `u_y^d = a·u_{g^d}`.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::{CycNumber, CycloField};
use crate::error::{Error, Result};
use crate::fingroup::{lift_to, GroupDatum};
use crate::hopf::HopfAlgebra;
use crate::linalg::{self, ColumnSystem, Echelon, SparseVec};
use crate::monomial::{tensor, tensor_mul, Algebra, MonomialAlgebra, TableAlgebra};
use crate::zcocycle::{self, coboundary, CocycleTable, GaugeConstraint, GaugeFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisSpec {
    datum: Arc<GroupDatum>,
    /// Stored at the datum conductor `M`.
    sigma: CocycleTable,
    a: CycNumber,
}

impl GaloisSpec {
    pub fn new(datum: Arc<GroupDatum>, sigma: &CocycleTable, a: &CycNumber) -> Result<GaloisSpec> {
        let group = datum.group();
        if sigma.order() != group.order() {
            return Err(Error::Usage(format!(
                "cocycle has {} rows but the group has order {}",
                sigma.order(),
                group.order()
            )));
        }
        let m = datum.conductor();
        let sigma = CocycleTable::validate(group, sigma.rows().to_vec(), sigma.modulus())?.lift(m)?;
        let a = lift_to(a, m)?;
        Ok(GaloisSpec { datum, sigma, a })
    }

    pub fn trivial(datum: Arc<GroupDatum>, a: i64) -> GaloisSpec {
        let m = datum.conductor();
        let sigma = CocycleTable::trivial(datum.group().order(), m);
        GaloisSpec { datum, sigma, a: CycNumber::from_int(m, a) }
    }

    pub fn datum(&self) -> &Arc<GroupDatum> {
        &self.datum
    }

    pub fn sigma(&self) -> &CocycleTable {
        &self.sigma
    }

    pub fn a(&self) -> &CycNumber {
        &self.a
    }

    pub fn sigma_values(&self) -> Vec<Vec<CycNumber>> {
        self.sigma.values(self.datum.conductor()).expect("sigma stored at the datum conductor")
    }

    pub fn is_normalized(&self) -> bool {
        self.a.is_zero() || self.a.is_one()
    }
}

/// `A_{σ,a}(𝔾)` on the basis `u_x u_yⁱ`, indexed like `A(𝔾)`.
#[derive(Clone, Debug)]
pub struct GaloisAlgebra {
    spec: GaloisSpec,
    hopf: Arc<HopfAlgebra>,
    alg: MonomialAlgebra,
    coaction: Vec<SparseVec>,
}

impl GaloisAlgebra {
    pub fn new(spec: &GaloisSpec) -> GaloisAlgebra {
        let hopf = Arc::new(HopfAlgebra::new(Arc::clone(spec.datum())));
        GaloisAlgebra::with_hopf(spec, hopf)
    }

    pub fn with_hopf(spec: &GaloisSpec, hopf: Arc<HopfAlgebra>) -> GaloisAlgebra {
        let datum = spec.datum();
        let gd = datum.gd();
        let ypow = if gd == 0 {
            vec![(0, spec.a() + datum.mu())]
        } else {
            vec![(gd, spec.a().clone()), (0, datum.mu().clone())]
        };
        let alg = MonomialAlgebra::new(datum, Some(spec.sigma_values()), ypow);
        let coaction = coaction_table(&alg, &hopf);
        GaloisAlgebra { spec: spec.clone(), hopf, alg, coaction }
    }

    pub fn spec(&self) -> &GaloisSpec {
        &self.spec
    }

    pub fn hopf(&self) -> &Arc<HopfAlgebra> {
        &self.hopf
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

    pub fn u(&self, x: usize, i: usize) -> SparseVec {
        SparseVec::unit(self.index(x, i), self.field())
    }

    pub fn u_y(&self) -> SparseVec {
        self.u(0, 1)
    }

    pub fn label(&self, b: usize) -> String {
        self.alg.basis_label(b)
    }

    pub fn format(&self, v: &SparseVec) -> String {
        self.alg.format_element(v)
    }

    /// `ρ(b)` for a basis element, with index `a·dim H + h`.
    pub fn coaction_basis(&self, b: usize) -> &SparseVec {
        &self.coaction[b]
    }

    pub fn coaction(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (b, c) in v.iter() {
            out.axpy(c, &self.coaction[*b]);
        }
        out
    }

    pub fn coaction_columns(&self) -> &[SparseVec] {
        &self.coaction
    }
}

impl Algebra for GaloisAlgebra {
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

/// `ρ(u_x u_yⁱ) = (u_x ⊗ x)·(u_1 ⊗ y + u_y ⊗ g)ⁱ`.
pub fn coaction_table(alg: &MonomialAlgebra, hopf: &HopfAlgebra) -> Vec<SparseVec> {
    let dh = hopf.dim();
    let field = alg.field().clone();
    let d = alg.d();
    let one = CycNumber::root_in(&field, 0);
    let g = hopf.datum().g();
    let ry = SparseVec::from_entries([
        (alg.index(0, 0) * dh + hopf.index(0, 1), one.clone()),
        (alg.index(0, 1) * dh + hopf.index(g, 0), one),
    ]);
    let mut out = vec![SparseVec::new(); alg.dim()];
    for x in 0..alg.group().order() {
        let mut cur = SparseVec::unit(alg.index(x, 0) * dh + hopf.index(x, 0), &field);
        out[alg.index(x, 0)] = cur.clone();
        for i in 1..d {
            cur = tensor_mul(alg, hopf, &cur, &ry);
            out[alg.index(x, i)] = cur.clone();
        }
    }
    out
}

/// First failure of the right comodule-algebra axioms for a coaction given on a
/// basis, or `None`.
pub fn comodule_failure(alg: &dyn Algebra, coaction: &[SparseVec], hopf: &HopfAlgebra) -> Option<String> {
    let da = alg.dim();
    let dh = hopf.dim();
    let field = alg.field().clone();
    let mut r1 = SparseVec::new();
    for (k, c) in alg.one().iter() {
        r1.axpy(c, &coaction[*k]);
    }
    if r1 != tensor(&alg.one(), &hopf.one(), dh) {
        return Some("rho(1) != 1 (x) 1".into());
    }
    for b in 0..da {
        let mut left = SparseVec::new();
        let mut right = SparseVec::new();
        let mut counit = SparseVec::new();
        for (t, c) in coaction[b].iter() {
            let (a, h) = (t / dh, t % dh);
            left.axpy(c, &tensor(&coaction[a], &SparseVec::unit(h, &field), dh));
            right.axpy(c, &tensor(&SparseVec::unit(a, &field), hopf.coproduct_basis(h), dh * dh));
            if hopf.counit_basis(h) {
                counit.axpy(c, &SparseVec::unit(a, &field));
            }
        }
        if left != right {
            return Some(format!("coassociativity fails at basis {b}"));
        }
        if counit != SparseVec::unit(b, &field) {
            return Some(format!("counit law fails at basis {b}"));
        }
    }
    for i in 0..da {
        for j in 0..da {
            let mut l = SparseVec::new();
            for (k, c) in alg.mul_basis(i, j).iter() {
                l.axpy(c, &coaction[*k]);
            }
            if l != tensor_mul(alg, hopf, &coaction[i], &coaction[j]) {
                return Some(format!("rho is not multiplicative at basis pair ({i}, {j})"));
            }
        }
    }
    None
}

/// `a·σ(g^d, x) = a·χ(x)^d·σ(x, g^d)` for all `x`.
pub fn galois_condition(spec: &GaloisSpec) -> bool {
    if spec.a.is_zero() {
        return true;
    }
    let datum = &spec.datum;
    let m = datum.conductor();
    let h = datum.gd();
    let chi_d = datum.chi().power(datum.d());
    (0..datum.group().order()).all(|x| {
        (spec.sigma.exponent(h, x) + m - spec.sigma.exponent(x, h)) % m == chi_d.exponent(x) % m
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisReport {
    /// Dimension of the algebra actually presented by the relations.
    pub dimension: usize,
    pub coinvariants: usize,
    pub beta_rank: usize,
    pub beta_rows: usize,
    pub beta_cols: usize,
    pub comodule_algebra: bool,
    pub galois: bool,
}

/// The ideal of the rewriting-table algebra generated by its associators.
/// Its quotient is the algebra presented by the relations; it is zero when
/// the rewriting system is confluent.
fn relation_ideal(alg: &dyn Algebra) -> Echelon {
    let dim = alg.dim();
    let field = alg.field().clone();
    let mut ideal = Echelon::new();
    let mut pending = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            let ab = alg.mul_basis(a, b).clone();
            for c in 0..dim {
                let l = alg.mul(&ab, &SparseVec::unit(c, &field));
                let r = alg.mul(&SparseVec::unit(a, &field), alg.mul_basis(b, c));
                let v = l.sub(&r);
                if !v.is_zero() && ideal.insert(v.clone()) {
                    pending.push(v);
                }
            }
        }
    }
    while let Some(v) = pending.pop() {
        if ideal.rank() == dim {
            break;
        }
        for j in 0..dim {
            let e = SparseVec::unit(j, &field);
            for w in [alg.mul(&v, &e), alg.mul(&e, &v)] {
                if ideal.insert(w.clone()) {
                    pending.push(w);
                }
            }
        }
    }
    ideal
}

struct Quotient {
    ideal: Echelon,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Quotient {
    fn new(ideal: Echelon, dim: usize) -> Quotient {
        let pivots: Vec<usize> = ideal.pivots().collect();
        let basis: Vec<usize> = (0..dim).filter(|i| pivots.binary_search(i).is_err()).collect();
        let mut position = vec![None; dim];
        for (p, &b) in basis.iter().enumerate() {
            position[b] = Some(p);
        }
        Quotient { ideal, basis, position }
    }

    fn project(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        self.ideal.reduce(&mut w);
        w.map_indices(|i| self.position[i].expect("reduced vectors avoid pivots"))
    }

    /// Projects the first leg of an element of `V ⊗ H`.
    fn project_left(&self, v: &SparseVec, dh: usize) -> SparseVec {
        let mut legs: std::collections::BTreeMap<usize, Vec<(usize, CycNumber)>> = Default::default();
        for (t, c) in v.iter() {
            legs.entry(t % dh).or_default().push((t / dh, c.clone()));
        }
        let mut out = Vec::new();
        for (h, items) in legs {
            for (a, c) in self.project(&SparseVec::from_entries(items)).into_entries() {
                out.push((a * dh + h, c));
            }
        }
        SparseVec::from_entries(out)
    }
}

/// Coinvariants and the rank of `β(a ⊗ b) = (a ⊗ 1)ρ(b)` on the presented algebra.
pub fn galois_verify(spec: &GaloisSpec) -> Result<GaloisReport> {
    let ga = GaloisAlgebra::new(spec);
    let hopf = Arc::clone(ga.hopf());
    let dim = ga.dim();
    let dh = hopf.dim();
    let field = ga.field().clone();
    let quotient = Quotient::new(relation_ideal(&ga), dim);
    for row in quotient.ideal.rref() {
        if !quotient.project_left(&ga.coaction(&row), dh).is_zero() {
            return Err(Error::Internal("coaction does not preserve the relation ideal".into()));
        }
    }
    let qd = quotient.basis.len();
    let table: Vec<Vec<SparseVec>> = quotient
        .basis
        .iter()
        .map(|&i| quotient.basis.iter().map(|&j| quotient.project(ga.mul_basis(i, j))).collect())
        .collect();
    let qalg = TableAlgebra::new(field.clone(), table, quotient.project(&ga.one()));
    let coaction: Vec<SparseVec> =
        quotient.basis.iter().map(|&b| quotient.project_left(ga.coaction_basis(b), dh)).collect();

    let mut sys = ColumnSystem::new();
    for (p, r) in coaction.iter().enumerate() {
        sys.push(r.sub(&SparseVec::unit(p * dh, &field)), &field);
    }
    let coinvariants = qd - sys.rank();

    let mut beta = Vec::with_capacity(qd * qd);
    for i in 0..qd {
        for r in &coaction {
            let mut v = Vec::new();
            for (t, c) in r.iter() {
                for (l, e) in qalg.mul_basis(i, t / dh).iter() {
                    v.push((l * dh + t % dh, c * e));
                }
            }
            beta.push(SparseVec::from_entries(v));
        }
    }
    let beta_rank = linalg::rank(beta);
    let comodule_algebra = qd == 0 || comodule_failure(&qalg, &coaction, &hopf).is_none();
    let galois = comodule_algebra && coinvariants == 1 && beta_rank == qd * qd && qd == dh;
    Ok(GaloisReport {
        dimension: qd,
        coinvariants,
        beta_rank,
        beta_rows: qd * qd,
        beta_cols: qd * dh,
        comodule_algebra,
        galois,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GaloisType {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for GaloisType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GaloisType::I => "I",
            GaloisType::II => "II",
            GaloisType::III => "III",
            GaloisType::IV => "IV",
            GaloisType::V => "V",
            GaloisType::VI => "VI",
        };
        f.write_str(s)
    }
}

pub fn classify_type(datum: &GroupDatum) -> Result<GaloisType> {
    if !datum.mu().is_zero() {
        return Ok(GaloisType::VI);
    }
    let chi_d_trivial = datum.chi().power(datum.d()).is_trivial();
    Ok(match (datum.d() == datum.n(), chi_d_trivial) {
        (true, true) => GaloisType::I,
        (true, false) => GaloisType::II,
        (false, true) => GaloisType::III,
        (false, false) => match zcocycle::commutation_witness(datum)? {
            None => GaloisType::IV,
            Some(_) => GaloisType::V,
        },
    })
}

/// Rescales `u_x ↦ ν(x)u_x` with `ν(g^d) = a` to reach `a = 1` (types III, V, VI).
pub fn normalize_spec(spec: &GaloisSpec) -> Result<GaloisSpec> {
    if !galois_condition(spec) {
        return Err(Error::Usage("specification is not a Galois object".into()));
    }
    if spec.a.is_zero() {
        return Ok(spec.clone());
    }
    match classify_type(&spec.datum)? {
        GaloisType::I => Ok(spec.clone()),
        // the condition already forces a = 0 here
        GaloisType::II | GaloisType::IV => Err(Error::Internal("Galois condition admitted a != 0".into())),
        GaloisType::III | GaloisType::V | GaloisType::VI => {
            let m = spec.datum.conductor();
            let k = spec.a.root_exponent().ok_or_else(|| {
                Error::UnsupportedScalar(format!("a = {} is not a root of unity in mu_{m}", spec.a))
            })?;
            let group = spec.datum.group();
            let mut exps = vec![0u32; group.order()];
            exps[spec.datum.gd()] = k;
            let nu = GaugeFunction::new(m, exps)?;
            let sigma = coboundary(&nu, group).product(&spec.sigma, m)?;
            Ok(GaloisSpec { datum: Arc::clone(&spec.datum), sigma, a: CycNumber::one(m) })
        }
    }
}

/// A gauge `ν` with `σ = ∂ν·τ` and `b = a·ν(g^d)`, for normalized specs.
pub fn iso_test(s1: &GaloisSpec, s2: &GaloisSpec) -> Result<Option<GaugeFunction>> {
    if s1.datum != s2.datum {
        return Err(Error::Usage("specifications have different group data".into()));
    }
    for s in [s1, s2] {
        if !s.is_normalized() {
            return Err(Error::Usage(format!("a = {} is not normalized to 0 or 1", s.a)));
        }
        if !galois_condition(s) {
            return Err(Error::Usage("specification is not a Galois object".into()));
        }
    }
    if s1.a != s2.a {
        return Ok(None);
    }
    let constraint = s1
        .a
        .is_one()
        .then(|| GaugeConstraint { element: s1.datum.gd(), value: CycNumber::one(s1.datum.conductor()) });
    zcocycle::cohomologous(s1.datum.group(), &s1.sigma, &s2.sigma, constraint.as_ref())
}

/// `Ψ: x yⁱ ↦ u_x u_yⁱ` as columns, after checking `ρ∘Ψ = (Ψ⊗id)∘Δ`.
pub fn comodule_iso_psi(spec: &GaloisSpec) -> Result<Vec<SparseVec>> {
    if !galois_condition(spec) {
        return Err(Error::Usage("specification is not a Galois object".into()));
    }
    let ga = GaloisAlgebra::new(spec);
    let hopf = ga.hopf();
    for b in 0..ga.dim() {
        if ga.coaction_basis(b) != hopf.coproduct_basis(b) {
            return Err(Error::Internal(format!("Psi does not intertwine the coactions at {}", ga.label(b))));
        }
    }
    Ok(hopf.identity_map())
}
