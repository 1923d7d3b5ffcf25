//! Normalized root-of-unity 2-cocycles on a finite group as exponent tables mod `N`.

use std::fmt;

use crate::cyclo::CycNumber;
use crate::error::{Error, Result};
use crate::fingroup::{FiniteGroup, GroupDatum};
use crate::snf::{self, md, smith_mod};

/// `σ(x, y) = ζ_N^{e(x, y)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CocycleTable {
    modulus: u32,
    exps: Vec<Vec<u32>>,
}

/// `ν(x) = ζ_M^{f(x)}` with `f(1) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaugeFunction {
    modulus: u32,
    exps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleViolation {
    Shape,
    NotNormalized { x: usize },
    Law { x: usize, y: usize, z: usize },
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleViolation::Shape => write!(f, "table shape does not match the group"),
            CocycleViolation::NotNormalized { x } => write!(f, "not normalized at e{x}"),
            CocycleViolation::Law { x, y, z } => {
                write!(f, "cocycle law fails at (e{x}, e{y}, e{z})")
            }
        }
    }
}

impl CocycleTable {
    pub fn trivial(order: usize, modulus: u32) -> CocycleTable {
        CocycleTable { modulus, exps: vec![vec![0; order]; order] }
    }

    /// Accepts iff normalized and the law holds on every triple.
    pub fn validate(group: &FiniteGroup, exps: Vec<Vec<u32>>, modulus: u32) -> Result<CocycleTable> {
        if modulus == 0 {
            return Err(Error::Usage("cocycle modulus must be positive".into()));
        }
        let t = CocycleTable { modulus, exps: exps.iter().map(|r| r.iter().map(|&e| e % modulus).collect()).collect() };
        match t.violations(group).first() {
            None => Ok(t),
            Some(v) => Err(Error::Validation(v.to_string())),
        }
    }

    /// All violations found, the law being reported at its first failing triple.
    pub fn violations(&self, group: &FiniteGroup) -> Vec<CocycleViolation> {
        let n = group.order();
        if self.exps.len() != n || self.exps.iter().any(|r| r.len() != n) {
            return vec![CocycleViolation::Shape];
        }
        let mut out = Vec::new();
        for x in 0..n {
            if self.exps[x][0] != 0 || self.exps[0][x] != 0 {
                out.push(CocycleViolation::NotNormalized { x });
            }
        }
        if let Some((x, y, z)) = self.law_failure(group) {
            out.push(CocycleViolation::Law { x, y, z });
        }
        out
    }

    fn law_failure(&self, group: &FiniteGroup) -> Option<(usize, usize, usize)> {
        let n = group.order();
        let m = self.modulus;
        for x in 0..n {
            for y in 0..n {
                let xy = group.mul(x, y);
                for z in 0..n {
                    let lhs = self.exps[x][y] + self.exps[xy][z];
                    let rhs = self.exps[y][z] + self.exps[x][group.mul(y, z)];
                    if lhs % m != rhs % m {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.exps.len()
    }

    pub fn exponent(&self, x: usize, y: usize) -> u32 {
        self.exps[x][y]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().flatten().all(|&e| e == 0)
    }

    /// Same cocycle with exponents mod a multiple `m` of the modulus.
    pub fn lift(&self, m: u32) -> Result<CocycleTable> {
        if m % self.modulus != 0 {
            return Err(Error::UnsupportedScalar(format!(
                "cocycle modulus {} does not divide {m}",
                self.modulus
            )));
        }
        let k = m / self.modulus;
        Ok(CocycleTable { modulus: m, exps: self.exps.iter().map(|r| r.iter().map(|&e| e * k).collect()).collect() })
    }

    /// Pointwise product; both moduli must divide `m`.
    pub fn product(&self, other: &CocycleTable, m: u32) -> Result<CocycleTable> {
        let (a, b) = (self.lift(m)?, other.lift(m)?);
        let exps = a.exps.iter().zip(&b.exps).map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x + y) % m).collect()).collect();
        Ok(CocycleTable { modulus: m, exps })
    }

    pub fn inverse(&self) -> CocycleTable {
        let m = self.modulus;
        CocycleTable { modulus: m, exps: self.exps.iter().map(|r| r.iter().map(|&e| (m - e) % m).collect()).collect() }
    }

    /// Values as field elements of conductor `m` (a multiple of the modulus).
    pub fn values(&self, m: u32) -> Result<Vec<Vec<CycNumber>>> {
        let l = self.lift(m)?;
        Ok(l.exps.iter().map(|r| r.iter().map(|&e| CycNumber::root_of_unity(m, e as i64)).collect()).collect())
    }

    /// `x ↦ e(h, x) − e(x, h)` mod the modulus.
    pub fn commutation_ratio(&self, h: usize) -> Vec<u32> {
        let m = self.modulus;
        (0..self.order()).map(|x| (self.exps[h][x] + m - self.exps[x][h]) % m).collect()
    }
}

impl GaugeFunction {
    pub fn new(modulus: u32, exps: Vec<u32>) -> Result<GaugeFunction> {
        if exps.first().is_some_and(|&e| e % modulus != 0) {
            return Err(Error::Usage("gauge must satisfy nu(e0) = 1".into()));
        }
        Ok(GaugeFunction { modulus, exps: exps.into_iter().map(|e| e % modulus).collect() })
    }

    pub fn trivial(order: usize, modulus: u32) -> GaugeFunction {
        GaugeFunction { modulus, exps: vec![0; order] }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, x: usize) -> u32 {
        self.exps[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// `∂ν(x, y) = ν(x)ν(y)ν(xy)⁻¹`, i.e. `f(x) + f(y) − f(xy)` mod `M`.
pub fn coboundary(nu: &GaugeFunction, group: &FiniteGroup) -> CocycleTable {
    let n = group.order();
    let m = nu.modulus;
    let exps = (0..n)
        .map(|x| (0..n).map(|y| (nu.exps[x] + nu.exps[y] + m - nu.exps[group.mul(x, y)]) % m).collect())
        .collect();
    CocycleTable { modulus: m, exps }
}

fn pair_index(order: usize, x: usize, y: usize) -> usize {
    (x - 1) * (order - 1) + (y - 1)
}

/// Rows of the cocycle-law system in the unknowns `e(x, y)`, `x, y ≠ 1`.
fn law_system(group: &FiniteGroup) -> Vec<Vec<i64>> {
    let n = group.order();
    let unknowns = (n - 1) * (n - 1);
    let mut rows = Vec::new();
    for x in 1..n {
        for y in 1..n {
            for z in 1..n {
                let mut r = vec![0i64; unknowns];
                let mut add = |a: usize, b: usize, c: i64| {
                    if a != 0 && b != 0 {
                        r[pair_index(n, a, b)] += c;
                    }
                };
                add(x, y, 1);
                add(group.mul(x, y), z, 1);
                add(y, z, -1);
                add(x, group.mul(y, z), -1);
                if r.iter().any(|&v| v != 0) {
                    rows.push(r);
                }
            }
        }
    }
    rows
}

fn table_from_unknowns(order: usize, modulus: u32, v: &[i64]) -> CocycleTable {
    let mut exps = vec![vec![0u32; order]; order];
    for x in 1..order {
        for y in 1..order {
            exps[x][y] = md(v[pair_index(order, x, y)], modulus as i64) as u32;
        }
    }
    CocycleTable { modulus, exps }
}

/// Rows `f(x) + f(y) − f(xy)` in the unknowns `f(x)`, `x ≠ 1`.
fn coboundary_system(group: &FiniteGroup) -> Vec<Vec<i64>> {
    let n = group.order();
    let mut rows = Vec::new();
    for x in 1..n {
        for y in 1..n {
            let mut r = vec![0i64; n - 1];
            r[x - 1] += 1;
            r[y - 1] += 1;
            let xy = group.mul(x, y);
            if xy != 0 {
                r[xy - 1] -= 1;
            }
            rows.push(r);
        }
    }
    rows
}

/// Solution data for `Z²(G, μ_N)` together with the classes it represents in `H²(G, k^×)`.
#[derive(Clone, Debug)]
pub struct CocycleLattice {
    pub modulus: u32,
    pub particular: CocycleTable,
    /// Generators of the homogeneous solutions with their additive orders.
    pub homogeneous: Vec<CocycleTable>,
    pub homogeneous_orders: Vec<i64>,
    /// Generators of `Z²(G, μ_N) ∩ B²(G, k^×)`.
    pub coboundaries: Vec<CocycleTable>,
    /// Invariant factors of the quotient, each > 1.
    pub invariants: Vec<i64>,
    /// One cocycle per class of the quotient, the trivial class first.
    pub representatives: Vec<CocycleTable>,
}

/// Solves the normalized cocycle system over `Z/N` via Smith normal form.
///
/// The coboundary part consists of the `μ_N`-valued `∂ν` with `ν` ranging
/// over all of `k^×`-valued gauges. Such `ν` may be taken `μ_{N·exp(G)}`-valued,
/// so the generators are the `∂δ_x` plus `∂h̃ / exp(G)` for lifts `h̃` of
/// homomorphisms `G → Z/exp(G)`.
pub fn cocycle_lattice(group: &FiniteGroup, n: u32) -> Result<CocycleLattice> {
    if n == 0 {
        return Err(Error::Usage("modulus must be positive".into()));
    }
    let order = group.order();
    let ni = n as i64;
    let trivial = CocycleTable::trivial(order, n);
    if order == 1 {
        return Ok(CocycleLattice {
            modulus: n,
            particular: trivial.clone(),
            homogeneous: Vec::new(),
            homogeneous_orders: Vec::new(),
            coboundaries: Vec::new(),
            invariants: Vec::new(),
            representatives: vec![trivial],
        });
    }
    let unknowns = (order - 1) * (order - 1);
    let law = law_system(group);
    let sf = smith_mod(&law, unknowns, ni, &[], false);
    let (gens, orders) = sf.kernel();
    let homogeneous: Vec<CocycleTable> = gens.iter().map(|v| table_from_unknowns(order, n, v)).collect();

    // coboundary generators
    let e = group.exponent() as i64;
    let mut cob: Vec<CocycleTable> = Vec::new();
    for x in 1..order {
        let mut f = vec![0u32; order];
        f[x] = 1;
        cob.push(coboundary(&GaugeFunction { modulus: n, exps: f }, group));
    }
    let homs = smith_mod(&coboundary_system(group), order - 1, e, &[], false).kernel().0;
    for h in homs {
        let mut f = vec![0i64; order];
        f[1..].copy_from_slice(&h);
        let mut exps = vec![vec![0u32; order]; order];
        for x in 0..order {
            for y in 0..order {
                let v = f[x] + f[y] - f[group.mul(x, y)];
                debug_assert_eq!(v % e, 0);
                exps[x][y] = md(v / e, ni) as u32;
            }
        }
        cob.push(CocycleTable { modulus: n, exps });
    }

    // quotient in t-coordinates: Z ≅ ⊕ Z/g_i with y = Q⁻¹x, t_i = y_i / (N/g_i)
    let pivots: Vec<(usize, i64, i64)> = (0..unknowns)
        .filter_map(|i| {
            let (step, ord) = match sf.diag.get(i) {
                Some(&d) => (ni / snf::gcd(d, ni), snf::gcd(d, ni)),
                None => (1, ni),
            };
            (ord > 1).then_some((i, step, ord))
        })
        .collect();
    let to_t = |t: &CocycleTable| -> Vec<i64> {
        let x: Vec<i64> = (1..order)
            .flat_map(|a| (1..order).map(move |b| (a, b)))
            .map(|(a, b)| t.exps[a][b] as i64)
            .collect();
        pivots
            .iter()
            .map(|&(i, step, ord)| {
                let y: i64 = md(sf.q_inv[i].iter().zip(&x).map(|(q, v)| q * v).sum(), ni);
                debug_assert_eq!(y % step, 0);
                md(y / step, ord)
            })
            .collect()
    };
    let r = pivots.len();
    let mut w: Vec<Vec<i64>> = vec![Vec::new(); r];
    for (k, &(_, _, ord)) in pivots.iter().enumerate() {
        for (j, row) in w.iter_mut().enumerate() {
            row.push(if j == k { ord } else { 0 });
        }
    }
    for c in &cob {
        let t = to_t(c);
        for (j, row) in w.iter_mut().enumerate() {
            row.push(t[j]);
        }
    }
    let cols = w.first().map_or(0, Vec::len);
    let q = smith_mod(&w, cols, ni, &[], true);
    let p_inv = q.p_inv.as_ref().unwrap();
    let mut factor_orders = Vec::new();
    let mut factor_gens: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        let ord = q.diag.get(i).map_or(ni, |&d| snf::gcd(d, ni));
        if ord > 1 {
            factor_orders.push(ord);
            factor_gens.push(p_inv.iter().map(|row| row[i]).collect());
        }
    }
    let from_t = |t: &[i64]| -> CocycleTable {
        let mut y = vec![0i64; unknowns];
        for (k, &(i, step, _)) in pivots.iter().enumerate() {
            y[i] = t[k] * step;
        }
        let x: Vec<i64> = (0..unknowns).map(|a| md((0..unknowns).map(|b| sf.q[a][b] * y[b]).sum(), ni)).collect();
        table_from_unknowns(order, n, &x)
    };
    let mut representatives = Vec::new();
    let total: i64 = factor_orders.iter().product();
    for code in 0..total {
        let mut c = code;
        let mut t = vec![0i64; r];
        for (g, &o) in factor_gens.iter().zip(&factor_orders) {
            let k = c % o;
            c /= o;
            for (tj, gj) in t.iter_mut().zip(g) {
                *tj = md(*tj + k * gj, ni);
            }
        }
        representatives.push(from_t(&t));
    }
    Ok(CocycleLattice {
        modulus: n,
        particular: trivial,
        homogeneous,
        homogeneous_orders: orders,
        coboundaries: cob,
        invariants: snf::invariant_factors(&factor_orders),
        representatives,
    })
}

/// Optional requirement `ν(element) = value` for [`cohomologous`].
#[derive(Clone, Debug)]
pub struct GaugeConstraint {
    pub element: usize,
    pub value: CycNumber,
}

/// Largest homogeneous solution set enumerated for the lexicographic tie-break.
const ENUMERATION_LIMIT: usize = 1 << 16;

/// A gauge `ν` with `∂ν = σ·τ⁻¹`, valued in `μ_M` for `M = |G|·exp(G)`;
/// the lexicographically least exponent sequence is returned.
pub fn cohomologous(
    group: &FiniteGroup,
    sigma: &CocycleTable,
    tau: &CocycleTable,
    constraint: Option<&GaugeConstraint>,
) -> Result<Option<GaugeFunction>> {
    let order = group.order();
    if sigma.order() != order || tau.order() != order {
        return Err(Error::Usage("cocycles do not match the group order".into()));
    }
    let m = group.conductor();
    let target = sigma.product(&tau.inverse(), m)?;
    let fixed = match constraint {
        None => None,
        Some(c) => {
            let v = crate::fingroup::lift_to(&c.value, m)
                .ok()
                .and_then(|v| v.root_exponent())
                .ok_or_else(|| Error::Usage(format!("constraint value {} is not in mu_{m}", c.value)))?;
            if c.element >= order {
                return Err(Error::Usage(format!("constraint element e{} out of range", c.element)));
            }
            Some((c.element, v))
        }
    };
    if order == 1 {
        return Ok(match fixed {
            Some((_, v)) if v != 0 => None,
            _ => Some(GaugeFunction::trivial(1, m)),
        });
    }
    let mut rows = coboundary_system(group);
    let mut rhs = Vec::new();
    for x in 1..order {
        for y in 1..order {
            rhs.push(target.exps[x][y] as i64);
        }
    }
    if let Some((el, v)) = fixed {
        if el == 0 {
            if v != 0 {
                return Ok(None);
            }
        } else {
            let mut r = vec![0i64; order - 1];
            r[el - 1] = 1;
            rows.push(r);
            rhs.push(v as i64);
        }
    }
    let Some(lat) = snf::solve_mod(&rows, order - 1, &rhs, m as i64) else {
        return Ok(None);
    };
    let best = lat
        .lex_least(ENUMERATION_LIMIT)
        .ok_or_else(|| Error::Internal("gauge solution set too large to enumerate".into()))?;
    let mut exps = vec![0u32];
    exps.extend(best.iter().map(|&v| v as u32));
    Ok(Some(GaugeFunction { modulus: m, exps }))
}

/// The precondition shared by the IV/V discriminator: `μ = 0`, `d < n`, `χ^d ≠ 1`.
pub fn in_commutation_regime(datum: &GroupDatum) -> bool {
    datum.mu().is_zero() && datum.d() < datum.n() && !datum.chi().power(datum.d()).is_trivial()
}

/// Exponents mod `|G|` of `χ^d`.
pub fn chi_d_exponents(datum: &GroupDatum) -> Vec<u32> {
    let group = datum.group();
    let big_n = group.order() as u32;
    let m = datum.conductor();
    let scale = m / big_n;
    datum.chi().power(datum.d()).exponents().iter().map(|&e| e / scale).collect()
}

/// A `μ_{|G|}`-valued cocycle with `σ(g^d, x) = χ^d(x)σ(x, g^d)` for all `x`, if one exists.
pub fn commutation_witness(datum: &GroupDatum) -> Result<Option<CocycleTable>> {
    if !in_commutation_regime(datum) {
        return Err(Error::Usage(
            "commutation witness needs mu = 0, d < n and chi^d != 1".into(),
        ));
    }
    let group = datum.group();
    let order = group.order();
    let n = order as u32;
    let h = datum.gd();
    let c = chi_d_exponents(datum);
    let unknowns = (order - 1) * (order - 1);
    let mut rows = law_system(group);
    let mut rhs = vec![0i64; rows.len()];
    for x in 1..order {
        if x == h {
            continue;
        }
        let mut r = vec![0i64; unknowns];
        r[pair_index(order, h, x)] += 1;
        r[pair_index(order, x, h)] -= 1;
        rows.push(r);
        rhs.push(c[x] as i64);
    }
    if c[h] != 0 {
        return Ok(None);
    }
    Ok(snf::solve_mod(&rows, unknowns, &rhs, n as i64).map(|l| table_from_unknowns(order, n, &l.particular)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn klein() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(2).unwrap())
    }

    fn klein_cocycle() -> Vec<Vec<u32>> {
        // e((a,b),(a',b')) = b·a'
        (0..4).map(|x| (0..4).map(|y| ((x % 2) * (y / 2)) as u32).collect()).collect()
    }

    #[test]
    fn validation_examples() {
        let g = klein();
        assert!(CocycleTable::validate(&g, vec![vec![0; 4]; 4], 2).is_ok());
        let t = klein_cocycle();
        // oracle: exhaustive law check
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    let l = t[x][y] + t[g.mul(x, y)][z];
                    let r = t[y][z] + t[x][g.mul(y, z)];
                    assert_eq!(l % 2, r % 2);
                }
            }
        }
        assert!(CocycleTable::validate(&g, t, 2).is_ok());
        let mut bad = vec![vec![0; 4]; 4];
        bad[1][0] = 1;
        let err = CocycleTable::validate(&g, bad, 2).unwrap_err().to_string();
        assert!(err.contains("not normalized"), "{err}");
    }

    #[test]
    fn coboundary_examples() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(coboundary(&GaugeFunction::trivial(4, 4), &c4).is_trivial());
        let f4 = coboundary(&GaugeFunction::new(4, vec![0, 1, 2, 3]).unwrap(), &c4);
        assert!(f4.is_trivial());
        let f8 = coboundary(&GaugeFunction::new(8, vec![0, 1, 2, 3]).unwrap(), &c4);
        // f(3) + f(3) - f(2) = 4 mod 8
        assert_eq!(f8.exponent(3, 3), 4);
        assert_eq!(f8.exponent(1, 2), 0);
        assert_eq!(f8.exponent(1, 3), 4);
        assert!(!f8.is_trivial());
        assert!(f8.violations(&c4).is_empty());
    }

    #[test]
    fn lattice_invariants() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let l = cocycle_lattice(&c4, 4).unwrap();
        assert!(l.invariants.is_empty());
        assert_eq!(l.representatives.len(), 1);
        let k = cocycle_lattice(&klein(), 2).unwrap();
        assert_eq!(k.invariants, vec![2]);
        assert_eq!(k.representatives.len(), 2);
        assert!(k.representatives[0].is_trivial());
        let l1 = cocycle_lattice(&klein(), 1).unwrap();
        assert!(l1.homogeneous.is_empty());
        for t in k.homogeneous.iter().chain(&k.coboundaries).chain(&k.representatives) {
            assert!(t.violations(&klein()).is_empty());
        }
    }

    #[test]
    fn klein_classes_are_not_cohomologous() {
        let g = klein();
        let nontrivial = CocycleTable::validate(&g, klein_cocycle(), 2).unwrap();
        let trivial = CocycleTable::trivial(4, 2);
        assert!(cohomologous(&g, &trivial, &nontrivial, None).unwrap().is_none());
        let nu = cohomologous(&g, &nontrivial, &nontrivial, None).unwrap().unwrap();
        assert!(nu.is_trivial());
    }

    #[test]
    fn gauge_round_trip() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(4).unwrap());
        let m = g.conductor();
        let nu0 = GaugeFunction::new(m, vec![0, 5, 9, 31, 2, 7, 1, 18]).unwrap();
        let tau = CocycleTable::trivial(8, 8);
        let sigma = coboundary(&nu0, &g).product(&tau, m).unwrap();
        let nu = cohomologous(&g, &sigma, &tau, None).unwrap().unwrap();
        assert_eq!(coboundary(&nu, &g).product(&tau, m).unwrap(), sigma);
        assert!(nu.exponents() <= nu0.exponents());
    }

    #[test]
    fn constraint_must_be_a_root_of_unity() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let t = CocycleTable::trivial(4, 4);
        let c = GaugeConstraint { element: 2, value: CycNumber::from_int(16, 2) };
        assert!(matches!(cohomologous(&g, &t, &t, Some(&c)), Err(Error::Usage(_))));
        let c = GaugeConstraint { element: 2, value: CycNumber::from_int(16, -1) };
        let nu = cohomologous(&g, &t, &t, Some(&c)).unwrap().unwrap();
        assert_eq!(nu.exponent(2), 8);
    }

    #[test]
    fn commutation_precondition() {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let chi: Vec<_> = (0..4).map(|k| CycNumber::root_of_unity(2, k)).collect();
        let datum = GroupDatum::validate(g, 1, &chi, &CycNumber::zero(16)).unwrap();
        assert!(matches!(commutation_witness(&datum), Err(Error::Usage(_))));
    }
}
