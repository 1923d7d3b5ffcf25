//! The quantum plane `k⟨z, w⟩ / (zw − q·wz)` and q-binomial coefficients.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclo::{CycNumber, CycloField};

/// Elements in the normal form `Σ c·w^a z^b`, keyed by `(a, b)`.
#[derive(Clone, Debug)]
pub struct QPlane {
    field: Arc<CycloField>,
    q_exp: i64,
    terms: BTreeMap<(u32, u32), CycNumber>,
}

impl QPlane {
    /// `q = ζ_M^{q_exp}` with `M` the conductor of `field`.
    pub fn zero(field: &Arc<CycloField>, q_exp: i64) -> QPlane {
        QPlane { field: Arc::clone(field), q_exp, terms: BTreeMap::new() }
    }

    pub fn monomial(field: &Arc<CycloField>, q_exp: i64, a: u32, b: u32) -> QPlane {
        let mut p = QPlane::zero(field, q_exp);
        p.terms.insert((a, b), CycNumber::root_in(field, 0));
        p
    }

    pub fn w(field: &Arc<CycloField>, q_exp: i64) -> QPlane {
        QPlane::monomial(field, q_exp, 1, 0)
    }

    pub fn z(field: &Arc<CycloField>, q_exp: i64) -> QPlane {
        QPlane::monomial(field, q_exp, 0, 1)
    }

    pub fn coefficient(&self, a: u32, b: u32) -> CycNumber {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(|| CycNumber::zero_in(&self.field))
    }

    fn add_term(&mut self, key: (u32, u32), c: CycNumber) {
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn add(&self, other: &QPlane) -> QPlane {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    /// `(w^a z^b)(w^c z^d) = q^{bc} w^{a+c} z^{b+d}`.
    pub fn mul(&self, other: &QPlane) -> QPlane {
        let mut out = QPlane::zero(&self.field, self.q_exp);
        for (&(a, b), c) in &self.terms {
            for (&(e, f), v) in &other.terms {
                let twist = CycNumber::root_in(&self.field, self.q_exp * (b as i64) * (e as i64));
                out.add_term((a + e, b + f), &(c * v) * &twist);
            }
        }
        out
    }

    pub fn pow(&self, m: u32) -> QPlane {
        let mut out = QPlane::monomial(&self.field, self.q_exp, 0, 0);
        for _ in 0..m {
            out = out.mul(self);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CycNumber)> {
        self.terms.iter()
    }
}

impl PartialEq for QPlane {
    fn eq(&self, other: &QPlane) -> bool {
        self.terms == other.terms
    }
}

/// `[k]_q = 1 + q + … + q^{k−1}`.
pub fn q_integer(q: &CycNumber, k: u32) -> CycNumber {
    let mut acc = CycNumber::zero_in(q.field());
    let mut p = CycNumber::root_in(q.field(), 0);
    for _ in 0..k {
        acc = &acc + &p;
        p = &p * q;
    }
    acc
}

/// `binom(m, i)_q` through the Pascal rule `binom(m, i) = binom(m−1, i−1) + q^i·binom(m−1, i)`,
/// which avoids dividing by the vanishing `[m]_q`.
pub fn q_binomial(q: &CycNumber, m: u32, i: u32) -> CycNumber {
    if i > m {
        return CycNumber::zero_in(q.field());
    }
    let one = CycNumber::root_in(q.field(), 0);
    let mut row = vec![one.clone()];
    for r in 1..=m {
        let mut next = vec![one.clone(); r as usize + 1];
        for k in 1..r as usize {
            next[k] = &row[k - 1] + &(&q.pow(k as u64) * &row[k]);
        }
        row = next;
    }
    row[i as usize].clone()
}

/// `q`-factorial quotient `[m]!/([i]![m−i]!)`, valid when the denominators are nonzero.
pub fn q_binomial_by_factorials(q: &CycNumber, m: u32, i: u32) -> Option<CycNumber> {
    let fact = |k: u32| (1..=k).fold(CycNumber::root_in(q.field(), 0), |acc, j| &acc * &q_integer(q, j));
    let den = &fact(i) * &fact(m - i);
    den.inverse().ok().map(|inv| &fact(m) * &inv)
}

/// Checks `(z + w)^m = z^m + w^m` with `q = ζ_m`.
pub fn frobenius_holds(m: u32) -> bool {
    let field = CycloField::get(m);
    let s = QPlane::z(&field, 1).add(&QPlane::w(&field, 1));
    let lhs = s.pow(m);
    let rhs = QPlane::z(&field, 1).pow(m).add(&QPlane::w(&field, 1).pow(m));
    lhs == rhs
}
