//! Finite groups by Cayley table, one-dimensional characters and group data.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::{CycNumber, CycloField};
use crate::error::{Error, Result};

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    orders: Vec<usize>,
    generators: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum GroupSpec {
    Cyclic(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(Vec<Vec<usize>>),
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
        match spec {
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::Product(a, b) => {
                Ok(FiniteGroup::direct_product(&FiniteGroup::build(a)?, &FiniteGroup::build(b)?))
            }
            GroupSpec::Table(t) => FiniteGroup::from_table(t.clone()),
        }
    }

    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(Error::Usage("cyclic group order must be at least 1".into()));
        }
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        Ok(FiniteGroup::assemble(table, Some(gens)))
    }

    /// Element `(a, b)` gets index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order(), b.order());
        let mut table = vec![vec![0; na * nb]; na * nb];
        for x in 0..na * nb {
            for y in 0..na * nb {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table[x][y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        let mut gens: Vec<usize> = a.generators.iter().map(|&s| s * nb).collect();
        gens.extend(b.generators.iter().copied());
        FiniteGroup::assemble(table, Some(gens))
    }

    /// Validates a Cayley table: square, entries in range, Latin, associative, identity at 0.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Validation("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!("row e{i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::Validation(format!("row e{i} contains out-of-range entry {v}")));
            }
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut seen_row[table[i][j]], true) {
                    return Err(Error::Validation(format!("row e{i} is not a permutation")));
                }
                if std::mem::replace(&mut seen_col[table[j][i]], true) {
                    return Err(Error::Validation(format!("column e{i} is not a permutation")));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::Validation(format!(
                            "not associative at triple (e{x}, e{y}, e{z})"
                        )));
                    }
                }
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return Err(Error::Validation(format!("e0 is not an identity: fails at e{x}")));
            }
        }
        Ok(FiniteGroup::assemble(table, None))
    }

    fn assemble(table: Vec<Vec<usize>>, generators: Option<Vec<usize>>) -> FiniteGroup {
        let n = table.len();
        let inverse = (0..n).map(|x| (0..n).find(|&y| table[x][y] == 0).unwrap()).collect();
        let orders = (0..n)
            .map(|x| {
                let (mut t, mut p) = (1, x);
                while p != 0 {
                    p = table[p][x];
                    t += 1;
                }
                t
            })
            .collect();
        let mut g = FiniteGroup { table, inverse, orders, generators: Vec::new() };
        g.generators = match generators {
            Some(gs) => gs,
            None => g.greedy_generators(),
        };
        g
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.subgroup_generated(&gens);
        for x in 0..self.order() {
            if !span[x] {
                gens.push(x);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        mask
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    /// The conductor `|G|·exp(G)` used for all scalars attached to this group.
    pub fn conductor(&self) -> u32 {
        (self.order() * self.exponent()) as u32
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.central_witness(x).is_none()
    }

    fn central_witness(&self, x: usize) -> Option<usize> {
        (0..self.order()).find(|&y| self.mul(x, y) != self.mul(y, x))
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn name(x: usize) -> String {
        format!("e{x}")
    }
}

/// A one-dimensional character, stored as exponents of `ζ_M` with `M` the group conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    conductor: u32,
    exps: Vec<u32>,
}

impl Character {
    pub fn trivial(group: &FiniteGroup) -> Character {
        Character { conductor: group.conductor(), exps: vec![0; group.order()] }
    }

    /// Builds from raw exponents mod the group conductor, verifying multiplicativity.
    pub fn from_exponents(group: &FiniteGroup, exps: Vec<u32>) -> Result<Character> {
        let m = group.conductor();
        let c = Character { conductor: m, exps: exps.into_iter().map(|e| e % m).collect() };
        match c.violations(group).into_iter().next() {
            None => Ok(c),
            Some(v) => Err(Error::InvalidDatum(vec![v])),
        }
    }

    /// Extends values on `group.generators()` multiplicatively.
    pub fn from_generator_values(group: &FiniteGroup, vals: &[CycNumber]) -> Result<Vec<CycNumber>> {
        let gens = group.generators();
        if vals.len() != gens.len() {
            return Err(Error::Usage(format!(
                "expected {} generator values, got {}",
                gens.len(),
                vals.len()
            )));
        }
        let m = group.conductor();
        let mut out: Vec<Option<CycNumber>> = vec![None; group.order()];
        out[0] = Some(CycNumber::one(m));
        let lifted: Vec<CycNumber> = vals.iter().map(|v| lift_to(v, m)).collect::<Result<_>>()?;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            let vx = out[x].clone().unwrap();
            for (&s, vs) in gens.iter().zip(&lifted) {
                let y = group.mul(x, s);
                let vy = &vx * vs;
                match &out[y] {
                    None => {
                        out[y] = Some(vy);
                        stack.push(y);
                    }
                    Some(prev) if *prev != vy => {
                        return Err(Error::InvalidDatum(vec![Violation::NotMultiplicative { x, y: s }]))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(out.into_iter().map(|v| v.unwrap()).collect())
    }

    fn violations(&self, group: &FiniteGroup) -> Vec<Violation> {
        let n = group.order();
        let m = self.conductor;
        let mut out = Vec::new();
        if self.exps[0] != 0 {
            out.push(Violation::NotUnitalCharacter);
        }
        'outer: for x in 0..n {
            for y in 0..n {
                if (self.exps[x] + self.exps[y]) % m != self.exps[group.mul(x, y)] {
                    out.push(Violation::NotMultiplicative { x, y });
                    break 'outer;
                }
            }
        }
        out
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn exponent(&self, x: usize) -> u32 {
        self.exps[x]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn value(&self, x: usize) -> CycNumber {
        CycNumber::root_of_unity(self.conductor, self.exps[x] as i64)
    }

    /// Exponents of `χ^k`.
    pub fn power(&self, k: usize) -> Character {
        let m = self.conductor as u64;
        Character {
            conductor: self.conductor,
            exps: self.exps.iter().map(|&e| ((e as u64 * k as u64) % m) as u32).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// Re-expresses `v` in conductor `m`, which must be a multiple of its own.
pub fn lift_to(v: &CycNumber, m: u32) -> Result<CycNumber> {
    if v.conductor() == m {
        Ok(v.clone())
    } else if m % v.conductor() == 0 {
        v.lift(m)
    } else {
        Err(Error::UnsupportedScalar(format!(
            "value {v} of conductor {} is not representable in conductor {m}",
            v.conductor()
        )))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ElementOutOfRange(usize),
    NotCentral { g: usize, witness: usize },
    TrivialOnG,
    WrongLength { expected: usize, got: usize },
    NotRootOfUnity { x: usize },
    NotUnitalCharacter,
    NotMultiplicative { x: usize, y: usize },
    MuWithEqualOrders { n: usize, d: usize },
    MuWithNontrivialPower { d: usize, witness: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ElementOutOfRange(x) => write!(f, "element e{x} is out of range"),
            Violation::NotCentral { g, witness } => {
                write!(f, "(i) g = e{g} is not central: fails to commute with e{witness}")
            }
            Violation::TrivialOnG => write!(f, "(ii) chi(g) must differ from 1"),
            Violation::WrongLength { expected, got } => {
                write!(f, "(ii) chi needs {expected} values, got {got}")
            }
            Violation::NotRootOfUnity { x } => {
                write!(f, "(ii) chi(e{x}) is not a root of unity of order dividing exp(G)")
            }
            Violation::NotUnitalCharacter => write!(f, "(ii) chi(e0) must be 1"),
            Violation::NotMultiplicative { x, y } => {
                write!(f, "(ii) chi is not multiplicative at (e{x}, e{y})")
            }
            Violation::MuWithEqualOrders { n, d } => {
                write!(f, "(iii) mu must be 0 when o(g) = o(chi(g)) = {n}, d = {d}")
            }
            Violation::MuWithNontrivialPower { d, witness } => {
                write!(f, "(iii) mu != 0 requires chi^{d} = 1, fails at e{witness}")
            }
        }
    }
}

/// The quadruplet `(G, g, χ, μ)` with derived `n = o(g)`, `d = o(χ(g))`, `q = χ(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDatum {
    group: Arc<FiniteGroup>,
    g: usize,
    chi: Character,
    mu: CycNumber,
    n: usize,
    d: usize,
}

impl GroupDatum {
    /// Checks every clause and reports all violations at once.
    pub fn validate(
        group: Arc<FiniteGroup>,
        g: usize,
        chi_values: &[CycNumber],
        mu: &CycNumber,
    ) -> Result<GroupDatum> {
        let ord = group.order();
        let m = group.conductor();
        let exp = group.exponent() as u32;
        let mut viol = Vec::new();
        if g >= ord {
            return Err(Error::InvalidDatum(vec![Violation::ElementOutOfRange(g)]));
        }
        if chi_values.len() != ord {
            return Err(Error::InvalidDatum(vec![Violation::WrongLength {
                expected: ord,
                got: chi_values.len(),
            }]));
        }
        if let Some(w) = group.central_witness(g) {
            viol.push(Violation::NotCentral { g, witness: w });
        }
        let mut exps = Vec::with_capacity(ord);
        let mut roots_ok = true;
        for (x, v) in chi_values.iter().enumerate() {
            let e = lift_to(v, m).ok().and_then(|l| l.root_exponent());
            match e {
                Some(e) if (e * exp) % m == 0 => exps.push(e),
                _ => {
                    viol.push(Violation::NotRootOfUnity { x });
                    roots_ok = false;
                    exps.push(0);
                }
            }
        }
        let chi = Character { conductor: m, exps };
        if roots_ok {
            viol.extend(chi.violations(&group));
        }
        let mu = lift_to(mu, m)?;
        let n = group.element_order(g);
        let q_exp = chi.exponent(g);
        if roots_ok && q_exp == 0 {
            viol.push(Violation::TrivialOnG);
        }
        let d = if q_exp == 0 { 1 } else { (m / num_integer::gcd(m, q_exp)) as usize };
        if !mu.is_zero() {
            if n == d {
                viol.push(Violation::MuWithEqualOrders { n, d });
            }
            if let Some(w) = (0..ord).find(|&x| chi.power(d).exponent(x) != 0) {
                viol.push(Violation::MuWithNontrivialPower { d, witness: w });
            }
        }
        if !viol.is_empty() {
            return Err(Error::InvalidDatum(viol));
        }
        Ok(GroupDatum { group, g, chi, mu, n, d })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    pub fn mu(&self) -> &CycNumber {
        &self.mu
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> CycNumber {
        self.chi.value(self.g)
    }

    pub fn conductor(&self) -> u32 {
        self.group.conductor()
    }

    pub fn field(&self) -> Arc<CycloField> {
        CycloField::get(self.conductor())
    }

    /// The central element `g^d`.
    pub fn gd(&self) -> usize {
        self.group.pow(self.g, self.d)
    }

    /// `|G|·d`, the dimension of `A(𝔾)`.
    pub fn dim(&self) -> usize {
        self.group.order() * self.d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(m, k)
    }

    #[test]
    fn cyclic_and_products() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(c4.mul(i, j), (i + j) % 4);
            }
        }
        assert_eq!(c4.element_order(2), 2);
        assert_eq!(c4.element_order(0), 1);
        let p = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &c4);
        assert_eq!(p.order(), 8);
        // (1,1) has index 5
        assert_eq!(p.element_order(5), 4);
        assert_eq!(p.exponent(), 4);
        assert_eq!(p.generators(), &[4, 1]);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let z3: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect();
        let mut t = z3.clone();
        t[1][1] = 0;
        assert!(FiniteGroup::from_table(t).is_err());
        // x∘y = -x-y is a Latin square without associativity
        let t: Vec<Vec<usize>> = (0..3).map(|i| (0..3).map(|j| (6 - i - j) % 3).collect()).collect();
        let err = FiniteGroup::from_table(t.clone()).unwrap_err().to_string();
        let first = (0..3)
            .flat_map(|x| (0..3).flat_map(move |y| (0..3).map(move |z| (x, y, z))))
            .find(|&(x, y, z)| t[t[x][y]][z] != t[x][t[y][z]])
            .unwrap();
        assert!(err.contains(&format!("triple (e{}, e{}, e{})", first.0, first.1, first.2)), "{err}");
        assert!(FiniteGroup::from_table(z3).is_ok());
    }

    #[test]
    fn datum_examples() {
        let c4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let chi: Vec<_> = (0..4).map(|k| z(4, k)).collect();
        let d = GroupDatum::validate(c4.clone(), 1, &chi, &CycNumber::zero(4)).unwrap();
        assert_eq!((d.n(), d.d()), (4, 4));
        assert_eq!(d.q(), z(16, 4));

        let chi: Vec<_> = (0..4).map(|k| z(2, k)).collect();
        let d = GroupDatum::validate(c4.clone(), 1, &chi, &CycNumber::one(4)).unwrap();
        assert_eq!((d.n(), d.d()), (4, 2));
        assert!(d.chi().power(2).is_trivial());

        let c2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let triv = vec![CycNumber::one(2); 2];
        let err = GroupDatum::validate(c2, 1, &triv, &CycNumber::zero(2)).unwrap_err();
        match err {
            Error::InvalidDatum(v) => assert_eq!(v, vec![Violation::TrivialOnG]),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn all_violations_reported() {
        let c4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        // Taft-type orders with nonzero mu violate clause (iii) twice
        let chi: Vec<_> = (0..4).map(|k| z(4, k)).collect();
        let err = GroupDatum::validate(c4.clone(), 1, &chi, &CycNumber::one(4)).unwrap_err();
        let Error::InvalidDatum(v) = err else { panic!() };
        assert_eq!(v, vec![Violation::MuWithEqualOrders { n: 4, d: 4 }]);
        let bad: Vec<_> = vec![CycNumber::one(4), z(4, 1), z(4, 1), z(4, 3)];
        let Error::InvalidDatum(v) = GroupDatum::validate(c4, 1, &bad, &CycNumber::zero(4)).unwrap_err()
        else {
            panic!()
        };
        assert!(matches!(v[0], Violation::NotMultiplicative { .. }));
    }

    #[test]
    fn generator_values_extend() {
        let p = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(4).unwrap());
        let vals = Character::from_generator_values(&p, &[z(2, 1), z(4, 1)]).unwrap();
        assert_eq!(vals[5], -z(4, 1).lift(32).unwrap());
        assert!(Character::from_generator_values(&FiniteGroup::cyclic(2).unwrap(), &[z(4, 1)]).is_err());
    }
}
