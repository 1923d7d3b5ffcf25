use std::sync::Arc;

use monohopf::cyclo::{CycNumber, CycloField};
use monohopf::fingroup::GroupDatum;
use monohopf::frontend::{parse_polynomial, parse_sxa};
use monohopf::galois::{galois_condition, iso_test, normalize_spec, GaloisAlgebra, GaloisSpec};
use monohopf::hopf::HopfAlgebra;
use monohopf::identity::{self, FreePoly, MuMap};
use monohopf::instances::{cyclic4_sign, klein, matrix, taft, type_ii};
use monohopf::linalg::SparseVec;
use monohopf::monomial::Algebra;
use monohopf::qplane::q_binomial;
use monohopf::rational::Rational;
use monohopf::zcocycle::{cocycle_lattice, cohomologous, coboundary, CocycleTable, GaugeFunction};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn cyc12() -> impl Strategy<Value = CycNumber> {
    let phi = CycloField::get(12).degree();
    prop::collection::vec(rational(), phi).prop_map(|c| CycNumber::from_coefficients(12, c).unwrap())
}

fn datum_index() -> impl Strategy<Value = usize> {
    0..matrix().len()
}

fn datum(i: usize) -> Arc<GroupDatum> {
    matrix()[i].1.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyc12(), b in cyc12(), c in cyc12()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn antipode_squared_scales_by_q_inverse(i in datum_index(), seed in 0usize..1000) {
        let d = datum(i);
        let h = HopfAlgebra::new(Arc::clone(&d));
        let b = seed % h.dim();
        let (_, k) = h.split(b);
        let e = SparseVec::unit(b, &d.field());
        let s2 = h.antipode(&h.antipode(&e));
        let qinv = d.q().inverse().unwrap().pow(k as u64);
        prop_assert_eq!(s2, e.scale(&qinv));
    }

    #[test]
    fn coproduct_of_y_powers(n in 2usize..6, m in 1usize..6) {
        prop_assume!(m < n);
        let d = taft(n);
        let h = HopfAlgebra::new(Arc::clone(&d));
        let mut ym = h.one();
        for _ in 0..m {
            ym = h.mul(&ym, &h.y());
        }
        let q = d.q();
        let dim = h.dim();
        let mut expect = SparseVec::new();
        for i in 0..=m {
            // y^{m−i} ⊗ g^{m−i} y^i
            let left = h.index(0, m - i);
            let right = h.index((m - i) % n, i);
            expect.axpy(&q_binomial(&q, m as u32, i as u32), &SparseVec::unit(left * dim + right, &d.field()));
        }
        prop_assert_eq!(h.coproduct(&ym), expect);
    }

    #[test]
    fn coboundaries_are_cocycles_and_cohomologous(exps in prop::collection::vec(0u32..16, 7)) {
        let d = type_ii();
        let group = d.group();
        let m = group.conductor();
        let mut e = vec![0];
        e.extend(exps);
        let nu = GaugeFunction::new(m, e).unwrap();
        let b = coboundary(&nu, group);
        prop_assert!(b.violations(group).is_empty());
        let sigma = cocycle_lattice(group, 8).unwrap().representatives[1].lift(m).unwrap();
        let tau = sigma.product(&b, m).unwrap();
        let found = cohomologous(group, &tau, &sigma, None).unwrap().expect("cohomologous");
        prop_assert_eq!(coboundary(&found, group), b);
    }

    #[test]
    fn mu_is_multiplicative(a in 0usize..8, b in 0usize..8, c in 0usize..8, twist in 0i64..2) {
        let datum = cyclic4_sign(1);
        let spec = GaloisSpec::trivial(Arc::clone(&datum), twist);
        let ga = GaloisAlgebra::new(&spec);
        let mu = MuMap::galois(&ga);
        let field = datum.field();
        let sym = |k: usize| FreePoly::symbol(&field, 2, 1 + (k % 2) as u32, k);
        let p = sym(a).add(&sym(b));
        let q = sym(c).mul(&sym(a));
        prop_assert_eq!(mu.image(&p.mul(&q)), mu.mul(&mu.image(&p), &mu.image(&q)));
    }

    #[test]
    fn polynomial_round_trip(terms in prop::collection::vec((prop::collection::vec(0usize..8, 0..4), -3i64..4, 0i64..9), 0..5)) {
        let datum = taft(3);
        let field = datum.field();
        let mut p = FreePoly::zero(&field, 3);
        for (word, c, z) in terms {
            let mut t = FreePoly::constant(&field, 3, CycNumber::from_int(9, c));
            t = t.scale(&CycNumber::root_in(&field, z));
            for s in word {
                t = t.mul(&FreePoly::symbol(&field, 3, 1 + (s % 2) as u32, s));
            }
            p = p.add(&t);
        }
        prop_assert_eq!(parse_polynomial(&p.to_string(), &datum).unwrap(), p.clone());
        let ga = GaloisAlgebra::new(&GaloisSpec::trivial(Arc::clone(&datum), 1));
        let img = identity::mu_alpha(&ga, &p).unwrap();
        prop_assert_eq!(parse_sxa(&img.to_string(), &datum).unwrap(), img);
    }
}

#[test]
fn kernel_vectors_map_to_zero() {
    for (name, d) in [("T4", taft(2)), ("K", klein())] {
        let ga = GaloisAlgebra::new(&GaloisSpec::trivial(d, 0));
        let k = identity::kernel_at_degree(&ga, 2, 2, identity::DEFAULT_BUDGET).unwrap();
        assert!(k.dimension() > 0, "{name}");
        for p in k.polys() {
            assert!(identity::mu_alpha(&ga, &p).unwrap().is_zero(), "{name}: {p}");
        }
    }
}

/// With trivial σ on `Z/4`, `A_{1,a} ≅ A_{1,b}` iff `b/a = χ'(g²) = ±1` for a character `χ'`.
#[test]
fn normalized_scalars_up_to_characters() {
    let datum = cyclic4_sign(0);
    let m = datum.conductor() as i64;
    let sigma = CocycleTable::trivial(4, m as u32);
    let spec = |k: i64| {
        let a = CycNumber::root_of_unity(m as u32, k);
        let s = GaloisSpec::new(Arc::clone(&datum), &sigma, &a).unwrap();
        assert!(galois_condition(&s));
        let n = normalize_spec(&s).unwrap();
        assert!(n.a().is_one());
        n
    };
    for k in 0..m {
        for l in [0, 1, 3] {
            let iso = iso_test(&spec(k), &spec(l)).unwrap().is_some();
            assert_eq!(iso, (k - l).rem_euclid(m / 2) == 0, "z^{k} vs z^{l}");
        }
    }
}
