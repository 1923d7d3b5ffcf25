//! Standard small group data used throughout the tests and the CLI examples.

use std::sync::Arc;

use crate::cyclo::CycNumber;
use crate::fingroup::{FiniteGroup, GroupDatum};
use crate::zcocycle::CocycleTable;

fn datum(group: FiniteGroup, g: usize, chi: impl Fn(usize) -> CycNumber, mu: i64) -> Arc<GroupDatum> {
    let group = Arc::new(group);
    let vals: Vec<CycNumber> = (0..group.order()).map(chi).collect();
    let m = group.conductor();
    Arc::new(GroupDatum::validate(group, g, &vals, &CycNumber::from_int(m, mu)).expect("valid instance"))
}

/// Taft algebra `H_{n²}`: `G = Z/n`, `g = e1`, `χ(g) = ζ_n`.
pub fn taft(n: usize) -> Arc<GroupDatum> {
    datum(FiniteGroup::cyclic(n).unwrap(), 1, |k| CycNumber::root_of_unity(n as u32, k as i64), 0)
}

/// Type II: `Z/2 × Z/4`, `g = (1,0)`, `χ(g) = −1`, `χ((0,1)) = ζ₄`.
pub fn type_ii() -> Arc<GroupDatum> {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let c4 = FiniteGroup::cyclic(4).unwrap();
    datum(FiniteGroup::direct_product(&c2, &c4), 4, |x| CycNumber::root_of_unity(4, (2 * (x / 4) + x % 4) as i64), 0)
}

/// `Z/4`, `g = e1`, `χ(g) = −1`; type III for `μ = 0` and type VI otherwise.
pub fn cyclic4_sign(mu: i64) -> Arc<GroupDatum> {
    datum(FiniteGroup::cyclic(4).unwrap(), 1, |k| CycNumber::root_of_unity(2, k as i64), mu)
}

/// Klein four-group, `g = (1,0)`, `χ(a,b) = (−1)^a`.
pub fn klein() -> Arc<GroupDatum> {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    datum(FiniteGroup::direct_product(&c2, &c2), 2, |x| CycNumber::root_of_unity(2, (x / 2) as i64), 0)
}

/// The cocycle `e((a,b),(a',b')) = b·a'` mod 2 on the Klein group.
pub fn klein_cocycle() -> CocycleTable {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let v = FiniteGroup::direct_product(&c2, &c2);
    let exps = (0..4).map(|x| (0..4).map(|y| ((x % 2) * (y / 2)) as u32).collect()).collect();
    CocycleTable::validate(&v, exps, 2).expect("cocycle")
}

/// The instance matrix `T4, T9, D2, D3, D6, K` with short names.
pub fn matrix() -> Vec<(&'static str, Arc<GroupDatum>)> {
    vec![
        ("T4", taft(2)),
        ("T9", taft(3)),
        ("D2", type_ii()),
        ("D3", cyclic4_sign(0)),
        ("D6", cyclic4_sign(1)),
        ("K", klein()),
    ]
}
