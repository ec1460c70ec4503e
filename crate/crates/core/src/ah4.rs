//! The degenerate `Z4 x Z2` scenario: two commuting order-two extension
//! data sets (one per twist direction) and the compatibility scalar that
//! lets them combine into a Klein-four grading.
//!
//! The tensor for this category is not bundled here; the tensor-dependent
//! check (eq22) runs only when a tensor file is supplied.

use crate::abelian::{Character, FiniteAbelianGroup, GroupElem, RootOfUnity};
use crate::category::{CategoryData, EtaTable};
use crate::extdata::{check_extension_data, ConstraintReport, ExtensionData};
use crate::presets::epsilon_ah4;

/// The fixed scenario: group, sign table, the two data sets, and the
/// compatibility scalars `c` (for the twist pairing) and `c'` (for the
/// square unitary), both square roots of `i`.
#[derive(Debug, Clone)]
pub struct AH4Scenario {
    pub category: CategoryData,
    /// Extension data for `p = (1,0)`, `z = (0,0)`: trivial `χ, μ, ξ`,
    /// `a = -1` exactly on `{(1,1),(2,1),(3,1)}`.
    pub data_p10: ExtensionData,
    /// Extension data for `p = (0,1)`, `z = (0,0)`: `a((x,y)) = e^{xπi/4}`.
    pub data_p01: ExtensionData,
    pub c: RootOfUnity,
    pub c_prime: RootOfUnity,
}

fn idx(group: &FiniteAbelianGroup, x: u32, y: u32) -> usize {
    group.index_of(&GroupElem(vec![x, y])).unwrap()
}

fn character_from_values(
    group: &FiniteAbelianGroup,
    values: &[RootOfUnity],
) -> Option<Character> {
    group
        .characters()
        .into_iter()
        .find(|ch| (0..group.order()).all(|g| ch.eval_idx(group, g) == values[g]))
}

/// Builds the scenario and asserts its structural facts: the sign table is
/// a cocycle with `ε_{(0,1)} ≡ 1`, both data sets satisfy the exact
/// constraint system, and `c² = χ'((1,0)) = i`.
pub fn build_scenario() -> AH4Scenario {
    let group = FiniteAbelianGroup::new(&[4, 2]);
    let eps = epsilon_ah4();
    assert!(eps.is_cocycle(&group));
    let degenerate = idx(&group, 0, 1);
    assert!((0..group.order()).all(|h| eps.get(degenerate, h) == 1));

    let category = CategoryData::new(group.clone(), eps, EtaTable::trivial(8), None).unwrap();

    let trivial = group.trivial_character();

    // p = (1,0): a(g) = -1 iff g ∈ {(1,1),(2,1),(3,1)}.  This is the
    // character twist (-1)^{y} of the one-flip representative
    // "a((0,1)) = -1, a = 1 otherwise"; both are in the same equivalence
    // class, and this representative is the one compatible with
    // c = e^{-3πi/4} below.
    let mut a10 = vec![RootOfUnity::one(); 8];
    for (x, y) in [(1, 1), (2, 1), (3, 1)] {
        a10[idx(&group, x, y)] = RootOfUnity::minus_one();
    }
    let data_p10 = ExtensionData {
        p: idx(&group, 1, 0),
        z: 0,
        chi: trivial.clone(),
        mu: trivial.clone(),
        xi: RootOfUnity::one(),
        nu: RootOfUnity::one(),
        a: a10,
    };

    // p = (0,1): a((x,y)) = e^{xπi/4}, χ'((x,y)) = i^x, μ' = χ', ξ' = 1.
    let a01: Vec<RootOfUnity> = group
        .elements()
        .iter()
        .map(|e| RootOfUnity::new(e.residues()[0] as i64, 8))
        .collect();
    let chi01_vals: Vec<RootOfUnity> = group
        .elements()
        .iter()
        .map(|e| RootOfUnity::new(e.residues()[0] as i64, 4))
        .collect();
    let chi01 = character_from_values(&group, &chi01_vals).expect("i^x is a character");
    let data_p01 = ExtensionData {
        p: idx(&group, 0, 1),
        z: 0,
        chi: chi01.clone(),
        mu: chi01,
        xi: RootOfUnity::one(),
        nu: RootOfUnity::one(),
        a: a01,
    };

    let c = RootOfUnity::new(-3, 8); // e^{-3πi/4}
    assert_eq!(
        c.mul(&c),
        data_p01.chi.eval_idx(&group, idx(&group, 1, 0)),
        "c² must equal χ'((1,0)) = i"
    );

    AH4Scenario {
        category,
        data_p10,
        data_p01,
        c_prime: c,
        c,
    }
}

/// Reports for the two data sets against the exact system.
pub fn check_data_sets(s: &AH4Scenario) -> (ConstraintReport, ConstraintReport) {
    (
        check_extension_data(&s.category, &s.data_p10, 1e-8),
        check_extension_data(&s.category, &s.data_p01, 1e-8),
    )
}

/// The compatibility identity
/// `c · a'(g-(1,0)) · a(g-(0,1)) · a(g) = a'(g)` for all `g`, evaluated
/// exactly with the given `c`.
pub fn l11_holds_with(s: &AH4Scenario, c: &RootOfUnity) -> bool {
    let group = &s.category.group;
    let p10 = idx(group, 1, 0);
    let p01 = idx(group, 0, 1);
    (0..group.order()).all(|g| {
        let lhs = c
            .mul(&s.data_p01.a[group.sub(g, p10)])
            .mul(&s.data_p10.a[group.sub(g, p01)])
            .mul(&s.data_p10.a[g]);
        lhs == s.data_p01.a[g]
    })
}

/// The compatibility identity with the scenario's own `c`.
pub fn check_l11(s: &AH4Scenario) -> bool {
    l11_holds_with(s, &s.c)
}

/// Brute-forces the two square roots of `i` and returns those satisfying
/// the compatibility identity.
pub fn solve_c(s: &AH4Scenario) -> Vec<RootOfUnity> {
    let group = &s.category.group;
    let target = s.data_p01.chi.eval_idx(group, idx(group, 1, 0));
    target
        .sqrts()
        .into_iter()
        .filter(|c| l11_holds_with(s, c))
        .collect()
}

/// The obstruction facts for realizing a twist on the plain algebra:
/// `ε_k(p) = 1` for every two-torsion `k` is necessary.  Returns the list
/// of offending `k` (empty means realizable).
pub fn torsion_obstructions(s: &AH4Scenario, p: usize) -> Vec<usize> {
    let group = &s.category.group;
    group
        .two_torsion()
        .into_iter()
        .filter(|&k| s.category.eps.get(k, p) != 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::{act, EquivalenceMove};

    #[test]
    fn scenario_tables() {
        let s = build_scenario();
        let group = &s.category.group;
        // the displayed two-torsion value
        assert_eq!(s.category.eps.get(idx(group, 2, 0), idx(group, 0, 1)), -1);
        // the degenerate row
        for h in 0..8 {
            assert_eq!(s.category.eps.get(idx(group, 0, 1), h), 1);
        }
    }

    #[test]
    fn both_data_sets_pass_exact_checks() {
        let s = build_scenario();
        let (r10, r01) = check_data_sets(&s);
        assert!(r10.pass_exact(), "p=(1,0): {:?}", r10.first_failure());
        assert!(r01.pass_exact(), "p=(0,1): {:?}", r01.first_failure());
    }

    #[test]
    fn l11_holds_for_the_negative_root_only() {
        let s = build_scenario();
        assert!(check_l11(&s));
        let other = RootOfUnity::new(1, 8); // e^{πi/4}
        assert!(!l11_holds_with(&s, &other));
        assert_eq!(solve_c(&s), vec![RootOfUnity::new(-3, 8)]);
    }

    #[test]
    fn l11_fails_if_any_a_entry_flips() {
        let mut s = build_scenario();
        let g = idx(&s.category.group, 0, 1);
        s.data_p10.a[g] = s.data_p10.a[g].mul(&RootOfUnity::minus_one());
        assert!(!check_l11(&s));
    }

    #[test]
    fn one_flip_representative_is_the_character_twist_and_selects_the_other_root() {
        // The equivalent representative "a((0,1)) = -1, a = 1 otherwise"
        // is ζ-related to the scenario's a by ζ((x,y)) = (-1)^y; with it the
        // compatibility scalar flips to the principal root e^{πi/4}.
        let mut s = build_scenario();
        let group = s.category.group.clone();
        let zeta = group
            .characters()
            .into_iter()
            .find(|ch| {
                ch.eval_idx(&group, idx(&group, 0, 1)) == RootOfUnity::minus_one()
                    && ch.eval_idx(&group, idx(&group, 1, 0)) == RootOfUnity::one()
            })
            .unwrap();
        let mv = EquivalenceMove::new(&group, zeta, 0).unwrap();
        let twisted = act(&mv, &s.data_p10, &s.category.eps, &group);
        let mut one_flip = vec![RootOfUnity::one(); 8];
        one_flip[idx(&group, 0, 1)] = RootOfUnity::minus_one();
        assert_eq!(twisted.a, one_flip);
        assert!(check_extension_data(&s.category, &twisted, 1e-8).pass_exact());

        s.data_p10 = twisted;
        assert_eq!(solve_c(&s), vec![RootOfUnity::new(1, 8)]);
    }

    #[test]
    fn torsion_obstruction_facts() {
        let s = build_scenario();
        let group = &s.category.group;
        let p10 = idx(group, 1, 0);
        let p01 = idx(group, 0, 1);
        assert!(torsion_obstructions(&s, p10).is_empty());
        assert_eq!(
            torsion_obstructions(&s, p01),
            vec![idx(group, 2, 0), idx(group, 2, 1)]
        );
    }

    #[test]
    fn n11_holds_for_both_data_sets() {
        let s = build_scenario();
        let group = &s.category.group;
        for d in [&s.data_p10, &s.data_p01] {
            for &g in &group.two_torsion() {
                assert_eq!(
                    d.chi.eval_idx(group, g),
                    s.category.eps.root(g, d.p),
                    "n11 at g={}",
                    group.elem(g)
                );
            }
        }
    }

    #[test]
    fn solve_c_empty_for_inconsistent_a() {
        let mut s = build_scenario();
        // corrupt a single a-entry of the second data set
        let g = idx(&s.category.group, 2, 0);
        s.data_p01.a[g] = s.data_p01.a[g].mul(&RootOfUnity::minus_one());
        assert!(solve_c(&s).is_empty());
    }
}
