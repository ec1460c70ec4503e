//! Built-in structure-constant presets for the groups treated by this crate.

use crate::abelian::FiniteAbelianGroup;
use crate::category::{CategoryData, EpsilonTable, EtaTable};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown preset {0:?}")]
    Unknown(String),
    #[error("preset {name:?} requires group {want}, got {got}")]
    GroupMismatch {
        name: String,
        want: String,
        got: String,
    },
    #[error("preset \"z2n-nontrivial\" requires an even cyclic group, got {0}")]
    NotEvenCyclic(String),
}

/// The 4x4 sign matrix for the Klein four-group, rows indexed by the
/// subscript in the order `(0, p, q, r)`.
pub fn epsilon_z2z2_paper() -> EpsilonTable {
    EpsilonTable::from_rows(&[
        vec![1, 1, 1, 1],
        vec![1, -1, -1, 1],
        vec![1, 1, -1, -1],
        vec![1, -1, 1, -1],
    ])
    .unwrap()
}

/// The nontrivial normalization for `Z_{2n}`: `ε_1(2n-1) = -1` and
/// `ε_1(g) = 1` otherwise, closed under the cocycle law.  Restricts to the
/// bicharacter `ε_n(m) = (-1)^m` on `G_2 x G`.
pub fn epsilon_cyclic_nontrivial(n: u32) -> EpsilonTable {
    assert!(n >= 1);
    let order = (2 * n) as usize;
    let mut rows = vec![vec![1i8; order]; order];
    rows[1][order - 1] = -1;
    // ε_{k+1}(g) = ε_k(g) ε_1(g + 2k)
    for k in 1..order - 1 {
        for g in 0..order {
            rows[k + 1][g] = rows[k][g] * rows[1][(g + 2 * k) % order];
        }
    }
    // closing the cycle must return to ε_0 ≡ 1
    for g in 0..order {
        assert_eq!(rows[order - 1][g] * rows[1][(g + 2 * (order - 1)) % order], 1);
    }
    let eps = EpsilonTable::from_rows(&rows).unwrap();
    debug_assert!(eps.is_cocycle(&FiniteAbelianGroup::new(&[2 * n])));
    for m in 0..order {
        debug_assert_eq!(eps.get(n as usize, m), if m % 2 == 0 { 1 } else { -1 });
    }
    eps
}

/// The degenerate `Z4 x Z2` table.  On the two-torsion rows it is the
/// bicharacter `ε_{(i,j)}((k,l)) = -1` iff `(i,l) = (2,1)`; the remaining
/// rows are the unique cocycle extension compatible with the quasi-trivial
/// extension data of this scenario, and the row of `(0,1)` is identically
/// one (the degeneracy).
pub fn epsilon_ah4() -> EpsilonTable {
    let group = FiniteAbelianGroup::new(&[4, 2]);
    let n = group.order();
    let mut rows = vec![vec![1i8; n]; n];
    for (gi, g) in group.elements().iter().enumerate() {
        let i = g.residues()[0];
        for (hi, h) in group.elements().iter().enumerate() {
            let (k, l) = (h.residues()[0], h.residues()[1]);
            let neg = match i {
                0 => false,
                2 => l == 1,
                1 => l == 1 && (k == 2 || k == 3),
                3 => l == 1 && (k == 0 || k == 1),
                _ => unreachable!(),
            };
            rows[gi][hi] = if neg { -1 } else { 1 };
        }
    }
    let eps = EpsilonTable::from_rows(&rows).unwrap();
    debug_assert!(eps.is_cocycle(&group));
    eps
}

/// Canonical preset names understood by the CLI.
pub const PRESET_NAMES: &[&str] = &["z2z2-paper", "z2n-nontrivial", "ah4", "trivial"];

/// Builds the ε table for a named preset.  `"z2z2-paper"` (also accepted as
/// `"paper-z2z2"`) needs `Z2xZ2`; `"z2n-nontrivial"` needs an even cyclic
/// group; `"ah4"` needs `Z4xZ2`; `"trivial"` works for any group.
pub fn builtin_epsilon(
    name: &str,
    group: &FiniteAbelianGroup,
) -> Result<EpsilonTable, PresetError> {
    match name {
        "z2z2-paper" | "paper-z2z2" => {
            if group.moduli() != [2, 2] {
                return Err(PresetError::GroupMismatch {
                    name: name.into(),
                    want: "Z2xZ2".into(),
                    got: group.spec_string(),
                });
            }
            Ok(epsilon_z2z2_paper())
        }
        "z2n-nontrivial" => {
            if group.moduli().len() != 1 || !group.moduli()[0].is_multiple_of(2) {
                return Err(PresetError::NotEvenCyclic(group.spec_string()));
            }
            Ok(epsilon_cyclic_nontrivial(group.moduli()[0] / 2))
        }
        "ah4" => {
            if group.moduli() != [4, 2] {
                return Err(PresetError::GroupMismatch {
                    name: name.into(),
                    want: "Z4xZ2".into(),
                    got: group.spec_string(),
                });
            }
            Ok(epsilon_ah4())
        }
        "trivial" => Ok(EpsilonTable::all_ones(group.order())),
        other => Err(PresetError::Unknown(other.into())),
    }
}

/// Category datum (without tensor) for a named preset; η is trivial.
pub fn builtin_category(
    name: &str,
    group: &FiniteAbelianGroup,
) -> Result<CategoryData, PresetError> {
    let eps = builtin_epsilon(name, group)?;
    let eta = EtaTable::trivial(group.order());
    Ok(CategoryData::new(group.clone(), eps, eta, None).expect("preset shapes are consistent"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_preset_is_cocycle_for_small_n() {
        for n in 1..=5u32 {
            let group = FiniteAbelianGroup::new(&[2 * n]);
            let eps = epsilon_cyclic_nontrivial(n);
            assert!(eps.is_cocycle(&group), "n={n}");
            // restriction to G2 x G
            for m in 0..group.order() {
                assert_eq!(eps.get(n as usize, m), if m % 2 == 0 { 1 } else { -1 });
            }
            // the fixed normalization row
            for g in 0..group.order() {
                let want = if g == group.order() - 1 { -1 } else { 1 };
                assert_eq!(eps.get(1, g), want);
            }
        }
    }

    #[test]
    fn ah4_preset_degeneracy_and_torsion_rows() {
        let group = FiniteAbelianGroup::new(&[4, 2]);
        let eps = epsilon_ah4();
        assert!(eps.is_cocycle(&group));
        let idx = |x: u32, y: u32| {
            group
                .index_of(&crate::abelian::GroupElem(vec![x, y]))
                .unwrap()
        };
        // degenerate row
        for h in 0..group.order() {
            assert_eq!(eps.get(idx(0, 1), h), 1);
        }
        // bicharacter on two-torsion rows: -1 iff (i,l) = (2,1)
        for &t in &group.two_torsion() {
            let i = group.elem(t).residues()[0];
            for h in 0..group.order() {
                let l = group.elem(h).residues()[1];
                let want = if i == 2 && l == 1 { -1 } else { 1 };
                assert_eq!(eps.get(t, h), want);
            }
        }
        assert_eq!(eps.get(idx(2, 0), idx(0, 1)), -1);
    }

    #[test]
    fn builtin_epsilon_validates_group() {
        let z4 = FiniteAbelianGroup::new(&[4]);
        assert!(builtin_epsilon("z2z2-paper", &z4).is_err());
        assert!(builtin_epsilon("z2n-nontrivial", &z4).is_ok());
        assert!(builtin_epsilon("nope", &z4).is_err());
        let z3 = FiniteAbelianGroup::new(&[3]);
        assert!(builtin_epsilon("z2n-nontrivial", &z3).is_err());
    }
}
