//! Extension data `(χ, μ, ξ, ν, a)` for a grading twist `(p, z)`, the
//! constraint system it must satisfy, and the exhaustive search for all
//! solutions.
//!
//! Constraint numbering used throughout (exact unless noted):
//!
//! * eq13  `ν² = μ(p+z)`
//! * eq14  `ξ² = χ(p)`
//! * eq15  `μ(g)² = χ(g)²`
//! * eq16  `μ(p) = χ(p+z)`
//! * eq17  `a(0) = 1`
//! * eq18  `χ(g) = a(g)²`
//! * eq19  `a(h+2g) = a(h) ε_g(h) ε_g(h-p) χ(g)`
//! * eq20  `a(g) a(g-p) ε_{p+z}(g-2p) ξ = μ(g)`
//! * eq21  `a(g) a(-g) = ε_{-g}(g-p) ε_{-g}(g)`
//! * eq22  `A_g(h,k) = a(g+h) a(g+k) conj(a(g+h+k) a(g)) A_{g-p}(h,k)` (float)
//! * n11   `χ(g) = ε_g(p)` for `g ∈ G_2` (consequence of eq19)
//!
//! The reduced system eq13'..eq20' is the equivalent reformulation used as
//! a cross-check; see [`check_reduced_system`].

use crate::abelian::{Character, FiniteAbelianGroup, GroupElem, RootOfUnity};
use crate::category::CategoryData;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DataError {
    #[error("p = {0} lies in 2G; the twist must come from G \\ 2G")]
    PNotOdd(String),
    #[error("z = {0} is not two-torsion")]
    ZNotTorsion(String),
    #[error("data sized for a group of order {got}, expected {want}")]
    WrongSize { got: usize, want: usize },
    #[error("no A tensor loaded; equation-22 check unavailable")]
    MissingA,
}

/// A choice of grading twist: `p ∈ G\2G` and `z ∈ G_2`, stored as element
/// indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionParams {
    pub p: usize,
    pub z: usize,
}

impl ExtensionParams {
    pub fn new(group: &FiniteAbelianGroup, p: usize, z: usize) -> Result<Self, DataError> {
        if !group.odd_part().contains(&p) {
            return Err(DataError::PNotOdd(group.elem(p).to_string()));
        }
        if group.double(z) != 0 {
            return Err(DataError::ZNotTorsion(group.elem(z).to_string()));
        }
        Ok(ExtensionParams { p, z })
    }

    pub fn from_elems(
        group: &FiniteAbelianGroup,
        p: &GroupElem,
        z: &GroupElem,
    ) -> Result<Self, DataError> {
        let pi = group.index_of(p).map_err(|_| DataError::WrongSize {
            got: p.residues().len(),
            want: group.moduli().len(),
        })?;
        let zi = group.index_of(z).map_err(|_| DataError::WrongSize {
            got: z.residues().len(),
            want: group.moduli().len(),
        })?;
        Self::new(group, pi, zi)
    }
}

/// One candidate or verified set of extension data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionData {
    pub p: usize,
    pub z: usize,
    pub chi: Character,
    pub mu: Character,
    pub xi: RootOfUnity,
    pub nu: RootOfUnity,
    /// `a(g)` in canonical element order.
    pub a: Vec<RootOfUnity>,
}

impl ExtensionData {
    /// Stable total order used for canonical representatives and
    /// deterministic reports: all scalars written as exponents in the
    /// session root group `μ_N`.
    pub fn encoding(&self, group: &FiniteAbelianGroup) -> Vec<u64> {
        let n = group.scalar_order();
        let mut key = vec![self.p as u64, self.z as u64];
        key.extend(self.chi.exponents().iter().map(|&c| c as u64));
        key.extend(self.mu.exponents().iter().map(|&c| c as u64));
        key.push(self.xi.exp_in(n).expect("xi fits the session root order"));
        key.push(self.nu.exp_in(n).expect("nu fits the session root order"));
        key.extend(
            self.a
                .iter()
                .map(|r| r.exp_in(n).expect("a-values fit the session root order")),
        );
        key
    }
}

/// Status of the tensor-dependent check (eq22).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Eq22Status {
    Checked { max_residual: f64, pass: bool },
    Unchecked,
}

/// Per-equation outcome of [`check_extension_data`].
#[derive(Debug, Clone, Serialize)]
pub struct ConstraintReport {
    pub exact: Vec<(String, bool)>,
    pub eq22: Eq22Status,
}

impl ConstraintReport {
    pub fn pass_exact(&self) -> bool {
        self.exact.iter().all(|(_, ok)| *ok)
    }

    pub fn pass(&self) -> bool {
        self.pass_exact()
            && match self.eq22 {
                Eq22Status::Checked { pass, .. } => pass,
                Eq22Status::Unchecked => true,
            }
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.exact
            .iter()
            .find(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
    }
}

/// `η_g = η_{g+p}` for all `g`; extension data can only exist when this
/// holds.
pub fn check_eta_periodicity(c: &CategoryData, p: usize) -> bool {
    let n = c.group.order();
    (0..n).all(|g| c.eta.root(g) == c.eta.root(c.group.add(g, p)))
}

fn eps_root(c: &CategoryData, g: usize, h: usize) -> RootOfUnity {
    c.eps.root(g, h)
}

/// Evaluates the full constraint system eq13..eq22 plus n11 and the η
/// periodicity requirement.  All checks except eq22 are exact.
pub fn check_extension_data(c: &CategoryData, d: &ExtensionData, tol: f64) -> ConstraintReport {
    let group = &c.group;
    let n = group.order();
    let (p, z) = (d.p, d.z);
    let pz = group.add(p, z);
    let chi = |g: usize| d.chi.eval_idx(group, g);
    let mu = |g: usize| d.mu.eval_idx(group, g);

    let mut exact: Vec<(String, bool)> = Vec::new();
    let mut push = |name: &str, ok: bool| exact.push((name.to_string(), ok));

    push("eta-periodicity", check_eta_periodicity(c, p));
    push("eq13", d.nu.mul(&d.nu) == mu(pz));
    push("eq14", d.xi.mul(&d.xi) == chi(p));
    push(
        "eq15",
        (0..n).all(|g| mu(g).mul(&mu(g)) == chi(g).mul(&chi(g))),
    );
    push("eq16", mu(p) == chi(pz));
    push("eq17", d.a[0].is_one());
    push("eq18", (0..n).all(|g| chi(g) == d.a[g].mul(&d.a[g])));

    let eq19 = (0..n).all(|g| {
        (0..n).all(|h| {
            let lhs = &d.a[group.add(h, group.double(g))];
            let rhs = d.a[h]
                .mul(&eps_root(c, g, h))
                .mul(&eps_root(c, g, group.sub(h, p)))
                .mul(&chi(g));
            *lhs == rhs
        })
    });
    push("eq19", eq19);

    let eq20 = (0..n).all(|g| {
        let lhs = d.a[g]
            .mul(&d.a[group.sub(g, p)])
            .mul(&eps_root(c, pz, group.sub(g, group.double(p))))
            .mul(&d.xi);
        lhs == mu(g)
    });
    push("eq20", eq20);

    let eq21 = (0..n).all(|g| {
        let mg = group.neg(g);
        let lhs = d.a[g].mul(&d.a[mg]);
        let rhs = eps_root(c, mg, group.sub(g, p)).mul(&eps_root(c, mg, g));
        lhs == rhs
    });
    push("eq21", eq21);

    let n11 = group
        .two_torsion()
        .iter()
        .all(|&g| chi(g) == eps_root(c, g, p));
    push("n11", n11);

    let eq22 = match &c.tensor {
        None => Eq22Status::Unchecked,
        Some(t) => {
            let mut worst = 0.0f64;
            for g in 0..n {
                for h in 0..n {
                    for k in 0..n {
                        let phase = d.a[group.add(g, h)]
                            .mul(&d.a[group.add(g, k)])
                            .mul(&d.a[group.add(g, group.add(h, k))].conj())
                            .mul(&d.a[g].conj())
                            .to_complex();
                        let lhs = t.get(g, h, k);
                        let rhs = phase * t.get(group.sub(g, p), h, k);
                        worst = worst.max((lhs - rhs).norm());
                    }
                }
            }
            Eq22Status::Checked {
                max_residual: worst,
                pass: worst <= tol,
            }
        }
    };

    ConstraintReport { exact, eq22 }
}

/// Evaluates the reduced system (the equivalent reformulation of
/// eq13..eq22) and reports whether it passes.  The tensor-dependent final
/// equation is identical to eq22 and reported the same way.
pub fn check_reduced_system(c: &CategoryData, d: &ExtensionData, tol: f64) -> ConstraintReport {
    let group = &c.group;
    let n = group.order();
    let (p, z) = (d.p, d.z);
    let mp = group.neg(p);
    let chi = |g: usize| d.chi.eval_idx(group, g);
    let mu = |g: usize| d.mu.eval_idx(group, g);

    let mut exact: Vec<(String, bool)> = Vec::new();
    let mut push = |name: &str, ok: bool| exact.push((name.to_string(), ok));

    push("eta-periodicity", check_eta_periodicity(c, p));
    push("r1", d.nu.mul(&d.nu) == mu(group.add(p, z)));
    push("r2", d.xi == d.a[p].mul(&eps_root(c, mp, p)));
    push("r3", (0..n).all(|g| chi(g) == d.a[g].mul(&d.a[g])));

    let r4 = (0..n).all(|g| {
        let rhs = d.a[g]
            .mul(&d.a[group.sub(g, p)])
            .mul(&d.a[p])
            .mul(&eps_root(c, mp, g))
            .mul(&eps_root(c, mp, p))
            .mul(&eps_root(c, z, g));
        mu(g) == rhs
    });
    push("r4", r4);

    push("r5", d.a[0].is_one());

    let r6 = (0..n).all(|g| {
        (0..n).all(|h| {
            let tg = group.double(g);
            let lhs = d.a[group.add(h, tg)];
            let rhs = d.a[h]
                .mul(&d.a[tg])
                .mul(&eps_root(c, g, h))
                .mul(&eps_root(c, g, group.sub(h, p)))
                .mul(&eps_root(c, g, 0))
                .mul(&eps_root(c, g, mp));
            lhs == rhs
        })
    });
    push("r6", r6);

    let r7 = (0..n).all(|g| {
        let mg = group.neg(g);
        d.a[g].mul(&d.a[mg]) == eps_root(c, mg, group.sub(g, p)).mul(&eps_root(c, mg, g))
    });
    push("r7", r7);

    let eq22 = match &c.tensor {
        None => Eq22Status::Unchecked,
        Some(_) => {
            // r8 is literally eq22
            match check_extension_data(c, d, tol).eq22 {
                s @ Eq22Status::Checked { .. } => s,
                Eq22Status::Unchecked => unreachable!(),
            }
        }
    };

    ConstraintReport { exact, eq22 }
}

/// Result of [`search_extension_data`].
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub solutions: Vec<ExtensionData>,
    /// Whether eq22 filtering against a tensor was applied.
    pub tensor_filtered: bool,
    /// Set when a tensor filter ran but every entry was numerically zero,
    /// making the filter vacuous.
    pub vacuous_filter: bool,
    /// Order `N` of the scalar domain `μ_N` the enumeration ranged over.
    /// Completeness of the search is relative to this domain; eq18 bounds
    /// every `a(g)` (and hence ξ, ν) inside it.
    pub scalar_order: u64,
}

/// Exhaustively enumerates every solution of eq13..eq21 (and n11), then
/// filters by eq22 against the loaded tensor when present.
///
/// The enumeration is complete: eq18 confines each `a(g)` to the two square
/// roots of a character value, eq14/eq13 confine `ξ`, `ν` likewise, and `μ`
/// is pinned by eq20; every branch of that finite tree is visited.
pub fn search_extension_data(
    c: &CategoryData,
    params: ExtensionParams,
    tol: f64,
) -> SearchResult {
    let group = &c.group;
    if !check_eta_periodicity(c, params.p) {
        return SearchResult {
            solutions: Vec::new(),
            tensor_filtered: c.tensor.is_some(),
            vacuous_filter: false,
            scalar_order: group.scalar_order(),
        };
    }

    let characters = group.characters();
    let mut solutions: Vec<ExtensionData> = characters
        .par_iter()
        .flat_map(|chi| candidates_for_chi(c, params, chi, &characters))
        .collect();

    let mut vacuous = false;
    let tensor_filtered = c.tensor.is_some();
    if let Some(t) = &c.tensor {
        let max_entry = t.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        if max_entry < 1e-10 {
            vacuous = true;
        } else {
            solutions.retain(|d| match check_extension_data(c, d, tol).eq22 {
                Eq22Status::Checked { pass, .. } => pass,
                Eq22Status::Unchecked => true,
            });
        }
    }

    solutions.sort_by_key(|d| d.encoding(group));
    solutions.dedup();
    SearchResult {
        solutions,
        tensor_filtered,
        vacuous_filter: vacuous,
        scalar_order: group.scalar_order(),
    }
}

fn candidates_for_chi(
    c: &CategoryData,
    params: ExtensionParams,
    chi: &Character,
    characters: &[Character],
) -> Vec<ExtensionData> {
    let group = &c.group;
    let n = group.order();
    let (p, z) = (params.p, params.z);
    let pz = group.add(p, z);

    // n11 prune: χ(g) = ε_g(p) on two-torsion.
    if !group
        .two_torsion()
        .iter()
        .all(|&g| chi.eval_idx(group, g) == eps_root(c, g, p))
    {
        return Vec::new();
    }

    // eq18 confines a(g) to ±sqrt(χ(g)); enumerate the sign patterns.
    let base: Vec<RootOfUnity> = (0..n).map(|g| chi.eval_idx(group, g).sqrt()).collect();
    let mut out = Vec::new();
    for mask in 0..(1usize << (n - 1)) {
        let a: Vec<RootOfUnity> = (0..n)
            .map(|g| {
                if g > 0 && mask >> (g - 1) & 1 == 1 {
                    base[g].mul(&RootOfUnity::minus_one())
                } else {
                    base[g]
                }
            })
            .collect();

        // eq19
        let eq19 = (0..n).all(|g| {
            (0..n).all(|h| {
                a[group.add(h, group.double(g))]
                    == a[h]
                        .mul(&eps_root(c, g, h))
                        .mul(&eps_root(c, g, group.sub(h, p)))
                        .mul(&chi.eval_idx(group, g))
            })
        });
        if !eq19 {
            continue;
        }
        // eq21
        let eq21 = (0..n).all(|g| {
            let mg = group.neg(g);
            a[g].mul(&a[mg]) == eps_root(c, mg, group.sub(g, p)).mul(&eps_root(c, mg, g))
        });
        if !eq21 {
            continue;
        }

        for xi in chi.eval_idx(group, p).sqrts() {
            // eq20 pins μ pointwise; it must be one of the characters.
            let mu_values: Vec<RootOfUnity> = (0..n)
                .map(|g| {
                    a[g].mul(&a[group.sub(g, p)])
                        .mul(&eps_root(c, pz, group.sub(g, group.double(p))))
                        .mul(&xi)
                })
                .collect();
            let Some(mu) = characters
                .iter()
                .find(|m| (0..n).all(|g| m.eval_idx(group, g) == mu_values[g]))
            else {
                continue;
            };
            // eq15 / eq16
            if !(0..n).all(|g| {
                mu.eval_idx(group, g).pow(2) == chi.eval_idx(group, g).pow(2)
            }) {
                continue;
            }
            if mu.eval_idx(group, p) != chi.eval_idx(group, pz) {
                continue;
            }
            for nu in mu.eval_idx(group, pz).sqrts() {
                let d = ExtensionData {
                    p,
                    z,
                    chi: chi.clone(),
                    mu: mu.clone(),
                    xi,
                    nu,
                    a: a.clone(),
                };
                debug_assert!(
                    check_extension_data(c, &d, 1e-8).pass_exact(),
                    "search emitted data violating an exact constraint"
                );
                out.push(d);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FiniteAbelianGroup;
    use crate::category::{CategoryData, EtaTable};
    use crate::presets;

    fn klein_category() -> CategoryData {
        let group = FiniteAbelianGroup::new(&[2, 2]);
        CategoryData::new(
            group,
            presets::epsilon_z2z2_paper(),
            EtaTable::trivial(4),
            None,
        )
        .unwrap()
    }

    /// The worked Klein-four data set for p with z = 0:
    /// a = (1,-i,1,i), χ = (1,-1,1,-1), ξ = i, μ = χ, ν = ±i.
    pub(crate) fn klein_data_p(c: &CategoryData, z: usize, nu_sign: i8) -> ExtensionData {
        let group = &c.group;
        let one = RootOfUnity::one();
        let i = RootOfUnity::i();
        let a = vec![one, i.conj(), one, i];
        let chi = group
            .characters()
            .into_iter()
            .find(|ch| {
                (0..4).all(|g| ch.eval_idx(group, g) == c.eps.root(g, 1))
            })
            .unwrap();
        // μ = χ · ε_z
        let mu = group
            .characters()
            .into_iter()
            .find(|m| (0..4).all(|g| m.eval_idx(group, g) == chi.eval_idx(group, g).mul(&c.eps.root(z, g))))
            .unwrap();
        let nu2 = mu.eval_idx(group, group.add(1, z));
        let nu = if nu_sign == 1 { nu2.sqrt() } else { nu2.sqrt().mul(&RootOfUnity::minus_one()) };
        ExtensionData {
            p: 1,
            z,
            chi,
            mu,
            xi: RootOfUnity::i(),
            nu,
            a,
        }
    }

    #[test]
    fn klein_worked_data_passes_exact_checks() {
        let c = klein_category();
        for z in 0..4 {
            for s in [1, -1] {
                let d = klein_data_p(&c, z, s);
                let report = check_extension_data(&c, &d, 1e-8);
                assert!(
                    report.pass_exact(),
                    "z={z} s={s} first failure: {:?}",
                    report.first_failure()
                );
                assert_eq!(report.eq22, Eq22Status::Unchecked);
            }
        }
    }

    #[test]
    fn klein_wrong_sign_fails_eq20() {
        let c = klein_category();
        let mut d = klein_data_p(&c, 0, 1);
        d.a[2] = RootOfUnity::minus_one(); // a = (1,-i,-1,i) with unchanged μ
        let report = check_extension_data(&c, &d, 1e-8);
        assert!(!report.pass_exact());
        assert_eq!(report.first_failure(), Some("eq20"));
    }

    #[test]
    fn reduced_system_gives_the_xi_identity() {
        let c = klein_category();
        let d = klein_data_p(&c, 0, 1);
        // ξ = a(p) ε_{-p}(p)
        assert_eq!(d.xi, d.a[1].mul(&c.eps.root(c.group.neg(1), 1)));
        let report = check_reduced_system(&c, &d, 1e-8);
        assert!(report.pass_exact());
    }

    #[test]
    fn search_finds_the_klein_solutions_unfiltered() {
        let c = klein_category();
        let params = ExtensionParams::new(&c.group, 1, 0).unwrap();
        let result = search_extension_data(&c, params, 1e-8);
        assert!(!result.tensor_filtered);
        // Without the tensor both sign branches survive: two a-classes of 4
        // character twists each, times two ν signs.
        assert_eq!(result.solutions.len(), 16);
        for d in &result.solutions {
            assert!(check_extension_data(&c, d, 1e-8).pass_exact());
        }
        let worked = klein_data_p(&c, 0, 1);
        assert!(result.solutions.contains(&worked));
    }

    #[test]
    fn search_respects_eta_periodicity_gate() {
        let group = FiniteAbelianGroup::new(&[2]);
        let eps = presets::epsilon_cyclic_nontrivial(1);
        // η = (1, ω) breaks η_g = η_{g+p} for p = 1
        let eta = EtaTable::from_exponents(vec![0, 1]);
        let c = CategoryData::new(group, eps, eta, None).unwrap();
        assert!(!check_eta_periodicity(&c, 1));
        let params = ExtensionParams::new(&c.group, 1, 0).unwrap();
        assert!(search_extension_data(&c, params, 1e-8).solutions.is_empty());
    }

    #[test]
    fn eta_periodicity_z4_scan() {
        let group = FiniteAbelianGroup::new(&[4]);
        let eps = presets::epsilon_cyclic_nontrivial(2);
        let eta = EtaTable::from_exponents(vec![0, 1, 0, 1]);
        let c = CategoryData::new(group, eps, eta, None).unwrap();
        assert!(!check_eta_periodicity(&c, 1));
        let trivial = CategoryData::new(
            c.group.clone(),
            c.eps.clone(),
            EtaTable::trivial(4),
            None,
        )
        .unwrap();
        assert!(check_eta_periodicity(&trivial, 1));
    }

    #[test]
    fn cyclic_closed_form_appears_among_solutions() {
        // For Z_{2n} with the fixed normalization, a(g) = -ξ^g (g ≥ 1) is a
        // solution for each admissible ξ.
        for n in [1u32, 2] {
            let order = (2 * n) as usize;
            let group = FiniteAbelianGroup::new(&[2 * n]);
            let eps = presets::epsilon_cyclic_nontrivial(n);
            let c = CategoryData::new(group, eps, EtaTable::trivial(order), None).unwrap();
            let params = ExtensionParams::new(&c.group, 1, 0).unwrap();
            let result = search_extension_data(&c, params, 1e-8);
            assert!(!result.solutions.is_empty());
            let found = result.solutions.iter().any(|d| {
                (1..order).all(|g| d.a[g] == d.xi.pow(g as i64).mul(&RootOfUnity::minus_one()))
            });
            assert!(found, "closed-form solution missing for n={n}");
        }
    }

    #[test]
    fn params_validation() {
        let group = FiniteAbelianGroup::new(&[2, 2]);
        assert!(ExtensionParams::new(&group, 0, 0).is_err()); // 0 ∈ 2G
        assert!(ExtensionParams::new(&group, 1, 0).is_ok());
        let z4 = FiniteAbelianGroup::new(&[4]);
        assert!(ExtensionParams::new(&z4, 1, 1).is_err()); // z = 1 not torsion
        assert!(ExtensionParams::new(&z4, 2, 0).is_err()); // 2 ∈ 2G
        let z3 = FiniteAbelianGroup::new(&[3]);
        assert!(ExtensionParams::new(&z3, 1, 0).is_err()); // no odd part at all
    }
}
