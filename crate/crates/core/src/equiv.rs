//! Equivalence of extension data: the action of pairs `(ζ, k)` with
//! `ζ ∈ Ĝ` and `k ∈ G_2`, orbit classification, the order-two character τ,
//! and the resulting class counts.

use crate::abelian::{Character, FiniteAbelianGroup};
use crate::category::EpsilonTable;
use crate::extdata::ExtensionData;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EquivError {
    #[error("k = element #{0} is not two-torsion")]
    KNotTorsion(usize),
    #[error("solutions mix different (p, z) parameters")]
    MixedParams,
    #[error("τ failed multiplicativity; input data is not valid extension data")]
    NotACharacter,
}

/// One equivalence move.  Moves compose componentwise:
/// `(ζ1,k1)·(ζ2,k2) = (ζ1ζ2, k1+k2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceMove {
    pub zeta: Character,
    pub k: usize,
}

impl EquivalenceMove {
    pub fn new(group: &FiniteAbelianGroup, zeta: Character, k: usize) -> Result<Self, EquivError> {
        if group.double(k) != 0 {
            return Err(EquivError::KNotTorsion(k));
        }
        Ok(EquivalenceMove { zeta, k })
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        EquivalenceMove {
            zeta: group.trivial_character(),
            k: 0,
        }
    }

    pub fn compose(&self, rhs: &EquivalenceMove, group: &FiniteAbelianGroup) -> EquivalenceMove {
        EquivalenceMove {
            zeta: self.zeta.mul(&rhs.zeta),
            k: group.add(self.k, rhs.k),
        }
    }
}

/// Transforms extension data by one move:
/// `χ' = ζ²χ`, `μ' = ζ²μ`, `ξ' = ζ(p)χ(k)ξ`, `ν' = ζ(p+z)μ(k)ν`,
/// `a'(g) = ζ(g) ε_k(g-p) ε_k(p) a(g)`.
pub fn act(
    mv: &EquivalenceMove,
    d: &ExtensionData,
    eps: &EpsilonTable,
    group: &FiniteAbelianGroup,
) -> ExtensionData {
    let n = group.order();
    let (p, z) = (d.p, d.z);
    let pz = group.add(p, z);
    let k = mv.k;
    let zeta = |g: usize| mv.zeta.eval_idx(group, g);

    let chi = d.chi.mul(&mv.zeta.square());
    let mu = d.mu.mul(&mv.zeta.square());
    let xi = d.xi.mul(&zeta(p)).mul(&d.chi.eval_idx(group, k));
    let nu = d.nu.mul(&zeta(pz)).mul(&d.mu.eval_idx(group, k));
    let a = (0..n)
        .map(|g| {
            d.a[g]
                .mul(&zeta(g))
                .mul(&eps.root(k, group.sub(g, p)))
                .mul(&eps.root(k, p))
        })
        .collect();

    ExtensionData {
        p,
        z,
        chi,
        mu,
        xi,
        nu,
        a,
    }
}

/// All moves for a given group, optionally restricted to a subgroup of
/// allowed characters (the restriction matters for degenerate categories,
/// where not every ζ is realizable).
pub fn all_moves(
    group: &FiniteAbelianGroup,
    allowed_zetas: Option<&[Character]>,
) -> Vec<EquivalenceMove> {
    let zetas: Vec<Character> = match allowed_zetas {
        Some(list) => list.to_vec(),
        None => group.characters(),
    };
    let mut moves = Vec::new();
    for zeta in zetas {
        for &k in &group.two_torsion() {
            moves.push(EquivalenceMove {
                zeta: zeta.clone(),
                k,
            });
        }
    }
    moves
}

/// One equivalence class of extension data.
#[derive(Debug, Clone)]
pub struct Orbit {
    /// Lexicographically minimal member (by exact encoding).
    pub representative: ExtensionData,
    pub members: Vec<ExtensionData>,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub orbits: Vec<Orbit>,
}

impl Classification {
    pub fn class_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Partitions solutions (all sharing one `(p,z)`) into orbits under the
/// moves.  The orbit list is sorted by representative encoding, so the
/// output does not depend on input order.
pub fn classify(
    solutions: &[ExtensionData],
    eps: &EpsilonTable,
    group: &FiniteAbelianGroup,
    allowed_zetas: Option<&[Character]>,
) -> Result<Classification, EquivError> {
    if let Some(first) = solutions.first() {
        if !solutions
            .iter()
            .all(|d| d.p == first.p && d.z == first.z)
        {
            return Err(EquivError::MixedParams);
        }
    }
    let moves = all_moves(group, allowed_zetas);
    let mut remaining: Vec<ExtensionData> = solutions.to_vec();
    remaining.sort_by_key(|d| d.encoding(group));
    remaining.dedup();

    let mut orbits = Vec::new();
    while let Some(seed) = remaining.first().cloned() {
        let mut members: Vec<ExtensionData> =
            moves.iter().map(|mv| act(mv, &seed, eps, group)).collect();
        members.push(seed);
        members.sort_by_key(|d| d.encoding(group));
        members.dedup();
        remaining.retain(|d| !members.contains(d));
        let representative = members[0].clone();
        orbits.push(Orbit {
            representative,
            members,
        });
    }
    orbits.sort_by_key(|o| o.representative.encoding(group));
    Ok(Classification { orbits })
}

/// The order-two character `τ(g) = a(g-p) a(p) / a(g) · ε_{-p}(g) ε_{-p}(p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauCharacter {
    pub signs: Vec<i8>,
}

impl TauCharacter {
    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }
}

/// Evaluates τ and validates that it is a genuine character with
/// `τ(p) = 1` and `τ² = 1`; failure indicates invalid input data.
pub fn compute_tau(
    d: &ExtensionData,
    eps: &EpsilonTable,
    group: &FiniteAbelianGroup,
) -> Result<TauCharacter, EquivError> {
    let n = group.order();
    let p = d.p;
    let mp = group.neg(p);
    let mut signs = Vec::with_capacity(n);
    for g in 0..n {
        let v = d.a[group.sub(g, p)]
            .mul(&d.a[p])
            .mul(&d.a[g].conj())
            .mul(&eps.root(mp, g))
            .mul(&eps.root(mp, p));
        match v.as_sign() {
            Some(s) => signs.push(s),
            None => return Err(EquivError::NotACharacter),
        }
    }
    if signs[p] != 1 {
        return Err(EquivError::NotACharacter);
    }
    for i in 0..n {
        for j in 0..n {
            if signs[group.add(i, j)] != signs[i] * signs[j] {
                return Err(EquivError::NotACharacter);
            }
        }
    }
    Ok(TauCharacter { signs })
}

/// Number of equivalence classes for the data's `(p,z)`: 2 when
/// `τ(k) ε_k(z) ε_z(k) = 1` for every `k ∈ G_2`, else 1.
pub fn coreq_count(
    d: &ExtensionData,
    eps: &EpsilonTable,
    group: &FiniteAbelianGroup,
) -> Result<u8, EquivError> {
    let tau = compute_tau(d, eps, group)?;
    let all_plus = group
        .two_torsion()
        .iter()
        .all(|&k| tau.signs[k] * eps.get(k, d.z) * eps.get(d.z, k) == 1);
    Ok(if all_plus { 2 } else { 1 })
}
