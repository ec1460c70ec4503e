//! Finite abelian groups, their characters, and exact roots of unity.
//!
//! Everything downstream manipulates scalars in the cyclic group `μ_N` of
//! N-th roots of unity and elements of a fixed product group
//! `G = Z_{m1} x ... x Z_{mk}`.  Both are kept exact: a [`RootOfUnity`] is a
//! reduced fraction `exp/order` of a full turn, and a [`GroupElem`] is a
//! residue vector.  Floating point only enters through
//! [`RootOfUnity::to_complex`].

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("cannot parse group spec {0:?}; expected e.g. \"Z4xZ2\"")]
    BadSpec(String),
    #[error("residue vector has {got} components, group has {want}")]
    BadArity { got: usize, want: usize },
}

/// Element of a finite abelian product group, as a vector of residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElem(pub Vec<u32>);

impl GroupElem {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `G = Z_{m1} x ... x Z_{mk}` with precomputed arithmetic tables.
///
/// Elements are enumerated lexicographically on residue vectors (first
/// coordinate most significant), and most hot paths work with the element
/// *index* in that enumeration rather than the residue vector itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u32>,
    elements: Vec<GroupElem>,
    add: Vec<usize>,
    neg: Vec<usize>,
    exponent: u64,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: &[u32]) -> Self {
        assert!(!moduli.is_empty(), "group needs at least one factor");
        assert!(moduli.iter().all(|&m| m >= 1), "moduli must be positive");
        let moduli = moduli.to_vec();
        let order: usize = moduli.iter().map(|&m| m as usize).product();

        let mut elements = Vec::with_capacity(order);
        let mut cur = vec![0u32; moduli.len()];
        loop {
            elements.push(GroupElem(cur.clone()));
            // odometer increment, last coordinate fastest
            let mut i = moduli.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < moduli[i] {
                    break;
                }
                cur[i] = 0;
                if i == 0 {
                    i = usize::MAX; // full wrap: done
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
        debug_assert_eq!(elements.len(), order);

        let index_of = |e: &[u32]| -> usize {
            let mut idx = 0usize;
            for (r, &m) in e.iter().zip(&moduli) {
                idx = idx * m as usize + *r as usize;
            }
            idx
        };

        let mut add = vec![0usize; order * order];
        let mut neg = vec![0usize; order];
        for i in 0..order {
            let a = &elements[i];
            let negated: Vec<u32> = a
                .0
                .iter()
                .zip(&moduli)
                .map(|(&r, &m)| (m - r) % m)
                .collect();
            neg[i] = index_of(&negated);
            for j in 0..order {
                let b = &elements[j];
                let sum: Vec<u32> = a
                    .0
                    .iter()
                    .zip(b.0.iter())
                    .zip(&moduli)
                    .map(|((&x, &y), &m)| (x + y) % m)
                    .collect();
                add[i * order + j] = index_of(&sum);
            }
        }

        let exponent = moduli.iter().fold(1u64, |l, &m| l.lcm(&(m as u64)));
        FiniteAbelianGroup {
            moduli,
            elements,
            add,
            neg,
            exponent,
        }
    }

    /// Parses specs like `"Z2"`, `"Z4xZ2"`, `"Z2xZ2"` (case-insensitive).
    pub fn parse(spec: &str) -> Result<Self, GroupError> {
        let mut moduli = Vec::new();
        for part in spec.split(['x', 'X']) {
            let part = part.trim();
            let digits = part
                .strip_prefix('Z')
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| GroupError::BadSpec(spec.into()))?;
            let m: u32 = digits
                .parse()
                .map_err(|_| GroupError::BadSpec(spec.into()))?;
            if m == 0 {
                return Err(GroupError::BadSpec(spec.into()));
            }
            moduli.push(m);
        }
        if moduli.is_empty() {
            return Err(GroupError::BadSpec(spec.into()));
        }
        Ok(Self::new(&moduli))
    }

    pub fn spec_string(&self) -> String {
        self.moduli
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Exponent of the group (lcm of the moduli).
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Order of the ambient root-of-unity group used for exact scalars:
    /// `lcm(24, 8 * exponent(G))`.  Large enough for cube roots, eighth
    /// roots, square roots of arbitrary character values, and `±i`.
    pub fn scalar_order(&self) -> u64 {
        24u64.lcm(&(8 * self.exponent))
    }

    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn elem(&self, idx: usize) -> &GroupElem {
        &self.elements[idx]
    }

    pub fn index_of(&self, e: &GroupElem) -> Result<usize, GroupError> {
        if e.0.len() != self.moduli.len() {
            return Err(GroupError::BadArity {
                got: e.0.len(),
                want: self.moduli.len(),
            });
        }
        let mut idx = 0usize;
        for (r, &m) in e.0.iter().zip(&self.moduli) {
            idx = idx * m as usize + (*r % m) as usize;
        }
        Ok(idx)
    }

    pub fn zero(&self) -> usize {
        0
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.elements.len() + j]
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }

    #[inline]
    pub fn sub(&self, i: usize, j: usize) -> usize {
        self.add(i, self.neg(j))
    }

    #[inline]
    pub fn double(&self, i: usize) -> usize {
        self.add(i, i)
    }

    /// `G_2 = { g : 2g = 0 }`, in canonical order.
    pub fn two_torsion(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.double(i) == 0).collect()
    }

    /// `G \ 2G`: elements outside the image of the doubling map.
    pub fn odd_part(&self) -> Vec<usize> {
        let mut doubled = vec![false; self.order()];
        for i in 0..self.order() {
            doubled[self.double(i)] = true;
        }
        (0..self.order()).filter(|&i| !doubled[i]).collect()
    }

    /// All `|G|` characters, enumerated lexicographically on their exponent
    /// vectors.
    pub fn characters(&self) -> Vec<Character> {
        self.elements
            .iter()
            .map(|e| Character {
                moduli: self.moduli.clone(),
                exps: e.0.clone(),
            })
            .collect()
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            moduli: self.moduli.clone(),
            exps: vec![0; self.moduli.len()],
        }
    }
}

/// Exact element of the circle group with finite order: `e^{2πi·exp/order}`
/// stored as the reduced fraction `exp/order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    order: u64,
    exp: u64,
}

impl RootOfUnity {
    pub fn new(exp: i64, order: u64) -> Self {
        assert!(order > 0);
        let e = exp.rem_euclid(order as i64) as u64;
        let g = e.gcd(&order);
        if e == 0 {
            RootOfUnity { order: 1, exp: 0 }
        } else {
            RootOfUnity {
                order: order / g,
                exp: e / g,
            }
        }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exp: 0 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { order: 2, exp: 1 }
    }

    pub fn i() -> Self {
        RootOfUnity { order: 4, exp: 1 }
    }

    pub fn from_sign(s: i8) -> Self {
        match s {
            1 => Self::one(),
            -1 => Self::minus_one(),
            _ => panic!("sign must be ±1, got {s}"),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent in lowest terms (coprime to `order`, or 0 for the identity).
    pub fn exp(&self) -> u64 {
        self.exp
    }

    /// Exponent of this root inside `μ_n`; fails if the order does not
    /// divide `n`.
    pub fn exp_in(&self, n: u64) -> Option<u64> {
        if n.is_multiple_of(self.order) {
            Some(self.exp * (n / self.order))
        } else {
            None
        }
    }

    pub fn mul(&self, rhs: &RootOfUnity) -> RootOfUnity {
        let n = self.order.lcm(&rhs.order);
        let e = self.exp * (n / self.order) + rhs.exp * (n / rhs.order);
        RootOfUnity::new((e % n) as i64, n)
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity::new(-(self.exp as i64), self.order)
    }

    /// Complex conjugate; equals the inverse on the unit circle.
    pub fn conj(&self) -> RootOfUnity {
        self.inv()
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        RootOfUnity::new(self.exp as i64 * k, self.order)
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0
    }

    /// Returns `+1`/`-1` when the value is real, `None` otherwise.
    pub fn as_sign(&self) -> Option<i8> {
        match (self.order, self.exp) {
            (1, 0) => Some(1),
            (2, 1) => Some(-1),
            _ => None,
        }
    }

    /// Principal square root: halves the angle.
    pub fn sqrt(&self) -> RootOfUnity {
        RootOfUnity::new(self.exp as i64, self.order * 2)
    }

    /// Both square roots, principal first.
    pub fn sqrts(&self) -> [RootOfUnity; 2] {
        let p = self.sqrt();
        [p, p.mul(&RootOfUnity::minus_one())]
    }

    pub fn to_complex(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * (self.exp as f64) / (self.order as f64);
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exp) {
            (1, 0) => write!(f, "1"),
            (2, 1) => write!(f, "-1"),
            (4, 1) => write!(f, "i"),
            (4, 3) => write!(f, "-i"),
            _ => write!(f, "e(2pi*{}/{})", self.exp, self.order),
        }
    }
}

/// Character of a finite abelian product group, stored by its exponent
/// vector: `χ(g) = e^{2πi Σ c_j g_j / m_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    moduli: Vec<u32>,
    exps: Vec<u32>,
}

impl Character {
    pub fn new(group: &FiniteAbelianGroup, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), group.moduli().len());
        let exps = exps
            .iter()
            .zip(group.moduli())
            .map(|(&c, &m)| c % m)
            .collect();
        Character {
            moduli: group.moduli().to_vec(),
            exps,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn eval(&self, g: &GroupElem) -> RootOfUnity {
        let n = self
            .moduli
            .iter()
            .fold(1u64, |l, &m| num_integer::lcm(l, m as u64));
        let mut e = 0u64;
        for ((&c, &r), &m) in self.exps.iter().zip(g.residues()).zip(&self.moduli) {
            e = (e + (c as u64) * (r as u64) % m as u64 * (n / m as u64)) % n;
        }
        RootOfUnity::new(e as i64, n)
    }

    pub fn eval_idx(&self, group: &FiniteAbelianGroup, gi: usize) -> RootOfUnity {
        self.eval(group.elem(gi))
    }

    /// Pointwise product of two characters of the same group.
    pub fn mul(&self, rhs: &Character) -> Character {
        assert_eq!(self.moduli, rhs.moduli);
        let exps = self
            .exps
            .iter()
            .zip(&rhs.exps)
            .zip(&self.moduli)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        Character {
            moduli: self.moduli.clone(),
            exps,
        }
    }

    pub fn square(&self) -> Character {
        self.mul(self)
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&c| c == 0)
    }
}
