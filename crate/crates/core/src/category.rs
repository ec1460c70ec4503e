//! Structure constants `(ε, η, A)` of a (possibly degenerate) generalized
//! Haagerup category for a finite abelian group `G`, and the verifier for
//! their defining axiom system.
//!
//! Axioms, numbered (1)-(10) throughout this crate:
//!
//! 1.  `ε_{h+k}(g) = ε_h(g) ε_k(g+2h)` and `ε_h(0) = 1`          (exact)
//! 2.  `η_{g+2h} = η_g`                                           (exact)
//! 3.  `Σ_h A_g(h,0) = -conj(η_g)/d`
//! 4.  `Σ_h A_g(h-g,k) conj(A_{g'}(h-g',k)) = δ_{g,g'} - conj(η_g) η_{g'} δ_{k,0}/d`
//! 5.  `A_{g+2h}(p,q) = ε_h(g) ε_h(g+p) ε_h(g+q) ε_h(g+p+q) A_g(p,q)`
//! 6.  `A_g(h,k) = conj(A_g(k,h))`
//! 7.  `A_g(h,k) = A_g(-k,h-k) η_g ε_{-k}(g+h) ε_{-k}(g+k) ε_{-k}(g+h+k)`
//! 8.  `A_g(h,k) = A_g(k-h,-h) conj(η_g) ε_{-h}(g+h) ε_{-h}(g+k) ε_{-h}(g+h+k)`
//! 9.  `A_g(h,k) = A_{g+h}(h,k) η_g η_{g+k} conj(η_{g+h} η_{g+h+k}) ε_h(g) ε_h(g+k)`
//!     `         = A_{g+k}(h,k) conj(η_g η_{g+h}) η_{g+k} η_{g+h+k} ε_k(g) ε_k(g+h)`
//! 10. the cubic consistency equation relating `A·A·A` sums to `A·A`
//!     products (see [`verify_axioms`]).

use crate::abelian::{FiniteAbelianGroup, RootOfUnity};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("epsilon table has {got} entries, expected {want}")]
    EpsilonShape { got: usize, want: usize },
    #[error("eta table has {got} entries, expected {want}")]
    EtaShape { got: usize, want: usize },
    #[error("A tensor has {got} entries, expected {want}")]
    TensorShape { got: usize, want: usize },
    #[error("A tensor missing entry for ({0},{1},{2})")]
    MissingEntry(usize, usize, usize),
    #[error("no A tensor loaded")]
    MissingTensor,
    #[error("no cocycle extension of the given bicharacter exists")]
    InconsistentCocycle,
    #[error("input on G2 x G is not multiplicative in each slot")]
    NotABicharacter,
}

/// The sign table `ε_g(h)`, rows indexed by the subscript `g`, columns by
/// the argument `h`, both in canonical element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonTable {
    n: usize,
    vals: Vec<i8>,
}

impl EpsilonTable {
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self, CategoryError> {
        let n = rows.len();
        let mut vals = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(CategoryError::EpsilonShape {
                    got: row.len(),
                    want: n,
                });
            }
            for &s in row {
                assert!(s == 1 || s == -1, "epsilon entries must be ±1");
                vals.push(s);
            }
        }
        Ok(EpsilonTable { n, vals })
    }

    pub fn all_ones(n: usize) -> Self {
        EpsilonTable {
            n,
            vals: vec![1; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, g: usize, h: usize) -> i8 {
        self.vals[g * self.n + h]
    }

    #[inline]
    pub fn root(&self, g: usize, h: usize) -> RootOfUnity {
        RootOfUnity::from_sign(self.get(g, h))
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        (0..self.n)
            .map(|g| self.vals[g * self.n..(g + 1) * self.n].to_vec())
            .collect()
    }

    /// Exact check of axiom (1) over all of `G^3`.
    pub fn is_cocycle(&self, group: &FiniteAbelianGroup) -> bool {
        let n = group.order();
        if n != self.n {
            return false;
        }
        for h in 0..n {
            if self.get(h, 0) != 1 {
                return false;
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let lhs = self.get(group.add(h, k), g);
                    let rhs = self.get(h, g) * self.get(k, group.add(g, group.double(h)));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Elements `h` with `ε_h(·) ≡ 1`; a nonzero such element means the
    /// category is degenerate.
    pub fn trivially_acting(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&h| (0..self.n).all(|g| self.get(h, g) == 1))
            .collect()
    }
}

/// The cube-root table `η_g`, stored as exponents of `e^{2πi/3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaTable {
    vals: Vec<u8>,
}

impl EtaTable {
    pub fn from_exponents(vals: Vec<u8>) -> Self {
        assert!(vals.iter().all(|&k| k < 3), "eta exponents live in {{0,1,2}}");
        EtaTable { vals }
    }

    pub fn trivial(n: usize) -> Self {
        EtaTable { vals: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.vals.len()
    }

    pub fn exponents(&self) -> &[u8] {
        &self.vals
    }

    #[inline]
    pub fn root(&self, g: usize) -> RootOfUnity {
        RootOfUnity::new(self.vals[g] as i64, 3)
    }

    #[inline]
    pub fn value(&self, g: usize) -> Complex64 {
        self.root(g).to_complex()
    }

    pub fn is_trivial(&self) -> bool {
        self.vals.iter().all(|&k| k == 0)
    }

    /// Exact check of axiom (2): `η_{g+2h} = η_g`.
    pub fn is_periodic(&self, group: &FiniteAbelianGroup) -> bool {
        let n = group.order();
        if n != self.vals.len() {
            return false;
        }
        (0..n).all(|g| (0..n).all(|h| self.vals[group.add(g, group.double(h))] == self.vals[g]))
    }
}

/// Dense complex tensor `A_g(h,k)` over `G^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct ATensor {
    n: usize,
    vals: Vec<Complex64>,
}

impl ATensor {
    pub fn new(n: usize, vals: Vec<Complex64>) -> Result<Self, CategoryError> {
        if vals.len() != n * n * n {
            return Err(CategoryError::TensorShape {
                got: vals.len(),
                want: n * n * n,
            });
        }
        Ok(ATensor { n, vals })
    }

    pub fn zeros(n: usize) -> Self {
        ATensor {
            n,
            vals: vec![Complex64::new(0.0, 0.0); n * n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn idx(&self, g: usize, h: usize, k: usize) -> usize {
        (g * self.n + h) * self.n + k
    }

    #[inline]
    pub fn get(&self, g: usize, h: usize, k: usize) -> Complex64 {
        self.vals[self.idx(g, h, k)]
    }

    #[inline]
    pub fn set(&mut self, g: usize, h: usize, k: usize, v: Complex64) {
        let i = self.idx(g, h, k);
        self.vals[i] = v;
    }

    pub fn values(&self) -> &[Complex64] {
        &self.vals
    }

    /// Max entrywise distance between two tensors; used to deduplicate
    /// numerically identical solutions.
    pub fn max_distance(&self, other: &ATensor) -> f64 {
        self.vals
            .iter()
            .zip(&other.vals)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// A full category datum: group, sign/root tables, dimension, and an
/// optional numeric tensor (the tensor is only known numerically and may be
/// absent, in which case the tensor-dependent checks are skipped).
#[derive(Debug, Clone)]
pub struct CategoryData {
    pub group: FiniteAbelianGroup,
    pub eps: EpsilonTable,
    pub eta: EtaTable,
    pub tensor: Option<ATensor>,
    pub dim: f64,
}

impl CategoryData {
    pub fn new(
        group: FiniteAbelianGroup,
        eps: EpsilonTable,
        eta: EtaTable,
        tensor: Option<ATensor>,
    ) -> Result<Self, CategoryError> {
        let n = group.order();
        if eps.size() != n {
            return Err(CategoryError::EpsilonShape {
                got: eps.size() * eps.size(),
                want: n * n,
            });
        }
        if eta.size() != n {
            return Err(CategoryError::EtaShape {
                got: eta.size(),
                want: n,
            });
        }
        if let Some(t) = &tensor {
            if t.size() != n {
                return Err(CategoryError::TensorShape {
                    got: t.values().len(),
                    want: n * n * n,
                });
            }
        }
        let dim = dimension(n);
        Ok(CategoryData {
            group,
            eps,
            eta,
            tensor,
            dim,
        })
    }

    /// Nonzero elements acting trivially through `ε` (degenerate case).
    pub fn degenerate_elements(&self) -> Vec<usize> {
        self.eps
            .trivially_acting()
            .into_iter()
            .filter(|&h| h != 0)
            .collect()
    }
}

/// Perron-Frobenius dimension of the generating object: the positive root
/// of `d^2 = 1 + |G| d`.
pub fn dimension(order: usize) -> f64 {
    let n = order as f64;
    (n + (n * n + 4.0).sqrt()) / 2.0
}

/// One row of an axiom report.
#[derive(Debug, Clone)]
pub struct AxiomRow {
    pub name: &'static str,
    /// Worst absolute residual over all instances.  Exact sign/root checks
    /// report 0.0 on success and 1.0 per the worst violated instance.
    pub residual: f64,
    pub exact: bool,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub rows: Vec<AxiomRow>,
    pub tol: f64,
    pub pass: bool,
}

impl AxiomReport {
    pub fn max_float_residual(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| !r.exact)
            .map(|r| r.residual)
            .fold(0.0, f64::max)
    }

    pub fn row(&self, name: &str) -> Option<&AxiomRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// Checks axioms (1)-(10) and reports the worst residual per equation.
/// Equations (1) and (2) are exact; the rest are floating checks against
/// `tol`.  A derived consistency row (`eq4-diagonal`) restates equation (4)
/// at `g = g'`, `k = 0` as `Σ_h |A_g(h-g,0)|^2 = 1 - 1/d`.
pub fn verify_axioms(c: &CategoryData, tol: f64) -> Result<AxiomReport, CategoryError> {
    let tensor = c.tensor.as_ref().ok_or(CategoryError::MissingTensor)?;
    let group = &c.group;
    let n = group.order();
    let d = c.dim;
    let eps = &c.eps;
    let eta = &c.eta;
    let a = |g: usize, h: usize, k: usize| tensor.get(g, h, k);
    let ev = |g: usize| eta.value(g);
    let es = |g: usize, h: usize| eps.get(g, h) as f64;

    let mut rows = Vec::new();

    let eq1 = eps.is_cocycle(group);
    rows.push(AxiomRow {
        name: "eq1",
        residual: if eq1 { 0.0 } else { 1.0 },
        exact: true,
        pass: eq1,
    });

    let eq2 = eta.is_periodic(group);
    rows.push(AxiomRow {
        name: "eq2",
        residual: if eq2 { 0.0 } else { 1.0 },
        exact: true,
        pass: eq2,
    });

    // eq3: sum rule
    let mut r3 = 0.0f64;
    for g in 0..n {
        let mut s = Complex64::new(0.0, 0.0);
        for h in 0..n {
            s += a(g, h, 0);
        }
        r3 = r3.max((s + ev(g).conj() / d).norm());
    }
    rows.push(AxiomRow {
        name: "eq3",
        residual: r3,
        exact: false,
        pass: r3 <= tol,
    });

    // eq4: orthogonality
    let mut r4 = 0.0f64;
    for g in 0..n {
        for gp in 0..n {
            for k in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for h in 0..n {
                    s += a(g, group.sub(h, g), k) * a(gp, group.sub(h, gp), k).conj();
                }
                let mut target = Complex64::new(if g == gp { 1.0 } else { 0.0 }, 0.0);
                if k == 0 {
                    target -= ev(g).conj() * ev(gp) / d;
                }
                r4 = r4.max((s - target).norm());
            }
        }
    }
    rows.push(AxiomRow {
        name: "eq4",
        residual: r4,
        exact: false,
        pass: r4 <= tol,
    });

    // eq5: shift by 2h
    let mut r5 = 0.0f64;
    for g in 0..n {
        for h in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let lhs = a(group.add(g, group.double(h)), p, q);
                    let sign = es(h, g)
                        * es(h, group.add(g, p))
                        * es(h, group.add(g, q))
                        * es(h, group.add(g, group.add(p, q)));
                    r5 = r5.max((lhs - sign * a(g, p, q)).norm());
                }
            }
        }
    }
    rows.push(AxiomRow {
        name: "eq5",
        residual: r5,
        exact: false,
        pass: r5 <= tol,
    });

    // eq6: hermitian symmetry
    let mut r6 = 0.0f64;
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                r6 = r6.max((a(g, h, k) - a(g, k, h).conj()).norm());
            }
        }
    }
    rows.push(AxiomRow {
        name: "eq6",
        residual: r6,
        exact: false,
        pass: r6 <= tol,
    });

    // eq7 / eq8: triple rotations
    let mut r7 = 0.0f64;
    let mut r8 = 0.0f64;
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                let mk = group.neg(k);
                let rhs7 = a(g, mk, group.sub(h, k))
                    * ev(g)
                    * (es(mk, group.add(g, h))
                        * es(mk, group.add(g, k))
                        * es(mk, group.add(g, group.add(h, k))));
                r7 = r7.max((a(g, h, k) - rhs7).norm());

                let mh = group.neg(h);
                let rhs8 = a(g, group.sub(k, h), mh)
                    * ev(g).conj()
                    * (es(mh, group.add(g, h))
                        * es(mh, group.add(g, k))
                        * es(mh, group.add(g, group.add(h, k))));
                r8 = r8.max((a(g, h, k) - rhs8).norm());
            }
        }
    }
    rows.push(AxiomRow {
        name: "eq7",
        residual: r7,
        exact: false,
        pass: r7 <= tol,
    });
    rows.push(AxiomRow {
        name: "eq8",
        residual: r8,
        exact: false,
        pass: r8 <= tol,
    });

    // eq9: subscript shifts (both lines)
    let mut r9 = 0.0f64;
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                let gh = group.add(g, h);
                let gk = group.add(g, k);
                let ghk = group.add(gh, k);
                let rhs_a = a(gh, h, k)
                    * ev(g)
                    * ev(gk)
                    * (ev(gh) * ev(ghk)).conj()
                    * (es(h, g) * es(h, gk));
                r9 = r9.max((a(g, h, k) - rhs_a).norm());
                let rhs_b = a(gk, h, k)
                    * (ev(g) * ev(gh)).conj()
                    * ev(gk)
                    * ev(ghk)
                    * (es(k, g) * es(k, gh));
                r9 = r9.max((a(g, h, k) - rhs_b).norm());
            }
        }
    }
    rows.push(AxiomRow {
        name: "eq9",
        residual: r9,
        exact: false,
        pass: r9 <= tol,
    });

    // eq10: cubic consistency
    let mut r10 = 0.0f64;
    for g in 0..n {
        for p in 0..n {
            for q in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        let xy = group.add(x, y);
                        let mut lhs = Complex64::new(0.0, 0.0);
                        for l in 0..n {
                            lhs += a(g, xy, l)
                                * a(
                                    group.add(group.sub(g, p), x),
                                    group.neg(x),
                                    group.add(l, p),
                                )
                                * a(
                                    group.add(group.sub(g, q), xy),
                                    group.neg(y),
                                    group.add(l, q),
                                );
                        }
                        let etas = ev(g)
                            * ev(group.add(g, group.add(q, x)))
                            * ev(group.add(g, group.add(p, group.add(q, y))))
                            * (ev(group.add(g, p))
                                * ev(group.add(g, xy))
                                * ev(group.add(g, group.add(q, xy))))
                            .conj();
                        let signs = es(p, group.add(group.sub(g, p), x))
                            * es(group.add(p, x), group.add(group.sub(g, p), group.add(q, y)))
                            * es(q, group.add(group.sub(g, q), xy))
                            * es(group.add(q, y), group.add(group.sub(g, q), x));
                        let mut rhs = a(g, group.add(p, x), group.add(q, xy))
                            * a(group.sub(g, p), group.add(q, y), group.add(p, group.add(x, y)))
                            * etas
                            * signs;
                        if x == 0 && y == 0 {
                            rhs -= ev(g) * ev(group.add(g, p)) * ev(group.add(g, q)) / d;
                        }
                        r10 = r10.max((lhs - rhs).norm());
                    }
                }
            }
        }
    }
    rows.push(AxiomRow {
        name: "eq10",
        residual: r10,
        exact: false,
        pass: r10 <= tol,
    });

    // Derived consistency row: eq4 at g = g', k = 0.
    let mut rd = 0.0f64;
    for g in 0..n {
        let mut s = 0.0f64;
        for h in 0..n {
            s += a(g, group.sub(h, g), 0).norm_sqr();
        }
        rd = rd.max((s - (1.0 - 1.0 / d)).abs());
    }
    rows.push(AxiomRow {
        name: "eq4-diagonal",
        residual: rd,
        exact: false,
        pass: rd <= tol,
    });

    let pass = rows.iter().all(|r| r.pass);
    Ok(AxiomReport { rows, tol, pass })
}

/// Extends a bicharacter on `G_2 x G` to a full table satisfying axiom (1),
/// by solving the corresponding linear system over GF(2).  The input is
/// given as rows indexed by the two-torsion elements in canonical order.
pub fn epsilon_from_bicharacter(
    group: &FiniteAbelianGroup,
    on_torsion: &[(usize, Vec<i8>)],
) -> Result<EpsilonTable, CategoryError> {
    let n = group.order();
    let torsion = group.two_torsion();

    // Input sanity: multiplicative in each slot over G2 x G.
    let val = |t: usize, g: usize| -> Option<i8> {
        on_torsion
            .iter()
            .find(|(ti, _)| *ti == t)
            .map(|(_, row)| row[g])
    };
    for &(t, ref row) in on_torsion {
        if row.len() != n || !torsion.contains(&t) {
            return Err(CategoryError::NotABicharacter);
        }
        for g in 0..n {
            for h in 0..n {
                if row[group.add(g, h)] != row[g] * row[h] {
                    return Err(CategoryError::NotABicharacter);
                }
            }
        }
    }
    for &t1 in &torsion {
        for &t2 in &torsion {
            let t3 = group.add(t1, t2);
            for g in 0..n {
                if let (Some(a), Some(b), Some(c)) = (val(t1, g), val(t2, g), val(t3, g)) {
                    if a * b != c {
                        return Err(CategoryError::NotABicharacter);
                    }
                }
            }
        }
    }

    // GF(2) system over x[g*n+h] with ε_g(h) = (-1)^x.
    let nvars = n * n;
    let words = nvars / 64 + 2; // + rhs bit in the last word slot
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let push_row = |vars: &[usize], rhs: bool, rows: &mut Vec<Vec<u64>>| {
        let mut row = vec![0u64; words];
        for &v in vars {
            row[v / 64] ^= 1u64 << (v % 64);
        }
        if rhs {
            row[words - 1] = 1;
        }
        rows.push(row);
    };

    // normalization ε_h(0) = 1
    for h in 0..n {
        push_row(&[h * n], false, &mut rows);
    }
    // cocycle law
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                let v1 = group.add(h, k) * n + g;
                let v2 = h * n + g;
                let v3 = k * n + group.add(g, group.double(h));
                // xor of (possibly repeated) vars: duplicates cancel
                push_row(&[v1, v2, v3], false, &mut rows);
            }
        }
    }
    // pinned torsion rows
    for &(t, ref row) in on_torsion {
        for (g, &sign) in row.iter().enumerate() {
            push_row(&[t * n + g], sign == -1, &mut rows);
        }
    }

    // Gaussian elimination.
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, var)
    let mut rank = 0usize;
    for var in 0..nvars {
        let (w, b) = (var / 64, 1u64 << (var % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= *y;
                }
            }
        }
        pivots.push((rank, var));
        rank += 1;
    }
    // Inconsistent iff some zero row has rhs = 1.
    for row in &rows[rank..] {
        if row[words - 1] != 0 && row[..words - 1].iter().all(|&w| w == 0) {
            return Err(CategoryError::InconsistentCocycle);
        }
    }
    // Particular solution with free variables set to 0.
    let mut x = vec![false; nvars];
    for &(r, var) in &pivots {
        x[var] = rows[r][words - 1] != 0;
    }

    let vals: Vec<i8> = x.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let table = EpsilonTable { n, vals };
    debug_assert!(table.is_cocycle(group));
    Ok(table)
}
