//! Damped Gauss-Newton on the orbit-reduced residual system, with random
//! restarts, analytic Jacobian, and deterministic merging of solutions.

use super::orbits::SymmetryOrbits;
use super::system::{build_residuals, eval_residual, Residual};
use super::{SolveConfig, SolveError};
use crate::abelian::FiniteAbelianGroup;
use crate::category::{dimension, ATensor, EpsilonTable, EtaTable};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// How one orbit representative maps onto real parameters.
#[derive(Debug, Clone, Copy)]
enum VarKind {
    /// `X = θ[re] + i θ[im]`
    Free { re: usize, im: usize },
    /// `X = dir · θ[var]` with `dir` a fixed unit phase (`dir² = γ`)
    RealLine { var: usize, dir: Complex64 },
}

pub(super) struct Problem {
    residuals: Vec<Residual>,
    kinds: Vec<VarKind>,
    pub nvars: usize,
    /// Per-triple phase as a complex number (embedded once).
    phase_c: Vec<Complex64>,
    /// triple -> orbit, copied out of `orbits` for cache friendliness.
    orbit_of: Vec<u32>,
    conj: Vec<bool>,
}

impl Problem {
    pub fn new(
        group: &FiniteAbelianGroup,
        eps: &EpsilonTable,
        eta: &EtaTable,
        orbits: SymmetryOrbits,
    ) -> Self {
        let d = dimension(group.order());
        let residuals = build_residuals(group, eps, eta, d);
        let mut kinds = Vec::with_capacity(orbits.orbit_count());
        let mut nvars = 0usize;
        for o in 0..orbits.orbit_count() {
            match &orbits.real_constraint[o] {
                Some(gamma) => {
                    let dir = gamma.sqrt().to_complex();
                    kinds.push(VarKind::RealLine { var: nvars, dir });
                    nvars += 1;
                }
                None => {
                    kinds.push(VarKind::Free {
                        re: nvars,
                        im: nvars + 1,
                    });
                    nvars += 2;
                }
            }
        }
        let phase_c = orbits.phase.iter().map(|p| p.to_complex()).collect();
        Problem {
            residuals,
            kinds,
            nvars,
            phase_c,
            orbit_of: orbits.orbit_of,
            conj: orbits.conj,
        }
    }

    fn orbit_values(&self, theta: &[f64]) -> Vec<Complex64> {
        self.kinds
            .iter()
            .map(|k| match *k {
                VarKind::Free { re, im } => Complex64::new(theta[re], theta[im]),
                VarKind::RealLine { var, dir } => dir * theta[var],
            })
            .collect()
    }

    /// Full tensor from the orbit representatives.
    pub fn assemble(&self, theta: &[f64]) -> Vec<Complex64> {
        let x = self.orbit_values(theta);
        (0..self.orbit_of.len())
            .map(|t| {
                let v = x[self.orbit_of[t] as usize];
                self.phase_c[t] * if self.conj[t] { v.conj() } else { v }
            })
            .collect()
    }

    pub fn residual_values(&self, theta: &[f64]) -> Vec<Complex64> {
        let values = self.assemble(theta);
        self.residuals
            .iter()
            .map(|r| eval_residual(r, &values))
            .collect()
    }

    /// Real residual vector (re, im per equation); used by the Jacobian
    /// validation below.
    fn residual_vector_real(&self, theta: &[f64]) -> Vec<f64> {
        self.residual_values(theta)
            .iter()
            .flat_map(|r| [r.re, r.im])
            .collect()
    }

    pub fn max_abs_residual(&self, theta: &[f64]) -> f64 {
        self.residual_values(theta)
            .iter()
            .map(|r| r.norm())
            .fold(0.0, f64::max)
    }

    /// Complex gradient of every residual w.r.t. the real parameters,
    /// returned sparse per residual as (var, d r / d θ_var) pairs.
    fn gradients(
        &self,
        theta: &[f64],
        mut on_row: impl FnMut(Complex64, &[(usize, Complex64)]),
    ) {
        let x = self.orbit_values(theta);
        let values: Vec<Complex64> = (0..self.orbit_of.len())
            .map(|t| {
                let v = x[self.orbit_of[t] as usize];
                self.phase_c[t] * if self.conj[t] { v.conj() } else { v }
            })
            .collect();

        // scratch accumulators per orbit, reset via touched list
        let norb = self.kinds.len();
        let mut d_x = vec![Complex64::new(0.0, 0.0); norb];
        let mut d_xbar = vec![Complex64::new(0.0, 0.0); norb];
        let mut touched: Vec<usize> = Vec::with_capacity(16);
        let mut grad: Vec<(usize, Complex64)> = Vec::with_capacity(32);

        for r in &self.residuals {
            let mut val = r.constant;
            for t in &r.terms {
                let nf = t.nfac as usize;
                let mut fvals = [Complex64::new(0.0, 0.0); 3];
                for (i, f) in t.factors[..nf].iter().enumerate() {
                    let v = values[f.triple as usize];
                    fvals[i] = if f.conj { v.conj() } else { v };
                }
                let mut prod = t.coeff;
                for fv in &fvals[..nf] {
                    prod *= fv;
                }
                val += prod;

                // product-rule partials
                for (i, f) in t.factors[..nf].iter().enumerate() {
                    let mut partial = t.coeff;
                    for (j, fv) in fvals[..nf].iter().enumerate() {
                        if j != i {
                            partial *= fv;
                        }
                    }
                    let ti = f.triple as usize;
                    let o = self.orbit_of[ti] as usize;
                    let conj_total = f.conj ^ self.conj[ti];
                    let phase_eff = if f.conj {
                        self.phase_c[ti].conj()
                    } else {
                        self.phase_c[ti]
                    };
                    if d_x[o].norm_sqr() == 0.0 && d_xbar[o].norm_sqr() == 0.0 {
                        touched.push(o);
                    }
                    if conj_total {
                        d_xbar[o] += partial * phase_eff;
                    } else {
                        d_x[o] += partial * phase_eff;
                    }
                }
            }

            grad.clear();
            for &o in &touched {
                let (dx, dxb) = (d_x[o], d_xbar[o]);
                match self.kinds[o] {
                    VarKind::Free { re, im } => {
                        grad.push((re, dx + dxb));
                        grad.push((im, Complex64::new(0.0, 1.0) * (dx - dxb)));
                    }
                    VarKind::RealLine { var, dir } => {
                        grad.push((var, dx * dir + dxb * dir.conj()));
                    }
                }
                d_x[o] = Complex64::new(0.0, 0.0);
                d_xbar[o] = Complex64::new(0.0, 0.0);
            }
            touched.clear();
            on_row(val, &grad);
        }
    }

    /// Accumulated normal equations: `JᵀJ`, `Jᵀr`, total cost, max |r|.
    fn normal_equations(&self, theta: &[f64]) -> (DMatrix<f64>, DVector<f64>, f64, f64) {
        let n = self.nvars;
        let mut jtj = DMatrix::<f64>::zeros(n, n);
        let mut jtr = DVector::<f64>::zeros(n);
        let mut cost = 0.0f64;
        let mut maxres = 0.0f64;
        self.gradients(theta, |r, grad| {
            cost += r.norm_sqr();
            maxres = maxres.max(r.norm());
            for &(j, gj) in grad {
                jtr[j] += (gj * r.conj()).re;
                for &(k, gk) in grad {
                    if k >= j {
                        jtj[(j, k)] += (gj * gk.conj()).re;
                    }
                }
            }
        });
        // mirror the upper triangle
        for j in 0..n {
            for k in 0..j {
                jtj[(j, k)] = jtj[(k, j)];
            }
        }
        (jtj, jtr, cost, maxres)
    }

    /// Dense real Jacobian (2 rows per residual), for validation.
    fn jacobian_real(&self, theta: &[f64]) -> DMatrix<f64> {
        let m = self.residuals.len() * 2;
        let mut jac = DMatrix::<f64>::zeros(m, self.nvars);
        let mut row = 0usize;
        self.gradients(theta, |_r, grad| {
            for &(j, gj) in grad {
                jac[(row, j)] = gj.re;
                jac[(row + 1, j)] = gj.im;
            }
            row += 2;
        });
        jac
    }

    fn cost(&self, theta: &[f64]) -> f64 {
        self.residual_values(theta)
            .iter()
            .map(|r| r.norm_sqr())
            .sum()
    }

    /// One Levenberg-damped Gauss-Newton run from `theta0`.
    fn run(&self, mut theta: Vec<f64>, cfg: &SolveConfig) -> (Vec<f64>, f64) {
        let mut lambda = cfg.damping;
        let target = cfg.convergence_tol * 1e-3;
        for _ in 0..cfg.max_iter {
            let (jtj, jtr, cost, maxres) = self.normal_equations(&theta);
            if maxres <= target || cost < 1e-30 {
                break;
            }
            let mut stepped = false;
            while lambda <= 1e12 {
                let mut damped = jtj.clone();
                for j in 0..self.nvars {
                    damped[(j, j)] += lambda;
                }
                let Some(chol) = damped.cholesky() else {
                    lambda *= 10.0;
                    continue;
                };
                let delta = chol.solve(&(-&jtr));
                let cand: Vec<f64> = theta
                    .iter()
                    .zip(delta.iter())
                    .map(|(t, d)| t + d)
                    .collect();
                if self.cost(&cand) < cost {
                    theta = cand;
                    lambda = (lambda * 0.1).max(1e-12);
                    stepped = true;
                    break;
                }
                lambda *= 10.0;
            }
            if !stepped {
                break;
            }
        }
        let maxres = self.max_abs_residual(&theta);
        (theta, maxres)
    }

    fn random_start(&self, rng: &mut impl Rng) -> Vec<f64> {
        let mut theta = vec![0.0f64; self.nvars];
        for kind in &self.kinds {
            match *kind {
                VarKind::Free { re, im } => {
                    // uniform on the unit disk
                    loop {
                        let a: f64 = rng.gen_range(-1.0..1.0);
                        let b: f64 = rng.gen_range(-1.0..1.0);
                        if a * a + b * b <= 1.0 {
                            theta[re] = a;
                            theta[im] = b;
                            break;
                        }
                    }
                }
                VarKind::RealLine { var, .. } => {
                    theta[var] = rng.gen_range(-1.0..1.0);
                }
            }
        }
        theta
    }
}

/// One accepted solution.
#[derive(Debug, Clone)]
pub struct SolvedTensor {
    pub tensor: ATensor,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct SolveDiagnostics {
    pub restarts: usize,
    pub converged: usize,
    pub distinct: usize,
    pub best_residual: f64,
    pub orbit_count: usize,
    pub variables: usize,
    pub eta_trivial: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solutions: Vec<SolvedTensor>,
    pub diagnostics: SolveDiagnostics,
}

fn lex_key(t: &ATensor) -> Vec<(u64, u64)> {
    t.values()
        .iter()
        .flat_map(|v| [v.re, v.im])
        .map(|x| {
            // total order on floats for deterministic sorting
            let bits = x.to_bits();
            let key = if bits >> 63 == 0 {
                bits ^ (1u64 << 63)
            } else {
                !bits
            };
            (key, 0u64)
        })
        .collect()
}

/// Solves the stacked system for the given `(ε, η)`.  Restarts run in
/// parallel; results are merged deterministically by residual and then by
/// entrywise order, and deduplicated at max-entry distance `1e-6`.
pub fn solve_tensor(
    group: &FiniteAbelianGroup,
    eps: &EpsilonTable,
    eta: &EtaTable,
    cfg: &SolveConfig,
) -> Result<SolveOutcome, SolveError> {
    let orbits = super::orbits::build_orbits(group, eps, eta)?;
    let orbit_count = orbits.orbit_count();
    let problem = Problem::new(group, eps, eta, orbits);
    let n = group.order();

    let runs: Vec<(Vec<f64>, f64)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(cfg.seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let start = problem.random_start(&mut rng);
            problem.run(start, cfg)
        })
        .collect();

    let best = runs
        .iter()
        .map(|(_, r)| *r)
        .fold(f64::INFINITY, f64::min);
    let mut converged: Vec<SolvedTensor> = runs
        .into_iter()
        .filter(|(_, r)| *r <= cfg.convergence_tol)
        .map(|(theta, residual)| {
            let values = problem.assemble(&theta);
            SolvedTensor {
                tensor: ATensor::new(n, values).expect("assembled tensor has the right shape"),
                residual,
            }
        })
        .collect();
    let total_converged = converged.len();

    converged.sort_by(|a, b| {
        a.residual
            .total_cmp(&b.residual)
            .then_with(|| lex_key(&a.tensor).cmp(&lex_key(&b.tensor)))
    });
    let mut distinct: Vec<SolvedTensor> = Vec::new();
    for cand in converged {
        if distinct
            .iter()
            .all(|kept| kept.tensor.max_distance(&cand.tensor) >= 1e-6)
        {
            distinct.push(cand);
        }
    }

    let diagnostics = SolveDiagnostics {
        restarts: cfg.restarts,
        converged: total_converged,
        distinct: distinct.len(),
        best_residual: best,
        orbit_count,
        variables: problem.nvars,
        eta_trivial: eta.is_trivial(),
    };
    Ok(SolveOutcome {
        solutions: distinct,
        diagnostics,
    })
}

/// Validates the analytic Jacobian against central finite differences
/// (step `1e-6`) at `points` random parameter vectors.  Returns the worst
/// relative error over entries whose magnitude exceeds `1e-7`.
pub fn validate_jacobian(
    group: &FiniteAbelianGroup,
    eps: &EpsilonTable,
    eta: &EtaTable,
    seed: u64,
    points: usize,
) -> Result<f64, SolveError> {
    let orbits = super::orbits::build_orbits(group, eps, eta)?;
    let problem = Problem::new(group, eps, eta, orbits);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-6;
    let mut worst = 0.0f64;
    for _ in 0..points {
        let theta = problem.random_start(&mut rng);
        let jac = problem.jacobian_real(&theta);
        for j in 0..problem.nvars {
            let mut tp = theta.clone();
            let mut tm = theta.clone();
            tp[j] += h;
            tm[j] -= h;
            let rp = problem.residual_vector_real(&tp);
            let rm = problem.residual_vector_real(&tm);
            for row in 0..rp.len() {
                let fd = (rp[row] - rm[row]) / (2.0 * h);
                let an = jac[(row, j)];
                let scale = fd.abs().max(an.abs());
                if scale > 1e-7 {
                    worst = worst.max((fd - an).abs() / scale);
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
pub(crate) fn problem_for_tests(
    group: &FiniteAbelianGroup,
    eps: &EpsilonTable,
    eta: &EtaTable,
) -> Problem {
    let orbits = super::orbits::build_orbits(group, eps, eta).unwrap();
    Problem::new(group, eps, eta, orbits)
}
