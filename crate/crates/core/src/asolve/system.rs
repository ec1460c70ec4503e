//! The polynomial residual system for the tensor unknowns: axioms (3), (4)
//! and (10), expressed as flat term lists over tensor entries so that both
//! evaluation and the analytic Jacobian walk the same structure.

use crate::abelian::FiniteAbelianGroup;
use crate::category::{EpsilonTable, EtaTable};
use num_complex::Complex64;

/// One tensor-entry factor, possibly conjugated.
#[derive(Debug, Clone, Copy)]
pub struct Factor {
    pub triple: u32,
    pub conj: bool,
}

/// `coeff · Π factors`; at most three factors.
#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub coeff: Complex64,
    pub factors: [Factor; 3],
    pub nfac: u8,
}

impl Term {
    fn new1(coeff: Complex64, f0: Factor) -> Self {
        Term {
            coeff,
            factors: [f0, f0, f0],
            nfac: 1,
        }
    }
    fn new2(coeff: Complex64, f0: Factor, f1: Factor) -> Self {
        Term {
            coeff,
            factors: [f0, f1, f1],
            nfac: 2,
        }
    }
    fn new3(coeff: Complex64, f0: Factor, f1: Factor, f2: Factor) -> Self {
        Term {
            coeff,
            factors: [f0, f1, f2],
            nfac: 3,
        }
    }
}

/// One scalar equation `constant + Σ terms = 0`.
#[derive(Debug, Clone)]
pub struct Residual {
    pub constant: Complex64,
    pub terms: Vec<Term>,
}

/// Builds the full stacked system.
pub fn build_residuals(
    group: &FiniteAbelianGroup,
    eps: &EpsilonTable,
    eta: &EtaTable,
    d: f64,
) -> Vec<Residual> {
    let n = group.order();
    let tri = |g: usize, h: usize, k: usize| Factor {
        triple: ((g * n + h) * n + k) as u32,
        conj: false,
    };
    let tri_c = |g: usize, h: usize, k: usize| Factor {
        triple: ((g * n + h) * n + k) as u32,
        conj: true,
    };
    let one = Complex64::new(1.0, 0.0);
    let mut out = Vec::new();

    // (3): Σ_h A_g(h,0) + conj(η_g)/d = 0
    for g in 0..n {
        let mut terms = Vec::with_capacity(n);
        for h in 0..n {
            terms.push(Term::new1(one, tri(g, h, 0)));
        }
        out.push(Residual {
            constant: eta.value(g).conj() / d,
            terms,
        });
    }

    // (4): Σ_h A_g(h-g,k) conj(A_{g'}(h-g',k)) - δ_{g,g'} + conj(η_g)η_{g'} δ_{k,0}/d = 0
    for g in 0..n {
        for gp in 0..n {
            for k in 0..n {
                let mut terms = Vec::with_capacity(n);
                for h in 0..n {
                    terms.push(Term::new2(
                        one,
                        tri(g, group.sub(h, g), k),
                        tri_c(gp, group.sub(h, gp), k),
                    ));
                }
                let mut constant = Complex64::new(0.0, 0.0);
                if g == gp {
                    constant -= one;
                }
                if k == 0 {
                    constant += eta.value(g).conj() * eta.value(gp) / d;
                }
                out.push(Residual { constant, terms });
            }
        }
    }

    // (10): Σ_l A_g(x+y,l) A_{g-p+x}(-x,l+p) A_{g-q+x+y}(-y,l+q)
    //       - [phases] A_g(p+x,q+x+y) A_{g-p}(q+y,p+x+y)
    //       + δ_{x,0} δ_{y,0} η_g η_{g+p} η_{g+q} / d = 0
    for g in 0..n {
        for p in 0..n {
            for q in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        let xy = group.add(x, y);
                        let mut terms = Vec::with_capacity(n + 1);
                        for l in 0..n {
                            terms.push(Term::new3(
                                one,
                                tri(g, xy, l),
                                tri(group.add(group.sub(g, p), x), group.neg(x), group.add(l, p)),
                                tri(
                                    group.add(group.sub(g, q), xy),
                                    group.neg(y),
                                    group.add(l, q),
                                ),
                            ));
                        }
                        let etas = eta.value(g)
                            * eta.value(group.add(g, group.add(q, x)))
                            * eta.value(group.add(g, group.add(p, group.add(q, y))))
                            * (eta.value(group.add(g, p))
                                * eta.value(group.add(g, xy))
                                * eta.value(group.add(g, group.add(q, xy))))
                            .conj();
                        let signs = (eps.get(p, group.add(group.sub(g, p), x))
                            * eps.get(
                                group.add(p, x),
                                group.add(group.sub(g, p), group.add(q, y)),
                            )
                            * eps.get(q, group.add(group.sub(g, q), xy))
                            * eps.get(group.add(q, y), group.add(group.sub(g, q), x)))
                            as f64;
                        terms.push(Term::new2(
                            -etas * signs,
                            tri(g, group.add(p, x), group.add(q, xy)),
                            tri(
                                group.sub(g, p),
                                group.add(q, y),
                                group.add(p, group.add(x, y)),
                            ),
                        ));
                        let mut constant = Complex64::new(0.0, 0.0);
                        if x == 0 && y == 0 {
                            constant += eta.value(g)
                                * eta.value(group.add(g, p))
                                * eta.value(group.add(g, q))
                                / d;
                        }
                        out.push(Residual { constant, terms });
                    }
                }
            }
        }
    }

    out
}

/// Evaluates one residual against a fully assembled tensor value table.
#[inline]
pub fn eval_residual(r: &Residual, values: &[Complex64]) -> Complex64 {
    let mut acc = r.constant;
    for t in &r.terms {
        let mut prod = t.coeff;
        for f in &t.factors[..t.nfac as usize] {
            let v = values[f.triple as usize];
            prod *= if f.conj { v.conj() } else { v };
        }
        acc += prod;
    }
    acc
}
