//! Shared helpers for the integration suites: an independent brute-force
//! oracle for the extension-data system and fuzz utilities.
//!
//! The oracle enumerates the raw search space — all characters χ and μ,
//! all maps `a: G → μ_N` with `a(0) = 1`, and all `ξ, ν ∈ μ_N` — and keeps
//! the tuples satisfying direct transliterations of the exact constraint
//! equations.  It shares only the scalar arithmetic with the library; the
//! enumeration strategy and the equation evaluations are written from
//! scratch so the structured search can be checked against it.

use ghext_core::abelian::{Character, FiniteAbelianGroup, RootOfUnity};
use ghext_core::category::CategoryData;
use ghext_core::extdata::{ExtensionData, ExtensionParams};
use rand::Rng;

fn eps(c: &CategoryData, g: usize, h: usize) -> RootOfUnity {
    c.eps.root(g, h)
}

/// Direct evaluation of the exact equations on a candidate tuple.
fn satisfies_exact_system(c: &CategoryData, d: &ExtensionData) -> bool {
    let gr = &c.group;
    let n = gr.order();
    let (p, z) = (d.p, d.z);
    let pz = gr.add(p, z);
    let chi = |g: usize| d.chi.eval_idx(gr, g);
    let mu = |g: usize| d.mu.eval_idx(gr, g);

    // η periodicity
    if !(0..n).all(|g| c.eta.root(g) == c.eta.root(gr.add(g, p))) {
        return false;
    }
    // ν² = μ(p+z)
    if d.nu.mul(&d.nu) != mu(pz) {
        return false;
    }
    // ξ² = χ(p)
    if d.xi.mul(&d.xi) != chi(p) {
        return false;
    }
    // μ² = χ²
    if !(0..n).all(|g| mu(g).pow(2) == chi(g).pow(2)) {
        return false;
    }
    // μ(p) = χ(p+z)
    if mu(p) != chi(pz) {
        return false;
    }
    // a(0) = 1
    if !d.a[0].is_one() {
        return false;
    }
    // χ = a²
    if !(0..n).all(|g| chi(g) == d.a[g].pow(2)) {
        return false;
    }
    // a(h+2g) = a(h) ε_g(h) ε_g(h-p) χ(g)
    for g in 0..n {
        for h in 0..n {
            let lhs = d.a[gr.add(h, gr.double(g))];
            let rhs = d.a[h]
                .mul(&eps(c, g, h))
                .mul(&eps(c, g, gr.sub(h, p)))
                .mul(&chi(g));
            if lhs != rhs {
                return false;
            }
        }
    }
    // a(g) a(g-p) ε_{p+z}(g-2p) ξ = μ(g)
    for g in 0..n {
        let lhs = d.a[g]
            .mul(&d.a[gr.sub(g, p)])
            .mul(&eps(c, pz, gr.sub(g, gr.double(p))))
            .mul(&d.xi);
        if lhs != mu(g) {
            return false;
        }
    }
    // a(g) a(-g) = ε_{-g}(g-p) ε_{-g}(g)
    for g in 0..n {
        let mg = gr.neg(g);
        if d.a[g].mul(&d.a[mg]) != eps(c, mg, gr.sub(g, p)).mul(&eps(c, mg, g)) {
            return false;
        }
    }
    // χ(g) = ε_g(p) on two-torsion
    for &g in &gr.two_torsion() {
        if chi(g) != eps(c, g, p) {
            return false;
        }
    }
    true
}

/// Brute-force enumeration of every solution of the exact system.
pub fn oracle_search(c: &CategoryData, params: ExtensionParams) -> Vec<ExtensionData> {
    let gr = &c.group;
    let n = gr.order();
    let nn = gr.scalar_order();
    let roots: Vec<RootOfUnity> = (0..nn).map(|k| RootOfUnity::new(k as i64, nn)).collect();
    let chars = gr.characters();

    let mut out = Vec::new();
    for chi in &chars {
        // depth-first over a(1..n), every μ_N value, pruned by a(g)² = χ(g)
        let mut a = vec![RootOfUnity::one(); n];
        enumerate_a(gr, chi, &roots, &mut a, 1, &mut |a| {
            for xi in &roots {
                if xi.mul(xi) != chi.eval_idx(gr, params.p) {
                    continue;
                }
                for mu in &chars {
                    for nu in &roots {
                        let d = ExtensionData {
                            p: params.p,
                            z: params.z,
                            chi: chi.clone(),
                            mu: mu.clone(),
                            xi: *xi,
                            nu: *nu,
                            a: a.to_vec(),
                        };
                        if satisfies_exact_system(c, &d) {
                            out.push(d);
                        }
                    }
                }
            }
        });
    }
    out.sort_by_key(|d| d.encoding(gr));
    out.dedup();
    out
}

fn enumerate_a(
    gr: &FiniteAbelianGroup,
    chi: &Character,
    roots: &[RootOfUnity],
    a: &mut Vec<RootOfUnity>,
    pos: usize,
    emit: &mut impl FnMut(&[RootOfUnity]),
) {
    if pos == gr.order() {
        emit(a);
        return;
    }
    for r in roots {
        if r.mul(r) != chi.eval_idx(gr, pos) {
            continue; // a(g)² = χ(g) is necessary; skipping early keeps the
                      // full-domain scan tractable
        }
        a[pos] = *r;
        enumerate_a(gr, chi, roots, a, pos + 1, emit);
    }
}

/// Uniformly random (usually invalid) extension data over the session
/// scalar group.
pub fn random_data(
    c: &CategoryData,
    params: ExtensionParams,
    rng: &mut impl Rng,
) -> ExtensionData {
    let gr = &c.group;
    let n = gr.order();
    let nn = gr.scalar_order() as i64;
    let chars = gr.characters();
    let mut a: Vec<RootOfUnity> = (0..n)
        .map(|_| RootOfUnity::new(rng.gen_range(0..nn), nn as u64))
        .collect();
    a[0] = RootOfUnity::one();
    ExtensionData {
        p: params.p,
        z: params.z,
        chi: chars[rng.gen_range(0..chars.len())].clone(),
        mu: chars[rng.gen_range(0..chars.len())].clone(),
        xi: RootOfUnity::new(rng.gen_range(0..nn), nn as u64),
        nu: RootOfUnity::new(rng.gen_range(0..nn), nn as u64),
        a,
    }
}

/// A valid solution with up to three randomly corrupted components; useful
/// for exercising checker agreement near the pass/fail boundary.
pub fn corrupted_data(
    base: &ExtensionData,
    c: &CategoryData,
    rng: &mut impl Rng,
) -> ExtensionData {
    let gr = &c.group;
    let n = gr.order();
    let nn = gr.scalar_order() as i64;
    let mut d = base.clone();
    for _ in 0..rng.gen_range(0..=3usize) {
        match rng.gen_range(0..4) {
            0 => d.xi = RootOfUnity::new(rng.gen_range(0..nn), nn as u64),
            1 => d.nu = RootOfUnity::new(rng.gen_range(0..nn), nn as u64),
            2 => {
                let g = rng.gen_range(1..n);
                d.a[g] = d.a[g].mul(&RootOfUnity::minus_one());
            }
            _ => {
                let chars = gr.characters();
                d.mu = chars[rng.gen_range(0..chars.len())].clone();
            }
        }
    }
    d
}
