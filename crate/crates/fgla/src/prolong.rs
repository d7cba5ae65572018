//! Degreewise prolongation oracle.
//!
//! Two independent constructions of prolongation layer dimensions, used to
//! cross-validate the rank criterion and to produce dimension reports:
//!
//! * [`sym_prolong_dims`] — the first-kind prolongation of a matrix
//!   algebra `a0 ⊆ gl(V)`, realised inside `Symm(V*) ⊗ V` as V-valued
//!   polynomial maps whose partial derivatives land in the previous layer;
//! * [`tanaka_prolong_dims`] — the full recursion for an FGLA `f(V)/K`
//!   with structure algebra `Λ`: layer `p` is the space of degree-`p`
//!   derivations into the already-built module, computed as one exact
//!   kernel per degree from the structure constants.
//!
//! Both stop early once a positive layer vanishes: an element whose
//! bracket with `g_{-1}` is zero is itself zero, so all later layers
//! vanish too.  The oracle is a validator; a nonzero table at the bound
//! is reported as evidence, never as a proof of infiniteness.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exactla::{kernel_rows, MatrixSubspace, RatMatrix, RowSpace};
use crate::freelie::{FreeLieAlgebra, GradedIdeal};
use crate::grobner::monomials_of_degree;
use crate::rat::Rat;

/// Layer dimensions of a prolongation, negative degrees first
/// (`g_{-mu} .. g_{-1}`), then `g0`, then `g_p` for `p = 1..=pmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimTable {
    pub negative: Vec<usize>,
    pub g0: usize,
    pub positive: Vec<usize>,
    pub stabilized_zero: bool,
}

impl DimTable {
    pub fn total(&self) -> usize {
        self.negative.iter().sum::<usize>() + self.g0 + self.positive.iter().sum::<usize>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVerdict {
    Finite,
    /// Every computed layer was nonzero; says nothing beyond the bound.
    InfiniteUpToBound,
}

pub fn oracle_verdict(t: &DimTable) -> OracleVerdict {
    if t.stabilized_zero {
        OracleVerdict::Finite
    } else {
        OracleVerdict::InfiniteUpToBound
    }
}

// ---------------------------------------------------------------------------
// First-kind symmetric prolongation
// ---------------------------------------------------------------------------

/// Dimensions of the prolongation `a_p` of `a0 ⊆ gl(V)` acting on the
/// abelian algebra `V`.
///
/// `a_p` sits inside `Symm_{p+1}(V*) ⊗ V`; by polarization it is cut out
/// recursively by requiring every contraction with a basis vector to land
/// in the previous layer.  In polynomial-map coordinates the contraction
/// by `e_i` is the partial derivative `∂_i` up to a positive scalar, so
/// `a_{p+1} = {P : ∂_i P ∈ a_p for all i}`.
pub fn sym_prolong_dims(a0: &MatrixSubspace, pmax: usize) -> DimTable {
    let n = a0.n();
    // degree-1 polynomial maps: coordinates (monomial e_i, target j),
    // indexed mono-major
    let a0_rows: Vec<Vec<Rat>> = a0
        .basis()
        .iter()
        .map(|a| {
            let mut v = vec![Rat::zero(); n * n];
            for i in 0..n {
                for j in 0..n {
                    // coefficient of v_i in coordinate j is A[j][i]
                    v[i * n + j] = a.at(j, i).clone();
                }
            }
            v
        })
        .collect();
    let mut layer = RowSpace::from_rows(n * n, a0_rows);
    let g0 = layer.dim();

    let mut positive = Vec::with_capacity(pmax);
    let mut stabilized = g0 == 0;
    for p in 1..=pmax {
        if stabilized {
            positive.push(0);
            continue;
        }
        let next = sym_next_layer(n, p, &layer);
        let dim = next.dim();
        positive.push(dim);
        if dim == 0 {
            stabilized = true;
        }
        layer = next;
    }
    DimTable { negative: vec![n], g0, positive, stabilized_zero: stabilized }
}

/// One step of the symmetric prolongation: from the layer of maps with
/// polynomial degree `p` to those of degree `p + 1`.
fn sym_next_layer(n: usize, p: usize, prev: &RowSpace) -> RowSpace {
    let lower = monomials_of_degree(n, p as u32);
    let upper = monomials_of_degree(n, p as u32 + 1);
    let lower_idx: BTreeMap<&[u32], usize> =
        lower.iter().enumerate().map(|(i, m)| (m.exps(), i)).collect();
    let unknowns = upper.len() * n;
    debug_assert_eq!(prev.ncols(), lower.len() * n);

    let qmat = prev.quotient_matrix();
    let qdim = prev.quotient_dim();
    if qdim == 0 {
        // previous layer is everything; so is the next
        return RowSpace::full(unknowns);
    }

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n * qdim);
    for i in 0..n {
        for qr in qmat.iter() {
            let mut row = vec![Rat::zero(); unknowns];
            let mut nonzero = false;
            for (u, alpha) in upper.iter().enumerate() {
                let e = alpha.exps()[i];
                if e == 0 {
                    continue;
                }
                let mut beta = alpha.exps().to_vec();
                beta[i] -= 1;
                let l = lower_idx[&beta[..]];
                for j in 0..n {
                    let c = &qr[l * n + j];
                    if !c.is_zero() {
                        row[u * n + j] = &row[u * n + j] + &(c * &crate::rat::q(e as i64));
                        nonzero = true;
                    }
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    RowSpace::from_rows(unknowns, kernel_rows(&rows, unknowns))
}

// ---------------------------------------------------------------------------
// Tanaka recursion for f(V)/K with structure algebra Λ
// ---------------------------------------------------------------------------

/// Structure constants of the FGLA `m = f(V)/K` on the quotient bases.
struct QuotientAlgebra {
    mu: usize,
    dims: Vec<usize>,
    // brackets[(q, r)][i][j] = coordinates of [b_i, c_j] in g_{-(q+r)},
    // stored for q <= r
    brackets: BTreeMap<(usize, usize), Vec<Vec<Vec<Rat>>>>,
}

impl QuotientAlgebra {
    fn build(ctx: &FreeLieAlgebra, k: &GradedIdeal) -> Self {
        let mu = k.mu();
        let n = k.n();
        let dims: Vec<usize> = (1..=mu).map(|q| k.quotient_dim(q)).collect();
        // free representatives of the quotient bases
        let reps: Vec<Vec<Vec<Rat>>> = (1..=mu)
            .map(|q| {
                if q == 1 {
                    (0..n)
                        .map(|i| {
                            let mut v = vec![Rat::zero(); n];
                            v[i] = crate::rat::q(1);
                            v
                        })
                        .collect()
                } else {
                    k.slice(q)
                        .free_cols()
                        .into_iter()
                        .map(|c| {
                            let mut v = vec![Rat::zero(); ctx.dim(q)];
                            v[c] = crate::rat::q(1);
                            v
                        })
                        .collect()
                }
            })
            .collect();
        let mut brackets = BTreeMap::new();
        for q in 1..=mu {
            for r in q..=mu {
                let d = q + r;
                let table: Vec<Vec<Vec<Rat>>> = reps[q - 1]
                    .iter()
                    .map(|x| {
                        reps[r - 1]
                            .iter()
                            .map(|y| {
                                if d > mu {
                                    Vec::new()
                                } else {
                                    let free = ctx.bracket_coords(q, x, r, y);
                                    k.slice(d).quotient_coords(&free)
                                }
                            })
                            .collect()
                    })
                    .collect();
                brackets.insert((q, r), table);
            }
        }
        QuotientAlgebra { mu, dims, brackets }
    }

    fn dim(&self, q: usize) -> usize {
        if q >= 1 && q <= self.mu {
            self.dims[q - 1]
        } else {
            0
        }
    }

    /// `[b_i, c_j]` for `b_i` in `g_{-q}`, `c_j` in `g_{-r}`.
    fn bracket(&self, q: usize, i: usize, r: usize, j: usize) -> Vec<Rat> {
        if q + r > self.mu {
            return Vec::new();
        }
        if q <= r {
            self.brackets[&(q, r)][i][j].clone()
        } else {
            self.brackets[&(r, q)][j][i].iter().map(|c| -c.clone()).collect()
        }
    }
}

/// A computed nonnegative layer: each basis element is the tuple of its
/// component maps `phi_q : g_{-q} -> g_{p-q}`, stored as matrices from
/// source coordinates to target coordinates.  The entry `phi_q(Y)` is by
/// definition the bracket of the element with `Y`.
struct Layer {
    dim: usize,
    tuples: Vec<Vec<RatMatrix>>,
}

struct TanakaBuilder<'a> {
    mq: &'a QuotientAlgebra,
    layers: Vec<Layer>,
    all_pairs: bool,
}

impl<'a> TanakaBuilder<'a> {
    /// Dimension of `g_level` given everything built so far.
    fn level_dim(&self, level: isize) -> usize {
        if level >= 0 {
            self.layers[level as usize].dim
        } else {
            self.mq.dim((-level) as usize)
        }
    }

    /// Matrix of `ψ -> [ψ, Y_j]` for `Y_j` the `j`-th basis element of
    /// `g_{-q}`, acting `g_level -> g_{level - q}`.  For computed layers
    /// the columns are read off the stored tuples; for negative layers
    /// these are structure constants of `m`.
    fn action(&self, level: isize, q: usize, j: usize) -> RatMatrix {
        let src = self.level_dim(level);
        let dst = self.level_dim(level - q as isize);
        let mut m = RatMatrix::zeros(dst, src);
        if dst == 0 || src == 0 {
            return m;
        }
        if level >= 0 {
            let layer = &self.layers[level as usize];
            for (b, tuple) in layer.tuples.iter().enumerate() {
                let phi_q = &tuple[q - 1];
                for t in 0..dst {
                    m.set(t, b, phi_q.at(t, j).clone());
                }
            }
        } else {
            let r = (-level) as usize;
            for b in 0..src {
                let coords = self.mq.bracket(r, b, q, j);
                for t in 0..dst {
                    m.set(t, b, coords[t].clone());
                }
            }
        }
        m
    }

    /// Builds layer `p >= 0`.  Unknowns are the entries of the component
    /// maps `phi_q`; the Leibniz identity on bracket pairs and (for `p=0`)
    /// membership of `phi_1` in Λ cut out the layer.
    fn build_layer(&mut self, p: usize, lambda: Option<&MatrixSubspace>) {
        let mu = self.mq.mu;
        let n = self.mq.dim(1);
        // unknown layout: one block per q
        let mut offset = vec![0usize; mu + 2];
        let mut tgt_dim = vec![0usize; mu + 1];
        for q in 1..=mu {
            tgt_dim[q] = self.level_dim(p as isize - q as isize);
            offset[q + 1] = offset[q] + self.mq.dim(q) * tgt_dim[q];
        }
        let total = offset[mu + 1];
        let idx = |q: usize, src: usize, tgt: usize| offset[q] + src * tgt_dim[q] + tgt;

        let mut rows: Vec<Vec<Rat>> = Vec::new();

        // Leibniz phi([X, Y]) = [phi(X), Y] - [phi(Y), X] on generator
        // pairs (X in g_{-1}); optionally on all pairs as a cross-check.
        let r_max = if self.all_pairs { mu } else { 1 };
        for r in 1..=r_max {
            for qd in r..=mu {
                let out_dim = self.level_dim(p as isize - (qd + r) as isize);
                if out_dim == 0 {
                    continue;
                }
                for i in 0..self.mq.dim(r) {
                    let j_start = if qd == r { i + 1 } else { 0 };
                    for j in j_start..self.mq.dim(qd) {
                        let lhs = self.mq.bracket(r, i, qd, j);
                        // [phi_r(X_i), Y_j] with phi_r(X_i) in g_{p-r}
                        let act_y = self.action(p as isize - r as isize, qd, j);
                        // [phi_q(Y_j), X_i] with phi_q(Y_j) in g_{p-q}
                        let act_x = self.action(p as isize - qd as isize, r, i);
                        for t in 0..out_dim {
                            let mut row = vec![Rat::zero(); total];
                            if qd + r <= mu {
                                for (ksrc, c) in lhs.iter().enumerate() {
                                    if !c.is_zero() {
                                        let u = idx(qd + r, ksrc, t);
                                        row[u] = &row[u] + c;
                                    }
                                }
                            }
                            for s in 0..self.level_dim(p as isize - r as isize) {
                                let a = act_y.at(t, s);
                                if !a.is_zero() {
                                    let u = idx(r, i, s);
                                    row[u] = &row[u] - a;
                                }
                            }
                            for s in 0..self.level_dim(p as isize - qd as isize) {
                                let a = act_x.at(t, s);
                                if !a.is_zero() {
                                    let u = idx(qd, j, s);
                                    row[u] = &row[u] + a;
                                }
                            }
                            if row.iter().any(|x| !x.is_zero()) {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
        }

        // p = 0: the g_{-1} component must lie in Λ
        if p == 0 {
            if let Some(lam) = lambda {
                if !lam.is_gl() {
                    for qr in lam.row_space().quotient_matrix() {
                        let mut row = vec![Rat::zero(); total];
                        let mut nonzero = false;
                        for t in 0..n {
                            for src in 0..n {
                                // matrix entry (t, src) is vectorised at
                                // position t*n + src
                                let c = &qr[t * n + src];
                                if !c.is_zero() {
                                    row[idx(1, src, t)] = c.clone();
                                    nonzero = true;
                                }
                            }
                        }
                        if nonzero {
                            rows.push(row);
                        }
                    }
                }
            }
        }

        let kernel = kernel_rows(&rows, total);
        let tuples: Vec<Vec<RatMatrix>> = kernel
            .iter()
            .map(|v| {
                (1..=mu)
                    .map(|qd| {
                        let (srcd, tgtd) = (self.mq.dim(qd), tgt_dim[qd]);
                        RatMatrix::from_fn(tgtd, srcd, |t, s| v[idx(qd, s, t)].clone())
                    })
                    .collect()
            })
            .collect();
        self.layers.push(Layer { dim: kernel.len(), tuples });
    }
}

/// Layer dimensions of the maximal effective Λ-prolongation of
/// `m = f(V)/K`, computed by the derivation recursion.
pub fn tanaka_prolong_dims(
    ctx: &FreeLieAlgebra,
    k: &GradedIdeal,
    lambda: &MatrixSubspace,
    pmax: usize,
) -> DimTable {
    tanaka_dims_impl(ctx, k, lambda, pmax, false)
}

/// Cross-check variant imposing the Leibniz identity on every pair of
/// negative basis elements, not only generator pairs.  Fundamentality
/// makes the generator pairs sufficient; this exists to test that claim.
pub fn tanaka_prolong_dims_all_pairs(
    ctx: &FreeLieAlgebra,
    k: &GradedIdeal,
    lambda: &MatrixSubspace,
    pmax: usize,
) -> DimTable {
    tanaka_dims_impl(ctx, k, lambda, pmax, true)
}

fn tanaka_dims_impl(
    ctx: &FreeLieAlgebra,
    k: &GradedIdeal,
    lambda: &MatrixSubspace,
    pmax: usize,
    all_pairs: bool,
) -> DimTable {
    assert_eq!(ctx.n(), k.n());
    assert_eq!(lambda.n(), k.n());
    assert!(k.mu() <= ctx.max_degree());
    let mq = QuotientAlgebra::build(ctx, k);
    let negative: Vec<usize> = (1..=k.mu()).rev().map(|q| mq.dim(q)).collect();
    let mut builder = TanakaBuilder { mq: &mq, layers: Vec::new(), all_pairs };

    builder.build_layer(0, Some(lambda));
    let g0 = builder.layers[0].dim;

    let mut positive = Vec::with_capacity(pmax);
    let mut stabilized = false;
    for p in 1..=pmax {
        if stabilized {
            positive.push(0);
            continue;
        }
        builder.build_layer(p, None);
        let dim = builder.layers[p].dim;
        positive.push(dim);
        if dim == 0 {
            stabilized = true;
        }
    }
    DimTable { negative, g0, positive, stabilized_zero: stabilized }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{a0_compute, g0_compute};
    use alloc::vec;

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut r = 1usize;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn sym_prolong_of_gl_is_everything() {
        for n in 2..=3usize {
            let t = sym_prolong_dims(&MatrixSubspace::gl(n), 4);
            assert_eq!(t.g0, n * n);
            for (p, d) in t.positive.iter().enumerate() {
                let p = p + 1;
                // dim Symm_{p+1}(V*) ⊗ V, counted by monomial enumeration
                let expect = n * monomials_of_degree(n, (p + 1) as u32).len();
                assert_eq!(*d, expect);
                assert_eq!(expect, n * binomial(n + p, p + 1));
            }
            assert!(!t.stabilized_zero);
        }
    }

    #[test]
    fn sym_prolong_of_orthogonal_stops_immediately() {
        for n in 3..=4usize {
            let t = sym_prolong_dims(&MatrixSubspace::o(n), 3);
            assert_eq!(t.positive[0], 0, "a1 = 0 for o({})", n);
            assert!(t.stabilized_zero);
            assert_eq!(oracle_verdict(&t), OracleVerdict::Finite);
        }
    }

    #[test]
    fn sym_prolong_of_conformal_ends_in_two_steps() {
        for n in 3..=4usize {
            let t = sym_prolong_dims(&MatrixSubspace::co(n), 3);
            assert_eq!(t.positive[0], n, "a1 of co({})", n);
            assert_eq!(t.positive[1], 0, "a2 of co({})", n);
            assert!(t.stabilized_zero);
        }
    }

    #[test]
    fn sym_prolong_of_symplectic_never_stops() {
        let t = sym_prolong_dims(&MatrixSubspace::sp(4), 5);
        for (idx, d) in t.positive.iter().enumerate() {
            let p = idx + 1;
            assert!(*d > 0, "a_{} of sp", p);
            // layer p of the symplectic prolongation is Symm_{p+2}(K^4)
            assert_eq!(*d, binomial(p + 2 + 3, 3));
        }
        assert_eq!(oracle_verdict(&t), OracleVerdict::InfiniteUpToBound);
    }

    #[test]
    fn sym_prolong_of_zero_algebra() {
        let t = sym_prolong_dims(&MatrixSubspace::zero(2), 3);
        assert_eq!(t.g0, 0);
        assert_eq!(t.positive, vec![0, 0, 0]);
        assert!(t.stabilized_zero);
    }

    fn heisenberg_ideal(ctx: &FreeLieAlgebra, n: usize) -> GradedIdeal {
        // K_{-2} = kernel of the symplectic pairing on Λ²V
        use crate::exactla::{standard_symplectic_form, wedge_dim, wedge_pairs};
        let omega = standard_symplectic_form(n);
        let row: Vec<Rat> =
            wedge_pairs(n).into_iter().map(|(i, j)| omega.at(i, j).clone()).collect();
        let ker = kernel_rows(&[row], wedge_dim(n));
        let gens: Vec<(usize, crate::freelie::LieElement)> =
            ker.into_iter().map(|v| (2, ctx.element_from_coords(2, &v))).collect();
        ctx.ideal_close(2, &gens)
    }

    /// Contact algebra dimension oracle: polynomials in `n` weight-1
    /// variables and one weight-2 variable, of weighted degree `p + 2`.
    fn contact_dim(n: usize, p: i64) -> usize {
        let target = p + 2;
        let mut total = 0usize;
        let mut c = 0i64;
        while 2 * c <= target {
            let rest = (target - 2 * c) as u32;
            total += monomials_of_degree(n, rest).len();
            c += 1;
        }
        total
    }

    #[test]
    fn tanaka_heisenberg_matches_contact_dimensions() {
        let ctx = FreeLieAlgebra::new(2, 4);
        let k = heisenberg_ideal(&ctx, 2);
        let t = tanaka_prolong_dims(&ctx, &k, &MatrixSubspace::gl(2), 3);
        assert_eq!(t.negative, vec![1, 2]);
        assert_eq!(t.g0, 4);
        for p in 1..=3i64 {
            assert_eq!(t.positive[(p - 1) as usize], contact_dim(2, p), "g_{}", p);
        }
        assert_eq!(t.positive[0], 6);
        assert_eq!(t.positive[1], 9);
        assert!(!t.stabilized_zero);
    }

    #[test]
    fn tanaka_free_kind_three_on_two_generators() {
        // the configuration whose maximal prolongation is 14-dimensional
        let ctx = FreeLieAlgebra::new(2, 3);
        let k = GradedIdeal::free(2, 3);
        let t = tanaka_prolong_dims(&ctx, &k, &MatrixSubspace::gl(2), 6);
        assert_eq!(t.negative, vec![2, 1, 2]);
        assert_eq!(t.g0, 4);
        assert_eq!(t.positive, vec![2, 1, 2, 0, 0, 0]);
        assert!(t.stabilized_zero);
        assert_eq!(t.total(), 14);
        assert_eq!(oracle_verdict(&t), OracleVerdict::Finite);
    }

    #[test]
    fn tanaka_first_kind_matches_sym_prolong_layerwise() {
        let cases: Vec<(usize, MatrixSubspace)> = vec![
            (2, MatrixSubspace::gl(2)),
            (2, MatrixSubspace::co(2)),
            (2, MatrixSubspace::sl(2)),
            (3, MatrixSubspace::o(3)),
            (3, MatrixSubspace::co(3)),
        ];
        for (n, lam) in cases {
            let ctx = FreeLieAlgebra::new(n, 2);
            let k = GradedIdeal::free(n, 1);
            let tk = tanaka_prolong_dims(&ctx, &k, &lam, 4);
            let sy = sym_prolong_dims(&lam, 4);
            assert_eq!(tk.g0, sy.g0, "g0 for n={}", n);
            assert_eq!(tk.positive, sy.positive, "layers for n={}", n);
        }
    }

    #[test]
    fn generator_pairs_match_all_pairs() {
        // imposing Leibniz only on generator pairs is enough because m is
        // fundamental; compare against the full set of pairs
        let ctx = FreeLieAlgebra::new(2, 3);
        let cases: Vec<(GradedIdeal, MatrixSubspace, usize)> = vec![
            (GradedIdeal::free(2, 3), MatrixSubspace::gl(2), 4),
            (heisenberg_ideal(&ctx, 2), MatrixSubspace::gl(2), 3),
            (heisenberg_ideal(&ctx, 2), MatrixSubspace::sl(2), 3),
        ];
        for (k, lam, pmax) in cases {
            let a = tanaka_prolong_dims(&ctx, &k, &lam, pmax);
            let b = tanaka_prolong_dims_all_pairs(&ctx, &k, &lam, pmax);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn tanaka_g0_matches_g0_compute() {
        let ctx = FreeLieAlgebra::new(2, 3);
        for (k, lam) in [
            (GradedIdeal::free(2, 3), MatrixSubspace::gl(2)),
            (heisenberg_ideal(&ctx, 2), MatrixSubspace::gl(2)),
            (heisenberg_ideal(&ctx, 2), MatrixSubspace::co(2)),
        ] {
            let t = tanaka_prolong_dims(&ctx, &k, &lam, 1);
            assert_eq!(t.g0, g0_compute(&ctx, &lam, &k).dim());
        }
    }

    #[test]
    fn reduced_prolongation_bounds_full_prolongation() {
        // layers of the prolongation of a0(K, Λ) embed into the full ones
        let ctx = FreeLieAlgebra::new(2, 3);
        for (k, lam) in [
            (heisenberg_ideal(&ctx, 2), MatrixSubspace::gl(2)),
            (GradedIdeal::free(2, 3), MatrixSubspace::gl(2)),
        ] {
            let w = ctx.compute_w(&k);
            let a0 = a0_compute(&lam, &k, &w);
            let sy = sym_prolong_dims(&a0, 4);
            let tk = tanaka_prolong_dims(&ctx, &k, &lam, 4);
            for p in 0..4 {
                assert!(
                    sy.positive[p] <= tk.positive[p],
                    "containment failed at layer {}",
                    p + 1
                );
            }
        }
    }
}
