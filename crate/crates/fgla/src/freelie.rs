//! The graded free Lie algebra `f(V)` on a Lyndon-word basis.
//!
//! Degree `p` of `f(V)` is spanned by the standard bracketings of the
//! Lyndon words of length `p` on `dim V` letters.  Brackets of basis
//! elements are expanded back into the basis by the classical rewriting
//! recursion on standard factorizations (antisymmetry plus Jacobi); the
//! whole pair table up to the configured degree bound is built once at
//! construction, after which every operation is a pure table lookup.
//!
//! Graded ideals `K ⊆ f(V)` are held as one row-reduced slice per degree,
//! which makes quotient projections (the FGLA `f(V)/K`) and the subspace
//! `W(K) = {v : [v, f_{[2]}] ⊆ K}` plain linear algebra.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exactla::{RatMatrix, RowSpace};
use crate::rat::{q, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeLieError {
    DegreeBound { degree: usize, max: usize },
}

impl core::fmt::Display for FreeLieError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FreeLieError::DegreeBound { degree, max } => {
                write!(f, "degree {} exceeds the configured bound {}", degree, max)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Lyndon words
// ---------------------------------------------------------------------------

/// A Lyndon word on letters `0..n-1`: strictly smaller than every proper
/// rotation of itself.  Its standard bracketing is a basis element of the
/// free Lie algebra in the degree given by its length.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LyndonWord {
    letters: Vec<u8>,
}

impl LyndonWord {
    pub fn new(letters: Vec<u8>) -> Option<Self> {
        if is_lyndon(&letters) {
            Some(LyndonWord { letters })
        } else {
            None
        }
    }

    pub fn letter(i: u8) -> Self {
        LyndonWord { letters: vec![i] }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    /// Standard factorization `w = u v` with `v` the lexicographically
    /// least (equivalently, longest Lyndon) proper suffix.  Both factors
    /// are Lyndon and `u < v`.
    pub fn standard_factorization(&self) -> (LyndonWord, LyndonWord) {
        let w = &self.letters;
        assert!(w.len() >= 2, "letters have no factorization");
        let mut best = 1;
        for s in 2..w.len() {
            if w[s..] < w[best..] {
                best = s;
            }
        }
        let u = LyndonWord { letters: w[..best].to_vec() };
        let v = LyndonWord { letters: w[best..].to_vec() };
        debug_assert!(is_lyndon(&u.letters) && is_lyndon(&v.letters) && u < v);
        (u, v)
    }
}

pub fn is_lyndon(word: &[u8]) -> bool {
    if word.is_empty() {
        return false;
    }
    for s in 1..word.len() {
        let rotation = word[s..].iter().chain(word[..s].iter());
        if !(word.iter().lt(rotation)) {
            return false;
        }
    }
    true
}

/// All Lyndon words of length exactly `p` on `n` letters, in lexicographic
/// order (Duval's algorithm).
pub fn lyndon_basis(n: usize, p: usize) -> Vec<LyndonWord> {
    assert!(n >= 2 && n <= 255, "need at least two generators");
    assert!(p >= 1);
    let mut out = Vec::new();
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == p {
            out.push(LyndonWord { letters: w.clone() });
        }
        // periodic extension to length p, then increment
        let m = w.len();
        let mut t: Vec<u8> = (0..p).map(|i| w[i % m]).collect();
        while t.last() == Some(&((n - 1) as u8)) {
            t.pop();
        }
        match t.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
        w = t;
    }
    out
}

/// Dimension of degree `p` of the free Lie algebra on `n` generators,
/// `(1/p) Σ_{d|p} μ(d) n^{p/d}`.
pub fn witt_dimension(n: usize, p: usize) -> usize {
    let mut sum: i64 = 0;
    for d in 1..=p {
        if p % d == 0 {
            sum += moebius(d) * (n as i64).pow((p / d) as u32);
        }
    }
    assert!(sum >= 0 && sum % p as i64 == 0);
    (sum / p as i64) as usize
}

fn moebius(mut d: usize) -> i64 {
    let mut primes = 0;
    let mut f = 2;
    while f * f <= d {
        if d % f == 0 {
            d /= f;
            if d % f == 0 {
                return 0;
            }
            primes += 1;
        }
        f += 1;
    }
    if d > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// Lie elements
// ---------------------------------------------------------------------------

/// Homogeneous element of `f_{-p}(V)`: rational coefficients on the Lyndon
/// basis of degree `p`.  Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    degree: usize,
    coeffs: BTreeMap<LyndonWord, Rat>,
}

impl LieElement {
    pub fn zero(degree: usize) -> Self {
        LieElement { degree, coeffs: BTreeMap::new() }
    }

    pub fn generator(i: u8) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(LyndonWord::letter(i), q(1));
        LieElement { degree: 1, coeffs }
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (LyndonWord, Rat)>) -> Self {
        let mut e = LieElement::zero(degree);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, w: &LyndonWord) -> Rat {
        self.coeffs.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LyndonWord, &Rat)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, w: LyndonWord, c: Rat) {
        assert_eq!(w.degree(), self.degree, "term of wrong degree");
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let nv = o.get() + &c;
                if nv.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = nv;
                }
            }
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (w, c) in other.coeffs.iter() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> LieElement {
        if s.is_zero() {
            return LieElement::zero(self.degree);
        }
        LieElement {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// The algebra context
// ---------------------------------------------------------------------------

type Sparse = Vec<(usize, Rat)>;

/// The free Lie algebra on `n` generators with all computation capped at
/// `max_degree`.  Immutable after construction; bracket expansion of every
/// basis pair within the bound is precomputed.
#[derive(Debug, Clone)]
pub struct FreeLieAlgebra {
    n: usize,
    max_degree: usize,
    bases: Vec<Vec<LyndonWord>>,
    index: Vec<BTreeMap<Vec<u8>, usize>>,
    // (p, q) with p <= q, p + q <= max_degree; entry (i, j) flattened.
    table: BTreeMap<(usize, usize), Vec<Sparse>>,
}

impl FreeLieAlgebra {
    pub fn new(n: usize, max_degree: usize) -> Self {
        assert!(n >= 2, "an FGLA needs dim V >= 2");
        assert!(max_degree >= 1);
        let mut bases = Vec::with_capacity(max_degree);
        let mut index = Vec::with_capacity(max_degree);
        for p in 1..=max_degree {
            let words = lyndon_basis(n, p);
            let idx = words.iter().enumerate().map(|(i, w)| (w.letters.clone(), i)).collect();
            bases.push(words);
            index.push(idx);
        }
        let mut ctx = FreeLieAlgebra { n, max_degree, bases, index, table: BTreeMap::new() };
        let mut memo: BTreeMap<(Vec<u8>, Vec<u8>), Vec<(Vec<u8>, Rat)>> = BTreeMap::new();
        let mut in_progress: BTreeSet<(Vec<u8>, Vec<u8>)> = BTreeSet::new();
        for p in 1..=max_degree {
            for qdeg in p..=max_degree {
                if p + qdeg > max_degree {
                    break;
                }
                let dim_p = ctx.dim(p);
                let dim_q = ctx.dim(qdeg);
                let mut entries = Vec::with_capacity(dim_p * dim_q);
                for i in 0..dim_p {
                    for j in 0..dim_q {
                        let u = ctx.bases[p - 1][i].letters.clone();
                        let v = ctx.bases[qdeg - 1][j].letters.clone();
                        let word_terms = bracket_words_oriented(&u, &v, &mut memo, &mut in_progress);
                        let target = ctx.index(p + qdeg);
                        let mut sparse: Sparse = word_terms
                            .into_iter()
                            .map(|(w, c)| (*target.get(&w).expect("bracket lands on basis"), c))
                            .collect();
                        sparse.sort_by_key(|(k, _)| *k);
                        entries.push(sparse);
                    }
                }
                ctx.table.insert((p, qdeg), entries);
            }
        }
        ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self, p: usize) -> usize {
        self.bases[p - 1].len()
    }

    pub fn basis_words(&self, p: usize) -> &[LyndonWord] {
        &self.bases[p - 1]
    }

    fn index(&self, p: usize) -> &BTreeMap<Vec<u8>, usize> {
        &self.index[p - 1]
    }

    pub fn word_index(&self, w: &LyndonWord) -> Option<usize> {
        self.index(w.degree()).get(&w.letters).copied()
    }

    pub fn coords_of(&self, x: &LieElement) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim(x.degree())];
        for (w, c) in x.terms() {
            out[self.word_index(w).expect("word in basis")] = c.clone();
        }
        out
    }

    pub fn element_from_coords(&self, p: usize, coords: &[Rat]) -> LieElement {
        assert_eq!(coords.len(), self.dim(p));
        LieElement::from_terms(
            p,
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.bases[p - 1][i].clone(), c.clone())),
        )
    }

    /// Bracket of basis elements, as sparse coordinates in degree `p + q`.
    pub fn bracket_basis(&self, p: usize, i: usize, qdeg: usize, j: usize) -> Sparse {
        if p <= qdeg {
            self.table[&(p, qdeg)][i * self.dim(qdeg) + j].clone()
        } else {
            self.table[&(qdeg, p)][j * self.dim(p) + i]
                .iter()
                .map(|(k, c)| (*k, -c.clone()))
                .collect()
        }
    }

    /// `[x, y]` expanded in the Lyndon basis of degree `deg x + deg y`.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement, FreeLieError> {
        let d = x.degree() + y.degree();
        if d > self.max_degree {
            return Err(FreeLieError::DegreeBound { degree: d, max: self.max_degree });
        }
        let out = self.bracket_coords(
            x.degree(),
            &self.coords_of(x),
            y.degree(),
            &self.coords_of(y),
        );
        Ok(self.element_from_coords(d, &out))
    }

    /// Dense-coordinate bracket (degrees `p` and `q`, output degree `p+q`).
    pub fn bracket_coords(&self, p: usize, xc: &[Rat], qdeg: usize, yc: &[Rat]) -> Vec<Rat> {
        assert!(p + qdeg <= self.max_degree, "degree bound exceeded");
        let mut out = vec![Rat::zero(); self.dim(p + qdeg)];
        for (i, a) in xc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in yc.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(p, i, qdeg, j) {
                    out[k] = &out[k] + &(&ab * &c);
                }
            }
        }
        out
    }

    /// Matrix of the degree-zero derivation `T_A` on degree `p`, expanded
    /// through standard bracketings (`T_A[x,y] = [T_A x, y] + [x, T_A y]`).
    pub fn derivation_matrix(&self, a: &RatMatrix, p: usize) -> RatMatrix {
        assert_eq!((a.rows(), a.cols()), (self.n, self.n));
        assert!(p <= self.max_degree);
        let mut per_degree: Vec<RatMatrix> = Vec::with_capacity(p);
        for d in 1..=p {
            if d == 1 {
                per_degree.push(a.clone());
                continue;
            }
            let dim = self.dim(d);
            let mut m = RatMatrix::zeros(dim, dim);
            for (src, w) in self.bases[d - 1].iter().enumerate() {
                let (u, v) = w.standard_factorization();
                let (du, dv) = (u.degree(), v.degree());
                let (iu, iv) = (self.word_index(&u).unwrap(), self.word_index(&v).unwrap());
                let mut tu = vec![Rat::zero(); self.dim(du)];
                for r in 0..self.dim(du) {
                    tu[r] = per_degree[du - 1].at(r, iu).clone();
                }
                let mut tv = vec![Rat::zero(); self.dim(dv)];
                for r in 0..self.dim(dv) {
                    tv[r] = per_degree[dv - 1].at(r, iv).clone();
                }
                let mut ev = vec![Rat::zero(); self.dim(dv)];
                ev[iv] = q(1);
                let mut eu = vec![Rat::zero(); self.dim(du)];
                eu[iu] = q(1);
                let part1 = self.bracket_coords(du, &tu, dv, &ev);
                let part2 = self.bracket_coords(du, &eu, dv, &tv);
                for (r, val) in part1.iter().zip(part2.iter()).map(|(x, y)| x + y).enumerate() {
                    m.set(r, src, val);
                }
            }
            per_degree.push(m);
        }
        per_degree.pop().unwrap()
    }

    // -- graded ideals -----------------------------------------------------

    /// Smallest graded ideal with the given homogeneous generators, closed
    /// under bracketing with `V`, sliced over degrees `2..=mu`.  Degrees
    /// beyond `mu` are implicitly all of `f(V)`.
    pub fn ideal_close(&self, mu: usize, generators: &[(usize, LieElement)]) -> GradedIdeal {
        assert!(mu >= 1 && mu <= self.max_degree);
        let mut raw: Vec<Vec<Vec<Rat>>> = vec![Vec::new(); mu.saturating_sub(1)];
        for (deg, g) in generators {
            assert!(
                *deg >= 2 && *deg <= mu,
                "ideal generators must have degree in 2..=mu"
            );
            assert_eq!(*deg, g.degree());
            raw[deg - 2].push(self.coords_of(g));
        }
        let mut slices: Vec<RowSpace> = Vec::with_capacity(mu.saturating_sub(1));
        for p in 2..=mu {
            let space = RowSpace::from_rows(self.dim(p), raw[p - 2].drain(..));
            if p < mu {
                let mut gen_onehot = vec![Rat::zero(); self.n];
                for row in space.basis() {
                    for i in 0..self.n {
                        gen_onehot[i] = q(1);
                        let img = self.bracket_coords(p, row, 1, &gen_onehot);
                        gen_onehot[i] = Rat::zero();
                        raw[p - 1].push(img);
                    }
                }
            }
            slices.push(space);
        }
        GradedIdeal { n: self.n, mu, slices }
    }

    /// Checks the graded-ideal invariants: every slice brackets into the
    /// next one, and `K_{-2}` is proper when `mu >= 2`.
    pub fn validate_ideal(&self, k: &GradedIdeal) -> bool {
        if k.n != self.n || k.mu > self.max_degree {
            return false;
        }
        if k.mu >= 2 && k.slice(2).dim() == self.dim(2) {
            return false;
        }
        for p in 2..k.mu {
            let next = k.slice(p + 1);
            let mut gen_onehot = vec![Rat::zero(); self.n];
            for row in k.slice(p).basis() {
                for i in 0..self.n {
                    gen_onehot[i] = q(1);
                    let img = self.bracket_coords(p, row, 1, &gen_onehot);
                    gen_onehot[i] = Rat::zero();
                    if !next.contains(&img) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `W(K) = {v in V : [v, f_{-p}(V)] ⊆ K_{-(p+1)} for 2 ≤ p ≤ μ−1}`.
    /// For `mu <= 2` the condition range is empty and `W = V`.
    pub fn compute_w(&self, k: &GradedIdeal) -> RowSpace {
        assert_eq!(k.n, self.n);
        if k.mu <= 2 {
            return RowSpace::full(self.n);
        }
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut gen_onehot = vec![Rat::zero(); self.n];
        for p in 2..k.mu {
            let target = k.slice(p + 1);
            if target.quotient_dim() == 0 {
                continue;
            }
            for b in 0..self.dim(p) {
                let mut word_onehot = vec![Rat::zero(); self.dim(p)];
                word_onehot[b] = q(1);
                // coordinates of [e_i, basis word] for each generator
                let mut imgs: Vec<Vec<Rat>> = Vec::with_capacity(self.n);
                for i in 0..self.n {
                    gen_onehot[i] = q(1);
                    let img = self.bracket_coords(1, &gen_onehot, p, &word_onehot);
                    gen_onehot[i] = Rat::zero();
                    imgs.push(target.quotient_coords(&img));
                }
                for r in 0..target.quotient_dim() {
                    rows.push(imgs.iter().map(|v| v[r].clone()).collect());
                }
            }
        }
        RowSpace::from_rows(self.n, crate::exactla::kernel_rows(&rows, self.n))
    }
}

fn bracket_words_oriented(
    u: &[u8],
    v: &[u8],
    memo: &mut BTreeMap<(Vec<u8>, Vec<u8>), Vec<(Vec<u8>, Rat)>>,
    in_progress: &mut BTreeSet<(Vec<u8>, Vec<u8>)>,
) -> Vec<(Vec<u8>, Rat)> {
    use core::cmp::Ordering;
    match u.cmp(v) {
        Ordering::Equal => Vec::new(),
        Ordering::Less => bracket_words(u, v, memo, in_progress),
        Ordering::Greater => bracket_words(v, u, memo, in_progress)
            .into_iter()
            .map(|(w, c)| (w, -c))
            .collect(),
    }
}

/// `[b(u), b(v)]` for Lyndon words `u < v`, by the standard-factorization
/// rewriting recursion.
fn bracket_words(
    u: &[u8],
    v: &[u8],
    memo: &mut BTreeMap<(Vec<u8>, Vec<u8>), Vec<(Vec<u8>, Rat)>>,
    in_progress: &mut BTreeSet<(Vec<u8>, Vec<u8>)>,
) -> Vec<(Vec<u8>, Rat)> {
    debug_assert!(u < v);
    let key = (u.to_vec(), v.to_vec());
    if let Some(r) = memo.get(&key) {
        return r.clone();
    }
    assert!(in_progress.insert(key.clone()), "cycle in bracket rewriting");

    let split = standard_split(u);
    let result = match split {
        // u a letter, or the right factor of u dominates v: u v is Lyndon
        // with standard factorization (u, v), so the bracket is basis.
        None => basis_term(u, v),
        Some(s) if &u[s..] >= v => basis_term(u, v),
        Some(s) => {
            // u = u1 u2 with u2 < v:
            // [b(u), b(v)] = [[b(u1), b(v)], b(u2)] + [b(u1), [b(u2), b(v)]]
            let (u1, u2) = (&u[..s], &u[s..]);
            let mut acc: BTreeMap<Vec<u8>, Rat> = BTreeMap::new();
            let left = bracket_words_oriented(u1, v, memo, in_progress);
            for (w, c) in left {
                for (w2, c2) in bracket_words_oriented(&w, u2, memo, in_progress) {
                    add_word_term(&mut acc, w2, &c * &c2);
                }
            }
            let right = bracket_words_oriented(u2, v, memo, in_progress);
            for (w, c) in right {
                for (w2, c2) in bracket_words_oriented(u1, &w, memo, in_progress) {
                    add_word_term(&mut acc, w2, &c * &c2);
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        }
    };

    in_progress.remove(&key);
    memo.insert(key, result.clone());
    result
}

fn basis_term(u: &[u8], v: &[u8]) -> Vec<(Vec<u8>, Rat)> {
    let mut w = u.to_vec();
    w.extend_from_slice(v);
    debug_assert!(is_lyndon(&w));
    vec![(w, q(1))]
}

fn add_word_term(acc: &mut BTreeMap<Vec<u8>, Rat>, w: Vec<u8>, c: Rat) {
    if c.is_zero() {
        return;
    }
    let cur = acc.entry(w).or_insert_with(Rat::zero);
    *cur = &*cur + &c;
}

/// Split point of the standard factorization, `None` for letters.
fn standard_split(w: &[u8]) -> Option<usize> {
    if w.len() < 2 {
        return None;
    }
    let mut best = 1;
    for s in 2..w.len() {
        if w[s..] < w[best..] {
            best = s;
        }
    }
    Some(best)
}

// ---------------------------------------------------------------------------
// Graded ideals
// ---------------------------------------------------------------------------

/// A μ-cofinite graded ideal of `f(V)`: one row-reduced slice
/// `K_{-p} ⊆ f_{-p}(V)` per degree `2..=mu`, with everything below degree
/// `-mu` implicitly contained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    n: usize,
    mu: usize,
    slices: Vec<RowSpace>,
}

impl GradedIdeal {
    /// The free ideal of kind `mu`: all slices zero.
    pub fn free(n: usize, mu: usize) -> Self {
        let slices = (2..=mu).map(|p| RowSpace::zero(witt_dimension(n, p))).collect();
        GradedIdeal { n, mu, slices }
    }

    pub fn from_slices(n: usize, mu: usize, slices: Vec<RowSpace>) -> Self {
        assert_eq!(slices.len(), mu.saturating_sub(1));
        for (i, s) in slices.iter().enumerate() {
            assert_eq!(s.ncols(), witt_dimension(n, i + 2), "slice dimension mismatch");
        }
        GradedIdeal { n, mu, slices }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// Slice `K_{-p}` for `2 <= p <= mu`.
    pub fn slice(&self, p: usize) -> &RowSpace {
        assert!((2..=self.mu).contains(&p));
        &self.slices[p - 2]
    }

    /// `dim g_{-p}` of the quotient FGLA `f(V)/K`.
    pub fn quotient_dim(&self, p: usize) -> usize {
        if p == 1 {
            self.n
        } else if p <= self.mu {
            self.slice(p).quotient_dim()
        } else {
            0
        }
    }

    /// Slice-wise containment (`self ⊆ other`); both must share `n`, `mu`.
    pub fn contained_in(&self, other: &GradedIdeal) -> bool {
        self.n == other.n
            && self.mu == other.mu
            && self
                .slices
                .iter()
                .zip(other.slices.iter())
                .all(|(a, b)| b.contains_space(a))
    }
}
