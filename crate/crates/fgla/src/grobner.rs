//! Sparse multivariate polynomials over the rationals, Buchberger's
//! algorithm in graded reverse lexicographic order, determinantal ideals
//! of matrices of linear forms, and the origin-only test.
//!
//! The decision behind the finiteness criterion is always of this shape:
//! given homogeneous generators, is their zero locus over the algebraic
//! closure exactly the origin?  Over any field of characteristic zero this
//! holds iff every variable has a pure power among the leading monomials
//! of a Groebner basis of the ideal ([`origin_only`]).  A Groebner-free
//! degreewise saturation check ([`saturation_oracle`]) serves as an
//! independent oracle for that test.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactla::{RatMatrix, RowSpace};
use crate::rat::Rat;

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

/// Exponent vector with `Ord` implementing graded reverse lexicographic
/// order, so that the maximum of a `BTreeMap` keyed by `Mono` is the
/// leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mono {
    exps: Vec<u32>,
}

impl Mono {
    pub fn new(exps: Vec<u32>) -> Self {
        Mono { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Mono { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Mono { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn is_coprime(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when the monomial is a positive power of variable `i` alone.
    pub fn pure_power(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        use core::cmp::Ordering;
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                // rightmost difference negative => larger in degrevlex
                return if self.exps[i] < other.exps[i] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// Sparse polynomial over the rationals.  Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Mono::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Mono::var(nvars, i), Rat::one());
        p
    }

    /// Homogeneous linear form with the given coefficients.
    pub fn linear_form(coeffs: &[Rat]) -> Self {
        let nvars = coeffs.len();
        let mut p = Poly::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Mono::var(nvars, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        assert_eq!(m.exps().len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d == m.degree() => {}
                _ => return false,
            }
        }
        true
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in other.terms.iter() {
            for (mm, cc) in self.terms.iter() {
                out.add_term(mm.mul(m), cc * c);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Clears denominators, divides by integer content and normalises the
    /// sign of the leading coefficient to be positive.  Returns zero
    /// unchanged.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let int = c.numer() * (&den / c.denom());
            content = content.gcd(&int);
        }
        let lead_negative = self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if lead_negative {
            content = -content;
        }
        let factor = Rat::new(den, content);
        self.scale(&factor)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    /// Canonical term list, used for deduplication.
    fn key(&self) -> Vec<(Vec<u32>, Rat)> {
        self.terms.iter().map(|(m, c)| (m.exps().to_vec(), c.clone())).collect()
    }
}

// ---------------------------------------------------------------------------
// Division and Buchberger
// ---------------------------------------------------------------------------

/// Full normal form of `f` against `gens`: no term of the result is
/// divisible by any leading monomial of `gens`.
pub fn normal_form(f: &Poly, gens: &[Poly]) -> Poly {
    let mut work = f.clone();
    let mut rem = Poly::zero(f.nvars());
    'outer: while let Some((lm, lc)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in gens {
            if let Some((gm, gc)) = g.leading() {
                if gm.divides(&lm) {
                    let m = lm.div(gm);
                    let c = &lc / gc;
                    work = work.sub(&g.mul_term(&m, &c));
                    continue 'outer;
                }
            }
        }
        rem.add_term(lm.clone(), lc.clone());
        work.add_term(lm, -lc);
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm), &(Rat::one() / fc.clone()));
    let b = g.mul_term(&l.div(gm), &(Rat::one() / gc.clone()));
    a.sub(&b)
}

/// A reduced Groebner basis in degrevlex order: auto-reduced, monic
/// generators, sorted by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    gens: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        normal_form(f, &self.gens)
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.gens.iter().filter_map(|g| g.leading().map(|(m, _)| m.clone())).collect()
    }
}

/// Buchberger's algorithm with the product and chain criteria, followed by
/// auto-reduction.  Deterministic: pairs are processed by increasing lcm.
pub fn buchberger(gens: &[Poly]) -> GroebnerBasis {
    assert!(!gens.is_empty(), "buchberger needs generators");
    let nvars = gens[0].nvars();
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        assert_eq!(g.nvars(), nvars);
        if !g.is_zero() {
            basis.push(g.primitive());
        }
    }
    if basis.is_empty() {
        return GroebnerBasis { nvars, gens: Vec::new() };
    }

    // pair queue keyed by (lcm, i, j); BTreeSet pops the smallest lcm first
    let mut queue: BTreeSet<(Mono, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            queue.insert(pair_key(&basis, i, j));
        }
    }

    while let Some(entry) = queue.iter().next().cloned() {
        queue.remove(&entry);
        let (_, i, j) = entry;
        let (fi, fj) = (&basis[i], &basis[j]);
        let (mi, _) = fi.leading().unwrap();
        let (mj, _) = fj.leading().unwrap();
        // Buchberger's coprimality criterion
        if mi.is_coprime(mj) {
            continue;
        }
        let h = normal_form(&s_poly(fi, fj), &basis);
        if !h.is_zero() {
            let h = h.primitive();
            let new_idx = basis.len();
            basis.push(h);
            for k in 0..new_idx {
                queue.insert(pair_key(&basis, k, new_idx));
            }
        }
    }

    // minimalize: ascending leading monomials, keep only those whose LT is
    // not divisible by an already-kept LT (divisors sort first)
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        let lm = g.leading().unwrap().0.clone();
        if !minimal.iter().any(|h| h.leading().unwrap().0.divides(&lm)) {
            minimal.push(g);
        }
    }

    // tail-reduce each element against the current set; leading terms are
    // pairwise non-divisible so they never change, and one pass yields the
    // unique reduced basis
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(&minimal[i], &others);
        debug_assert!(!r.is_zero());
        minimal[i] = r.primitive();
    }

    let gens: Vec<Poly> = minimal.into_iter().map(|g| g.monic()).collect();
    GroebnerBasis { nvars, gens }
}

fn pair_key(basis: &[Poly], i: usize, j: usize) -> (Mono, usize, usize) {
    let (a, b) = (i.min(j), i.max(j));
    let l = basis[a].leading().unwrap().0.lcm(basis[b].leading().unwrap().0);
    (l, a, b)
}

// ---------------------------------------------------------------------------
// Origin-only test
// ---------------------------------------------------------------------------

/// Evidence from an [`origin_only`] run: for each variable, the least
/// exponent of a pure power of it among the Groebner leading monomials.
/// Variables without one are the directions along which the zero locus
/// escapes the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OriginReport {
    pub origin_only: bool,
    pub generator_count: usize,
    pub gb_size: usize,
    pub pure_power_degrees: Vec<Option<u32>>,
}

impl OriginReport {
    pub fn escape_vars(&self) -> Vec<usize> {
        self.pure_power_degrees
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_none())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Decides whether homogeneous generators vanish simultaneously only at
/// the origin over the algebraic closure.
///
/// Criterion: every variable must have a pure power among the leading
/// monomials of a Groebner basis.  Pure powers of `z_i` in the lead ideal
/// certify `z_i ∈ √J`, which is independent of field extension, so the
/// test is valid over the rationals.
pub fn origin_only(gens: &[Poly], nvars: usize) -> bool {
    origin_only_report(gens, nvars).origin_only
}

pub fn origin_only_report(gens: &[Poly], nvars: usize) -> OriginReport {
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for g in &nonzero {
        debug_assert!(g.is_homogeneous(), "origin_only expects homogeneous input");
    }
    if nonzero.is_empty() {
        return OriginReport {
            origin_only: nvars == 0,
            generator_count: 0,
            gb_size: 0,
            pure_power_degrees: vec![None; nvars],
        };
    }
    let gb = buchberger(&nonzero);
    let mut pure = vec![None; nvars];
    let mut unit = false;
    for m in gb.leading_monomials() {
        if m.degree() == 0 {
            unit = true;
        }
        if let Some(i) = m.pure_power() {
            let d = m.degree();
            if pure[i].map_or(true, |old| d < old) {
                pure[i] = Some(d);
            }
        }
    }
    if unit {
        // the ideal is the unit ideal; the locus is empty
        pure = vec![Some(0); nvars];
    }
    OriginReport {
        origin_only: pure.iter().all(|d| d.is_some()),
        generator_count: nonzero.len(),
        gb_size: gb.len(),
        pure_power_degrees: pure,
    }
}

/// Outcome of the degreewise saturation oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Saturation {
    /// The degree-`d` piece of the ideal is the full space of forms, so
    /// the locus is the origin only.
    SaturatesAt(usize),
    /// A nonzero rational common zero of all generators.
    RationalZero(Vec<Rat>),
    Undecided,
}

/// Groebner-free partial decision for the origin-only question.
///
/// For each degree up to `dmax` the span of the monomial multiples of the
/// generators is compared against the full space of forms of that degree;
/// saturation proves the locus is `{0}`.  A nonzero rational common zero
/// of the generators (searched over a small deterministic grid) disproves
/// it.  Otherwise the oracle abstains.
pub fn saturation_oracle(gens: &[Poly], nvars: usize, dmax: usize) -> Saturation {
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        if nvars == 0 {
            return Saturation::SaturatesAt(0);
        }
        let mut z = vec![Rat::zero(); nvars];
        z[0] = Rat::one();
        return Saturation::RationalZero(z);
    }
    for g in &nonzero {
        assert!(g.is_homogeneous(), "saturation oracle expects homogeneous input");
    }

    if let Some(z) = rational_common_zero(&nonzero, nvars) {
        return Saturation::RationalZero(z);
    }

    let mindeg = nonzero.iter().filter_map(|g| g.total_degree()).min().unwrap() as usize;
    for d in mindeg..=dmax {
        let monos = monomials_of_degree(nvars, d as u32);
        let index: BTreeMap<Vec<u32>, usize> =
            monos.iter().enumerate().map(|(i, m)| (m.exps().to_vec(), i)).collect();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for g in &nonzero {
            let dg = g.total_degree().unwrap() as usize;
            if dg > d {
                continue;
            }
            for m in monomials_of_degree(nvars, (d - dg) as u32) {
                let prod = g.mul_term(&m, &Rat::one());
                let mut row = vec![Rat::zero(); monos.len()];
                for (mm, cc) in prod.terms() {
                    row[index[mm.exps()]] = cc.clone();
                }
                rows.push(row);
            }
        }
        let space = RowSpace::from_rows(monos.len(), rows);
        if space.dim() == monos.len() {
            return Saturation::SaturatesAt(d);
        }
    }
    Saturation::Undecided
}

/// All exponent vectors of total degree `d`.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill_monomials(nvars, d, 0, &mut current, &mut out);
    out
}

fn fill_monomials(nvars: usize, left: u32, at: usize, current: &mut Vec<u32>, out: &mut Vec<Mono>) {
    if at + 1 == nvars {
        current[at] = left;
        out.push(Mono::new(current.clone()));
        current[at] = 0;
        return;
    }
    for e in (0..=left).rev() {
        current[at] = e;
        fill_monomials(nvars, left - e, at + 1, current, out);
        current[at] = 0;
    }
}

fn rational_common_zero(gens: &[Poly], nvars: usize) -> Option<Vec<Rat>> {
    if nvars == 0 {
        return None;
    }
    // small deterministic grid, skipping the origin
    let vals: Vec<i64> = vec![0, 1, -1, 2, -2];
    let mut point = vec![0usize; nvars];
    loop {
        let z: Vec<Rat> = point.iter().map(|&i| crate::rat::q(vals[i])).collect();
        if z.iter().any(|c| !c.is_zero()) && gens.iter().all(|g| g.eval(&z).is_zero()) {
            return Some(z);
        }
        // advance odometer
        let mut at = 0;
        loop {
            if at == nvars {
                return None;
            }
            point[at] += 1;
            if point[at] < vals.len() {
                break;
            }
            point[at] = 0;
            at += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Matrices of linear forms and their minors
// ---------------------------------------------------------------------------

/// A matrix whose entries are homogeneous degree-one polynomials (or
/// zero) in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinFormMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl LinFormMatrix {
    pub fn new(rows: usize, cols: usize, nvars: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        for e in &entries {
            assert_eq!(e.nvars(), nvars);
            assert!(
                e.is_zero() || (e.is_homogeneous() && e.total_degree() == Some(1)),
                "entries must be linear forms"
            );
        }
        LinFormMatrix { rows, cols, nvars, entries }
    }

    pub fn empty(rows: usize, nvars: usize) -> Self {
        LinFormMatrix { rows, cols: 0, nvars, entries: Vec::new() }
    }

    /// Column `j` set to `a z` for the coefficient matrix `a`.
    pub fn from_action_columns(n: usize, mats: &[RatMatrix]) -> Self {
        let mut entries = Vec::with_capacity(n * mats.len());
        for r in 0..n {
            for a in mats {
                assert_eq!((a.rows(), a.cols()), (n, n));
                entries.push(Poly::linear_form(a.row(r)));
            }
        }
        LinFormMatrix { rows: n, cols: mats.len(), nvars: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entry(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn hconcat(&self, other: &LinFormMatrix) -> LinFormMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.nvars, other.nvars);
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries.push(self.entry(r, c).clone());
            }
            for c in 0..other.cols {
                entries.push(other.entry(r, c).clone());
            }
        }
        LinFormMatrix { rows: self.rows, cols, nvars: self.nvars, entries }
    }

    pub fn eval(&self, point: &[Rat]) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |r, c| self.entry(r, c).eval(point))
    }

    /// Coefficient vector of the (linear) entry at `(r, c)`.
    pub fn entry_coeffs(&self, r: usize, c: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.nvars];
        for (m, coef) in self.entry(r, c).terms() {
            if let Some(i) = m.pure_power() {
                out[i] = coef.clone();
            }
        }
        out
    }

    /// Substitutes `z = Σ t_k w_k` for the rows `w_k` of `w_basis`,
    /// producing a matrix in `dim W` fresh variables.  The rank condition
    /// on `W` is exactly the rank condition of the result at all `t ≠ 0`.
    pub fn restrict_to_subspace(&self, w_basis: &[Vec<Rat>]) -> LinFormMatrix {
        let m = w_basis.len();
        for w in w_basis {
            assert_eq!(w.len(), self.nvars);
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.entry_coeffs(r, c);
                let coeffs: Vec<Rat> = (0..m)
                    .map(|k| {
                        let mut acc = Rat::zero();
                        for i in 0..self.nvars {
                            if !a[i].is_zero() && !w_basis[k][i].is_zero() {
                                acc += &a[i] * &w_basis[k][i];
                            }
                        }
                        acc
                    })
                    .collect();
                entries.push(Poly::linear_form(&coeffs));
            }
        }
        LinFormMatrix { rows: self.rows, cols: self.cols, nvars: m, entries }
    }

    /// Replaces the columns by a row-reduced basis of their span as
    /// coefficient matrices.  The column space at every point, hence every
    /// rank locus, is unchanged.
    pub fn compress_columns(&self) -> LinFormMatrix {
        let rows: Vec<Vec<Rat>> = (0..self.cols)
            .map(|c| {
                let mut v = Vec::with_capacity(self.rows * self.nvars);
                for r in 0..self.rows {
                    v.extend(self.entry_coeffs(r, c));
                }
                v
            })
            .collect();
        let space = RowSpace::from_rows(self.rows * self.nvars, rows);
        let cols = space.dim();
        let mut entries = vec![Poly::zero(self.nvars); self.rows * cols];
        for (c, v) in space.basis().iter().enumerate() {
            for r in 0..self.rows {
                let coeffs = &v[r * self.nvars..(r + 1) * self.nvars];
                entries[r * cols + c] = Poly::linear_form(coeffs);
            }
        }
        LinFormMatrix { rows: self.rows, cols, nvars: self.nvars, entries }
    }
}

/// Replaces a set of polynomials by a row-reduced basis of its linear
/// span.  Since every input is a linear combination of the output and
/// vice versa, the generated ideal is unchanged; this keeps Buchberger
/// inputs no larger than the dimension of the relevant space of forms.
pub fn span_reduce(polys: &[Poly], nvars: usize) -> Vec<Poly> {
    let mut monos: BTreeSet<Mono> = BTreeSet::new();
    for p in polys {
        for (m, _) in p.terms() {
            monos.insert(m.clone());
        }
    }
    let monos: Vec<Mono> = monos.into_iter().collect();
    let index: BTreeMap<&Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<Vec<Rat>> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut row = vec![Rat::zero(); monos.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    let space = RowSpace::from_rows(monos.len(), rows);
    space
        .basis()
        .iter()
        .map(|row| {
            let mut p = Poly::zero(nvars);
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    p.add_term(monos[i].clone(), c.clone());
                }
            }
            p.primitive()
        })
        .collect()
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    r
}

/// All `r x r` minor determinants of `m`, deduplicated up to sign, zeros
/// removed.  Returns the empty list when the matrix has fewer than `r`
/// rows or columns.
pub fn minors(m: &LinFormMatrix, r: usize) -> Vec<Poly> {
    if r == 0 || r > m.rows() || r > m.cols() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut seen: BTreeSet<Vec<(Vec<u32>, Rat)>> = BTreeSet::new();
    for rowset in combinations(m.rows(), r) {
        for colset in combinations(m.cols(), r) {
            let det = submatrix_det(m, &rowset, &colset);
            if det.is_zero() {
                continue;
            }
            let det = det.primitive();
            if seen.insert(det.key()) {
                out.push(det);
            }
        }
    }
    out
}

/// Determinant of the `rowset x colset` submatrix via first-row expansion
/// with memoisation over column masks.
fn submatrix_det(m: &LinFormMatrix, rowset: &[usize], colset: &[usize]) -> Poly {
    let r = rowset.len();
    let full_mask: u32 = (1 << r) - 1;
    let mut memo: BTreeMap<u32, Poly> = BTreeMap::new();
    memo.insert(0, Poly::constant(m.nvars(), Rat::one()));
    det_rec(m, rowset, colset, full_mask, &mut memo)
}

fn det_rec(
    m: &LinFormMatrix,
    rowset: &[usize],
    colset: &[usize],
    mask: u32,
    memo: &mut BTreeMap<u32, Poly>,
) -> Poly {
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let depth = rowset.len() - (mask.count_ones() as usize);
    let row = rowset[depth];
    let mut acc = Poly::zero(m.nvars());
    let mut sign = Rat::one();
    for (ci, &col) in colset.iter().enumerate() {
        if mask & (1 << ci) == 0 {
            continue;
        }
        let e = m.entry(row, col);
        if !e.is_zero() {
            let sub = det_rec(m, rowset, colset, mask & !(1 << ci), memo);
            acc = acc.add(&sub.mul(e).scale(&sign));
        }
        sign = -sign;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
