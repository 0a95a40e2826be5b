//! Brute-force exact linear algebra in the free associative algebra K⟨X_n⟩:
//! graded components of products of commutator T-ideals, multigraded
//! dimensions of the relatively free algebra, proper-polynomial subspaces,
//! multilinear quotients, codimensions and S_m characters.
//!
//! All ranks are computed by fraction-free Gaussian elimination over big
//! integers; nothing is ever rounded.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

use crate::partitions::{partitions_of, Partition};
use crate::series::{multidegrees_up_to, HilbertSeries, IdealSpec, SeriesKind};
use crate::symfunc::{factorial, schur_expand, sm_decompose, SmCharacter, SymPoly};

/// A monomial: letter indices in 1..=n.
pub type Word = Vec<u8>;

/// A sparse integer row in the word basis, used inside elimination.
type Row = BTreeMap<Word, BigInt>;

#[derive(Debug, Error)]
pub enum FreeAlgError {
    #[error("work limit exceeded: {0}")]
    DegreeTooLarge(String),
}

/// Hard caps on the brute-force search space.  Beyond them exact elimination
/// is slow but not incorrect, so everything is overridable.
#[derive(Clone, Debug)]
pub struct WorkLimits {
    pub max_n: usize,
    pub max_degree: u32,
    pub max_m: u32,
    pub max_words: u64,
}

impl Default for WorkLimits {
    fn default() -> Self {
        WorkLimits { max_n: 4, max_degree: 8, max_m: 7, max_words: 65536 }
    }
}

impl WorkLimits {
    /// Default limits, with the word cap overridable via `COCHAR_MAX_WORDS`.
    pub fn from_env() -> Self {
        let mut limits = WorkLimits::default();
        if let Ok(v) = std::env::var("COCHAR_MAX_WORDS") {
            if let Ok(w) = v.trim().parse::<u64>() {
                limits.max_words = w;
            }
        }
        limits
    }

    /// Unrestricted variant for callers that accept the cost.
    pub fn unbounded() -> Self {
        WorkLimits { max_n: usize::MAX, max_degree: u32::MAX, max_m: u32::MAX, max_words: u64::MAX }
    }

    pub fn check_graded(&self, n: usize, degree: u32) -> Result<(), FreeAlgError> {
        if n > self.max_n {
            return Err(FreeAlgError::DegreeTooLarge(format!(
                "n = {n} exceeds the cap {}",
                self.max_n
            )));
        }
        if degree > self.max_degree {
            return Err(FreeAlgError::DegreeTooLarge(format!(
                "degree {degree} exceeds the cap {}",
                self.max_degree
            )));
        }
        let words = (n as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if words > self.max_words {
            return Err(FreeAlgError::DegreeTooLarge(format!(
                "word space n^D = {words} exceeds the cap {}",
                self.max_words
            )));
        }
        Ok(())
    }

    pub fn check_multilinear(&self, m: u32) -> Result<(), FreeAlgError> {
        if m > self.max_m {
            return Err(FreeAlgError::DegreeTooLarge(format!(
                "m = {m} exceeds the cap {}",
                self.max_m
            )));
        }
        Ok(())
    }
}

/// An element of K⟨X_n⟩: finitely many words with nonzero rational
/// coefficients.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, BigRational>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, BigRational::one());
        FreeElement { terms }
    }

    /// The generator x_i (1-based).
    pub fn xi(i: u8) -> Self {
        assert!(i >= 1);
        FreeElement::from_word(vec![i])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[u8]) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> FreeElement {
        if c.is_zero() {
            return FreeElement::zero();
        }
        let terms = self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect();
        FreeElement { terms }
    }

    /// Concatenation product.
    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn commutator(&self, other: &FreeElement) -> FreeElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// The common multidegree of all words, as a length-n vector, if the
    /// element is multihomogeneous; `None` otherwise (or if zero).
    pub fn multidegree(&self, n: usize) -> Option<Vec<u32>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mu = word_multidegree(first, n);
        for w in it {
            if word_multidegree(w, n) != mu {
                return None;
            }
        }
        Some(mu)
    }
}

/// The left-normed commutator [u₁,…,u_i] = [[u₁,…,u_{i−1}], u_i]; a single
/// element is returned unchanged.
pub fn long_commutator(items: &[FreeElement]) -> FreeElement {
    assert!(!items.is_empty(), "long commutator of an empty list");
    let mut acc = items[0].clone();
    for item in &items[1..] {
        acc = acc.commutator(item);
    }
    acc
}

fn word_multidegree(w: &[u8], n: usize) -> Vec<u32> {
    let mut mu = vec![0u32; n];
    for &l in w {
        mu[(l - 1) as usize] += 1;
    }
    mu
}

/// All words with the given multidegree, lexicographically ordered.
pub fn words_of_multidegree(mu: &[u32]) -> Vec<Word> {
    let mut out = Vec::new();
    let mut remaining = mu.to_vec();
    let mut prefix = Vec::new();
    fn rec(remaining: &mut Vec<u32>, prefix: &mut Word, out: &mut Vec<Word>) {
        if remaining.iter().all(|&c| c == 0) {
            out.push(prefix.clone());
            return;
        }
        for i in 0..remaining.len() {
            if remaining[i] > 0 {
                remaining[i] -= 1;
                prefix.push((i + 1) as u8);
                rec(remaining, prefix, out);
                prefix.pop();
                remaining[i] += 1;
            }
        }
    }
    rec(&mut remaining, &mut prefix, &mut out);
    out
}

/// Number of words of multidegree μ: (Σμ)! / ∏ μᵢ!.
pub fn word_count(mu: &[u32]) -> BigInt {
    let total: u32 = mu.iter().sum();
    let mut c = factorial(total);
    for &e in mu {
        c /= factorial(e);
    }
    c
}

// ---------------------------------------------------------------------------
// Sparse fraction-free elimination.
// ---------------------------------------------------------------------------

fn row_normalize(row: &mut Row) {
    row.retain(|_, v| !v.is_zero());
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
    }
    // make the pivot (lex-max word) coefficient positive
    if row.values().next_back().unwrap().is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

fn row_concat(a: &Row, b: &Row) -> Row {
    let mut out = Row::new();
    for (w1, c1) in a {
        for (w2, c2) in b {
            let mut w = w1.clone();
            w.extend_from_slice(w2);
            let e = out.entry(w).or_insert_with(BigInt::zero);
            *e += c1 * c2;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn row_commutator(a: &Row, b: &Row) -> Row {
    let mut out = row_concat(a, b);
    for (w1, c1) in b {
        for (w2, c2) in a {
            let mut w = w1.clone();
            w.extend_from_slice(w2);
            let e = out.entry(w).or_insert_with(BigInt::zero);
            *e -= c1 * c2;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn word_row(w: &[u8]) -> Row {
    let mut row = Row::new();
    row.insert(w.to_vec(), BigInt::one());
    row
}

/// A subspace of a graded component, stored as an echelon set of primitive
/// integer rows keyed by their lexicographically largest word.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    rows: BTreeMap<Word, Row>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Row> {
        self.rows.values()
    }

    /// Forward-reduces `row` against the stored echelon rows.
    fn reduce(&self, mut row: Row) -> Row {
        loop {
            let Some(pivot) = row.keys().next_back().cloned() else { return row };
            let Some(p) = self.rows.get(&pivot) else { return row };
            let row_lead = row[&pivot].clone();
            let p_lead = p[&pivot].clone();
            for v in row.values_mut() {
                *v *= &p_lead;
            }
            for (w, c) in p {
                let e = row.entry(w.clone()).or_insert_with(BigInt::zero);
                *e -= c * &row_lead;
            }
            row.retain(|_, v| !v.is_zero());
            row_normalize(&mut row);
        }
    }

    /// Inserts a row; returns true iff the rank increased.
    pub fn insert(&mut self, row: Row) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        row_normalize(&mut row);
        let pivot = row.keys().next_back().cloned().unwrap();
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, row: &Row) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Fully reduced rational basis: pairs (pivot word, row) where each pivot
    /// has coefficient 1 and appears in no other row.  Unique given the span.
    pub fn rref(&self) -> Vec<(Word, BTreeMap<Word, BigRational>)> {
        let mut out: Vec<(Word, BTreeMap<Word, BigRational>)> = Vec::new();
        // ascending pivot order: earlier rows are already fully reduced and
        // contain no pivot other than their own
        for (pivot, row) in &self.rows {
            let lead = BigRational::from(row[pivot].clone());
            let mut r: BTreeMap<Word, BigRational> = row
                .iter()
                .map(|(w, c)| (w.clone(), BigRational::from(c.clone()) / lead.clone()))
                .collect();
            for (p2, r2) in &out {
                if let Some(c) = r.get(p2).cloned() {
                    for (w, v) in r2 {
                        let e = r.entry(w.clone()).or_insert_with(BigRational::zero);
                        *e -= &c * v;
                    }
                    r.retain(|_, v| !v.is_zero());
                }
            }
            out.push((pivot.clone(), r));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Graded components of commutator-ideal products.
// ---------------------------------------------------------------------------

/// Memoizing calculator for the multigraded components of
/// I_{p₁+1}⋯I_{p_k+1} ∩ K⟨X_n⟩.
pub struct IdealEngine {
    spec: IdealSpec,
    n: usize,
    /// span of values of left-normed commutators of length j at multidegree μ
    comm_memo: HashMap<(u32, Vec<u32>), Rc<RowSpace>>,
    /// component of the single ideal I_{p+1} at multidegree μ
    single_memo: HashMap<(u32, Vec<u32>), Rc<RowSpace>>,
    /// component of the product of factors i.. at multidegree μ
    suffix_memo: HashMap<(usize, Vec<u32>), Rc<RowSpace>>,
    empty: Rc<RowSpace>,
}

impl IdealEngine {
    pub fn new(spec: IdealSpec, n: usize) -> Self {
        IdealEngine {
            spec,
            n,
            comm_memo: HashMap::new(),
            single_memo: HashMap::new(),
            suffix_memo: HashMap::new(),
            empty: Rc::new(RowSpace::new()),
        }
    }

    pub fn spec(&self) -> &IdealSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The multidegree-μ component of the full product ideal.
    pub fn component(&mut self, mu: &[u32]) -> Rc<RowSpace> {
        assert_eq!(mu.len(), self.n);
        self.suffix_space(0, mu.to_vec())
    }

    /// All splits μ = α + β with both parts nonzero.
    fn splits(mu: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
        let mut out = Vec::new();
        let mut alpha = vec![0u32; mu.len()];
        loop {
            let beta: Vec<u32> = mu.iter().zip(&alpha).map(|(&m, &a)| m - a).collect();
            if alpha.iter().any(|&a| a > 0) && beta.iter().any(|&b| b > 0) {
                out.push((alpha.clone(), beta));
            }
            // advance alpha through the box ∏ [0, μᵢ]
            let mut i = mu.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if alpha[i] < mu[i] {
                    alpha[i] += 1;
                    break;
                }
                alpha[i] = 0;
            }
        }
    }

    /// Span of the values [w₁,…,w_j] over all word tuples of total
    /// multidegree μ.
    fn comm_space(&mut self, j: u32, mu: Vec<u32>) -> Rc<RowSpace> {
        assert!(j >= 2);
        if let Some(s) = self.comm_memo.get(&(j, mu.clone())) {
            return Rc::clone(s);
        }
        let total: u32 = mu.iter().sum();
        let mut space = RowSpace::new();
        if total >= j {
            for (alpha, beta) in Self::splits(&mu) {
                if j == 2 {
                    // [u,w] = −[w,u], and the opposite split supplies the
                    // mirrored pairs, so keep only u > w
                    for u in words_of_multidegree(&alpha) {
                        for w in words_of_multidegree(&beta) {
                            if u > w {
                                space.insert(row_commutator(&word_row(&u), &word_row(&w)));
                            }
                        }
                    }
                } else {
                    if alpha.iter().sum::<u32>() < j - 1 {
                        continue;
                    }
                    let inner = self.comm_space(j - 1, alpha);
                    for c in inner.basis() {
                        for w in words_of_multidegree(&beta) {
                            space.insert(row_commutator(c, &word_row(&w)));
                        }
                    }
                }
            }
        }
        let rc = Rc::new(space);
        self.comm_memo.insert((j, mu), Rc::clone(&rc));
        rc
    }

    /// The multidegree-μ component of the single T-ideal generated by the
    /// commutator of length p+1: span of a·[w₁,…,w_{p+1}]·b.
    fn single_space(&mut self, p: u32, mu: Vec<u32>) -> Rc<RowSpace> {
        if mu.iter().sum::<u32>() < p + 1 {
            return Rc::clone(&self.empty);
        }
        if let Some(s) = self.single_memo.get(&(p, mu.clone())) {
            return Rc::clone(s);
        }
        let mut space = RowSpace::new();
        // elements with a nonempty outer monomial: peel one letter off either
        // end and recurse
        for i in 0..self.n {
            if mu[i] == 0 {
                continue;
            }
            let mut sub = mu.clone();
            sub[i] -= 1;
            let inner = self.single_space(p, sub);
            let xi = word_row(&[(i + 1) as u8]);
            for b in inner.basis() {
                space.insert(row_concat(&xi, b));
                space.insert(row_concat(b, &xi));
            }
        }
        // bare commutator values
        let comm = self.comm_space(p + 1, mu.clone());
        for c in comm.basis() {
            space.insert(c.clone());
        }
        let rc = Rc::new(space);
        self.single_memo.insert((p, mu), Rc::clone(&rc));
        rc
    }

    /// Component of the product of factors `i..` at multidegree μ.
    fn suffix_space(&mut self, i: usize, mu: Vec<u32>) -> Rc<RowSpace> {
        let factors = self.spec.factors().to_vec();
        if i + 1 == factors.len() {
            return self.single_space(factors[i], mu);
        }
        if let Some(s) = self.suffix_memo.get(&(i, mu.clone())) {
            return Rc::clone(s);
        }
        let head_min = factors[i] + 1;
        let tail_min: u32 = factors[i + 1..].iter().map(|&p| p + 1).sum();
        let mut space = RowSpace::new();
        if mu.iter().sum::<u32>() >= head_min + tail_min {
            for (alpha, beta) in Self::splits(&mu) {
                if alpha.iter().sum::<u32>() < head_min || beta.iter().sum::<u32>() < tail_min {
                    continue;
                }
                let head = self.single_space(factors[i], alpha);
                let tail = self.suffix_space(i + 1, beta);
                for u in head.basis() {
                    for v in tail.basis() {
                        space.insert(row_concat(u, v));
                    }
                }
            }
        }
        let rc = Rc::new(space);
        self.suffix_memo.insert((i, mu), Rc::clone(&rc));
        rc
    }

    /// Spanning rows of the proper-polynomial subspace at multidegree μ:
    /// products of pure long commutators in single letters, each of length
    /// ≥ 2.
    pub fn proper_rows(&mut self, mu: &[u32]) -> Vec<Row> {
        let mut out = Vec::new();
        let mut block_cache: HashMap<Word, Row> = HashMap::new();
        fn block_value(w: &[u8], cache: &mut HashMap<Word, Row>) -> Row {
            if let Some(r) = cache.get(w) {
                return r.clone();
            }
            let mut acc = word_row(&w[..1]);
            for &l in &w[1..] {
                acc = row_commutator(&acc, &word_row(&[l]));
            }
            cache.insert(w.to_vec(), acc.clone());
            acc
        }
        fn rec(
            remaining: &[u32],
            acc: Option<Row>,
            out: &mut Vec<Row>,
            cache: &mut HashMap<Word, Row>,
        ) {
            if remaining.iter().all(|&c| c == 0) {
                if let Some(r) = acc {
                    out.push(r);
                }
                return;
            }
            // next pure-commutator block: any word of length ≥ 2 whose first
            // two letters decrease ([u,u,…] = 0 and [u,v,…] = −[v,u,…])
            for (block_mu, _) in IdealEngine::splits_static(remaining) {
                if block_mu.iter().sum::<u32>() < 2 {
                    continue;
                }
                for w in words_of_multidegree(&block_mu) {
                    if w[0] <= w[1] {
                        continue;
                    }
                    let val = block_value(&w, cache);
                    if val.is_empty() {
                        continue;
                    }
                    let next_acc = match &acc {
                        None => val,
                        Some(a) => row_concat(a, &val),
                    };
                    let rest: Vec<u32> =
                        remaining.iter().zip(&block_mu).map(|(&r, &b)| r - b).collect();
                    rec(&rest, Some(next_acc), out, cache);
                }
            }
        }
        // splits plus the full multidegree itself as a single block
        rec(mu, None, &mut out, &mut block_cache);
        out
    }

    /// Splits including (μ, 0): every nonzero α ≤ μ componentwise.
    fn splits_static(mu: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
        let mut out = Self::splits(mu);
        if mu.iter().any(|&c| c > 0) {
            out.push((mu.to_vec(), vec![0; mu.len()]));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Graded dimensions and derived data.
// ---------------------------------------------------------------------------

/// Multigraded dimensions of a subquotient of K⟨X_n⟩, complete for all
/// multidegrees of total degree ≤ max_degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedDims {
    pub n: usize,
    pub max_degree: u32,
    pub dims: BTreeMap<Vec<u32>, u64>,
}

impl GradedDims {
    pub fn dim(&self, mu: &[u32]) -> u64 {
        self.dims.get(mu).copied().unwrap_or(0)
    }

    pub fn total_degree_dim(&self, d: u32) -> u64 {
        self.dims.iter().filter(|(mu, _)| mu.iter().sum::<u32>() == d).map(|(_, &v)| v).sum()
    }

    /// CSV rows "e1,…,en,dim" in lexicographic multidegree order.
    pub fn to_csv(&self) -> String {
        let header: Vec<String> = (1..=self.n).map(|i| format!("e{i}")).collect();
        let mut out = format!("{},dim\n", header.join(","));
        for (mu, d) in &self.dims {
            let es: Vec<String> = mu.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("{},{}\n", es.join(","), d));
        }
        out
    }

    pub fn to_sym_poly(&self) -> SymPoly {
        let mut poly = SymPoly::zero(self.n, Some(self.max_degree));
        for (mu, &d) in &self.dims {
            poly.add_term(mu.clone(), BigRational::from(BigInt::from(d)));
        }
        poly
    }

    pub fn to_series(&self, kind: SeriesKind) -> HilbertSeries {
        HilbertSeries::new(self.to_sym_poly(), kind)
    }
}

/// Row-reduced basis of the multidegree-μ component of the product ideal
/// inside K⟨X_n⟩.
pub fn tideal_graded_span(
    spec: &IdealSpec,
    n: usize,
    mu: &[u32],
    limits: &WorkLimits,
) -> Result<Vec<FreeElement>, FreeAlgError> {
    assert_eq!(mu.len(), n);
    limits.check_graded(n, mu.iter().sum())?;
    let mut engine = IdealEngine::new(spec.clone(), n);
    let space = engine.component(mu);
    let out = space
        .basis()
        .map(|row| {
            let mut e = FreeElement::zero();
            for (w, c) in row {
                e.add_term(w.clone(), BigRational::from(c.clone()));
            }
            e
        })
        .collect();
    Ok(out)
}

/// dim of each multidegree component of K⟨X_n⟩/(I ∩ K⟨X_n⟩) up to total
/// degree D.
pub fn relfree_dims(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<GradedDims, FreeAlgError> {
    limits.check_graded(n, d)?;
    let mut engine = IdealEngine::new(spec.clone(), n);
    let mut dims = BTreeMap::new();
    for mu in multidegrees_up_to(n, d) {
        let words: u64 = u64::try_from(word_count(&mu)).expect("word count overflow");
        let rank = engine.component(&mu).rank() as u64;
        dims.insert(mu, words - rank);
    }
    Ok(GradedDims { n, max_degree: d, dims })
}

pub fn relfree_hilbert(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<HilbertSeries, FreeAlgError> {
    Ok(relfree_dims(spec, n, d, limits)?.to_series(SeriesKind::Full))
}

/// Dimensions of the image of the proper-polynomial subspace (products of
/// pure long commutators) in the relatively free algebra.
pub fn proper_dims(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<GradedDims, FreeAlgError> {
    limits.check_graded(n, d)?;
    let mut engine = IdealEngine::new(spec.clone(), n);
    let mut dims = BTreeMap::new();
    for mu in multidegrees_up_to(n, d) {
        let dim = if mu.iter().all(|&c| c == 0) {
            1
        } else {
            let ideal = engine.component(&mu);
            let mut space = (*ideal).clone();
            let base = space.rank();
            for row in engine.proper_rows(&mu) {
                space.insert(row);
            }
            (space.rank() - base) as u64
        };
        dims.insert(mu, dim);
    }
    Ok(GradedDims { n, max_degree: d, dims })
}

pub fn proper_hilbert(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<HilbertSeries, FreeAlgError> {
    Ok(proper_dims(spec, n, d, limits)?.to_series(SeriesKind::Proper))
}

/// True iff the full Hilbert series factors through the proper one:
/// H = ∏ 1/(1−tᵢ) · H^B, exactly up to degree D.
pub fn drensky_factorization_check(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<bool, FreeAlgError> {
    let full = relfree_hilbert(spec, n, d, limits)?;
    let proper = proper_hilbert(spec, n, d, limits)?;
    let rebuilt = crate::series::hilbert_from_proper(&proper, n, d);
    Ok(full.poly == rebuilt.poly)
}

// ---------------------------------------------------------------------------
// Multilinear quotients and S_m characters.
// ---------------------------------------------------------------------------

fn cycle_type_representative(rho: &Partition) -> Vec<u8> {
    // perm[l-1] = image of letter l; each part acts as a cycle on a
    // consecutive block of letters
    let m = rho.weight() as usize;
    let mut perm: Vec<u8> = (1..=m as u8).collect();
    let mut start = 0usize;
    for &len in rho.parts() {
        let len = len as usize;
        for i in 0..len {
            perm[start + i] = (start + (i + 1) % len + 1) as u8;
        }
        start += len;
    }
    perm
}

fn invert_perm(perm: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; perm.len()];
    for (i, &img) in perm.iter().enumerate() {
        inv[(img - 1) as usize] = (i + 1) as u8;
    }
    inv
}

fn apply_perm_to_word(perm: &[u8], w: &[u8]) -> Word {
    w.iter().map(|&l| perm[(l - 1) as usize]).collect()
}

/// The m-th codimension and the character of S_m on the multilinear part of
/// the relatively free algebra.
///
/// The trace of σ on the quotient is m!·[σ = id] minus its trace on the ideal
/// subspace; the latter is read off the fully reduced basis, where the
/// coordinate functionals are evaluation at the pivot words.
pub fn multilinear_quotient(
    spec: &IdealSpec,
    m: u32,
    limits: &WorkLimits,
) -> Result<(u64, SmCharacter), FreeAlgError> {
    assert!(m >= 1);
    limits.check_multilinear(m)?;
    let n = m as usize;
    let mu = vec![1u32; n];
    let mut engine = IdealEngine::new(spec.clone(), n);
    let space = engine.component(&mu);
    let rank = space.rank() as u64;
    let mfact: u64 = u64::try_from(factorial(m)).expect("m! overflow");
    let codim = mfact - rank;

    let rref = space.rref();
    let mut values = BTreeMap::new();
    for rho in partitions_of(m, n) {
        let sigma = cycle_type_representative(&rho);
        let sigma_inv = invert_perm(&sigma);
        let mut tr_ideal = BigRational::zero();
        for (pivot, row) in &rref {
            // coordinate of σ·row at its own pivot: (σ·row)[p] = row[σ⁻¹·p]
            let preimage = apply_perm_to_word(&sigma_inv, pivot);
            if let Some(c) = row.get(&preimage) {
                tr_ideal += c;
            }
        }
        let tr_full = if rho.parts().iter().all(|&p| p == 1) {
            BigRational::from(factorial(m))
        } else {
            BigRational::zero()
        };
        values.insert(rho, tr_full - tr_ideal);
    }
    Ok((codim, SmCharacter::new(m, values)))
}

/// True iff the S_m-character route and the GL(n)-series route produce the
/// same multiplicities in degree m: sm_decompose(χ of the multilinear
/// quotient) equals the degree-m part of schur_expand(relfree_hilbert) at
/// n = m.
pub fn berele_drensky_crosscheck(
    spec: &IdealSpec,
    m: u32,
    limits: &WorkLimits,
) -> Result<bool, FreeAlgError> {
    limits.check_multilinear(m)?;
    // the series route needs n = m variables regardless of the graded caps
    let lifted = WorkLimits {
        max_n: limits.max_n.max(m as usize),
        max_degree: limits.max_degree.max(m),
        max_m: limits.max_m,
        max_words: limits.max_words.max((m as u64).pow(m)),
    };
    let (_, chi) = multilinear_quotient(spec, m, limits)?;
    let from_chi = sm_decompose(&chi).expect("quotient trace is a proper character");

    let series = relfree_hilbert(spec, m as usize, m, &lifted)?;
    let expansion = schur_expand(&series.poly).expect("graded dims are Schur-positive");

    let a: BTreeMap<&Partition, i64> =
        from_chi.iter().filter(|(lam, _)| lam.weight() == m).collect();
    let b: BTreeMap<&Partition, i64> =
        expansion.iter().filter(|(lam, _)| lam.weight() == m).collect();
    Ok(a == b)
}

// ---------------------------------------------------------------------------
// Ideal inclusion.
// ---------------------------------------------------------------------------

/// Multidegrees of total degree ≤ D at which the component of `spec_a` is
/// not contained in the component of `spec_b`.
pub fn ideal_inclusion_witnesses(
    spec_a: &IdealSpec,
    spec_b: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<Vec<Vec<u32>>, FreeAlgError> {
    limits.check_graded(n, d)?;
    let mut engine_a = IdealEngine::new(spec_a.clone(), n);
    let mut engine_b = IdealEngine::new(spec_b.clone(), n);
    let mut witnesses = Vec::new();
    for mu in multidegrees_up_to(n, d) {
        let a = engine_a.component(&mu);
        if a.rank() == 0 {
            continue;
        }
        let b = engine_b.component(&mu);
        if a.basis().any(|row| !b.contains(row)) {
            witnesses.push(mu);
        }
    }
    Ok(witnesses)
}

/// True iff every component of `spec_a` up to total degree D is contained in
/// the corresponding component of `spec_b`.
pub fn ideal_inclusion_check(
    spec_a: &IdealSpec,
    spec_b: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<bool, FreeAlgError> {
    Ok(ideal_inclusion_witnesses(spec_a, spec_b, n, d, limits)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::boumova_drensky_series;

    fn r(i: i64) -> BigRational {
        BigRational::from(BigInt::from(i))
    }

    fn spec(ps: &[u32]) -> IdealSpec {
        IdealSpec::new(ps.to_vec()).unwrap()
    }

    fn limits() -> WorkLimits {
        WorkLimits::default()
    }

    #[test]
    fn long_commutator_examples() {
        let x1 = FreeElement::xi(1);
        let x2 = FreeElement::xi(2);
        let x3 = FreeElement::xi(3);

        let c = long_commutator(&[x1.clone(), x2.clone()]);
        assert_eq!(c.coeff(&[1, 2]), r(1));
        assert_eq!(c.coeff(&[2, 1]), r(-1));
        assert_eq!(c.num_terms(), 2);

        assert!(long_commutator(&[x1.clone(), x1.clone()]).is_zero());

        // [[x1,x2],x3] = x1x2x3 − x2x1x3 − x3x1x2 + x3x2x1
        let c3 = long_commutator(&[x1.clone(), x2.clone(), x3.clone()]);
        assert_eq!(c3.num_terms(), 4);
        assert!(c3.terms().all(|(_, v)| v == &r(1) || v == &r(-1)));
        assert_eq!(c3.coeff(&[1, 2, 3]), r(1));
        assert_eq!(c3.coeff(&[2, 1, 3]), r(-1));
        assert_eq!(c3.coeff(&[3, 1, 2]), r(-1));
        assert_eq!(c3.coeff(&[3, 2, 1]), r(1));
        let direct = x1.commutator(&x2).commutator(&x3);
        assert_eq!(c3, direct);

        // single element returned unchanged
        assert_eq!(long_commutator(std::slice::from_ref(&x1)), x1);
    }

    #[test]
    fn free_element_multidegree() {
        let e = long_commutator(&[FreeElement::xi(1), FreeElement::xi(2), FreeElement::xi(1)]);
        assert_eq!(e.multidegree(2), Some(vec![2, 1]));
        let mixed = FreeElement::xi(1).add(&FreeElement::xi(2));
        assert_eq!(mixed.multidegree(2), None);
        assert_eq!(FreeElement::zero().multidegree(2), None);
    }

    #[test]
    fn words_and_counts() {
        let ws = words_of_multidegree(&[2, 1]);
        assert_eq!(ws, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
        assert_eq!(word_count(&[2, 1]), BigInt::from(3));
        assert_eq!(word_count(&[1, 1, 1, 1]), BigInt::from(24));
        assert_eq!(words_of_multidegree(&[0, 0]), vec![Vec::<u8>::new()]);
    }

    #[test]
    fn row_space_basics() {
        let mut s = RowSpace::new();
        assert!(s.insert(word_row(&[1, 2])));
        assert!(!s.insert(word_row(&[1, 2])));
        let mut sum = word_row(&[1, 2]);
        sum.insert(vec![2, 1], BigInt::from(3));
        assert!(s.insert(sum.clone()));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&word_row(&[2, 1])));
        assert!(!s.contains(&word_row(&[1, 1])));
    }

    #[test]
    fn tideal_span_examples() {
        // I₃ at n=2, μ=(2,1): one-dimensional
        let basis = tideal_graded_span(&spec(&[2]), 2, &[2, 1], &limits()).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].multidegree(2), Some(vec![2, 1]));

        // I₂ at μ=(1,1): span of x₁x₂ − x₂x₁
        let basis = tideal_graded_span(&spec(&[1]), 2, &[1, 1], &limits()).unwrap();
        assert_eq!(basis.len(), 1);
        let c = basis[0].coeff(&[1, 2]);
        assert_eq!(basis[0].coeff(&[2, 1]), -c.clone());
        assert!(!c.is_zero());

        // below the minimal ideal degree: empty
        assert!(tideal_graded_span(&spec(&[2, 1]), 2, &[2, 2], &limits()).unwrap().is_empty());
    }

    #[test]
    fn work_limits_enforced() {
        let tight = WorkLimits { max_n: 2, max_degree: 3, max_m: 3, max_words: 8 };
        assert!(matches!(
            relfree_dims(&spec(&[1]), 3, 2, &tight),
            Err(FreeAlgError::DegreeTooLarge(_))
        ));
        assert!(matches!(
            relfree_dims(&spec(&[1]), 2, 4, &tight),
            Err(FreeAlgError::DegreeTooLarge(_))
        ));
        assert!(matches!(
            multilinear_quotient(&spec(&[1]), 4, &tight),
            Err(FreeAlgError::DegreeTooLarge(_))
        ));
        assert!(relfree_dims(&spec(&[1]), 2, 3, &tight).is_ok());
    }

    #[test]
    fn relfree_dims_commutative_case() {
        // 𝔑₁ is the commutative polynomial algebra: every component has dim 1
        let dims = relfree_dims(&spec(&[1]), 2, 3, &limits()).unwrap();
        for (mu, &d) in &dims.dims {
            assert_eq!(d, 1, "mu={mu:?}");
        }
        assert_eq!(dims.dim(&[2, 1]), 1);
    }

    #[test]
    fn relfree_dims_metabelian_degree3() {
        let dims = relfree_dims(&spec(&[2]), 2, 3, &limits()).unwrap();
        // 8 words in degree 3, ideal rank 2; Schur dims s_(3)+s_(2,1) at n=2
        // give 4+2
        assert_eq!(dims.total_degree_dim(3), 6);
    }

    #[test]
    fn relfree_dims_match_closed_form_series() {
        let dims = relfree_dims(&spec(&[1, 1]), 2, 3, &limits()).unwrap();
        let closed = boumova_drensky_series(2, 2, 3);
        assert_eq!(dims.to_sym_poly(), closed.poly);
    }

    #[test]
    fn relfree_dims_symmetric_under_variable_permutation() {
        let dims = relfree_dims(&spec(&[2]), 3, 4, &limits()).unwrap();
        for (mu, &d) in &dims.dims {
            let mut swapped = mu.clone();
            swapped.reverse();
            assert_eq!(dims.dim(&swapped), d, "mu={mu:?}");
        }
        assert!(dims.to_sym_poly().is_symmetric());
    }

    #[test]
    fn relfree_hilbert_commutative() {
        let h = relfree_hilbert(&spec(&[1]), 2, 2, &limits()).unwrap();
        for e in [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]] {
            assert_eq!(h.coeff(&e), r(1));
        }
        assert_eq!(h.poly.num_terms(), 6);
    }

    #[test]
    fn relfree_hilbert_metabelian_is_hooks() {
        let h = relfree_hilbert(&spec(&[2]), 2, 4, &limits()).unwrap();
        let exp = schur_expand(&h.poly).unwrap();
        for (lam, mult) in exp.iter() {
            // every partition in the support is a hook with arm width 1
            assert!(lam.part(2) <= 1, "non-hook {lam} appears");
            assert_eq!(mult, 1, "multiplicity at {lam}");
        }
        // exactly the hooks with ≤ 2 rows and weight ≤ 4:
        // ∅,(1),(2),(1,1),(3),(2,1),(4),(3,1)
        assert_eq!(exp.iter().count(), 8);
    }

    #[test]
    fn relfree_hilbert_i4_shape_bounds() {
        let h = relfree_hilbert(&spec(&[3]), 4, 5, &limits()).unwrap();
        let exp = schur_expand(&h.poly).unwrap();
        assert!(!exp.is_empty());
        for (lam, _) in exp.iter() {
            assert!(lam.part(2) <= 2, "λ₂ > 2 at {lam}");
            assert!(lam.part(4) <= 1, "λ₄ > 1 at {lam}");
        }
    }

    #[test]
    fn proper_dims_commutative_is_trivial() {
        let dims = proper_dims(&spec(&[1]), 2, 4, &limits()).unwrap();
        for (mu, &d) in &dims.dims {
            let expect = if mu.iter().all(|&c| c == 0) { 1 } else { 0 };
            assert_eq!(d, expect, "mu={mu:?}");
        }
    }

    #[test]
    fn proper_dims_metabelian_finite() {
        let dims = proper_dims(&spec(&[2]), 2, 6, &limits()).unwrap();
        assert_eq!(dims.dim(&[1, 1]), 1); // class of [x₁,x₂]
        // finite-dimensional: some cutoff D₀ < 6 after which everything is 0
        let top = (0..=6).rev().find(|&d| dims.total_degree_dim(d) > 0).unwrap();
        assert!(top < 6, "no vanishing tail observed");
        for d in (top + 1)..=6 {
            assert_eq!(dims.total_degree_dim(d), 0);
        }
    }

    #[test]
    fn proper_dims_i2_squared_infinite() {
        let dims = proper_dims(&spec(&[1, 1]), 2, 6, &limits()).unwrap();
        for d in [2u32, 4, 6] {
            assert!(dims.total_degree_dim(d) > 0, "degree {d} vanished");
        }
    }

    #[test]
    fn drensky_factorization_examples() {
        assert!(drensky_factorization_check(&spec(&[1]), 2, 4, &limits()).unwrap());
        assert!(drensky_factorization_check(&spec(&[2]), 2, 5, &limits()).unwrap());
        assert!(drensky_factorization_check(&spec(&[2, 1]), 2, 5, &limits()).unwrap());
    }

    #[test]
    fn multilinear_quotient_commutative() {
        let (codim, chi) = multilinear_quotient(&spec(&[1]), 4, &limits()).unwrap();
        assert_eq!(codim, 1);
        assert_eq!(chi, SmCharacter::trivial(4));
    }

    #[test]
    fn multilinear_quotient_metabelian_m3() {
        let (codim, chi) = multilinear_quotient(&spec(&[2]), 3, &limits()).unwrap();
        assert_eq!(codim, 4);
        let dec = sm_decompose(&chi).unwrap();
        assert_eq!(dec.get(&Partition::new(vec![3])), 1);
        assert_eq!(dec.get(&Partition::new(vec![2, 1])), 1);
        assert_eq!(dec.get(&Partition::new(vec![1, 1, 1])), 1);
        assert_eq!(dec.iter().count(), 3);
    }

    #[test]
    fn multilinear_quotient_metabelian_m5() {
        let (codim, _) = multilinear_quotient(&spec(&[2]), 5, &limits()).unwrap();
        // hook-dimension sum Σ_b dim χ_(5−b,1^b) = 2⁴
        assert_eq!(codim, 16);
    }

    #[test]
    fn codimension_monotone_under_inclusion() {
        // I₃I₂ ⊆ I₄ componentwise, so codims satisfy c_m(2,1) ≥ c_m(3)
        for m in 2..=4u32 {
            let (ca, _) = multilinear_quotient(&spec(&[2, 1]), m, &limits()).unwrap();
            let (cb, _) = multilinear_quotient(&spec(&[3]), m, &limits()).unwrap();
            assert!(ca >= cb, "m={m}: {ca} < {cb}");
        }
    }

    #[test]
    fn character_self_inner_product_matches_multiplicities() {
        for (ps, m) in [(&[2u32][..], 4u32), (&[1, 1][..], 4), (&[2][..], 5)] {
            let (_, chi) = multilinear_quotient(&spec(ps), m, &limits()).unwrap();
            let mut inner = BigRational::zero();
            for rho in partitions_of(m, m as usize) {
                let cs = BigRational::from(crate::symfunc::class_size(&rho));
                let v = chi.value(&rho);
                inner += cs * v.clone() * v;
            }
            inner /= BigRational::from(factorial(m));
            let dec = sm_decompose(&chi).unwrap();
            let sq: i64 = dec.iter().map(|(_, c)| c * c).sum();
            assert_eq!(inner, r(sq), "spec={ps:?} m={m}");
        }
    }

    #[test]
    fn berele_drensky_crosscheck_examples() {
        assert!(berele_drensky_crosscheck(&spec(&[1]), 3, &limits()).unwrap());
        assert!(berele_drensky_crosscheck(&spec(&[2]), 4, &limits()).unwrap());
        assert!(berele_drensky_crosscheck(&spec(&[1, 1]), 4, &limits()).unwrap());
    }

    #[test]
    fn ideal_inclusion_examples() {
        // I₃I₂ ⊆ I₄
        assert!(ideal_inclusion_check(&spec(&[2, 1]), &spec(&[3]), 2, 6, &limits()).unwrap());
        // I₃I₃ ⊆ I₅
        assert!(ideal_inclusion_check(&spec(&[2, 2]), &spec(&[4]), 2, 6, &limits()).unwrap());
        // the reverse containment I₄ ⊆ I₃I₂ fails
        let witnesses =
            ideal_inclusion_witnesses(&spec(&[3]), &spec(&[2, 1]), 2, 5, &limits()).unwrap();
        assert!(!witnesses.is_empty());
    }
}
