//! Truncated Hilbert-series calculus: the proper-series relation, the
//! Formanek product formulas, the P_r polynomial decomposition and the
//! closed form for products of commutator-of-length-2 ideals.
//!
//! Every operation takes an explicit truncation degree and truncates
//! intermediate products eagerly.

use num::{BigInt, BigRational, One};
use thiserror::Error;

use crate::symfunc::SymPoly;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("empty series list")]
    EmptyList,
}

/// Distinguishes the full Hilbert series H from the proper series H^B.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesKind {
    Full,
    Proper,
}

/// A truncated multigraded Hilbert series.
#[derive(Clone, PartialEq, Debug)]
pub struct HilbertSeries {
    pub poly: SymPoly,
    pub kind: SeriesKind,
}

impl HilbertSeries {
    /// Wraps a polynomial; the truncation degree must be set.
    pub fn new(poly: SymPoly, kind: SeriesKind) -> Self {
        assert!(poly.trunc().is_some(), "Hilbert series require a truncation degree");
        HilbertSeries { poly, kind }
    }

    pub fn constant(nvars: usize, c: i64, trunc: u32, kind: SeriesKind) -> Self {
        let c = BigRational::from(BigInt::from(c));
        HilbertSeries::new(SymPoly::constant(nvars, c, Some(trunc)), kind)
    }

    pub fn one(nvars: usize, trunc: u32, kind: SeriesKind) -> Self {
        HilbertSeries::constant(nvars, 1, trunc, kind)
    }

    pub fn zero(nvars: usize, trunc: u32, kind: SeriesKind) -> Self {
        HilbertSeries::new(SymPoly::zero(nvars, Some(trunc)), kind)
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn trunc(&self) -> u32 {
        self.poly.trunc().expect("checked at construction")
    }

    pub fn coeff(&self, expo: &[u32]) -> BigRational {
        self.poly.coeff(expo)
    }

    /// All coefficients are nonnegative integers (graded dimensions).
    pub fn has_dimension_coefficients(&self) -> bool {
        use num::Signed;
        self.poly.terms().all(|(_, c)| c.is_integer() && !c.is_negative())
    }

    /// Coefficient sums per total degree, indices 0..=trunc.
    pub fn total_degree_coeffs(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::from(BigInt::from(0)); self.trunc() as usize + 1];
        for (e, c) in self.poly.terms() {
            let d: u32 = e.iter().sum();
            out[d as usize] += c.clone();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.poly.to_json()
    }
}

/// A product I_{p₁+1}⋯I_{p_k+1} of commutator T-ideals, recorded by the list
/// (p₁,…,p_k).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IdealSpec {
    factors: Vec<u32>,
}

#[derive(Debug, Error)]
#[error("invalid ideal spec: {0}")]
pub struct IdealSpecError(String);

impl IdealSpec {
    /// Each p_i must be ≥ 1; at least one factor.
    pub fn new(factors: Vec<u32>) -> Result<Self, IdealSpecError> {
        if factors.is_empty() {
            return Err(IdealSpecError("at least one factor required".into()));
        }
        if factors.iter().any(|&p| p == 0) {
            return Err(IdealSpecError("every factor must satisfy p >= 1".into()));
        }
        Ok(IdealSpec { factors })
    }

    pub fn single(p: u32) -> Self {
        IdealSpec::new(vec![p]).unwrap()
    }

    /// Parses a comma-separated list "p1,p2,…".
    pub fn parse(s: &str) -> Result<Self, IdealSpecError> {
        let factors: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        match factors {
            Ok(fs) => IdealSpec::new(fs),
            Err(e) => Err(IdealSpecError(format!("cannot parse '{s}': {e}"))),
        }
    }

    /// The p_i values.
    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    /// Number of factors k.
    pub fn k(&self) -> usize {
        self.factors.len()
    }

    /// p₁ + … + p_k.
    pub fn sum_p(&self) -> u32 {
        self.factors.iter().sum()
    }

    /// Minimal total degree of a nonzero element: Σ (p_i + 1).
    pub fn min_degree(&self) -> u32 {
        self.sum_p() + self.factors.len() as u32
    }

    /// The concatenation, i.e. the T-ideal product of `self` and `other`.
    pub fn concat(&self, other: &IdealSpec) -> IdealSpec {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        IdealSpec { factors }
    }
}

impl std::fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|p| format!("I{}", p + 1)).collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Truncation of 1/∏ᵢ(1−tᵢ)^r to total degree `d`; the coefficient of t^μ is
/// ∏ᵢ C(μᵢ+r−1, r−1).
pub fn geom_pow(n: usize, r: u32, d: u32) -> HilbertSeries {
    assert!(r >= 1);
    let mut poly = SymPoly::zero(n, Some(d));
    let mut expo = vec![0u32; n];
    loop {
        let coeff: BigInt = expo.iter().map(|&e| binomial(e + r - 1, r - 1)).product();
        poly.add_term(expo.clone(), BigRational::from(coeff));
        if !next_multidegree(&mut expo, d) {
            break;
        }
    }
    HilbertSeries::new(poly, SeriesKind::Full)
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Advances `expo` through all multidegrees of total degree ≤ d in
/// lexicographic order; returns false after the last one.
pub fn next_multidegree(expo: &mut Vec<u32>, d: u32) -> bool {
    let n = expo.len();
    if n == 0 {
        return false;
    }
    let total: u32 = expo.iter().sum();
    if total < d {
        expo[n - 1] += 1;
        return true;
    }
    // carry: zero out the tail, bump the previous position
    for i in (0..n).rev() {
        if expo[i] > 0 {
            if i == 0 {
                return false;
            }
            expo[i] = 0;
            expo[i - 1] += 1;
            return true;
        }
    }
    false
}

/// All multidegrees with total degree ≤ d, lexicographically ordered.
pub fn multidegrees_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut expo = vec![0u32; n];
    loop {
        out.push(expo.clone());
        if !next_multidegree(&mut expo, d) {
            break;
        }
    }
    out
}

/// H = ∏ 1/(1−tᵢ) · H^B, truncated at `d`.
pub fn hilbert_from_proper(hb: &HilbertSeries, n: usize, d: u32) -> HilbertSeries {
    assert_eq!(hb.kind, SeriesKind::Proper);
    assert!(hb.trunc() >= d, "proper series truncated below the requested degree");
    let geom = geom_pow(n, 1, d);
    let poly = geom.poly.mul(&hb.poly).with_trunc(Some(d));
    HilbertSeries::new(poly, SeriesKind::Full)
}

/// Formanek's product formula: H = H₁ + H₂ + (S_(1)−1)·H₁·H₂.
pub fn formanek_product(h1: &HilbertSeries, h2: &HilbertSeries, n: usize, d: u32) -> HilbertSeries {
    assert_eq!(h1.kind, SeriesKind::Full);
    assert_eq!(h2.kind, SeriesKind::Full);
    let s1m1 = SymPoly::sum_of_vars(n, Some(d)).sub(&SymPoly::one(n, Some(d)));
    let poly = h1
        .poly
        .add(&h2.poly)
        .add(&s1m1.mul(&h1.poly).mul(&h2.poly))
        .with_trunc(Some(d));
    HilbertSeries::new(poly, SeriesKind::Full)
}

/// The iterated product formula:
/// H = Σ_{r=1}^k (S_(1)−1)^{r−1} Σ_{i₁<…<i_r} H_{i₁}⋯H_{i_r}.
pub fn formanek_product_many(
    hs: &[HilbertSeries],
    n: usize,
    d: u32,
) -> Result<HilbertSeries, SeriesError> {
    if hs.is_empty() {
        return Err(SeriesError::EmptyList);
    }
    let k = hs.len();
    let s1m1 = SymPoly::sum_of_vars(n, Some(d)).sub(&SymPoly::one(n, Some(d)));
    let mut total = SymPoly::zero(n, Some(d));
    for r in 1..=k {
        let mut subset_sum = SymPoly::zero(n, Some(d));
        for combo in combinations(k, r) {
            let mut prod = SymPoly::one(n, Some(d));
            for &i in &combo {
                prod = prod.mul(&hs[i].poly);
            }
            subset_sum = subset_sum.add(&prod);
        }
        total = total.add(&s1m1.pow((r - 1) as u32).mul(&subset_sum));
    }
    Ok(HilbertSeries::new(total.with_trunc(Some(d)), SeriesKind::Full))
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// The proper-series counterpart of the product formula:
/// H^B = H^B₁ + H^B₂ + (S_(1)−1)/∏(1−tᵢ) · H^B₁·H^B₂.
pub fn proper_product(
    hb1: &HilbertSeries,
    hb2: &HilbertSeries,
    n: usize,
    d: u32,
) -> HilbertSeries {
    assert_eq!(hb1.kind, SeriesKind::Proper);
    assert_eq!(hb2.kind, SeriesKind::Proper);
    let s1m1 = SymPoly::sum_of_vars(n, Some(d)).sub(&SymPoly::one(n, Some(d)));
    let geom = geom_pow(n, 1, d);
    let poly = hb1
        .poly
        .add(&hb2.poly)
        .add(&s1m1.mul(&geom.poly).mul(&hb1.poly).mul(&hb2.poly))
        .with_trunc(Some(d));
    HilbertSeries::new(poly, SeriesKind::Proper)
}

/// The polynomials P₁..P_k built from the proper series of the factors:
/// P_r = (S_(1)−1)^{r−1} Σ_{i₁<…<i_r} H^B_{i₁}⋯H^B_{i_r}.
pub fn pr_polynomials(
    proper_list: &[HilbertSeries],
    n: usize,
    d: u32,
) -> Result<Vec<HilbertSeries>, SeriesError> {
    if proper_list.is_empty() {
        return Err(SeriesError::EmptyList);
    }
    for hb in proper_list {
        assert_eq!(hb.kind, SeriesKind::Proper);
    }
    let k = proper_list.len();
    let s1m1 = SymPoly::sum_of_vars(n, Some(d)).sub(&SymPoly::one(n, Some(d)));
    let mut out = Vec::with_capacity(k);
    for r in 1..=k {
        let mut subset_sum = SymPoly::zero(n, Some(d));
        for combo in combinations(k, r) {
            let mut prod = SymPoly::one(n, Some(d));
            for &i in &combo {
                prod = prod.mul(&proper_list[i].poly);
            }
            subset_sum = subset_sum.add(&prod);
        }
        let p = s1m1.pow((r - 1) as u32).mul(&subset_sum).with_trunc(Some(d));
        out.push(HilbertSeries::new(p, SeriesKind::Proper));
    }
    Ok(out)
}

/// Assembled proper series: Σ_r P_r / ∏(1−tᵢ)^{r−1}.
pub fn pr_assembled_proper(prs: &[HilbertSeries], n: usize, d: u32) -> HilbertSeries {
    let mut total = SymPoly::zero(n, Some(d));
    for (idx, p) in prs.iter().enumerate() {
        let r = idx + 1;
        let term = if r == 1 {
            p.poly.clone().with_trunc(Some(d))
        } else {
            geom_pow(n, (r - 1) as u32, d).poly.mul(&p.poly)
        };
        total = total.add(&term);
    }
    HilbertSeries::new(total.with_trunc(Some(d)), SeriesKind::Proper)
}

/// Assembled full series: Σ_r P_r / ∏(1−tᵢ)^r.
pub fn pr_assembled_full(prs: &[HilbertSeries], n: usize, d: u32) -> HilbertSeries {
    let mut total = SymPoly::zero(n, Some(d));
    for (idx, p) in prs.iter().enumerate() {
        let r = (idx + 1) as u32;
        total = total.add(&geom_pow(n, r, d).poly.mul(&p.poly));
    }
    HilbertSeries::new(total.with_trunc(Some(d)), SeriesKind::Full)
}

/// The closed form Σ_{r=1}^k C(k,r)(S_(1)−1)^{r−1}/∏(1−tᵢ)^r for the product
/// of k copies of the commutator-of-length-2 ideal.
pub fn boumova_drensky_series(k: u32, n: usize, d: u32) -> HilbertSeries {
    assert!(k >= 1);
    let s1m1 = SymPoly::sum_of_vars(n, Some(d)).sub(&SymPoly::one(n, Some(d)));
    let mut total = SymPoly::zero(n, Some(d));
    for r in 1..=k {
        let c = BigRational::from(binomial(k, r));
        total = total.add(&s1m1.pow(r - 1).mul(&geom_pow(n, r, d).poly).scale(&c));
    }
    HilbertSeries::new(total.with_trunc(Some(d)), SeriesKind::Full)
}
