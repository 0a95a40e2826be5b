//! Exact symmetric-polynomial arithmetic: Schur polynomials, Schur-basis
//! expansion, Littlewood–Richardson coefficients and S_m character
//! decomposition via the Murnaghan–Nakayama rule.
//!
//! Everything is exact rational; no floating point anywhere.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::partitions::{partitions_of, Partition};

#[derive(Debug, Error)]
pub enum SymFuncError {
    /// schur_expand produced a leading exponent vector that is not weakly
    /// decreasing; the input was not a symmetric polynomial.
    #[error("input is not symmetric: leading exponent {0:?} is not a partition")]
    NonSymmetricInput(Vec<u32>),
    /// A Schur-basis coefficient came out non-integral.
    #[error("non-integral multiplicity {coeff} at partition {lam}")]
    NonIntegralMultiplicity { lam: Partition, coeff: BigRational },
    /// sm_decompose produced a negative or non-integral multiplicity.
    #[error("input is not a character: multiplicity {coeff} at partition {lam}")]
    NonCharacter { lam: Partition, coeff: BigRational },
}

fn big(i: i64) -> BigRational {
    BigRational::from(BigInt::from(i))
}

/// A multivariate polynomial in t₁..t_n with exact rational coefficients,
/// optionally truncated at a total degree.
///
/// Terms map exponent vectors (length `nvars`) to nonzero coefficients.
#[derive(Clone)]
pub struct SymPoly {
    nvars: usize,
    trunc: Option<u32>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn min_trunc(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl SymPoly {
    pub fn zero(nvars: usize, trunc: Option<u32>) -> Self {
        SymPoly { nvars, trunc, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational, trunc: Option<u32>) -> Self {
        let mut p = SymPoly::zero(nvars, trunc);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize, trunc: Option<u32>) -> Self {
        SymPoly::constant(nvars, BigRational::one(), trunc)
    }

    /// S_(1)(T) = t₁ + … + t_n.
    pub fn sum_of_vars(nvars: usize, trunc: Option<u32>) -> Self {
        let mut p = SymPoly::zero(nvars, trunc);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.add_term(e, BigRational::one());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, expo: &[u32]) -> BigRational {
        self.terms.get(expo).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c` to the coefficient at `expo`, dropping the term if it reaches
    /// zero or exceeds the truncation degree.
    pub fn add_term(&mut self, expo: Vec<u32>, c: BigRational) {
        debug_assert_eq!(expo.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        if let Some(d) = self.trunc {
            if expo.iter().sum::<u32>() > d {
                return;
            }
        }
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        out.trunc = min_trunc(self.trunc, other.trunc);
        if out.trunc != self.trunc {
            out.truncate_to(out.trunc);
        }
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(self.nvars, self.trunc);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c.clone();
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, other.nvars);
        let trunc = min_trunc(self.trunc, other.trunc);
        let mut out = SymPoly::zero(self.nvars, trunc);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if let Some(d) = trunc {
                    if da + eb.iter().sum::<u32>() > d {
                        continue;
                    }
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> SymPoly {
        let mut out = SymPoly::one(self.nvars, self.trunc);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Drops terms above total degree `d` and records the new truncation.
    pub fn truncate_to(&mut self, d: Option<u32>) {
        self.trunc = d;
        if let Some(d) = d {
            self.terms.retain(|e, _| e.iter().sum::<u32>() <= d);
        }
    }

    pub fn with_trunc(mut self, d: Option<u32>) -> SymPoly {
        self.truncate_to(d);
        self
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// The sum of all coefficients, i.e. the value at t₁ = … = t_n = 1.
    pub fn eval_at_ones(&self) -> BigRational {
        self.terms.values().sum()
    }

    /// Terms of total degree exactly `d`, as a polynomial.
    pub fn homogeneous_component(&self, d: u32) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars, self.trunc);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Checks coefficient equality on a sample of exponent-vector orbits.
    pub fn is_symmetric(&self) -> bool {
        for (e, c) in &self.terms {
            let mut sorted = e.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if &self.coeff(&sorted) != c {
                return false;
            }
            let mut rev = e.clone();
            rev.reverse();
            if &self.coeff(&rev) != c {
                return false;
            }
        }
        true
    }

    /// JSON term list: [{"exponents":[…],"coeff":"…"}, …] in lexicographic
    /// exponent order.  Integer coefficients serialize as plain integer
    /// strings.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let coeff = if c.is_integer() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                };
                json!({"exponents": e, "coeff": coeff})
            })
            .collect();
        json!({"nvars": self.nvars, "trunc": self.trunc, "terms": terms})
    }
}

impl PartialEq for SymPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}
impl Eq for SymPoly {}

impl std::fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*t^{e:?}")?;
        }
        Ok(())
    }
}

/// The Schur polynomial s_λ(t₁..t_n) by semistandard-tableau enumeration.
///
/// Zero when λ has more than `n` nonzero parts.
pub fn schur_poly(lam: &Partition, n: usize, trunc: Option<u32>) -> SymPoly {
    let mut out = SymPoly::zero(n, trunc);
    if lam.len() > n {
        return out;
    }
    if let Some(d) = trunc {
        if lam.weight() > d {
            return out;
        }
    }
    if lam.is_empty() {
        return SymPoly::one(n, trunc);
    }
    // Fill the diagram cell by cell in row-major order: rows weakly increase,
    // columns strictly increase, entries in 1..=n.
    let shape: Vec<usize> = lam.parts().iter().map(|&p| p as usize).collect();
    let mut tableau: Vec<Vec<usize>> = shape.iter().map(|&r| vec![0; r]).collect();
    let mut content = vec![0u32; n];
    fill_ssyt(&shape, &mut tableau, &mut content, 0, 0, n, &mut out);
    out
}

fn fill_ssyt(
    shape: &[usize],
    tableau: &mut Vec<Vec<usize>>,
    content: &mut Vec<u32>,
    r: usize,
    c: usize,
    n: usize,
    out: &mut SymPoly,
) {
    if r == shape.len() {
        out.add_term(content.clone(), BigRational::one());
        return;
    }
    let (nr, nc) = if c + 1 == shape[r] { (r + 1, 0) } else { (r, c + 1) };
    let lo = {
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(tableau[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(tableau[r - 1][c] + 1);
        }
        lo
    };
    for v in lo..=n {
        tableau[r][c] = v;
        content[v - 1] += 1;
        fill_ssyt(shape, tableau, content, nr, nc, n, out);
        content[v - 1] -= 1;
    }
    tableau[r][c] = 0;
}

/// Independent route to s_λ: the bialternant ratio
/// det(t_i^{λ_j+n-j}) / det(t_i^{n-j}).
///
/// Only meant for cross-checking at small n (the determinant is expanded by
/// permutations).
pub fn schur_poly_bialternant(lam: &Partition, n: usize) -> SymPoly {
    if lam.len() > n {
        return SymPoly::zero(n, None);
    }
    let exps: Vec<u32> = (0..n).map(|j| lam.part(j + 1) + (n - 1 - j) as u32).collect();
    let numer = alternant(&exps, n);
    // Divide out the Vandermonde product ∏_{i<j}(t_i - t_j).
    let mut quot = numer;
    for i in 0..n {
        for j in (i + 1)..n {
            quot = divide_by_var_difference(&quot, i, j);
        }
    }
    quot
}

fn alternant(exps: &[u32], n: usize) -> SymPoly {
    let mut out = SymPoly::zero(n, None);
    let mut perm: Vec<usize> = (0..n).collect();
    permute_alternant(&mut perm, 0, exps, n, &mut out, 1);
    out
}

fn permute_alternant(
    perm: &mut Vec<usize>,
    k: usize,
    exps: &[u32],
    n: usize,
    out: &mut SymPoly,
    sign: i64,
) {
    if k == n {
        let mut e = vec![0u32; n];
        for (i, &p) in perm.iter().enumerate() {
            e[i] = exps[p];
        }
        out.add_term(e, big(sign));
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        let s = if i == k { sign } else { -sign };
        permute_alternant(perm, k + 1, exps, n, out, s);
        perm.swap(k, i);
    }
}

/// Exact division by (t_i - t_j) with i < j; panics if not divisible.
fn divide_by_var_difference(f: &SymPoly, i: usize, j: usize) -> SymPoly {
    let n = f.nvars();
    let mut rem = f.clone();
    let mut quot = SymPoly::zero(n, None);
    while let Some((lead, _)) = rem.terms.iter().next_back() {
        let lead = lead.clone();
        assert!(lead[i] > 0, "alternant not divisible by t_{i} - t_{j}");
        let c = rem.coeff(&lead);
        let mut q = lead.clone();
        q[i] -= 1;
        // rem -= c * t^q * (t_i - t_j)
        rem.add_term(lead, -c.clone());
        let mut other = q.clone();
        other[j] += 1;
        rem.add_term(other, c.clone());
        quot.add_term(q, c);
    }
    quot
}

/// An integer combination of Schur polynomials: partitions mapped to nonzero
/// multiplicities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurExpansion {
    nvars: usize,
    terms: BTreeMap<Partition, i64>,
}

impl SchurExpansion {
    pub fn new(nvars: usize) -> Self {
        SchurExpansion { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, lam: &Partition) -> i64 {
        self.terms.get(lam).copied().unwrap_or(0)
    }

    pub fn set(&mut self, lam: Partition, mult: i64) {
        if mult == 0 {
            self.terms.remove(&lam);
        } else {
            self.terms.insert(lam, mult);
        }
    }

    pub fn add(&mut self, lam: Partition, mult: i64) {
        let m = self.get(&lam) + mult;
        self.set(lam, m);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.terms.iter().map(|(l, &m)| (l, m))
    }

    /// Partitions with nonzero multiplicity.
    pub fn support(&self) -> impl Iterator<Item = &Partition> {
        self.terms.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|&m| m >= 0)
    }

    /// Realizes the expansion as a polynomial, Σ m_λ s_λ.
    pub fn to_sym_poly(&self, trunc: Option<u32>) -> SymPoly {
        let mut out = SymPoly::zero(self.nvars, trunc);
        for (lam, m) in self.iter() {
            out = out.add(&schur_poly(lam, self.nvars, trunc).scale(&big(m)));
        }
        out
    }

    /// {"n": …, "terms": [{"partition": […], "mult": …}, …]} with partitions
    /// sorted reverse-lexicographically.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .rev()
            .map(|(lam, m)| json!({"partition": lam, "mult": m}))
            .collect();
        json!({"n": self.nvars, "terms": terms})
    }
}

/// Expands a symmetric polynomial in the Schur basis.
///
/// Works degree by degree: repeatedly extract the lexicographically greatest
/// exponent vector, read it as a partition λ, subtract c·s_λ.  Termination is
/// guaranteed by the dominance-triangularity of Schur polynomials (the lex
/// leading monomial of s_λ is t^λ).
pub fn schur_expand(f: &SymPoly) -> Result<SchurExpansion, SymFuncError> {
    let n = f.nvars();
    let mut out = SchurExpansion::new(n);
    let degrees: Vec<u32> = {
        let mut ds: Vec<u32> = f.terms().map(|(e, _)| e.iter().sum()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    };
    for d in degrees {
        let mut work = f.homogeneous_component(d).with_trunc(None);
        let max_steps = partitions_of(d, n).len() + 1;
        let mut steps = 0;
        while let Some((lead, _)) = work.terms.iter().next_back() {
            let lead = lead.clone();
            if !lead.windows(2).all(|w| w[0] >= w[1]) {
                return Err(SymFuncError::NonSymmetricInput(lead));
            }
            steps += 1;
            if steps > max_steps {
                return Err(SymFuncError::NonSymmetricInput(lead));
            }
            let lam = Partition::new(lead);
            let c = work.coeff(lam_to_expo(&lam, n).as_slice());
            if !c.is_integer() {
                return Err(SymFuncError::NonIntegralMultiplicity { lam, coeff: c });
            }
            work = work.sub(&schur_poly(&lam, n, None).scale(&c));
            let mult: i64 = c.to_integer().try_into().expect("multiplicity overflow");
            out.add(lam, mult);
        }
    }
    Ok(out)
}

fn lam_to_expo(lam: &Partition, n: usize) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for (i, &p) in lam.parts().iter().enumerate() {
        e[i] = p;
    }
    e
}

/// Littlewood–Richardson coefficients c^λ_{μν} for partitions λ with at most
/// `n` parts, via polynomial multiplication and Schur expansion.
///
/// Coefficients at partitions with more than `n` parts are dropped (s_λ = 0
/// in n variables there); run at large `n` to see all of them.
pub fn lr_coefficients(mu: &Partition, nu: &Partition, n: usize) -> SchurExpansion {
    let prod = schur_poly(mu, n, None).mul(&schur_poly(nu, n, None));
    schur_expand(&prod).expect("product of Schur polynomials is symmetric")
}

/// Checks c^λ_{μν} = c^{λ'}_{μ'ν'} for all λ.  Requires n ≥ |μ|+|ν| so that
/// no conjugate partition is dropped.
pub fn lr_conjugate_symmetry_check(mu: &Partition, nu: &Partition, n: usize) -> bool {
    assert!(n as u32 >= mu.weight() + nu.weight(), "n too small to hold conjugates");
    let straight = lr_coefficients(mu, nu, n);
    let conjugated = lr_coefficients(&mu.conjugate(), &nu.conjugate(), n);
    if straight.len() != conjugated.len() {
        return false;
    }
    let ok = straight.iter().all(|(lam, c)| conjugated.get(&lam.conjugate()) == c);
    ok
}

/// A class function on S_m given by its values on cycle types.
#[derive(Clone, Debug, PartialEq)]
pub struct SmCharacter {
    m: u32,
    values: BTreeMap<Partition, BigRational>,
}

impl SmCharacter {
    /// `values` maps each cycle type (partition of m) to the character value.
    pub fn new(m: u32, values: BTreeMap<Partition, BigRational>) -> Self {
        for lam in values.keys() {
            assert_eq!(lam.weight(), m, "cycle type {lam} is not a partition of {m}");
        }
        SmCharacter { m, values }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn value(&self, cycle_type: &Partition) -> BigRational {
        self.values.get(cycle_type).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn values(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.values.iter()
    }

    /// The character of the regular representation: m! on the identity class,
    /// zero elsewhere.
    pub fn regular(m: u32) -> Self {
        let mut values = BTreeMap::new();
        for rho in partitions_of(m, m as usize) {
            let v = if rho.parts().iter().all(|&p| p == 1) {
                BigRational::from(factorial(m))
            } else {
                BigRational::zero()
            };
            values.insert(rho, v);
        }
        SmCharacter::new(m, values)
    }

    pub fn trivial(m: u32) -> Self {
        let mut values = BTreeMap::new();
        for rho in partitions_of(m, m as usize) {
            values.insert(rho, BigRational::one());
        }
        SmCharacter::new(m, values)
    }

    /// CSV rows "cycle_type,value" with cycle types as '+'-joined parts.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("cycle_type,value\n");
        for (rho, v) in self.values.iter().rev() {
            let ty: Vec<String> = rho.parts().iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("{},{}\n", ty.join("+"), v));
        }
        out
    }
}

pub fn factorial(m: u32) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Size of the conjugacy class with cycle type `rho` in S_m: m!/z(ρ) where
/// z(ρ) = ∏ i^{a_i} a_i!.
pub fn class_size(rho: &Partition) -> BigInt {
    let m = rho.weight();
    let mut z = BigInt::one();
    let mut i = 0;
    let parts = rho.parts();
    while i < parts.len() {
        let v = parts[i];
        let mut a = 0u32;
        while i < parts.len() && parts[i] == v {
            a += 1;
            i += 1;
        }
        z *= BigInt::from(v).pow(a) * factorial(a);
    }
    factorial(m) / z
}

/// The irreducible character value χ_λ(ρ) by the Murnaghan–Nakayama rule.
pub fn mn_character(lam: &Partition, rho: &Partition) -> i64 {
    assert_eq!(lam.weight(), rho.weight());
    mn_recurse(lam.parts(), rho.parts())
}

fn mn_recurse(lam: &[u32], rho: &[u32]) -> i64 {
    if rho.is_empty() {
        return 1;
    }
    let r = rho[0] as i64;
    // Beta-set formulation: removing a border strip of length r moves one
    // beta-number down by r; the sign is (-1)^(number of beta-numbers jumped).
    let k = lam.len() as i64;
    let betas: Vec<i64> = lam.iter().enumerate().map(|(i, &p)| p as i64 + (k - 1 - i as i64)).collect();
    let mut total = 0i64;
    for (idx, &b) in betas.iter().enumerate() {
        let target = b - r;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        let jumped = betas.iter().filter(|&&x| target < x && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut new_betas = betas.clone();
        new_betas[idx] = target;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        // convert back to a partition
        let kk = new_betas.len() as i64;
        let mut parts: Vec<u32> = new_betas
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (kk - 1 - i as i64)) as u32)
            .collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        total += sign * mn_recurse(&parts, &rho[1..]);
    }
    total
}

/// Decomposes a class function into irreducible multiplicities via the inner
/// product ⟨χ, χ_λ⟩ = (1/m!) Σ_ρ |C_ρ| χ(ρ) χ_λ(ρ).
///
/// Fails with `NonCharacter` if any multiplicity is negative or non-integral.
pub fn sm_decompose(chi: &SmCharacter) -> Result<SchurExpansion, SymFuncError> {
    let m = chi.m();
    let fact = BigRational::from(factorial(m));
    let mut out = SchurExpansion::new(m as usize);
    for lam in partitions_of(m, m as usize) {
        let mut inner = BigRational::zero();
        for rho in partitions_of(m, m as usize) {
            let cs = BigRational::from(class_size(&rho));
            let irr = big(mn_character(&lam, &rho));
            inner += cs * chi.value(&rho) * irr;
        }
        let mult = inner / fact.clone();
        if !mult.is_integer() || mult.is_negative() {
            return Err(SymFuncError::NonCharacter { lam, coeff: mult });
        }
        let mult: i64 = mult.to_integer().try_into().expect("multiplicity overflow");
        if mult != 0 {
            out.set(lam, mult);
        }
    }
    Ok(out)
}
