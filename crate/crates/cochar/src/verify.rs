//! Executable checks of shape bounds and series identities on computed data:
//! hook/step/conjugate profiles, product additivity, product-formula
//! consistency, and SL(n)-invariant degree bounds.
//!
//! The ω/s quantities are never estimated from data — they are assigned by
//! formula (`profile_for_spec`) and the brute-force data is checked against
//! them, since the widths are asymptotic and invisible in any truncation.

use serde_json::json;
use thiserror::Error;

use crate::freealg::{relfree_hilbert, FreeAlgError, WorkLimits};
use crate::partitions::{satisfies_profile, BoundProfile};
use crate::series::{formanek_product_many, IdealSpec};
use crate::symfunc::{schur_expand, SchurExpansion};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("truncation too small to certify: {0}")]
    InsufficientTruncation(String),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

/// Outcome of a single claim check; a failing report always carries at least
/// one witness.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub claim: String,
    pub params: serde_json::Value,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
}

impl VerificationReport {
    pub fn new(
        claim: impl Into<String>,
        params: serde_json::Value,
        verdict: Verdict,
        witnesses: Vec<String>,
    ) -> Self {
        assert!(
            verdict != Verdict::Fail || !witnesses.is_empty(),
            "failing report without witnesses"
        );
        VerificationReport { claim: claim.into(), params, verdict, witnesses }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "claim": self.claim,
            "params": self.params,
            "verdict": self.verdict.as_str(),
            "witnesses": self.witnesses,
        })
    }

    pub fn to_text(&self) -> String {
        let mut line = format!("[{}] {} {}", self.verdict.as_str(), self.claim, self.params);
        if !self.witnesses.is_empty() {
            line.push_str(&format!("  witnesses: {}", self.witnesses.join("; ")));
        }
        line
    }
}

/// The shape profile implied by the spec:
///
/// * ω₀ = ω₁ = k, s₂ = p₁+…+p_k − 1, step bound λ_{2k} ≤ Σpᵢ − k;
/// * for k = 1 the full step list λ_{2j} ≤ p − j (whenever p > 2(j−1)) and
///   the conjugate cap λ'_{k'+1} ≤ 2k'−1 for p = 2k' resp. ≤ 2k'+1 for
///   p = 2k'+1;
/// * ω₁ = k is exact only when every pᵢ ≥ 2, otherwise it is an upper bound.
pub fn profile_for_spec(spec: &IdealSpec) -> BoundProfile {
    let k = spec.k() as u32;
    let sum_p = spec.sum_p();
    let s2 = sum_p - 1;
    let omega1_exact = spec.factors().iter().all(|&p| p >= 2);

    let mut step_bounds = vec![(2 * k, sum_p - k)];
    let mut s1 = None;
    let mut conj_bounds = Vec::new();
    if k == 1 {
        let p = spec.factors()[0];
        step_bounds.clear();
        let mut j = 1;
        while p > 2 * (j - 1) {
            step_bounds.push((2 * j, p - j));
            j += 1;
        }
        // conjugate cap at column k'+1
        let kp = p / 2;
        let (col, cap) = if p % 2 == 0 { (kp + 1, 2 * kp - 1) } else { (kp + 1, 2 * kp + 1) };
        if col == 2 {
            // coincides with the λ'_{ω₁+1} slot
            s1 = Some(cap);
        } else {
            conj_bounds.push((col, cap));
        }
    }

    BoundProfile { omega0: k, omega1: k, omega1_exact, s1, s2, step_bounds, conj_bounds }
}

/// Pass iff every partition with nonzero multiplicity satisfies the profile.
pub fn check_bounds(expansion: &SchurExpansion, profile: &BoundProfile) -> VerificationReport {
    let witnesses: Vec<String> = expansion
        .support()
        .filter(|lam| !satisfies_profile(lam, profile))
        .map(|lam| lam.to_string())
        .collect();
    let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
    VerificationReport::new(
        "shape-bounds",
        json!({
            "omega0": profile.omega0,
            "omega1": profile.omega1,
            "s1": profile.s1,
            "s2": profile.s2,
            "step_bounds": profile.step_bounds,
            "conj_bounds": profile.conj_bounds,
        }),
        verdict,
        witnesses,
    )
}

/// The two conditional constraints observed for the commutator-of-length-4
/// ideal: λ₂ = 2 ⟹ λ₄ = 0 and λ₄ = 1 ⟹ λ₂ = 1.
pub fn check_volichenko_conditional(expansion: &SchurExpansion) -> VerificationReport {
    let witnesses: Vec<String> = expansion
        .support()
        .filter(|lam| {
            let l2 = lam.part(2);
            let l4 = lam.part(4);
            (l2 == 2 && l4 != 0) || (l4 == 1 && l2 != 1)
        })
        .map(|lam| lam.to_string())
        .collect();
    let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
    VerificationReport::new("conditional-shape-constraints", json!({}), verdict, witnesses)
}

/// Pass iff the brute-force series of the product spec equals the iterated
/// product-formula assembly from the factor series, exactly.
pub fn check_formanek(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<VerificationReport, VerifyError> {
    let direct = relfree_hilbert(spec, n, d, limits)?;
    let components: Result<Vec<_>, FreeAlgError> = spec
        .factors()
        .iter()
        .map(|&p| relfree_hilbert(&IdealSpec::single(p), n, d, limits))
        .collect();
    let assembled =
        formanek_product_many(&components?, n, d).expect("spec has at least one factor");
    let params = json!({ "spec": spec.factors(), "n": n, "D": d });
    if direct.poly == assembled.poly {
        Ok(VerificationReport::new("product-formula", params, Verdict::Pass, vec![]))
    } else {
        let witnesses = direct
            .poly
            .terms()
            .map(|(e, _)| e.clone())
            .chain(assembled.poly.terms().map(|(e, _)| e.clone()))
            .filter(|e| direct.poly.coeff(e) != assembled.poly.coeff(e))
            .map(|e| format!("{e:?}"))
            .collect();
        Ok(VerificationReport::new("product-formula", params, Verdict::Fail, witnesses))
    }
}

/// Coefficients of the invariant series: multiplicities summed over
/// rectangular partitions of full height n, with the empty partition at
/// degree 0.  Trailing zeros are trimmed.
pub fn sl_invariant_series(expansion: &SchurExpansion, n: usize) -> Vec<i64> {
    let max_weight =
        expansion.support().map(|lam| lam.weight()).max().unwrap_or(0) as usize;
    let mut out = vec![0i64; max_weight + 1];
    for (lam, mult) in expansion.iter() {
        let full_rect = lam.is_empty() || (lam.len() == n && lam.is_rectangular());
        if full_rect {
            out[lam.weight() as usize] += mult;
        }
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Checks the degree bound on the invariant series against brute-force data.
/// Skipped for k ≥ n, where the width formulas do not apply.
///
/// The bound used is n·s₂ (a full-height rectangle has λ_n = λ_{ω₀+1} ≤ s₂
/// once n > ω₀ = k), sharpened to n(Σpᵢ − k) when n ≥ 2k (then
/// λ_n ≤ λ_{2k} ≤ Σpᵢ − k) and to n·ω₁ when the conjugate cap s₁ is known
/// and n > s₁.  The sharper value is *not* applied for k < n < 2k: there the
/// row-2k bound says nothing about λ_n, and data refutes it — for two
/// commutator-of-length-2 factors at n = 3 the partition (1,1,1) appears
/// (total degree 3 is below the ideal's minimal degree 4), while the blanket
/// bound would demand degree 0.
pub fn check_sl_degree_bounds(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<VerificationReport, VerifyError> {
    let params = json!({ "spec": spec.factors(), "n": n, "D": d });
    let k = spec.k() as u32;
    if k >= n as u32 {
        return Ok(VerificationReport::new(
            "invariant-degree-bound",
            params,
            Verdict::Skipped,
            vec![],
        ));
    }
    let profile = profile_for_spec(spec);
    let mut bound = n as u32 * profile.s2;
    if n as u32 >= 2 * k {
        bound = bound.min(n as u32 * (spec.sum_p() - k));
    }
    if let Some(s1) = profile.s1 {
        if n as u32 > s1 {
            bound = bound.min(n as u32 * profile.omega1);
        }
    }
    if d < bound {
        return Err(VerifyError::InsufficientTruncation(format!(
            "degree bound {bound} exceeds the truncation {d}"
        )));
    }
    let series = relfree_hilbert(spec, n, d, limits)?;
    let expansion = schur_expand(&series.poly).expect("graded dims are Schur-positive");
    let inv = sl_invariant_series(&expansion, n);
    let witnesses: Vec<String> = inv
        .iter()
        .enumerate()
        .filter(|&(i, &c)| c != 0 && i as u32 > bound)
        .map(|(i, &c)| format!("degree {i} coefficient {c}"))
        .collect();
    let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(VerificationReport::new("invariant-degree-bound", params, verdict, witnesses))
}

/// Verifies that the support of the product spec lies in the additive
/// profile (ω₀ = ω₀(A)+ω₀(B), s₂ = s₂(A)+s₂(B)+1, …) and that the widths are
/// used: for each row i ≤ min(ω₀, n) the support contains a partition with
/// λᵢ ≥ ⌊(D−2)/i⌋.
///
/// The witness thresholds under-approximate "arbitrarily large": a row-i
/// value of t needs weight ≥ i·t, so the literal truncation boundary D−2 is
/// reachable only in row 1.
pub fn check_product_additivity(
    spec_a: &IdealSpec,
    spec_b: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<VerificationReport, VerifyError> {
    let combined = spec_a.concat(spec_b);
    let profile = profile_for_spec(&combined);
    let params = json!({
        "specA": spec_a.factors(),
        "specB": spec_b.factors(),
        "n": n,
        "D": d,
    });
    let series = relfree_hilbert(&combined, n, d, limits)?;
    let expansion = schur_expand(&series.poly).expect("graded dims are Schur-positive");

    let mut witnesses: Vec<String> = expansion
        .support()
        .filter(|lam| !satisfies_profile(lam, &profile))
        .map(|lam| format!("out of profile: {lam}"))
        .collect();

    let rows = profile.omega0.min(n as u32);
    for i in 1..=rows {
        let threshold = (d.saturating_sub(2)) / i;
        let found = expansion.support().any(|lam| lam.part(i as usize) >= threshold);
        if !found {
            witnesses.push(format!("no partition with row {i} >= {threshold}"));
        }
    }

    let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
    Ok(VerificationReport::new("product-additivity", params, verdict, witnesses))
}

/// Convenience: expand the brute-force series and check it against the
/// profile implied by the spec.
pub fn check_bounds_for_spec(
    spec: &IdealSpec,
    n: usize,
    d: u32,
    limits: &WorkLimits,
) -> Result<VerificationReport, VerifyError> {
    let series = relfree_hilbert(spec, n, d, limits)?;
    let expansion = schur_expand(&series.poly).expect("graded dims are Schur-positive");
    let profile = profile_for_spec(spec);
    let mut report = check_bounds(&expansion, &profile);
    report.params = json!({
        "spec": spec.factors(),
        "n": n,
        "D": d,
        "profile": report.params,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;

    fn spec(ps: &[u32]) -> IdealSpec {
        IdealSpec::new(ps.to_vec()).unwrap()
    }

    fn limits() -> WorkLimits {
        WorkLimits::default()
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn profile_examples() {
        // hook H(1,1)
        let pr = profile_for_spec(&spec(&[2]));
        assert_eq!((pr.omega0, pr.omega1, pr.s2), (1, 1, 1));
        assert_eq!(pr.s1, Some(1));
        assert_eq!(pr.step_bounds, vec![(2, 1)]);
        assert!(pr.omega1_exact);

        let pr = profile_for_spec(&spec(&[3]));
        assert_eq!(pr.step_bounds, vec![(2, 2), (4, 1)]);
        assert_eq!(pr.s1, Some(3));

        let pr = profile_for_spec(&spec(&[4]));
        assert_eq!(pr.step_bounds, vec![(2, 3), (4, 2)]);
        assert_eq!(pr.s1, None);
        assert_eq!(pr.conj_bounds, vec![(3, 3)]);

        let pr = profile_for_spec(&spec(&[1]));
        assert_eq!((pr.omega0, pr.s2), (1, 0));
        assert!(!pr.omega1_exact);
        assert_eq!(pr.conj_bounds, vec![(1, 1)]);

        let pr = profile_for_spec(&spec(&[1, 1]));
        assert_eq!((pr.omega0, pr.omega1, pr.s2), (2, 2, 1));
        assert!(!pr.omega1_exact);
        assert_eq!(pr.step_bounds, vec![(4, 0)]);
    }

    #[test]
    fn check_bounds_brute_force_cases() {
        let r = check_bounds_for_spec(&spec(&[3]), 4, 5, &limits()).unwrap();
        assert!(r.passed(), "{}", r.to_text());

        let r = check_bounds_for_spec(&spec(&[2]), 2, 5, &limits()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn check_bounds_reports_violators() {
        let mut e = SchurExpansion::new(2);
        e.set(p(&[2, 2]), 1);
        let profile = profile_for_spec(&spec(&[2]));
        let r = check_bounds(&e, &profile);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses, vec!["(2,2)".to_string()]);
    }

    #[test]
    fn conditional_constraints() {
        let mut e = SchurExpansion::new(4);
        e.set(p(&[3, 2, 1, 1]), 1); // λ₂=2 but λ₄=1
        assert_eq!(check_volichenko_conditional(&e).verdict, Verdict::Fail);

        let mut e = SchurExpansion::new(4);
        e.set(p(&[5, 1, 1, 1]), 1); // λ₂=1
        assert_eq!(check_volichenko_conditional(&e).verdict, Verdict::Pass);

        let series = relfree_hilbert(&spec(&[3]), 4, 5, &limits()).unwrap();
        let exp = schur_expand(&series.poly).unwrap();
        assert!(check_volichenko_conditional(&exp).passed());
    }

    #[test]
    fn formanek_consistency_examples() {
        for ps in [&[1u32, 1][..], &[2, 2], &[2, 1]] {
            let r = check_formanek(&spec(ps), 2, 5, &limits()).unwrap();
            assert!(r.passed(), "spec={ps:?}: {}", r.to_text());
        }
    }

    #[test]
    fn sl_invariant_series_examples() {
        let series = relfree_hilbert(&spec(&[2]), 2, 4, &limits()).unwrap();
        let exp = schur_expand(&series.poly).unwrap();
        assert_eq!(sl_invariant_series(&exp, 2), vec![1, 0, 1]);

        let series = relfree_hilbert(&spec(&[1]), 2, 4, &limits()).unwrap();
        let exp = schur_expand(&series.poly).unwrap();
        assert_eq!(sl_invariant_series(&exp, 2), vec![1]);
    }

    #[test]
    fn sl_extraction_is_linear() {
        let mut e1 = SchurExpansion::new(2);
        e1.set(p(&[2, 2]), 3);
        e1.set(p(&[3, 1]), 5);
        let mut e2 = SchurExpansion::new(2);
        e2.set(p(&[2, 2]), 1);
        e2.set(p(&[1, 1]), 2);
        let mut sum = SchurExpansion::new(2);
        for (lam, c) in e1.iter().chain(e2.iter()) {
            sum.add(lam.clone(), c);
        }
        let a = sl_invariant_series(&e1, 2);
        let b = sl_invariant_series(&e2, 2);
        let mut expect = vec![0i64; a.len().max(b.len())];
        for (i, &c) in a.iter().enumerate() {
            expect[i] += c;
        }
        for (i, &c) in b.iter().enumerate() {
            expect[i] += c;
        }
        while expect.len() > 1 && *expect.last().unwrap() == 0 {
            expect.pop();
        }
        assert_eq!(sl_invariant_series(&sum, 2), expect);
    }

    #[test]
    fn sl_degree_bound_examples() {
        let r = check_sl_degree_bounds(&spec(&[2]), 2, 4, &limits()).unwrap();
        assert!(r.passed(), "{}", r.to_text());

        let r = check_sl_degree_bounds(&spec(&[1, 1]), 3, 6, &limits()).unwrap();
        assert!(r.passed(), "{}", r.to_text());

        let r = check_sl_degree_bounds(&spec(&[1]), 2, 4, &limits()).unwrap();
        assert!(r.passed(), "{}", r.to_text());

        // k ≥ n: refuse rather than assert
        let r = check_sl_degree_bounds(&spec(&[1, 1]), 2, 4, &limits()).unwrap();
        assert_eq!(r.verdict, Verdict::Skipped);

        // bound 3·(4−2)=6 not certifiable at D=4
        assert!(matches!(
            check_sl_degree_bounds(&spec(&[2, 2]), 3, 4, &limits()),
            Err(VerifyError::InsufficientTruncation(_))
        ));
    }

    #[test]
    fn product_additivity_examples() {
        let r = check_product_additivity(&spec(&[2]), &spec(&[2]), 3, 6, &limits()).unwrap();
        assert!(r.passed(), "{}", r.to_text());

        let r = check_product_additivity(&spec(&[1]), &spec(&[1]), 3, 6, &limits()).unwrap();
        assert!(r.passed(), "{}", r.to_text());

        let r = check_product_additivity(&spec(&[2]), &spec(&[1]), 2, 6, &limits()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn step_profile_holds_for_single_factors() {
        // full step profile at n = 2(⌊p/2⌋+1), D = p+3; p = 4 would need
        // n = 6, D = 7, past the default word-space cap
        for pp in 1..=3u32 {
            let n = 2 * ((pp / 2) as usize + 1);
            let d = pp + 3;
            let r = check_bounds_for_spec(&spec(&[pp]), n, d, &limits()).unwrap();
            assert!(r.passed(), "p={pp}: {}", r.to_text());
        }
    }

    #[test]
    fn report_shape() {
        let r = VerificationReport::new("x", json!({"n": 2}), Verdict::Pass, vec![]);
        let j = r.to_json();
        assert_eq!(j["verdict"], "pass");
        assert_eq!(j["claim"], "x");
        assert!(j["witnesses"].as_array().unwrap().is_empty());
        assert!(r.to_text().starts_with("[pass]"));
    }

    #[test]
    #[should_panic]
    fn failing_report_requires_witnesses() {
        VerificationReport::new("x", json!({}), Verdict::Fail, vec![]);
    }
}
