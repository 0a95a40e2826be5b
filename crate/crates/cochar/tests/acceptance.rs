//! End-to-end acceptance gate: one test per criterion, each printing a
//! single pass/fail line.  Every comparison is exact.

use num::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use cochar::freealg::{
    berele_drensky_crosscheck, ideal_inclusion_check, ideal_inclusion_witnesses,
    multilinear_quotient, proper_dims, relfree_hilbert, WorkLimits,
};
use cochar::partitions::{partitions_of, Partition};
use cochar::series::{boumova_drensky_series, IdealSpec};
use cochar::symfunc::{
    class_size, factorial, lr_conjugate_symmetry_check, mn_character, schur_expand, sm_decompose,
    SchurExpansion,
};
use cochar::verify::{
    check_formanek, check_product_additivity, check_volichenko_conditional, sl_invariant_series,
};

fn spec(ps: &[u32]) -> IdealSpec {
    IdealSpec::new(ps.to_vec()).unwrap()
}

fn limits() -> WorkLimits {
    WorkLimits::default()
}

fn expansion(ps: &[u32], n: usize, d: u32) -> SchurExpansion {
    let series = relfree_hilbert(&spec(ps), n, d, &limits()).unwrap();
    schur_expand(&series.poly).unwrap()
}

struct Criterion {
    index: u32,
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(index: u32, name: &'static str) -> Self {
        Criterion { index, name, failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn finish(self) {
        let verdict = if self.failures.is_empty() { "pass" } else { "fail" };
        println!("criterion {:02} ({}): {}", self.index, self.name, verdict);
        assert!(self.failures.is_empty(), "criterion {}: {:?}", self.index, self.failures);
    }
}

#[test]
fn criterion_01_hook_bound_single_factor() {
    let mut c = Criterion::new(1, "hook bound for single commutator factors");
    for p in 1..=4u32 {
        let exp = expansion(&[p], 4, 6);
        c.require(!exp.is_empty(), format!("p={p}: empty expansion"));
        for (lam, _) in exp.iter() {
            c.require(lam.part(2) <= p - 1, format!("p={p}: {lam} leaves the hook"));
        }
    }
    c.finish();
}

#[test]
fn criterion_02_step_bounds() {
    let mut c = Criterion::new(2, "step bounds at rows 2 and 4");
    let exp3 = expansion(&[3], 4, 6);
    for (lam, _) in exp3.iter() {
        c.require(lam.part(2) <= 2 && lam.part(4) <= 1, format!("p=3: {lam}"));
    }
    let exp4 = expansion(&[4], 4, 6);
    for (lam, _) in exp4.iter() {
        c.require(lam.part(2) <= 3 && lam.part(4) <= 2, format!("p=4: {lam}"));
    }
    c.finish();
}

#[test]
fn criterion_03_conditional_shape_constraints() {
    let mut c = Criterion::new(3, "conditional constraints for the length-4 commutator ideal");
    let report = check_volichenko_conditional(&expansion(&[3], 4, 6));
    c.require(report.passed(), report.to_text());
    c.finish();
}

#[test]
fn criterion_04_product_formula_consistency() {
    let mut c = Criterion::new(4, "product formula vs brute force");
    for ps in [&[1u32, 1][..], &[2, 1], &[2, 2], &[1, 1, 1]] {
        let report = check_formanek(&spec(ps), 2, 5, &limits()).unwrap();
        c.require(report.passed(), format!("spec={ps:?}: {}", report.to_text()));
    }
    c.finish();
}

#[test]
fn criterion_05_closed_form_series() {
    let mut c = Criterion::new(5, "closed form for powers of the length-2 commutator ideal");
    for k in 2..=3u32 {
        for n in 2..=3usize {
            let ps = vec![1u32; k as usize];
            let brute = relfree_hilbert(&IdealSpec::new(ps).unwrap(), n, 6, &limits()).unwrap();
            let closed = boumova_drensky_series(k, n, 6);
            c.require(brute.poly == closed.poly, format!("k={k} n={n}: series differ"));
        }
    }
    c.finish();
}

#[test]
fn criterion_06_proper_factorization() {
    let mut c = Criterion::new(6, "full series factors through the proper series");
    for ps in [&[1u32][..], &[2], &[3], &[2, 1]] {
        let ok = cochar::freealg::drensky_factorization_check(&spec(ps), 2, 5, &limits()).unwrap();
        c.require(ok, format!("spec={ps:?}"));
    }
    c.finish();
}

#[test]
fn criterion_07_character_vs_series_route() {
    let mut c = Criterion::new(7, "S_m route equals GL route");
    for ps in [&[1u32][..], &[2], &[1, 1]] {
        for m in 1..=5u32 {
            let ok = berele_drensky_crosscheck(&spec(ps), m, &limits()).unwrap();
            c.require(ok, format!("spec={ps:?} m={m}"));
        }
    }
    c.finish();
}

#[test]
fn criterion_08_ideal_inclusions() {
    let mut c = Criterion::new(8, "componentwise ideal inclusions");
    c.require(
        ideal_inclusion_check(&spec(&[2, 1]), &spec(&[3]), 2, 6, &limits()).unwrap(),
        "I3*I2 not inside I4",
    );
    c.require(
        ideal_inclusion_check(&spec(&[2, 2]), &spec(&[4]), 2, 6, &limits()).unwrap(),
        "I3*I3 not inside I5",
    );
    let w1 = ideal_inclusion_witnesses(&spec(&[3]), &spec(&[2, 1]), 2, 6, &limits()).unwrap();
    c.require(!w1.is_empty(), "reverse of I3*I2 <= I4 unexpectedly holds");
    let w2 = ideal_inclusion_witnesses(&spec(&[4]), &spec(&[2, 2]), 2, 6, &limits()).unwrap();
    c.require(!w2.is_empty(), "reverse of I3*I3 <= I5 unexpectedly holds");
    c.finish();
}

#[test]
fn criterion_09_proper_subalgebra_finiteness() {
    let mut c = Criterion::new(9, "proper subalgebra finite vs infinite");
    for n in 2..=3usize {
        let dims = proper_dims(&spec(&[2]), n, 8, &limits()).unwrap();
        let top = (0..=8).rev().find(|&d| dims.total_degree_dim(d) > 0).unwrap();
        c.require(top < 8, format!("n={n}: no vanishing tail up to 8"));
        for d in (top + 1)..=8 {
            c.require(dims.total_degree_dim(d) == 0, format!("n={n}: degree {d} reappears"));
        }
    }
    let dims = proper_dims(&spec(&[1, 1]), 2, 8, &limits()).unwrap();
    for d in [2u32, 4, 6, 8] {
        c.require(dims.total_degree_dim(d) > 0, format!("spec=(1,1): degree {d} vanished"));
    }
    c.finish();
}

#[test]
fn criterion_10_invariant_series() {
    let mut c = Criterion::new(10, "invariant series values and degree bound");
    let inv = sl_invariant_series(&expansion(&[2], 2, 4), 2);
    c.require(inv == vec![1, 0, 1], format!("spec=(2): got {inv:?}"));
    c.require(inv.len() as u32 - 1 <= 2, "degree exceeds n*s2 = 2");
    for n in 2..=3usize {
        let inv = sl_invariant_series(&expansion(&[1], n, 4), n);
        c.require(inv == vec![1], format!("spec=(1) n={n}: got {inv:?}"));
    }
    c.finish();
}

#[test]
fn criterion_11_symmetric_function_core() {
    let mut c = Criterion::new(11, "symmetric function core properties");

    // Schur round-trip on random integer combinations, |λ| ≤ 8, n ≤ 4
    let strategy = (1usize..=4).prop_flat_map(|n| {
        let parts = proptest::collection::vec(1u32..=8, 0..=n);
        let entry = (parts, -3i64..=5).prop_filter("nonzero", |(_, c)| *c != 0);
        (Just(n), proptest::collection::vec(entry, 0..5))
    });
    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    let result = runner.run(&strategy, |(n, entries)| {
        let mut exp = SchurExpansion::new(n);
        for (mut parts, coeff) in entries {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            while parts.iter().sum::<u32>() > 8 {
                parts.pop();
            }
            exp.add(Partition::new(parts), coeff);
        }
        let back = schur_expand(&exp.to_sym_poly(Some(8))).unwrap();
        prop_assert_eq!(&back, &exp);
        Ok(())
    });
    c.require(result.is_ok(), format!("round-trip: {result:?}"));

    // LR conjugate symmetry, exhaustive for |μ|+|ν| ≤ 8
    for a in 1..=7u32 {
        for b in 1..=(8 - a) {
            let n = (a + b) as usize;
            for mu in partitions_of(a, a as usize) {
                for nu in partitions_of(b, b as usize) {
                    c.require(
                        lr_conjugate_symmetry_check(&mu, &nu, n),
                        format!("conjugate symmetry fails at {mu}, {nu}"),
                    );
                }
            }
        }
    }

    // column orthogonality of the character tables of S_m, m ≤ 7
    for m in 1..=7u32 {
        let classes = partitions_of(m, m as usize);
        for c1 in &classes {
            for c2 in &classes {
                let sum: i64 = classes
                    .iter()
                    .map(|lam| mn_character(lam, c1) * mn_character(lam, c2))
                    .sum();
                let expect = if c1 == c2 {
                    &factorial(m) / class_size(c1)
                } else {
                    num::BigInt::from(0)
                };
                c.require(
                    num::BigInt::from(sum) == expect,
                    format!("orthogonality fails at m={m}, classes {c1}, {c2}"),
                );
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_12_product_additivity() {
    let mut c = Criterion::new(12, "additive shape profile with boundary witnesses");
    let report = check_product_additivity(&spec(&[2]), &spec(&[2]), 3, 6, &limits()).unwrap();
    c.require(report.passed(), report.to_text());

    // the profile and witness rows, spelled out against the raw expansion
    let exp = expansion(&[2, 2], 3, 6);
    for (lam, _) in exp.iter() {
        c.require(lam.part(3) <= 3, format!("λ₃ > s₂ at {lam}"));
    }
    // a weight-≤6 partition can reach the truncation boundary D−2 only in
    // row 1; row 2 is witnessed at ⌊(D−2)/2⌋
    c.require(exp.support().any(|lam| lam.part(1) >= 4), "no witness with λ₁ ≥ 4");
    c.require(exp.support().any(|lam| lam.part(2) >= 2), "no witness with λ₂ ≥ 2");
    c.finish();
}

#[test]
fn trace_self_inner_product_consistency() {
    // ⟨χ,χ⟩ = Σ m_λ² for the computed quotient characters, m ≤ 5
    for (ps, m) in [(&[2u32][..], 5u32), (&[1, 1][..], 5), (&[2, 1][..], 5)] {
        let (_, chi) = multilinear_quotient(&spec(ps), m, &limits()).unwrap();
        let mut inner = BigRational::from(num::BigInt::from(0));
        for rho in partitions_of(m, m as usize) {
            let v = chi.value(&rho);
            inner += BigRational::from(class_size(&rho)) * v.clone() * v;
        }
        inner /= BigRational::from(factorial(m));
        let dec = sm_decompose(&chi).unwrap();
        let sq: i64 = dec.iter().map(|(_, c)| c * c).sum();
        assert_eq!(inner, BigRational::from(num::BigInt::from(sq)), "spec={ps:?}");
    }
}

#[test]
fn codimension_map_sanity() {
    // decomposition multiplicities weighted by hook dimensions reproduce c_m
    for ps in [&[2u32][..], &[1, 1]] {
        for m in 2..=5u32 {
            let (codim, chi) = multilinear_quotient(&spec(ps), m, &limits()).unwrap();
            let dec = sm_decompose(&chi).unwrap();
            let total: BigRational = dec
                .iter()
                .map(|(lam, c)| {
                    // dim χ_λ = χ_λ(1^m)
                    let dim = mn_character(lam, &Partition::new(vec![1; m as usize]));
                    BigRational::from(num::BigInt::from(c * dim))
                })
                .sum();
            assert_eq!(total, BigRational::from(num::BigInt::from(codim)), "spec={ps:?} m={m}");
        }
    }
}
