//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! The randomized suites draw from seeded generators, stratified so the
//! doubly-exponential delta chains stay inside the stated runtime targets
//! while every (prime, item, index) combination is exercised.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;

use common::{ring_with_vars, Sampler};
use diffpow::chevalley::{check_n_cap, compare_powers};
use diffpow::config::{self, JobConfig};
use diffpow::diffops::differential_power_member;
use diffpow::groebner::{member_bruteforce, IdealHandle};
use diffpow::pderiv::{lemma_propdelta_check, mixed_power_profile, DeltaLemmaItem, PDerivation};
use diffpow::poly::Polynomial;
use diffpow::ring::Ring;
use diffpow::summand::{summand_mixed_power_profile, SummandSpec};
use diffpow::symbolic::{saturation_symbolic_power, PrimeSpec};

fn pass(line: &str) {
    println!("{line}: PASS");
}

/// Caps (variables, element-side terms, ideal-side terms) for drawing lemma
/// inputs at a given delta-iteration depth. Deeper chains get sparser inputs
/// and fewer variables: the membership ideals are generated by iterated
/// delta images, and integer Buchberger on three-variable chains cascades.
fn lemma_caps(p: u64, depth: u32) -> (usize, usize, usize) {
    match (p, depth) {
        (2, 0..=1) => (3, 3, 3),
        (2, 2) => (2, 3, 3),
        (2, 3) => (2, 3, 2),
        (2, _) => (2, 2, 2),
        (3, 1) => (3, 3, 2),
        (3, 2) => (2, 2, 2),
        (3, 3) => (2, 2, 1),
        (3, _) => (1, 2, 2),
        (5, 1) => (3, 2, 2),
        (5, 2) => (2, 2, 1),
        (5, 3) => (1, 2, 1),
        _ => (1, 2, 1),
    }
}

#[test]
fn criterion_1_delta_identity_suite() {
    let start = Instant::now();
    let items = DeltaLemmaItem::ALL;
    for &p in &[2u64, 3, 5] {
        let mut sampler = Sampler::new(1000 + p);
        for i in 0..200usize {
            if i < 80 {
                // Defining identities on unrestricted draws from the box.
                let ring = ring_with_vars(3, p);
                let pd = PDerivation::new(&ring).unwrap();
                let x = sampler.poly(&ring, 3, 4, 9);
                let y = sampler.poly(&ring, 3, 4, 9);
                let one = Polynomial::one(&ring);
                assert!(pd.delta(&one).unwrap().is_zero(), "delta(1) != 0 at p={p}");
                // delta(xy) = x^p delta(y) + delta(x) y^p + p delta(x) delta(y)
                let dxy = pd.delta(&x.checked_mul(&y).unwrap()).unwrap();
                let dx = pd.delta(&x).unwrap();
                let dy = pd.delta(&y).unwrap();
                let xp = x.checked_pow(p as u32).unwrap();
                let yp = y.checked_pow(p as u32).unwrap();
                let rhs = xp.checked_mul(&dy).unwrap()
                    + dx.checked_mul(&yp).unwrap()
                    + dx.checked_mul(&dy).unwrap().scale(&BigInt::from(p));
                assert_eq!(dxy, rhs, "product rule failed at p={p}, pair {i}");
                // delta(x+y) = delta(x) + delta(y) + C_p(x, y)
                let dsum = pd.delta(&x.checked_add(&y).unwrap()).unwrap();
                let carry = pd.carry_term(&x, &y).unwrap();
                assert_eq!(dsum, dx + dy + carry, "sum rule failed at p={p}, pair {i}");
            } else {
                let k = i - 80;
                let item = items[k % items.len()];
                let n = 1 + ((k / items.len()) % 3) as u32;
                let depth = n + u32::from(item == DeltaLemmaItem::FrobeniusImage);
                let (vars, elem_terms, ideal_terms) = lemma_caps(p, depth);
                let ring = ring_with_vars(vars, p);
                let pd = PDerivation::new(&ring).unwrap().with_cap(depth.max(4));
                // The membership ideal is built from x for the Frobenius
                // item and from y everywhere else.
                let (x_terms, y_terms) = if item == DeltaLemmaItem::FrobeniusImage {
                    (ideal_terms, elem_terms)
                } else {
                    (elem_terms, ideal_terms)
                };
                let x = sampler.poly(&ring, x_terms, 4, 9);
                let y = sampler.poly(&ring, y_terms, 4, 9);
                let ok = lemma_propdelta_check(&pd, item, &x, &y, n).unwrap();
                assert!(
                    ok,
                    "lemma item {item:?} failed: p={p}, n={n}, x={x:?}, y={y:?}"
                );
            }
        }
    }
    pass(&format!(
        "criterion 1 (delta identity suite, {:.1}s)",
        start.elapsed().as_secs_f64()
    ));
    assert!(start.elapsed().as_secs() < 120, "runtime target exceeded");
}

#[test]
fn criterion_2_zariski_nagata_regular_case() {
    let start = Instant::now();
    // A-linear side: eta = (x_1..x_m).
    let mut sampler = Sampler::new(42);
    for case in 0..100usize {
        let m = 1 + case % 3;
        let ring = ring_with_vars(m, 2);
        let eta = IdealHandle::new((0..m).map(|i| Polynomial::var(&ring, i)).collect()).unwrap();
        let d = 1 + (case / 3) as u64 % 7;
        let f = sampler.homogeneous(&ring, d, 4, 9);
        for k in 1..=6u32 {
            let differential = differential_power_member(&f, &eta, k).unwrap();
            let ordinary = eta.power(k).unwrap().member(&f).unwrap();
            assert_eq!(
                differential, ordinary,
                "eta disagreement: m={m}, k={k}, f={f:?}"
            );
        }
    }

    // Mixed side: n = (p) + eta, degree capped by variable count so the
    // truncated delta chains stay small.
    let mut sampler = Sampler::new(43);
    for case in 0..100usize {
        let (m, max_d) = match case % 3 {
            0 => (1, 7u64),
            1 => (2, 6),
            _ => (3, 4),
        };
        let ring = ring_with_vars(m, 2);
        let mut gens: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(&ring, i)).collect();
        gens.push(Polynomial::constant(&ring, 2));
        let nn = IdealHandle::new(gens).unwrap();
        let d = 1 + (case as u64) % max_d;
        let p_content = sampler.rng.gen_range(0..=2u32);
        let f = sampler
            .homogeneous(&ring, d, 3, 9)
            .scale(&BigInt::from(2).pow(p_content));
        let profile = mixed_power_profile(&f, &nn, 6).unwrap();
        for k in 1..=6u32 {
            let ordinary = nn.power(k).unwrap().member(&f).unwrap();
            assert_eq!(
                profile[(k - 1) as usize],
                ordinary,
                "n disagreement: m={m}, k={k}, f={f:?}"
            );
        }
    }

    // Extra univariate coverage at p = 3.
    let mut sampler = Sampler::new(44);
    for case in 0..30usize {
        let ring = ring_with_vars(1, 3);
        let nn = IdealHandle::new(vec![
            Polynomial::var(&ring, 0),
            Polynomial::constant(&ring, 3),
        ])
        .unwrap();
        let d = 1 + (case as u64) % 6;
        let f = sampler.homogeneous(&ring, d, 2, 9);
        let profile = mixed_power_profile(&f, &nn, 6).unwrap();
        for k in 1..=6u32 {
            let ordinary = nn.power(k).unwrap().member(&f).unwrap();
            assert_eq!(profile[(k - 1) as usize], ordinary);
        }
    }
    pass(&format!(
        "criterion 2 (Zariski-Nagata regular case, {:.1}s)",
        start.elapsed().as_secs_f64()
    ));
}

#[test]
fn criterion_3_sharp_example_reproduction() {
    let start = Instant::now();
    for p in [2u64, 3] {
        let ring = Ring::standard(&["s", "t"], p).unwrap();
        let spec = SummandSpec::veronese(&ring, 2).unwrap();
        let presented = spec.presentation().unwrap();
        // Kernel matches xz - y^2 up to sign and order.
        assert_eq!(presented.kernel.len(), 1);
        let rel = diffpow::parse::parse_polynomial(&presented.ring, "y1*y3 - y2^2").unwrap();
        assert!(
            presented.kernel[0] == rel || presented.kernel[0] == rel.neg_ref(),
            "kernel mismatch at p={p}: {:?}",
            presented.kernel[0]
        );

        let pres = presented.ring.clone();
        let x = Polynomial::var(&pres, 0);
        let y = Polynomial::var(&pres, 1);
        let z = Polynomial::var(&pres, 2);
        let prime = PrimeSpec {
            generators: vec![x.clone(), y.clone()],
            contains_p: false,
            witness: Some(z.clone()),
            closed_form: None,
            user_supplied: false,
            name: "Qxy".into(),
        };
        let mut m_gens: Vec<Polynomial> = (0..3).map(|i| Polynomial::var(&pres, i)).collect();
        m_gens.push(Polynomial::constant(&pres, BigInt::from(p)));
        let m_handle = IdealHandle::new(m_gens).unwrap();

        for n in 1..=3u32 {
            // Saturation-computed Q^(2n) equals (x^n) by mutual membership.
            let sp = saturation_symbolic_power(presented, &prime, 2 * n).unwrap();
            assert!(!sp.computed_mod_p);
            let xn = x.pow(n);
            let sat_handle = presented.ideal_with_kernel(&sp.generators).unwrap();
            assert!(
                sat_handle.member(&xn).unwrap(),
                "x^{n} missing from Q^(2n) at p={p}"
            );
            let xn_handle = presented
                .ideal_with_kernel(std::slice::from_ref(&xn))
                .unwrap();
            for g in &sp.generators {
                assert!(
                    xn_handle.member(g).unwrap(),
                    "extra generator {g:?} in Q^({}) at p={p}",
                    2 * n
                );
            }
            // Sharpness: x^n in m^n but not in m^(n+1).
            let mn = presented
                .ideal_with_kernel(m_handle.power(n).unwrap().generators())
                .unwrap();
            assert!(mn.member(&xn).unwrap());
            let mn1 = presented
                .ideal_with_kernel(m_handle.power(n + 1).unwrap().generators())
                .unwrap();
            assert!(!mn1.member(&xn).unwrap(), "x^{n} in m^{} at p={p}", n + 1);
        }
    }
    pass(&format!(
        "criterion 3 (sharp example, {:.1}s)",
        start.elapsed().as_secs_f64()
    ));
}

#[test]
fn criterion_4_final_example_table() {
    let start = Instant::now();
    for p in [2u64, 3] {
        let ring = Ring::standard(&["x", "y"], p).unwrap();
        let spec = SummandSpec::veronese(&ring, 2).unwrap();
        let pres = spec.presentation_ring().unwrap();
        let m_gens: Vec<Polynomial> = (0..3)
            .map(|i| Polynomial::var(&pres, i))
            .chain([Polynomial::constant(&pres, BigInt::from(p))])
            .collect();
        let probes = [
            (Polynomial::constant(&ring, BigInt::from(p)), false),
            (Polynomial::constant(&ring, BigInt::from(p * p)), true),
            (
                diffpow::parse::parse_polynomial(&ring, "x^2").unwrap(),
                true,
            ),
            (
                diffpow::parse::parse_polynomial(&ring, "x*y").unwrap(),
                true,
            ),
            (
                diffpow::parse::parse_polynomial(&ring, "y^2").unwrap(),
                true,
            ),
        ];
        for (probe, expected) in &probes {
            let dq = spec.dq_power_member(probe, &m_gens, 2).unwrap();
            assert_eq!(dq, *expected, "summand power at p={p}, probe {probe:?}");
            let mixed = summand_mixed_power_profile(&spec, &m_gens, probe, 2).unwrap();
            assert_eq!(mixed[1], *expected, "mixed power at p={p}, probe {probe:?}");
        }
    }
    pass(&format!(
        "criterion 4 (final-example table, {:.1}s)",
        start.elapsed().as_secs_f64()
    ));
}

#[test]
fn criterion_5_non_differentially_extensible_example() {
    let start = Instant::now();
    let ring = Ring::standard(&["x"], 2).unwrap();
    let spec = SummandSpec::veronese(&ring, 2).unwrap();
    let pres = spec.presentation_ring().unwrap();
    let m_gens = vec![
        Polynomial::var(&pres, 0),
        Polynomial::constant(&pres, BigInt::from(2)),
    ];
    let x2 = diffpow::parse::parse_polynomial(&ring, "x^2").unwrap();
    // x^2 lies in the second summand differential power...
    assert!(spec.dq_power_member(&x2, &m_gens, 2).unwrap());
    // ... but not in m^2 = m^<2>_mix.
    let presented = spec.presentation().unwrap();
    let m_handle = IdealHandle::new(m_gens.clone()).unwrap();
    let m2 = presented
        .ideal_with_kernel(m_handle.power(2).unwrap().generators())
        .unwrap();
    let rep = spec.subalgebra_member(&x2).unwrap().unwrap();
    assert!(!m2.member(&rep).unwrap());
    let mixed = summand_mixed_power_profile(&spec, &m_gens, &x2, 2).unwrap();
    assert_eq!(mixed, vec![true, false]);
    pass(&format!(
        "criterion 5 (non-extensible example, {:.1}s)",
        start.elapsed().as_secs_f64()
    ));
}

#[test]
fn criterion_6_summand_power_properties() {
    let start = Instant::now();
    let ring = Ring::standard(&["s", "t"], 2).unwrap();
    let spec = SummandSpec::veronese(&ring, 2).unwrap();
    let presented = spec.presentation().unwrap();
    let pres = presented.ring.clone();
    let q_gens = vec![
        Polynomial::constant(&pres, 2),
        Polynomial::var(&pres, 0),
        Polynomial::var(&pres, 1),
    ];
    let q_handle = IdealHandle::new(q_gens.clone()).unwrap();

    // Q^n <= Q^D(n) generator-wise for n <= 3.
    for n in 1..=3u32 {
        for g in q_handle.power(n).unwrap().generators() {
            let ambient = presented.substitute(g).unwrap();
            if ambient.is_zero() {
                continue;
            }
            assert!(
                spec.dq_power_member(&ambient, &q_gens, n).unwrap(),
                "Q^{n} generator {g:?} escaped the summand power"
            );
        }
    }

    // Primary behavior at n = 2 on 50 sampled pairs: x outside Q,
    // x*y inside Q^D(2) forces y inside.
    let mut sampler = Sampler::new(7);
    let q_full = presented.ideal_with_kernel(&q_gens).unwrap();
    let mut checked = 0usize;
    let mut positive = 0usize;
    while checked < 50 {
        let x = sampler.poly(&pres, 2, 4, 4);
        if q_full.member(&x).unwrap() {
            continue;
        }
        let y = if checked.is_multiple_of(2) {
            // Bias half the draws into Q^2 so the hypothesis fires.
            let gens = q_handle.power(2).unwrap();
            let k = sampler.rng.gen_range(0..gens.generators().len());
            gens.generators()[k].clone()
        } else {
            sampler.poly(&pres, 2, 4, 4)
        };
        let xy_ambient = presented.substitute(&x.checked_mul(&y).unwrap()).unwrap();
        let y_ambient = presented.substitute(&y).unwrap();
        if xy_ambient.is_zero() || y_ambient.is_zero() {
            continue;
        }
        checked += 1;
        if spec.dq_power_member(&xy_ambient, &q_gens, 2).unwrap() {
            positive += 1;
            assert!(
                spec.dq_power_member(&y_ambient, &q_gens, 2).unwrap(),
                "primary property failed: x={x:?}, y={y:?}"
            );
        }
    }
    assert!(positive >= 20, "too few positive primary cases: {positive}");

    // Monotonicity on sampled witnesses.
    let mut sampler = Sampler::new(8);
    for _ in 0..20 {
        let w = presented.substitute(&sampler.poly(&pres, 2, 4, 4)).unwrap();
        if w.is_zero() {
            continue;
        }
        for n in 1..=2u32 {
            let lower = spec.dq_power_member(&w, &q_gens, n).unwrap();
            let higher = spec.dq_power_member(&w, &q_gens, n + 1).unwrap();
            assert!(!higher || lower, "monotonicity failed at n={n} for {w:?}");
        }
    }
    pass(&format!(
        "criterion 6 (summand power properties, {:.1}s)",
        start.elapsed().as_secs_f64()
    ));
}

fn run_config_text(text: &str) -> bool {
    let parsed = JobConfig::from_json(text).unwrap();
    let job = config::resolve(&parsed).unwrap();
    config::run(&job).unwrap().iter().all(|o| o.passed())
}

#[test]
fn criterion_7_theorem_instances_on_bundled_configs() {
    let start = Instant::now();
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs");
    for name in [
        "example-sharp.json",
        "veronese-m2-d2.json",
        "segre-2x2.json",
        "invariant-diag2.json",
    ] {
        let text = std::fs::read_to_string(format!("{dir}/{name}")).unwrap();
        assert!(run_config_text(&text), "bundled config {name} failed");
        // p in {2, 3}: rerun with the other prime where the family allows it
        // (the order-2 invariant family requires p coprime to 2).
        if name != "invariant-diag2.json" {
            let flipped = text.replace("\"p\": 2", "\"p\": 3");
            assert!(run_config_text(&flipped), "config {name} failed at p=3");
        }
    }
    let elapsed = start.elapsed();
    pass(&format!(
        "criterion 7 (theorem instances, {:.1}s)",
        elapsed.as_secs_f64()
    ));
    assert!(elapsed.as_secs() < 600, "runtime target exceeded");
}

#[test]
fn criterion_8_groebner_oracle_equivalence() {
    let start = Instant::now();
    let mut sampler = Sampler::new(77);
    let mut agreements = 0usize;
    let mut members = 0usize;
    // A small fraction of random integer ideals exceed the pair budget
    // (about 0.2% in a 600-instance soak); those yield no verdict and are
    // redrawn, never counted as agreement.
    let mut budget_outs = 0usize;
    while agreements < 300 {
        let m = 1 + agreements % 3;
        let ring = ring_with_vars(m, 5);
        let gen_count = 1 + sampler.rng.gen_range(0..3usize);
        let gens: Vec<Polynomial> = (0..gen_count)
            .map(|_| {
                let d = 1 + sampler.rng.gen_range(0..3u64);
                sampler.homogeneous(&ring, d, 3, 9)
            })
            .collect();
        let ideal = IdealHandle::new(gens).unwrap();
        let d = 1 + sampler.rng.gen_range(0..5u64);
        let f = if sampler.rng.gen_bool(0.4) {
            // Bias toward members: random combination of the generators.
            let mut acc = Polynomial::zero(&ring);
            for g in ideal.generators() {
                let cof_deg = d.saturating_sub(g.max_weighted_degree().unwrap_or(0));
                let cof = sampler.homogeneous(&ring, cof_deg, 2, 3);
                acc = acc + cof.checked_mul(g).unwrap();
            }
            if acc.is_zero() {
                continue;
            }
            acc
        } else {
            sampler.homogeneous(&ring, d, 4, 9)
        };
        if !f.is_homogeneous() {
            continue;
        }
        let basis_verdict = match ideal.member(&f) {
            Ok(v) => v,
            Err(diffpow::Error::BudgetExceeded(_)) => {
                budget_outs += 1;
                assert!(budget_outs <= 5, "too many budget-outs");
                continue;
            }
            Err(e) => panic!("unexpected membership error: {e}"),
        };
        let brute_verdict =
            member_bruteforce(&f, &ideal, f.max_weighted_degree().unwrap()).unwrap();
        assert_eq!(
            basis_verdict,
            brute_verdict,
            "oracle mismatch: gens={:?}, f={f:?}",
            ideal.generators()
        );
        agreements += 1;
        if basis_verdict {
            members += 1;
        }
    }
    assert!(members >= 60, "too few member instances: {members}");
    pass(&format!(
        "criterion 8 (groebner oracle equivalence, {} member hits, {:.1}s)",
        members,
        start.elapsed().as_secs_f64()
    ));
}

#[test]
fn check_n_cap_matches_direct_membership_on_spec_examples() {
    // The p-power cap step on its own examples: p^(2D), p^D f1, f1^2 at n=2.
    let ring = Ring::standard(&["s", "t"], 2).unwrap();
    let spec = SummandSpec::veronese(&ring, 2).unwrap();
    let f1 = diffpow::parse::parse_polynomial(&ring, "s^2").unwrap();
    let cases = [
        Polynomial::constant(&ring, BigInt::from(16)), // p^(2D), d=0
        f1.scale(&BigInt::from(4)),                    // p^D * f1
        f1.pow(2),                                     // f1^2
    ];
    for g in &cases {
        let verdict = check_n_cap(&spec, g, 2).unwrap();
        assert!(verdict.derived, "derived cap failed for {g:?}");
        assert_eq!(verdict.derived, verdict.direct, "cap disagrees for {g:?}");
    }
}

#[test]
fn corollary_dispatch_consistency() {
    // The combined check must agree with the individual routes.
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs");
    let text = std::fs::read_to_string(format!("{dir}/example-sharp.json")).unwrap();
    let parsed = JobConfig::from_json(&text).unwrap();
    let job = config::resolve(&parsed).unwrap();
    let no_p = diffpow::chevalley::check_thm_no_p(&job.spec, &job.primes["Qxy"], 2).unwrap();
    let with_p = diffpow::chevalley::check_thm_p(&job.spec, &job.primes["Qpxy"], 2).unwrap();
    let combined = diffpow::chevalley::check_corollary(
        &job.spec,
        &[job.primes["Qxy"].clone(), job.primes["Qpxy"].clone()],
        2,
    )
    .unwrap();
    assert!(no_p.verdict && with_p.verdict && combined.verdict);
    assert_eq!(
        combined.evidence.len(),
        no_p.evidence.len() + with_p.evidence.len()
    );
    assert!(combined.conjunction_holds());
}

#[test]
fn compare_powers_observes_expected_containments() {
    let ring = Ring::standard(&["x", "y"], 2).unwrap();
    let spec = SummandSpec::veronese(&ring, 2).unwrap();
    let presented = spec.presentation().unwrap();
    let pres = presented.ring.clone();
    let prime = PrimeSpec {
        generators: (0..3)
            .map(|i| Polynomial::var(&pres, i))
            .chain([Polynomial::constant(&pres, 2)])
            .collect(),
        contains_p: true,
        witness: Some(Polynomial::one(&pres)),
        closed_form: Some(diffpow::symbolic::ClosedForm::PowersEqual),
        user_supplied: false,
        name: "M".into(),
    };
    let probes: Vec<Polynomial> = [
        Polynomial::constant(&ring, 2),
        Polynomial::constant(&ring, 4),
        diffpow::parse::parse_polynomial(&ring, "x^2").unwrap(),
    ]
    .to_vec();
    let table = compare_powers(&spec, &prime, 2, &probes).unwrap();
    assert!(table
        .observed
        .contains(&"symbolic<=summand-diff: yes".to_string()));
    assert_eq!(table.rows.len(), probes.len() * 2);
}
