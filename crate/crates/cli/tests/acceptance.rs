//! One line per acceptance criterion. Runs without the libtest harness so the lines always print.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use casson_core::bundle::{circle_bundle_furuta_ohta, circle_bundle_rho, CircleBundleData};
use casson_core::equivariant::{
    equivariant_casson_branched, furuta_ohta_mapping_torus, BranchedQuotientData, FreeQuotientData, MappingTorusData,
};
use casson_core::exact::Rational;
use casson_core::families::{
    free_composite_family, free_composite_instance, random_chain, random_seifert, random_unimodular,
    torus_branched_instance, trivial_alexander_corpus,
};
use casson_core::floer::{check_evenness, deduce_sign_pattern, fixtures, lambda_fo_from_lefschetz, lefschetz};
use casson_core::knot::{
    alexander_polynomial, arf_invariant, mirror, murasugi_trivial, presets, signature_spectrum, tl_signature,
    torus_knot_seifert, SeifertMatrix, SignatureSpectrum,
};
use casson_core::sphere::{check_casson_rohlin, mubar_double_branched, SurgeryPresentation};
use casson_core::tori::{self, det4, four_orbit_count, xi_hypothesis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_260_101;
const RANDOM_SEIFERT_COUNT: usize = 1000;
const RANDOM_CHAIN_COUNT: usize = 500;
const MAX_GENUS: usize = 3;
const MAX_SPECTRUM_ORDER: usize = 12;
const SPECTRUM_SAMPLE: usize = 110;
const TORUS_Q: [i64; 5] = [3, 5, 7, 9, 11];

const BUDGET_1: Duration = Duration::from_millis(1);
const BUDGET_2: Duration = Duration::from_millis(1);
const BUDGET_3: Duration = Duration::from_millis(10);
const BUDGET_4: Duration = Duration::from_secs(1);
const BUDGET_6: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Best wall time over `1 + reps` runs.
fn timed(reps: usize, f: impl Fn() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let mut out = f();
    let mut best = t.elapsed();
    for _ in 0..reps {
        let t = Instant::now();
        out = f();
        best = best.min(t.elapsed());
    }
    (out, best)
}

fn poincare_chain() -> Outcome {
    let p = SurgeryPresentation::single(presets::left_trefoil(), -1).expect("q != 0");
    let r = check_casson_rohlin(&p).expect("valid");
    outcome(r.casson == -1 && r.rohlin == 1 && r.congruent, format!("lambda={} rho={}", r.casson, r.rohlin))
}

fn cork() -> Outcome {
    let spectrum = SignatureSpectrum::new(vec![0, 16]).expect("valid");
    let d = BranchedQuotientData::new(2, 0, spectrum).expect("valid");
    let lambda = equivariant_casson_branched(&d);
    let pattern = deduce_sign_pattern(&[0, 1, 0, 1, 0, 1, 0, 1], 4);
    let all_minus = matches!(&pattern, Ok(p) if p.is_all_minus());
    outcome(
        lambda == Rational::from_integer(2) && all_minus,
        format!("lambda_fo={lambda} pattern_all_minus={all_minus}"),
    )
}

fn mubar() -> Outcome {
    let k = torus_knot_seifert(3, 5).expect("coprime");
    let a = mubar_double_branched(&k).expect("sign divisible by 8");
    let b = equivariant_casson_branched(&BranchedQuotientData::from_knot(2, 0, &k).expect("valid"));
    let c = Rational::from_integer(lambda_fo_from_lefschetz(&fixtures::poincare_tau()).expect("even"));
    let minus_one = Rational::from_integer(-1);
    outcome(a == minus_one && b == minus_one && c == minus_one, format!("mubar={a} branched={b} floer={c}"))
}

fn tori_parity() -> Outcome {
    let mut rings: Vec<(String, tori::CupRing)> = tori::three_form_rings()
        .into_iter()
        .map(|(f, k, r)| (format!("form {} presentation {k}", f.triple), r))
        .collect();
    rings.push(("T4".into(), tori::torus_ring()));
    let mut checked = 0;
    let mut failures = Vec::new();
    for (name, r) in &rings {
        let det = det4(r);
        for w in tori::admissible_classes(r).expect("refinement available") {
            checked += 1;
            let count = four_orbit_count(r, w).expect("w in range");
            if !xi_hypothesis(r, w) || (count % 2) as u8 != det {
                failures.push(format!("{name} w={w:#04x}"));
            }
        }
    }
    outcome(
        failures.is_empty() && rings.len() == 9 && checked > 0,
        format!("{} rings, {checked} admissible classes, failures {failures:?}", rings.len()),
    )
}

fn circle_bundles() -> Outcome {
    let corpus = trivial_alexander_corpus();
    let mut bad = Vec::new();
    for (name, knot) in &corpus {
        let d = CircleBundleData { knot: knot.clone(), euler: 1 };
        let ok = match (circle_bundle_rho(&d), circle_bundle_furuta_ohta(&d)) {
            (Ok(r), Ok(f)) => r.value == 0 && f.value == 0 && r.certificate.is_valid() && f.certificate.is_valid(),
            _ => false,
        };
        if !ok {
            bad.push(name.clone());
        }
    }
    outcome(bad.is_empty() && corpus.len() >= 5, format!("{} knots, failures {bad:?}", corpus.len()))
}

fn corpus(rng: &mut ChaCha8Rng) -> Vec<SeifertMatrix> {
    let mut out: Vec<SeifertMatrix> = presets::NAMES.iter().map(|n| presets::by_name(n).unwrap().unwrap()).collect();
    for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7)] {
        out.push(torus_knot_seifert(p, q).expect("coprime"));
    }
    out.extend((0..RANDOM_SEIFERT_COUNT).map(|_| random_seifert(rng, MAX_GENUS)));
    out
}

fn lambda_fo(d: MappingTorusData) -> Rational {
    furuta_ohta_mapping_torus(&d).expect("valid data")
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let knots = corpus(&mut rng);
    let mut failed: Vec<&str> = Vec::new();

    // a: mirror antisymmetry
    let mut a_ok = true;
    for s in &knots {
        let m = mirror(s);
        let (num, den) = (rng.gen_range(1..7), 7);
        for a in [Rational::new(1, 2), Rational::new(num, den)] {
            a_ok &= tl_signature(&m, a).unwrap() == -tl_signature(s, a).unwrap();
        }
        let n = rng.gen_range(2..=5usize);
        let base = rng.gen_range(-3..=3);
        let b = BranchedQuotientData::from_knot(n, base, s).unwrap();
        let bm = BranchedQuotientData::from_knot(n, -base, &m).unwrap();
        a_ok &= lambda_fo(MappingTorusData::Branched(bm)) == -lambda_fo(MappingTorusData::Branched(b));
        let q = loop {
            let q = rng.gen_range(-4i64..=4);
            if q != 0 && num_integer::gcd(q, n as i64) == 1 {
                break q;
            }
        };
        let f = FreeQuotientData::new(n, q, base, s.clone()).unwrap();
        let fm = FreeQuotientData::new(n, -q, -base, m).unwrap();
        a_ok &= lambda_fo(MappingTorusData::Free(fm)) == -lambda_fo(MappingTorusData::Free(f));
    }
    if !a_ok {
        failed.push("a");
    }

    // b: spectrum symmetry and vanishing at 0
    let mut b_ok = true;
    for s in knots.iter().take(SPECTRUM_SAMPLE) {
        for n in 1..=MAX_SPECTRUM_ORDER {
            let v = signature_spectrum(s, n).unwrap();
            let v = v.values();
            b_ok &= v[0] == 0 && (1..n).all(|m| v[m] == v[n - m]);
        }
    }
    if !b_ok {
        failed.push("b");
    }

    // c: Δ″(1)/2 ≡ arf and Murasugi
    let mut c_ok = true;
    for s in &knots {
        let delta = alexander_polynomial(s).unwrap();
        let arf = arf_invariant(s).unwrap();
        c_ok &= (delta.second_derivative_at_one() / 2).rem_euclid(2) as u8 == arf;
        c_ok &= murasugi_trivial(&delta) == (arf == 0);
    }
    if !c_ok {
        failed.push("c");
    }

    // d: λ ≡ ρ on random chains
    let mut d_ok = true;
    for _ in 0..RANDOM_CHAIN_COUNT {
        let len = rng.gen_range(0..=5);
        d_ok &= check_casson_rohlin(&random_chain(&mut rng, len)).unwrap().congruent;
    }
    if !d_ok {
        failed.push("d");
    }

    // e: Lefschetz evenness on fixtures
    let e_ok = fixtures::all().iter().all(|(_, f)| check_evenness(f).unwrap() && lefschetz(f).unwrap() % 2 == 0);
    if !e_ok {
        failed.push("e");
    }

    // f: congruence invariance
    let mut f_ok = true;
    for s in knots.iter().step_by(5) {
        let p = random_unimodular(&mut rng, s.size(), 2 * s.size());
        let t = s.congruence(&p).unwrap();
        f_ok &= alexander_polynomial(&t).unwrap() == alexander_polynomial(s).unwrap();
        f_ok &= arf_invariant(&t).unwrap() == arf_invariant(s).unwrap();
        let n = rng.gen_range(2..=6);
        f_ok &= signature_spectrum(&t, n).unwrap() == signature_spectrum(s, n).unwrap();
    }
    if !f_ok {
        failed.push("f");
    }

    outcome(
        failed.is_empty(),
        format!(
            "{} knots, {RANDOM_CHAIN_COUNT} chains, {} floer fixtures; failed sub-checks {failed:?}",
            knots.len(),
            fixtures::all().len()
        ),
    )
}

fn conjecture1() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for q in TORUS_Q {
        total += 1;
        match torus_branched_instance(q, q + 2) {
            Ok(i) if i.congruent => {}
            other => bad.push(format!("T({q},{}) {other:?}", q + 2)),
        }
    }
    for (name, k, n, q) in free_composite_family() {
        match free_composite_instance(&name, &k, n, q) {
            Ok(Some(i)) => {
                total += 1;
                if !i.congruent {
                    bad.push(i.label);
                }
            }
            Ok(None) => {}
            Err(e) => bad.push(format!("{name} n={n} q={q}: {e}")),
        }
    }
    let status = Command::new(env!("CARGO_BIN_EXE_casson"))
        .args(["sweep", "--family", "conjecture1", "--format", "json"])
        .output()
        .expect("binary runs")
        .status
        .code();
    outcome(bad.is_empty() && status == Some(0), format!("{total} instances, failures {bad:?}, sweep exit {status:?}"))
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut line = |id: &str, title: &str, (o, t): (Outcome, Duration), budget: Option<Duration>| {
        let in_budget = budget.is_none_or(|b| t <= b);
        let ok = o.ok && in_budget;
        all_ok &= ok;
        let budget = budget.map(|b| format!(" budget {b:?}")).unwrap_or_default();
        println!("{} [{id}] {title}: {} ({t:?}{budget})", if ok { "PASS" } else { "FAIL" }, o.detail);
    };
    line("1", "Poincare sphere from the left trefoil", timed(5, poincare_chain), Some(BUDGET_1));
    line("2", "Akbulut cork", timed(5, cork), Some(BUDGET_2));
    line("3", "mu-bar cross-check on T(3,5)", timed(3, mubar), Some(BUDGET_3));
    line("4", "four-orbit parity equals det", timed(1, tori_parity), Some(BUDGET_4));
    line("5", "circle-bundle vanishing", timed(0, circle_bundles), None);
    line("6", "property suite", timed(0, property_suite), Some(BUDGET_6));
    line("7", "lambda_FO = rho (mod 2) sweep", timed(0, conjecture1), None);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
