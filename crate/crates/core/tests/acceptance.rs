//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and enforcing its wall-clock budget. Everything is exact rational
//! equality; run with `cargo test --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::sync::Arc;
use std::time::{Duration, Instant};

use shcp_core::checks::{
    lie_of_psi, omega_iso_check, quotient_lemma_check, relations_check, roundtrip_check,
    sample_odd, sample_split, sample_word,
};
use shcp_core::files::{load_pair, parse_weil_descriptor};
use shcp_core::pair::SHCPair;
use shcp_core::repr::{
    build_induced_trivial, defining_module, group_to_pair, pair_to_group, rp_operator,
    validate_pair_module,
};
use shcp_core::rng::Rng;
use shcp_core::supergroup::{
    gp_inv, gp_mul, normalize, word_oracle, Generator, GroupWord, SplitElement,
};
use shcp_core::superlinear::koszul_compose;


const SEED: u64 = 0xACCE;

fn fixture(name: &str) -> Arc<SHCPair> {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    load_pair(path).expect("fixture pair loads and validates")
}

fn both_pairs() -> Vec<Arc<SHCPair>> {
    vec![fixture("gl11.json"), fixture("heisenberg.json")]
}

fn finish(criterion: &str, start: Instant, budget: Duration, passed: bool) {
    let elapsed = start.elapsed();
    println!(
        "acceptance {criterion}: {} in {:.2?} (budget {:.0?})",
        if passed { "PASS" } else { "FAIL" },
        elapsed,
        budget
    );
    assert!(passed, "{criterion} failed");
    assert!(
        elapsed < budget,
        "{criterion} exceeded its budget: {elapsed:.2?} > {budget:.0?}"
    );
}

#[test]
fn criterion_1_relation_audit() {
    let start = Instant::now();
    let mut passed = true;
    for pair in both_pairs() {
        for desc in ["grassmann:2", "grassmann:3"] {
            let algebra = parse_weil_descriptor(desc).unwrap();
            let report = relations_check(&pair, &algebra, 200, SEED).unwrap();
            if !report.passed {
                eprintln!("{}", report.text());
                passed = false;
            }
        }
    }
    finish("1 (relation audit)", start, Duration::from_secs(10), passed);
}

#[test]
fn criterion_2_global_splitting() {
    let start = Instant::now();
    let pair = fixture("gl11.json");
    let algebra = parse_weil_descriptor("grassmann:3").unwrap();
    let mut rng = Rng::new(SEED ^ 2);
    let mut passed = true;

    // totality + soundness on 500 random words of length ≤ 6
    for _ in 0..500 {
        let w = sample_word(&pair, &algebra, 1 + rng.below(6), &mut rng);
        match normalize(&w) {
            Ok(s) => {
                if s.oracle() != word_oracle(&w).unwrap() {
                    passed = false;
                }
            }
            Err(e) => {
                eprintln!("normalize failed: {e}");
                passed = false;
            }
        }
    }

    // uniqueness: distinct split data have distinct oracle images
    let mut distinct_checked = 0;
    while distinct_checked < 500 {
        let s = sample_split(&pair, &algebra, &mut rng).unwrap();
        let t = sample_split(&pair, &algebra, &mut rng).unwrap();
        if s == t {
            continue;
        }
        distinct_checked += 1;
        if s.oracle() == t.oracle() {
            passed = false;
        }
    }

    // Θ_A injectivity: the even-part-trivial special case
    let lie = pair.lie();
    let mut theta_checked = 0;
    while theta_checked < 100 {
        let coords_word = |rng: &mut Rng| -> SplitElement {
            let gens = (0..lie.n_odd())
                .map(|i| Generator::OddFactor(sample_odd(&algebra, rng), i))
                .collect();
            normalize(&GroupWord::new(&pair, &algebra, gens)).unwrap()
        };
        let s = coords_word(&mut rng);
        let t = coords_word(&mut rng);
        if s.coords() == t.coords() {
            continue;
        }
        theta_checked += 1;
        if s.oracle() == t.oracle() {
            passed = false;
        }
    }

    finish("2 (global splitting)", start, Duration::from_secs(60), passed);
}

#[test]
fn criterion_3_group_axioms() {
    let start = Instant::now();
    let pair = fixture("gl11.json");
    let algebra = parse_weil_descriptor("grassmann:3").unwrap();
    let mut rng = Rng::new(SEED ^ 3);
    let id = SplitElement::identity(&pair, &algebra);
    let mut passed = true;
    for _ in 0..500 {
        let x = sample_split(&pair, &algebra, &mut rng).unwrap();
        let y = sample_split(&pair, &algebra, &mut rng).unwrap();
        let z = sample_split(&pair, &algebra, &mut rng).unwrap();
        let assoc = gp_mul(&gp_mul(&x, &y).unwrap(), &z).unwrap()
            == gp_mul(&x, &gp_mul(&y, &z).unwrap()).unwrap();
        let unit = gp_mul(&x, &id).unwrap() == x && gp_mul(&id, &x).unwrap() == x;
        let inv = gp_mul(&x, &gp_inv(&x).unwrap()).unwrap() == id;
        if !(assoc && unit && inv) {
            passed = false;
            break;
        }
    }
    finish("3 (group axioms)", start, Duration::from_secs(60), passed);
}

#[test]
fn criterion_4_exp_log_and_boseck() {
    let start = Instant::now();
    let mut passed = true;
    for pair in both_pairs() {
        let algebra = parse_weil_descriptor("grassmann:3").unwrap();
        let report = roundtrip_check(&pair, &algebra, 200, SEED ^ 4).unwrap();
        if !report.passed {
            eprintln!("{}", report.text());
            passed = false;
        }
    }
    finish("4 (exp/log + Boseck)", start, Duration::from_secs(30), passed);
}

#[test]
fn criterion_5_phi_after_psi() {
    let start = Instant::now();
    let mut passed = true;
    for pair in both_pairs() {
        let (_, report) = lie_of_psi(&pair).unwrap();
        if !report.passed {
            eprintln!("{}", report.text());
            passed = false;
        }
    }
    finish("5 (Phi∘Psi on objects)", start, Duration::from_secs(10), passed);
}

#[test]
fn criterion_6_psi_after_phi_linearization() {
    let start = Instant::now();
    let mut passed = true;
    let algebra = parse_weil_descriptor("grassmann:3").unwrap();
    for pair in both_pairs() {
        let report = omega_iso_check(&pair, &algebra, 500, SEED ^ 6).unwrap();
        if !report.passed {
            eprintln!("{}", report.text());
            passed = false;
        }
    }
    finish("6 (Psi∘Phi via omega_A)", start, Duration::from_secs(60), passed);
}

#[test]
fn criterion_7_induced_representation() {
    let start = Instant::now();
    let algebra = parse_weil_descriptor("grassmann:3").unwrap();
    let mut passed = true;
    for pair in both_pairs() {
        let induced = build_induced_trivial(&pair).unwrap();
        if induced.module.space.dim() != 1 << pair.lie().n_odd() {
            eprintln!("dim V != 2^d₋");
            passed = false;
        }
        let report = validate_pair_module(&pair, &induced.module);
        if !report.passed() {
            eprintln!("{report}");
            passed = false;
        }
        let mut rng = Rng::new(SEED ^ 7);
        for _ in 0..500 {
            let x = sample_split(&pair, &algebra, &mut rng).unwrap();
            let y = sample_split(&pair, &algebra, &mut rng).unwrap();
            let lhs = rp_operator(&induced.module, &gp_mul(&x, &y).unwrap()).unwrap();
            let rhs = koszul_compose(
                &rp_operator(&induced.module, &x).unwrap(),
                &rp_operator(&induced.module, &y).unwrap(),
            )
            .unwrap();
            if lhs != rhs {
                passed = false;
                break;
            }
        }
    }
    finish("7 (induced representation)", start, Duration::from_secs(30), passed);
}

#[test]
fn criterion_8_quotient_lemmas() {
    let start = Instant::now();
    let algebra = parse_weil_descriptor("grassmann:3").unwrap();
    let mut passed = true;
    for pair in both_pairs() {
        let mut rng = Rng::new(SEED ^ 8);
        let mut gens = Vec::new();
        while gens.len() < 2 {
            let g = sample_odd(&algebra, &mut rng);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        for n in [1, 2] {
            let report = quotient_lemma_check(&pair, &algebra, &gens, n, 100, SEED ^ 8).unwrap();
            if !report.passed {
                eprintln!("{}", report.text());
                passed = false;
            }
        }
    }
    finish("8 (quotient lemmas)", start, Duration::from_secs(30), passed);
}

#[test]
fn criterion_9_module_transfer() {
    let start = Instant::now();
    let mut passed = true;
    for pair in both_pairs() {
        let induced = build_induced_trivial(&pair).unwrap();
        for pm in [defining_module(&pair), induced.module.clone()] {
            let gm = pair_to_group(&pair, &pm).unwrap();
            let back = group_to_pair(&gm).unwrap();
            if back.g_mats != pm.g_mats || back.kpoint_mats != pm.kpoint_mats {
                passed = false;
            }
        }
    }
    finish("9 (module transfer)", start, Duration::from_secs(10), passed);
}

/// The two Weil algebra families named by the checks are exercised end to
/// end: quotient naturality of the normal form under gp_push.
#[test]
fn naturality_under_quotients() {
    let start = Instant::now();
    let pair = fixture("gl11.json");
    let algebra = parse_weil_descriptor("grassmann:3").unwrap();
    let mut rng = Rng::new(SEED ^ 10);
    let mut passed = true;
    for _ in 0..50 {
        let mut gens = Vec::new();
        while gens.len() < 2 {
            let g = sample_odd(&algebra, &mut rng);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        let Ok((_, proj)) = shcp_core::weil::quotient_algebra(&algebra, &gens, 2) else {
            continue;
        };
        let x = sample_split(&pair, &algebra, &mut rng).unwrap();
        let y = sample_split(&pair, &algebra, &mut rng).unwrap();
        let lhs = shcp_core::supergroup::gp_push(&proj, &gp_mul(&x, &y).unwrap()).unwrap();
        let rhs = gp_mul(
            &shcp_core::supergroup::gp_push(&proj, &x).unwrap(),
            &shcp_core::supergroup::gp_push(&proj, &y).unwrap(),
        )
        .unwrap();
        if lhs != rhs {
            passed = false;
            break;
        }
    }
    finish("naturality (gp_push over quotients)", start, Duration::from_secs(60), passed);
}
