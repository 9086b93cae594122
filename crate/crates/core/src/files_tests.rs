use crate::error::Error;
use crate::files::*;
use crate::fixtures::{gl11_kpoint, gl11_pair, heis_pair};
use crate::scalar::Scalar;
use crate::supergroup::normalize;
use crate::weil::WeilElement;
use crate::weil_tests::xi;

fn fixture(name: &str) -> String {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    format!("{dir}/{name}")
}

#[test]
fn weil_descriptors() {
    let a = parse_weil_descriptor("grassmann:3").unwrap();
    assert_eq!(a.dim(), 8);
    let d = parse_weil_descriptor("dual:grassmann:2").unwrap();
    assert_eq!(d.dim(), 8);
    assert!(d.has_eps());
    assert!(parse_weil_descriptor("grassmann:x").is_err());
    assert!(parse_weil_descriptor("poly:3").is_err());
}

#[test]
fn shipped_fixtures_load_and_match_the_programmatic_pairs() {
    let pair = load_pair(fixture("gl11.json")).unwrap();
    let reference = gl11_pair();
    assert_eq!(pair.lie().n_odd(), 2);
    for b in 0..4 {
        assert_eq!(pair.rho().matrix(b), reference.rho().matrix(b));
        for c in 0..4 {
            assert_eq!(pair.lie().bracket_basis(b, c), reference.lie().bracket_basis(b, c));
        }
    }
    assert_eq!(pair.kpoints()[0].mat, gl11_kpoint());

    let heis = load_pair(fixture("heisenberg.json")).unwrap();
    let reference = heis_pair();
    assert_eq!(heis.lie().n_odd(), 1);
    for b in 0..2 {
        assert_eq!(heis.rho().matrix(b), reference.rho().matrix(b));
    }
}

#[test]
fn broken_jacobi_is_rejected_with_a_witness() {
    let mut file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("gl11.json")).unwrap()).unwrap();
    file["brackets"]["[Yp,Ym]"] = serde_json::json!({ "X1": "1", "X2": "-1" });
    match load_pair_str(&file.to_string()) {
        Err(Error::Validation { report, .. }) => {
            assert!(report.contains("Jacobi"), "diagnostic names the failure: {report}");
        }
        other => panic!("expected a validation failure, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn purely_even_pair_is_valid() {
    // empty odd basis: G_P degenerates to the even group
    let text = r#"{
        "name": "torus",
        "field": "Q",
        "even_basis": ["H"],
        "odd_basis": [],
        "brackets": {},
        "representation": {
            "even_dim": 1, "odd_dim": 0,
            "matrices": { "H": [["1"]] }
        },
        "kpoints": { "t": [["3"]] }
    }"#;
    let pair = load_pair_str(text).unwrap();
    assert_eq!(pair.lie().n_odd(), 0);
    let a = parse_weil_descriptor("grassmann:2").unwrap();
    let w = WordFile { pair: None, weil: None, word: vec!["kpt:t".into(), "kpt:t".into()] };
    let s = normalize(&w.to_word(&pair, &a).unwrap()).unwrap();
    assert_eq!(s.kmatrix().at(0, 0), &Scalar::from_int(9));
    assert!(s.coords().is_empty());
}

#[test]
fn gaussian_field_tag() {
    let text = r#"{
        "name": "bad",
        "field": "Q",
        "even_basis": ["H"],
        "odd_basis": [],
        "brackets": {},
        "representation": {
            "even_dim": 1, "odd_dim": 0,
            "matrices": { "H": [["i"]] }
        },
        "kpoints": { "t": [["1"]] }
    }"#;
    assert!(load_pair_str(text).is_err());
    let ok = text.replace("\"field\": \"Q\"", "\"field\": \"Q(i)\"");
    assert!(load_pair_str(&ok).is_ok());
}

#[test]
fn word_files_round_trip_the_normalize_example() {
    let pair = load_pair(fixture("gl11.json")).unwrap();
    let a = parse_weil_descriptor("grassmann:2").unwrap();
    let w = WordFile {
        pair: Some("gl11".into()),
        weil: Some("grassmann:2".into()),
        word: vec!["odd:Ym:xi2".into(), "odd:Yp:xi1".into()],
    };
    let s = normalize(&w.to_word(&pair, &a).unwrap()).unwrap();
    let x12 = xi(&a, 1).mul(&xi(&a, 2)).unwrap();
    assert_eq!(s.even_log().coeff(0), &x12);
    assert_eq!(s.coords(), &[xi(&a, 1), xi(&a, 2)]);

    // json rendering is canonical and stable
    let json = split_to_json(&s);
    assert_eq!(json["coords"]["Yp"], "xi1");
    assert_eq!(json["coords"]["Ym"], "xi2");
    assert_eq!(json["even_log"]["X1"], "xi1*xi2");
    assert_eq!(json["kmatrix"][0][0], "1");

    // tag mismatches are caught
    let wrong = WordFile { pair: Some("other".into()), weil: None, word: vec![] };
    assert!(wrong.to_word(&pair, &a).is_err());
}

#[test]
fn word_tokens_validate_parity_and_names() {
    let pair = load_pair(fixture("gl11.json")).unwrap();
    let a = parse_weil_descriptor("grassmann:2").unwrap();
    let bad = |tokens: Vec<&str>| {
        let w = WordFile { pair: None, weil: None, word: tokens.iter().map(|s| s.to_string()).collect() };
        w.to_word(&pair, &a)
    };
    assert!(bad(vec!["odd:Yp:1"]).is_err(), "even coefficient in an odd slot");
    assert!(bad(vec!["odd:Zq:xi1"]).is_err(), "unknown basis name");
    assert!(bad(vec!["kpt:nope"]).is_err(), "unknown K-point");
    assert!(bad(vec!["evexp:X1:xi1"]).is_err(), "odd coefficient in an even slot");
    assert!(bad(vec!["evexp:X1:1"]).is_err(), "non-nilpotent even coefficient");
    assert!(bad(vec!["what:X1:1"]).is_err(), "unknown token kind");

    let ok = WordFile {
        pair: None,
        weil: None,
        word: vec!["oddgen:Yp-2*Ym:xi1".into(), "evexp:X1+X2:xi1*xi2".into(), "kptinv:k".into()],
    };
    let w = ok.to_word(&pair, &a).unwrap();
    assert!(normalize(&w).is_ok());
}

#[test]
fn morphism_files_build_and_validate() {
    let pair = load_pair(fixture("gl11.json")).unwrap();
    // identity morphism written out longhand
    let text = r#"{
        "omega": {
            "X1": { "X1": "1" }, "X2": { "X2": "1" },
            "Yp": { "Yp": "1" }, "Ym": { "Ym": "1" }
        },
        "omega_plus": { "k": ["k"] },
        "d_omega_plus": { "X1": { "X1": "1" }, "X2": { "X2": "1" } }
    }"#;
    let file: MorphismFile = serde_json::from_str(text).unwrap();
    let m = file.to_morphism(&pair, &pair).unwrap();
    assert!(m.validate().passed());

    // a claimed derivative out of step with omega is reported
    let skewed = text.replace(
        r#""d_omega_plus": { "X1": { "X1": "1" }, "X2": { "X2": "1" } }"#,
        r#""d_omega_plus": { "X1": { "X1": "2" }, "X2": { "X2": "1" } }"#,
    );
    let file: MorphismFile = serde_json::from_str(&skewed).unwrap();
    let report = file.to_morphism(&pair, &pair).unwrap().validate();
    assert!(!report.passed());
    assert!(report.failures().any(|i| i.name.contains("dOmega+")));

    // inverse words in Omega+ parse
    let inv = text.replace(r#""k": ["k"]"#, r#""k": ["k", "k", "k^-1"]"#);
    let file: MorphismFile = serde_json::from_str(&inv).unwrap();
    assert!(file.to_morphism(&pair, &pair).unwrap().validate().passed());
}

#[test]
fn lie_point_parsing() {
    let pair = load_pair(fixture("gl11.json")).unwrap();
    let a = parse_weil_descriptor("grassmann:2").unwrap();
    let p = parse_lie_point("X1:xi1*xi2, Yp:xi1", &pair, &a).unwrap();
    assert_eq!(p.coeff(0), &xi(&a, 1).mul(&xi(&a, 2)).unwrap());
    assert_eq!(p.coeff(2), &xi(&a, 1));
    assert!(parse_lie_point("X1:xi1", &pair, &a).is_err(), "odd coefficient on even basis");
    // an even point that fails in_nilpotent_kernel is still a valid L_g(A)
    // point; gp_exp later rejects it
    let q = parse_lie_point("X1:1", &pair, &a).unwrap();
    assert!(!q.in_nilpotent_kernel());
    assert!(WeilElement::unit(&a).eq(q.coeff(0)));
}
