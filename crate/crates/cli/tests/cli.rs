use sympleib_cli::files::{parse_algebra, parse_extension, AlgebraFile};
use sympleib_cli::{run_args, CliError};

fn tmp(name: &str, text: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    let s = p.to_str().unwrap().to_string();
    (dir, s)
}

const DIM2: &str = r#"{"dim": 2, "products": [{"left": 2, "right": 2, "value": [3, "0"]}], "form": [{"i": 1, "j": 2, "value": "1"}]}"#;

#[test]
fn integers_and_strings_are_both_accepted() {
    let (a, w) = parse_algebra(DIM2).unwrap().to_algebra().unwrap();
    assert_eq!(a.product(1, 1)[0], sympleib::exactlin::q(3));
    assert!(w.unwrap().is_nondegenerate());
}

#[test]
fn parse_error_reports_position() {
    match parse_algebra("{\n  \"dim\": x}") {
        Err(CliError::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_extension("[]"), Err(CliError::Parse { .. })));
}

#[test]
fn rejects_bad_files() {
    for text in [
        r#"{"dim": 2, "products": [{"left": 1, "right": 1, "value": [1]}]}"#,
        r#"{"dim": 2, "products": [{"left": 1, "right": 1, "value": [1, 0]}, {"left": 1, "right": 1, "value": [1, 0]}]}"#,
        r#"{"dim": 2, "form": [{"i": 2, "j": 1, "value": 1}]}"#,
        r#"{"dim": 2, "labels": ["a"]}"#,
        r#"{"dim": 2, "products": [{"left": 1, "right": 1, "value": ["1/0", 0]}]}"#,
    ] {
        assert!(matches!(parse_algebra(text).and_then(|f| f.to_algebra()), Err(CliError::Input(_))), "{text}");
    }
}

#[test]
fn check_and_omega_on_dim2() {
    let (_d, path) = tmp("a.json", DIM2);
    let o = run_args(["sympleib", "check", &path, "--symmetric", "--left", "--right"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.json["symmetric-leibniz"]["holds"], true);
    let o = run_args(["sympleib", "check", &path, "--lie"]);
    assert_eq!(o.code, 1);
    let o = run_args(["sympleib", "omega", &path, "solve", "--side", "bi"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.json["dimension"], 1);
    let o = run_args(["sympleib", "omega", &path, "verify", "--side", "bi"]);
    assert_eq!(o.code, 0);
}

#[test]
fn star_of_commutative_example_is_the_product() {
    let (_d, path) = tmp("a.json", DIM2);
    let o = run_args(["sympleib", "star", &path]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let (st, _) = parse_algebra(&o.stdout).unwrap().to_algebra().unwrap();
    let (a, _) = parse_algebra(DIM2).unwrap().to_algebra().unwrap();
    assert_eq!(st.tensor(), a.tensor());
}

#[test]
fn core_reports_dimensions() {
    let build = run_args(["sympleib", "catalog", "build", "R4_LEFT"]);
    let (_d, path) = tmp("r4.json", &build.stdout);
    let o = run_args(["sympleib", "core", &path]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.json["i_dim"], 1);
    assert_eq!(o.json["h_dim"], 1);
    let g: AlgebraFile = serde_json::from_value(o.json["g"].clone()).unwrap();
    assert_eq!(g.dim, 2);
}

#[test]
fn catalog_build_merges_defaults() {
    let a = run_args(["sympleib", "catalog", "build", "BS4_M"]);
    let b = run_args(["sympleib", "catalog", "build", "BS4_M", "--params", "sign=-1"]);
    assert_eq!(a.code, 0);
    assert_eq!(b.code, 0);
    assert_ne!(a.stdout, b.stdout);
    let c = run_args(["sympleib", "catalog", "build", "BS4_M", "--params", "sign=2"]);
    assert_eq!(c.code, 2);
    let d = run_args(["sympleib", "catalog", "build", "BS4_M", "--params", "sign"]);
    assert_eq!(d.code, 2);
}

#[test]
fn catalog_verify_is_seeded() {
    let a = run_args(["sympleib", "--seed", "3", "catalog", "verify", "DIM2_NONLIE", "--samples", "4"]);
    let b = run_args(["sympleib", "catalog", "verify", "DIM2_NONLIE", "--samples", "4", "--seed", "3"]);
    assert_eq!(a, b);
    assert_eq!(a.code, 0);
    assert_eq!(a.json["count"], 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run_args(["sympleib"]).code, 2);
    assert_eq!(run_args(["sympleib", "omega", "x.json", "frob"]).code, 2);
    assert_eq!(run_args(["sympleib", "--version"]).code, 0);
}
