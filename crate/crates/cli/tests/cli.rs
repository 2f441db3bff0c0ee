use std::path::PathBuf;

use fanloop_cli::report::{CheckReport, HaarReport, PropsReport};
use fanloop_cli::{run_args, Outcome, EXIT_AXIOM, EXIT_CAP, EXIT_OK, EXIT_PARSE};

fn corpus(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Outcome {
    run_args(std::iter::once("fanloop").chain(args.iter().copied()))
}

#[test]
fn generated_loops_round_trip_through_fmt() {
    let dir = std::env::temp_dir().join(format!("fanloop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for args in [&["generate", "cd", "2"][..], &["generate", "dihedral", "4"], &["generate", "cyclic", "5"]] {
        let out = run(args);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        let path = dir.join("g.loop");
        std::fs::write(&path, &out.stdout).unwrap();
        let again = run(&["fmt", path.to_str().unwrap()]);
        assert_eq!(again.stdout, out.stdout);
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn check_report_describes_quaternions() {
    let out = run(&["check", &corpus("groups/Q8.loop")]);
    assert_eq!(out.code, EXIT_OK);
    let r: CheckReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(r.analysis.is_group && !r.analysis.is_commutative);
    assert_eq!(r.analysis.center.len(), 2);
    assert_eq!(r.analysis.fan, vec!["1"]);
}

#[test]
fn haar_values_are_sums_over_the_reference() {
    let out = run(&["haar", &corpus("octonion.loop"), &corpus("functions/mixed.fn")]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let r: HaarReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(r.left_invariant && r.reference_independent);
    assert_eq!(r.total_mass, "16");
    // Default reference is the constant 1: Σf / 16.
    assert_eq!(r.functions[0].value, "55/96");
}

#[test]
fn props_is_deterministic_per_seed() {
    let a = run(&["--seed", "3", "props", &corpus("groups/C2xC2.loop"), "--instances", "4"]);
    let b = run(&["--seed", "3", "props", &corpus("groups/C2xC2.loop"), "--instances", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let r: PropsReport = serde_json::from_str(&a.stdout).unwrap();
    assert!(r.all_hold);
    assert_eq!(r.seed, 3);
}

#[test]
fn product_and_quotient_commands() {
    let out = run(&["product", &corpus("groups/C2.loop"), &corpus("groups/C3.loop")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("6\n") || out.stdout.lines().any(|l| l == "6"));
    let q = run(&["quotient", &corpus("groups/Q8.loop"), "--by", "center"]);
    assert_eq!(q.code, EXIT_OK, "{}", q.stderr);
    assert!(q.stdout.lines().any(|l| l == "4"));
}

#[test]
fn errors_map_to_exit_codes() {
    assert_eq!(run(&["check", &corpus("invalid/bad_order.loop")]).code, EXIT_PARSE);
    assert_eq!(run(&["check", &corpus("invalid/no_identity.loop")]).code, EXIT_AXIOM);
    assert_eq!(run(&["--cap", "4", "check", &corpus("groups/C8.loop")]).code, EXIT_CAP);
    assert_eq!(run(&["check", &corpus("groups/C4.loop"), "--law", "9.9.9"]).code, EXIT_PARSE);
    assert_eq!(run(&["census", "3", "--filter", "bogus"]).code, EXIT_PARSE);
}
