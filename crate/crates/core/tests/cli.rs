use std::process::Command;

use affine_demazure::cli::run_with;
use affine_demazure::demazure::from_json;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("demazure").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn dist_csv_n6() {
    let (code, out, _) = run(&[
        "dist", "--m", "1", "--n", "0", "--N", "6", "--first", "0", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("a,b,mult"));
    let rows: Vec<Vec<i64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 42);
    assert_eq!(rows.iter().map(|r| r[2]).sum::<i64>(), 64);
    assert!(rows.contains(&vec![4, 4, 3]));
    assert!(rows.contains(&vec![9, 12, 1]));
}

#[test]
fn dist_trivial_word() {
    let (code, out, _) = run(&["dist", "--m", "1", "--n", "0", "--N", "0", "--first", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out, "a,b,mult\n0,0,1\n");
}

#[test]
fn dist_json_is_reproducible_and_round_trips() {
    let args = [
        "dist", "--m", "2", "--n", "0", "--N", "4", "--first", "0", "--format", "json",
    ];
    let (c1, j1, _) = run(&args);
    let (c2, j2, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(j1, j2);
    let (mu, word) = from_json(&j1).unwrap();
    assert_eq!(word.to_string(), "s1s0s1s0");
    // same word spelled out, computed in a separate run
    let (_, csv, _) = run(&["dist", "--m", "2", "--n", "0", "--word", "s1s0s1s0"]);
    let csv_total: i64 = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<i64>().unwrap())
        .sum();
    assert_eq!(mu.total_mass(), csv_total.into());
}

#[test]
fn dist_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.csv");
    let (code, out, _) = run(&["dist", "--N", "3", "--out", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert!(std::fs::read_to_string(path)
        .unwrap()
        .starts_with("a,b,mult\n"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["dist", "--word", "s0s0"],
        vec!["dist", "--word", "s2"],
        vec!["dist", "--m", "0", "--n", "0", "--N", "2"],
        vec!["dist", "--N", "2", "--first", "2"],
        vec!["dist", "--N", "2", "--format", "xml"],
        vec!["dist"],
        vec!["verify", "--suite", "nope", "--max-N", "3"],
        vec!["verify"],
        vec!["wlln", "--N-list", "20,10"],
        vec!["conjecture", "--m", "2", "--N-list", "2,4,6,8"],
        vec!["conjecture", "--m", "2", "--N-list", "2,4,5,8,10"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn verify_covariance_all_pass() {
    let (code, out, err) = run(&["verify", "--suite", "covariance", "--max-N", "20"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 40);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
    assert_eq!(err.trim(), "40 checks, 0 failed");
}

#[test]
fn verify_palindrome_to_40() {
    let (code, out, _) = run(&["verify", "--suite", "palindrome", "--max-N", "40"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn verify_sanderson_two_point_case() {
    let (code, out, _) = run(&["verify", "--suite", "sanderson", "--max-N", "1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("PASS marginal(a-b)=C(N,t+floor(N/2)) N=1 lhs=0:1,1:1 rhs=0:1,1:1\n"));
}

#[test]
fn wlln_three_rows() {
    let (code, out, _) = run(&["wlln", "--m", "1", "--n", "0", "--N-list", "10,20,30"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][3], "11/20");
    let num = |s: &str| {
        let (p, q) = s.split_once('/').unwrap();
        p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap()
    };
    for col in [4, 6] {
        assert!(rows.windows(2).all(|w| num(w[1][col]) < num(w[0][col])));
    }
}

#[test]
fn conjecture_level_2() {
    let (code, out, _) = run(&["conjecture", "--m", "2", "--N-list", "2,4,6,8,10"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        r#"{"level":2,"fit":["0/1","-11/81","7/81","4/81"],"table_match":true}"#
    );
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for p in [&p1, &p2] {
        let (code, _, _) = run(&[
            "render",
            "--m",
            "1",
            "--n",
            "0",
            "--N",
            "6",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let (s1, s2) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(s1, s2);
    let text = String::from_utf8(s1).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches(r#"class="cell""#).count(), 42);
}

#[test]
fn render_kinds() {
    for (kind, marker) in [
        ("histogram", r#"class="bar""#),
        ("rescaled", r#"class="ellipse""#),
    ] {
        let (code, out, _) = run(&["render", "--N", "8", "--kind", kind]);
        assert_eq!(code, 0, "{kind}");
        assert!(out.contains(marker), "{kind}");
    }
    let (_, out, _) = run(&["render", "--N", "8", "--ellipse"]);
    assert_eq!(out.matches(r#"class="ellipse""#).count(), 1);
}

#[test]
fn fast_histogram_matches_full_distribution() {
    let (c1, fast, _) = run(&["render", "--N", "12", "--kind", "histogram"]);
    let (c2, odd, _) = run(&["render", "--N", "11", "--kind", "histogram"]);
    assert_eq!((c1, c2), (0, 0));
    let full =
        affine_demazure::render::degree_histogram(&affine_demazure::demazure::weight_distribution(
            affine_demazure::HighestWeight::fundamental(affine_demazure::Generator::Zero),
            affine_demazure::WeylWord::new(12, affine_demazure::Generator::Zero),
        ))
        .unwrap();
    assert_eq!(fast, full);
    assert!(odd.contains(r#"class="bar""#));
}

#[test]
fn render_stretched() {
    let (code, out, _) = run(&["render", "--N", "6", "--kind", "stretched"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches(r#"class="cell""#).count(), 26);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_demazure");
    let ok = Command::new(bin)
        .args(["dist", "--N", "1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout),
        "a,b,mult\n0,0,1\n1,0,1\n"
    );
    let bad = Command::new(bin)
        .args(["dist", "--word", "s1s1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
