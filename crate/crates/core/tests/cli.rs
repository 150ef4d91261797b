use std::fs;
use std::path::Path;

use closflow::cli::run;

fn closflow(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("closflow").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn generated_witnesses_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = p(dir.path());
    for args in [
        vec!["--family", "cross-gadget", "--n", "4"],
        vec!["--family", "theorem6", "--n", "3"],
        vec!["--family", "mt-worstcase", "--n", "4", "--eps", "1/2"],
        vec!["--family", "reduction", "--graph-name", "k4"],
        vec!["--family", "online-xy", "--n", "4"],
        vec!["--family", "supersequences", "--n", "2", "--s", "2"],
    ] {
        let mut full = vec!["gen", "--out", out];
        full.extend(args);
        assert_eq!(closflow(&full).0, 0, "{full:?}");
    }
    let mut checked = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        if let Some(stem) = name.strip_suffix(".route") {
            let inst = dir
                .path()
                .join(format!("{}.inst", stem.split('.').next().unwrap()));
            let (code, stdout, stderr) =
                closflow(&["verify", "--instance", p(&inst), "--routing", p(&path)]);
            assert_eq!(code, 0, "{name}: {stdout}{stderr}");
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn verify_flags_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    closflow(&[
        "gen",
        "--family",
        "theorem6",
        "--n",
        "2",
        "--out",
        p(dir.path()),
    ]);
    let inst = dir.path().join("theorem6-2.inst");
    let route = dir.path().join("theorem6-2.optimal.route");
    let text = fs::read_to_string(&route).unwrap();

    let wrong = dir.path().join("wrong.route");
    fs::write(
        &wrong,
        text.replace("expect congestion 3/2", "expect congestion 1/1"),
    )
    .unwrap();
    let (code, stdout, _) = closflow(&["verify", "--instance", p(&inst), "--routing", p(&wrong)]);
    assert_eq!(code, 1);
    assert!(stdout.contains("MISMATCH"));

    let partial = dir.path().join("partial.route");
    let kept: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with("assign 3 "))
        .collect();
    fs::write(&partial, kept.join("\n")).unwrap();
    let (code, _, stderr) = closflow(&["verify", "--instance", p(&inst), "--routing", p(&partial)]);
    assert_eq!(code, 1);
    assert!(stderr.contains("missing flows: 3"), "{stderr}");

    let other = dir.path().join("other.inst");
    fs::write(
        &other,
        fs::read_to_string(&inst)
            .unwrap()
            .replace("clos 2 3", "clos 3 3"),
    )
    .unwrap();
    let (code, stdout, _) = closflow(&["verify", "--instance", p(&other), "--routing", p(&route)]);
    assert_eq!(code, 1);
    assert!(stdout.contains("routing names instance"));
}

#[test]
fn route_reports_congestion_and_ratio() {
    let dir = tempfile::tempdir().unwrap();
    closflow(&[
        "gen",
        "--family",
        "theorem6",
        "--n",
        "2",
        "--out",
        p(dir.path()),
    ]);
    let inst = dir.path().join("theorem6-2.inst");
    let saved = dir.path().join("tp.route");
    let (code, stdout, _) = closflow(&[
        "--format",
        "json",
        "route",
        "--instance",
        p(&inst),
        "--algorithm",
        "two-phase",
        "--with-opt",
        "--out",
        p(&saved),
    ]);
    assert_eq!(code, 0);
    let record: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(record["opt"], "3/2");
    assert_eq!(record["algorithm"], "two-phase");
    let (code, _, _) = closflow(&["verify", "--instance", p(&inst), "--routing", p(&saved)]);
    assert_eq!(code, 0);
}

#[test]
fn hose_violations_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("bad.inst");
    fs::write(&inst, "clos 2 1\nflow 1 1 1 1 1 1/1\nflow 2 1 1 1 2 1/2\n").unwrap();
    let (code, _, stderr) = closflow(&[
        "route",
        "--instance",
        p(&inst),
        "--algorithm",
        "sorted-greedy",
    ]);
    assert_eq!(code, 1, "{stderr}");

    fs::write(&inst, "clos 2 1\nflow 1 1 1 1 oops\n").unwrap();
    assert_eq!(
        closflow(&[
            "route",
            "--instance",
            p(&inst),
            "--algorithm",
            "sorted-greedy"
        ])
        .0,
        2
    );
    assert_eq!(closflow(&["route", "--algorithm", "nonsense"]).0, 2);
    assert_eq!(closflow(&["gen", "--family", "random"]).0, 2);
    assert_eq!(
        closflow(&["adversary", "--router", "ecmp", "--n", "2"]).0,
        2
    );
    assert_eq!(
        closflow(&["adversary", "--router", "oracle", "--n", "2"]).0,
        2
    );
}

#[test]
fn random_generation_is_reproducible() {
    let a = closflow(&["gen", "--family", "random", "--seed", "17", "--flows", "8"]);
    let b = closflow(&["gen", "--family", "random", "--seed", "17", "--flows", "8"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert!(a.1.starts_with("clos 3 3\n"));
}

#[test]
fn opt_respects_budget_from_flag() {
    let dir = tempfile::tempdir().unwrap();
    closflow(&[
        "gen",
        "--family",
        "theorem6",
        "--n",
        "3",
        "--out",
        p(dir.path()),
    ]);
    let inst = dir.path().join("theorem6-3.inst");
    let (code, stdout, _) = closflow(&["opt", "--instance", p(&inst)]);
    assert_eq!(code, 0);
    assert!(stdout.contains("opt 3/2"));
    let (code, stdout, _) = closflow(&["opt", "--instance", p(&inst), "--budget", "2"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("budget 2 exceeded"));
}

#[test]
fn adversary_forces_congestion_two() {
    for router in ["unsorted-greedy", "sorted-greedy", "round-robin"] {
        let (code, stdout, _) = closflow(&[
            "--format",
            "json",
            "adversary",
            "--router",
            router,
            "--n",
            "4",
        ]);
        assert_eq!(code, 0);
        let record: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
        assert_eq!(record["congestion"], "2/1", "{router}");
        assert_eq!(record["witness_congestion"], "1/1");
    }
}

#[test]
fn bench_handles_empty_and_small_corpora() {
    let (code, stdout, _) = closflow(&["bench", "--count", "0", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("instances 0"));
    let (code, stdout, _) = closflow(&["--format", "json", "bench", "--count", "5", "--seed", "2"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 5);
}
