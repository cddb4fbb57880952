use std::process::{Command, Output};

fn secant(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_secant"));
    cmd.args(args)
        .env_remove("SECANT_CACHE_DIR")
        .env_remove("SECANT_EXTENDED");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn ideal_dim_flags_and_positional() {
    let o = secant(&["ideal-dim", "--k", "4", "--d", "3", "--n", "3"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "36");
    let o = secant(&["ideal-dim", "4", "4", "2"], &[]);
    assert_eq!(stdout(&o).trim(), "21");
}

#[test]
fn kappa_at_weight() {
    let o = secant(
        &[
            "kappa", "--k", "3", "--d", "4", "--n", "2", "--beta", "8,4,4",
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        secant(&["kappa", "--beta", "1,2"], &[]).status.code(),
        Some(2)
    );
    assert_eq!(
        secant(&["ideal-dim", "--bogus"], &[]).status.code(),
        Some(2)
    );
    assert_eq!(
        secant(&["kappa", "3", "4", "2", "--beta", "1,2"], &[])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        secant(&["classify", "2", "2", "3"], &[]).status.code(),
        Some(2)
    );
    assert_eq!(
        secant(&["ideal-dim", "8", "4", "3"], &[]).status.code(),
        Some(2)
    );
    assert_eq!(
        secant(
            &[
                "split-kappa",
                "3",
                "4",
                "2",
                "--beta",
                "8,4,4",
                "--split",
                "(01)-"
            ],
            &[]
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let first = secant(&["ideal-dim", "3", "4", "2", "--cache-dir", path], &[]);
    let second = secant(&["ideal-dim", "3", "4", "2"], &[("SECANT_CACHE_DIR", path)]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(stdout(&second).trim(), "105");
    let err = String::from_utf8_lossy(&second.stderr);
    let hits = err.lines().find(|l| l.starts_with("cache:")).unwrap();
    let (n_hits, n_orbits) = {
        let w: Vec<&str> = hits.split_whitespace().collect();
        (w[1].to_string(), w[4].to_string())
    };
    assert_eq!(n_hits, n_orbits, "{hits}");
    assert!(String::from_utf8_lossy(&first.stderr).contains("cache: 0 hits"));
}

#[test]
fn output_independent_of_workers() {
    let one = secant(
        &[
            "ideal-dim",
            "4",
            "3",
            "3",
            "--workers",
            "1",
            "--output",
            "structured",
        ],
        &[],
    );
    let two = secant(
        &[
            "ideal-dim",
            "4",
            "3",
            "3",
            "--workers",
            "3",
            "--output",
            "structured",
        ],
        &[],
    );
    assert_eq!(stdout(&one), stdout(&two));
    let v: serde_json::Value = serde_json::from_str(stdout(&one).trim()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["total"], 36);
}

#[test]
fn classify_and_tables() {
    let o = secant(
        &[
            "classify",
            "--k",
            "4",
            "--d",
            "3",
            "--n",
            "3",
            "--output",
            "structured",
        ],
        &[],
    );
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["report"]["verdict"], "del-pezzo");
    assert_eq!(v["report"]["genus"], 316);
    let o = secant(&["table2"], &[]);
    assert!(stdout(&o).contains("36 quintic"));
}

#[test]
fn trace_with_priority_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("priority.txt");
    std::fs::write(
        &file,
        "# preferred free variables\ns_400*s_220*s_022*s_202\n",
    )
    .unwrap();
    let o = secant(
        &[
            "trace",
            "3",
            "4",
            "2",
            "--beta",
            "8,4,4",
            "--priority",
            file.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Step 1."));
    assert!(out.trim_end().ends_with("kappa = 2"), "{out}");
}

#[test]
fn oracle_agrees() {
    let o = secant(&["oracle", "4", "3", "3", "--beta", "3,4,4,4"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kappa at 3,4,4,4: 3"));
}

#[test]
fn quintics_export_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("q.json");
    let o = secant(
        &["quintics", "export", "--out", file.to_str().unwrap()],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["basis"].as_array().unwrap().len(), 36);
}
