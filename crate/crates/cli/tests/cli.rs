use std::process::{Command, Output};

fn twoorbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoorbit")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn index_of_the_first_mixed_orbit_set() {
    let o = twoorbit(&["index", "--a", "1", "--b", "0+1*sqrt(2)", "--m1", "1", "--m2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "m1,m2,index\n1,1,8\n");
}

#[test]
fn volume_check_at_one_million() {
    let o = twoorbit(&["volume-check", "--a", "1", "--b", "0+1*sqrt(2)", "--k", "1000000", "--tol", "2e-3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("k,n_k,ratio,deviation,relative,pass\n1000000,866+576*sqrt(2),"));
    let o = twoorbit(&["volume-check", "--a", "1", "--b", "sqrt2", "--k", "1000,10000", "--tol", "1e-4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn relations_on_the_ellipsoid() {
    let o = twoorbit(&["relations", "--body", "ellipsoid:1,sqrt2", "--tol", "1e-5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("relation,left,right,deviation,pass\n"));
    assert_eq!(out.lines().count(), 7);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")));
    let o = twoorbit(&["relations", "--body", "ellipsoid:1,sqrt2", "--tol", "1e-20"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn headers_are_fixed() {
    let cases: [(&[&str], &str); 6] = [
        (&["spectrum", "--a", "1", "--b", "sqrt2", "--k", "3"], "k,m1,m2,action,action_f64,index,ratio_to_vol"),
        (&["perturb-sweep", "--m-max", "3", "--b-max", "2", "--a-max", "1"], "a,b,m,m0,parts,writhe,defect_min,defect_max,bound,pass"),
        (&["dynamics", "--body", "ellipsoid:2,3"], "quantity,value,error"),
        (&["monotonicity", "--a", "1", "--b", "sqrt2", "--k", "100"], "checked,strictly_increasing,first_tie_rank,first_tie_action,first_decrease,pass"),
        (&["braid", "--a-max", "2", "--b-max", "2"], "a,b,check,expected,got,pass"),
        (&["index", "--a", "2", "--b", "3", "--m1", "0", "--m2", "1"], "m1,m2,index"),
    ];
    for (args, header) in cases {
        let o = twoorbit(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert_eq!(stdout(&o).lines().next(), Some(header), "{args:?}");
    }
}

#[test]
fn every_subcommand_writes_files_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 8] = [
        &["spectrum", "--a", "1", "--b", "sqrt2", "--k", "10"],
        &["index", "--a", "1", "--b", "sqrt2", "--m1", "2", "--m2", "0"],
        &["volume-check", "--a", "1", "--b", "sqrt2", "--k", "100", "--tol", "0.5"],
        &["monotonicity", "--a", "1", "--b", "1", "--k", "10"],
        &["braid", "--a-max", "1", "--b-max", "2"],
        &["perturb-sweep", "--m-max", "2", "--b-max", "2", "--a-max", "1"],
        &["dynamics", "--body", "ellipsoid:1,sqrt2"],
        &["relations", "--body", "ellipsoid:2,sqrt3"],
    ];
    for (i, args) in runs.iter().enumerate() {
        for format in ["csv", "jsonl"] {
            let path = dir.path().join(format!("{i}.{format}"));
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["--format", format, "--out", path.to_str().unwrap()]);
            let o = twoorbit(&full);
            assert_eq!(o.status.code(), Some(0), "{full:?}: {}", stderr(&o));
            assert!(o.stdout.is_empty());
            let text = std::fs::read_to_string(&path).unwrap();
            assert!(!text.is_empty());
            if format == "jsonl" {
                for line in text.lines() {
                    assert!(serde_json::from_str::<serde_json::Value>(line).unwrap().is_object(), "{line}");
                }
            }
        }
        let csv = std::fs::read_to_string(dir.path().join(format!("{i}.csv"))).unwrap();
        let jsonl = std::fs::read_to_string(dir.path().join(format!("{i}.jsonl"))).unwrap();
        assert_eq!(csv.lines().count(), jsonl.lines().count() + 1, "{args:?}");
    }
}

#[test]
fn jsonl_mirrors_csv_fields() {
    let o = twoorbit(&["spectrum", "--a", "1", "--b", "sqrt2", "--k", "3", "--format", "jsonl"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(
        lines[2],
        r#"{"action":"0+1*sqrt(2)","action_f64":1.4142135623730951,"index":4,"k":2,"m1":0,"m2":1,"ratio_to_vol":0.3535533905932738}"#
    );
}

#[test]
fn config_files_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# index run\nsubcommand = index\na = 1\nb = 0+1*sqrt(2)\nm1 = 1\nm2 = 1\n").unwrap();
    let p = path.to_str().unwrap();
    let o = twoorbit(&["--config", p]);
    assert_eq!(stdout(&o), "m1,m2,index\n1,1,8\n", "{}", stderr(&o));
    let o = twoorbit(&["--config", p, "--m2", "0"]);
    assert_eq!(stdout(&o), "m1,m2,index\n1,0,2\n");
    let o = twoorbit(&["index", "--config", p, "--m1", "2"]);
    assert_eq!(stdout(&o), "m1,m2,index\n2,1,14\n");

    std::fs::write(&path, "subcommand = index\na = 1\nb = 2\nm1 = 1\nm2 = 1\nbogus = 3\n").unwrap();
    let o = twoorbit(&["--config", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown config key `bogus`"));

    std::fs::write(&path, "subcommand = spectrum\n").unwrap();
    let o = twoorbit(&["index", "--config", p]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn diagnostics_and_exit_codes() {
    let o = twoorbit(&["index", "--a", "1", "--b", "sqrt(2", "--m1", "1", "--m2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed surd literal"));

    let o = twoorbit(&["index", "--a", "1", "--b", "sqrt2", "--m1", "1", "--m2", "0", "--p", "3", "--h1", "1", "--h2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not nullhomologous"));

    let o = twoorbit(&["spectrum", "--a", "1", "--b", "sqrt2", "--k", "100000", "--budget", "2000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("memory budget"));

    let o = twoorbit(&["dynamics", "--body", "ellipsoid:1,sqrt2;perturb:0.01,cos(t2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("escaped plane 1"));

    let o = twoorbit(&["dynamics", "--body", "sphere:1"]);
    assert_eq!(o.status.code(), Some(2));

    assert_eq!(twoorbit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(twoorbit(&["index", "--a", "1"]).status.code(), Some(2));
    assert_eq!(twoorbit(&["--help"]).status.code(), Some(0));
}

#[test]
fn braid_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let n = 256;
    let mut text = format!("2 1 {n}\n");
    for k in 0..n {
        let t = std::f64::consts::PI * k as f64 / n as f64;
        let (c, s) = (0.5 * t.cos(), 0.5 * t.sin());
        text.push_str(&format!("{c} {s} {} {}\n", -c, -s));
    }
    std::fs::write(&path, text).unwrap();
    let o = twoorbit(&["braid", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "quantity,value\nstrands,2\nsamples,256\nwrithe,1\n");
}

#[test]
fn output_is_identical_across_runs_and_thread_counts() {
    let cases: [&[&str]; 3] = [
        &["perturb-sweep", "--m-max", "8", "--b-max", "4", "--a-max", "5"],
        &["dynamics", "--body", "ellipsoid:1,sqrt2;perturb:0.001,cos(2*t1-2*t2)"],
        &["spectrum", "--a", "2", "--b", "sqrt3", "--k", "2000"],
    ];
    for args in cases {
        let outs: Vec<Vec<u8>> = ["1", "4", "4"]
            .iter()
            .map(|threads| {
                Command::new(env!("CARGO_BIN_EXE_twoorbit")).args(args).env("RAYON_NUM_THREADS", threads).output().unwrap().stdout
            })
            .collect();
        assert!(!outs[0].is_empty());
        assert_eq!(outs[0], outs[1], "{args:?}");
        assert_eq!(outs[1], outs[2], "{args:?}");
    }
}
