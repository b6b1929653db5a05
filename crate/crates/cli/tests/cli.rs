use std::path::Path;
use std::process::{Command, Output};

fn kappa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kappa"))
        .args(args)
        .env_remove("KAPPA_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn kappa_of_sl3() {
    let o = kappa(&["kappa", "--family", "A", "--rank", "2", "--mult", "all:1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn kappa_is_printed_as_exact_fraction() {
    let o = kappa(&["kappa", "--family", "BC", "--rank", "2", "--mult", "medium:2,short:2,long:1"]);
    assert_eq!(stdout(&o), "7/2\n");
    let o = kappa(&["kappa", "--family", "E8", "--mult", "all:2"]);
    assert_eq!(stdout(&o), "57\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["kappa", "--family", "A", "--rank", "0", "--mult", "all:1"],
        vec!["kappa", "--family", "Q", "--rank", "2", "--mult", "all:1"],
        vec!["kappa", "--family", "B", "--rank", "2", "--mult", "all:1"],
        vec!["bogus"],
        vec!["kappa", "--nonsense"],
        vec!["spherical", "--group", "sl2", "--xi", "1,2", "--points", "1"],
    ] {
        let o = kappa(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn default_table_all_ok() {
    let o = kappa(&["table", "--catalog", "default"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id,group,rank,kappa,expected,status"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 40);
    assert!(rows.iter().all(|r| r.ends_with(",ok")));
}

#[test]
fn mismatching_catalog_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "cat.txt",
        "format_version = 1\n[entry]\nid = x\nlabel = SL(3;R)\ncartan = AI\nparams = n:3\nfamily = A rank:2\nmult = all:1\nkappa = 3/2\n",
    );
    let o = kappa(&["table", "--catalog", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("x,SL(3;R),2,1,3/2,MISMATCH"));
}

#[test]
fn catalog_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.txt", "[entry]\nid = x\nwhat = 1\n");
    let o = Command::new(env!("CARGO_BIN_EXE_kappa"))
        .args(["table"])
        .env("KAPPA_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn weights_and_region() {
    let o = kappa(&["weights", "--family", "A", "--rank", "2", "--mult", "all:1"]);
    assert_eq!(stdout(&o), "weight,coordinates,n\n1,4/3 2/3,2\n2,2/3 4/3,2\nkappa,1\n");
    let inside = kappa(&["region", "--family", "A", "--rank", "2", "--mult", "all:1", "--eta", "1/2,-1/2"]);
    assert_eq!(stdout(&inside), "inside\n");
    let outside = kappa(&["region", "--family", "A", "--rank", "2", "--mult", "all:1", "--eta", "3,0"]);
    assert_eq!(stdout(&outside), "outside\n");
}

#[test]
fn matrix_decompositions_reconstruct() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "g.txt", "3\n2 1 0\n0 1 3\n1 0 1\n");
    for verb in ["iwasawa", "kak"] {
        let o = kappa(&[verb, "--matrix", &path]);
        assert_eq!(o.status.code(), Some(0), "{verb}");
        let text = stdout(&o);
        let err: f64 = text.lines().last().unwrap().split_whitespace().nth(1).unwrap().parse().unwrap();
        assert!(err < 1e-12, "{verb}: {err}");
    }
    let singular = write(dir.path(), "s.txt", "2\n1 2\n2 4\n");
    assert_eq!(kappa(&["iwasawa", "--matrix", &singular]).status.code(), Some(1));
}

#[test]
fn spherical_is_deterministic() {
    let args = ["spherical", "--group", "sl3", "--xi", "1,0.5", "--points", "0.3,0.8", "--seed", "7"];
    let a = kappa(&args);
    let b = kappa(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = kappa(&["spherical", "--group", "sl3", "--xi", "1,0.5", "--points", "0.3,0.8", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn spherical_output_feeds_decay_and_holder() {
    let dir = tempfile::tempdir().unwrap();
    let o = kappa(&["spherical", "--group", "su2", "--points", "1", "--tmin", "10", "--tmax", "1000", "--tsteps", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let path = write(dir.path(), "su2.csv", &stdout(&o));
    let fit = kappa(&["decay", "--input", &path, "--window", "10"]);
    assert_eq!(fit.status.code(), Some(0), "{}", String::from_utf8_lossy(&fit.stderr));
    let text = stdout(&fit);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let slope: f64 = row[2].parse().unwrap();
    assert!((slope + 0.5).abs() < 0.1, "{slope}");

    let grid: Vec<String> = (0..=64).map(|i| format!("{}", 0.5 + i as f64 / 32.0)).collect();
    let o = kappa(&["spherical", "--group", "sl2", "--points", &grid.join(","), "--tmin", "4", "--tmax", "64", "--tsteps", "5"]);
    let path = write(dir.path(), "sl2.csv", &stdout(&o));
    let h = kappa(&["holder", "--input", &path, "--alpha", "0.5,1"]);
    assert_eq!(h.status.code(), Some(0), "{}", String::from_utf8_lossy(&h.stderr));
    let text = stdout(&h);
    assert!(text.starts_with("alpha,order,t,sup_quotient,growth_ratio,verdict\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 5);
    assert!(text.lines().filter(|l| l.starts_with("1.0,")).all(|l| l.ends_with("growing")));
}

#[test]
fn statphase_error_shrinks() {
    let o = kappa(&["statphase", "--group", "su2", "--Y", "1", "--tmin", "50", "--tmax", "800", "--tsteps", "5"]);
    let errs: Vec<f64> = stdout(&o).lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(errs.len(), 5);
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn expsum_mean_and_digits() {
    let o = kappa(&["expsum", "--fx", "1,1", "--ux", "1,-1", "--uy", "1.01,-1.01", "--n", "1000", "--digits", "4"]);
    assert_eq!(stdout(&o), "mean,half_norm_sq\n4.218e0,1.000e0\n");
    assert_eq!(kappa(&["expsum", "--fx", "1", "--ux", "1", "--uy", "1", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn selftest_single_criterion() {
    let o = kappa(&["selftest", "--only", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[PASS] criterion  1"));
    assert_eq!(kappa(&["selftest", "--only", "11"]).status.code(), Some(2));
}
