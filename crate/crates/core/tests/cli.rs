//! The command-line front end end to end: exit codes, reports, determinism.

use std::path::Path;

use stokes2p::cli::{run, EXIT_CHECK, EXIT_CONFIG, EXIT_OK};

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stokes(args: &[&str]) -> i32 {
    run(std::iter::once("stokes2p").chain(args.iter().copied()))
}

/// `(header hash line, header, rows)` of a report.
fn read_report(p: &Path) -> (String, Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(p).unwrap();
    let mut lines = text.lines();
    let hash = lines.next().unwrap().to_string();
    let rest: String = lines.collect::<Vec<_>>().join("\n");
    let mut rd = csv::Reader::from_reader(rest.as_bytes());
    let header = rd.headers().unwrap().iter().map(String::from).collect();
    let rows = rd.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (hash, header, rows)
}

fn value(rows: &[Vec<String>], quantity: &str) -> f64 {
    rows.iter().find(|r| r[r.len() - 2] == quantity).map(|r| r[r.len() - 1].parse().unwrap()).unwrap_or_else(|| panic!("{quantity}"))
}

#[test]
fn certify_default_and_seeded_bytes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("a");
    assert_eq!(stokes(&["certify", "--out", out.to_str().unwrap(), "--seed", "5", "--threads", "2"]), EXIT_OK);
    let (hash, header, rows) = read_report(&out.join("certify.csv"));
    assert!(hash.starts_with("# config_hash=") && hash.len() == 14 + 64);
    assert_eq!(header[0], "bound_id");
    assert!(rows.len() >= 8);
    assert!(rows.iter().all(|r| r[8] == "true"));
    let again = tmp.path().join("b");
    assert_eq!(stokes(&["certify", "--out", again.to_str().unwrap(), "--seed", "5", "--threads", "1"]), EXIT_OK);
    assert_eq!(std::fs::read(out.join("certify.csv")).unwrap(), std::fs::read(again.join("certify.csv")).unwrap());
    let other = tmp.path().join("c");
    assert_eq!(stokes(&["certify", "--out", other.to_str().unwrap(), "--seed", "6"]), EXIT_OK);
    assert_ne!(read_report(&other.join("certify.csv")).0, hash);
}

#[test]
fn certify_rejects_wide_tangential_sector() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.toml", "[sector]\neta = 0.8\n");
    assert_eq!(stokes(&["certify", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]), EXIT_CONFIG);
}

#[test]
fn solve_zero_and_single_mode() {
    let tmp = tempfile::tempdir().unwrap();
    let zero = write(tmp.path(), "z.toml", "[data.source]\nkind = \"zero\"\n");
    let out = tmp.path().join("z");
    assert_eq!(stokes(&["solve", "--config", &zero, "--out", out.to_str().unwrap()]), EXIT_OK);
    let (_, _, rows) = read_report(&out.join("solve.csv"));
    assert!(rows.iter().filter(|r| r[2].starts_with("residual")).all(|r| r[3].parse::<f64>().unwrap() == 0.0));
    let single = write(
        tmp.path(),
        "s.toml",
        "[data.source]\nkind = \"random_single_mode\"\nk = [2]\nforce = true\nd = true\n[solve]\nsurface = true\ndump = true\nlambda = [[2.0, 1.0]]\n",
    );
    let out = tmp.path().join("s");
    assert_eq!(stokes(&["solve", "--config", &single, "--out", out.to_str().unwrap()]), EXIT_OK);
    let (_, _, rows) = read_report(&out.join("solve.csv"));
    for r in rows.iter().filter(|r| r[2].ends_with(".rel")) {
        assert!(r[3].parse::<f64>().unwrap() < 1e-8, "{r:?}");
    }
    let dump = std::fs::read(out.join("field_0.s2pf")).unwrap();
    assert_eq!(&dump[..4], b"S2PF");
}

#[test]
fn solve_rejects_mismatched_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "g.toml", "[grid]\nn = 3\nn_tan = [8]\nlengths = [1.0]\nn_v = 8\nx_max = 10.0\n");
    assert_eq!(stokes(&["solve", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]), EXIT_CONFIG);
    let coef = write(tmp.path(), "c.csv", "k1,k2,field,re,im\n1,1,g+1,1,0\n");
    let cfg = write(tmp.path(), "f.toml", &format!("[data.source]\nkind = \"file\"\npath = \"{coef}\"\n"));
    assert_eq!(stokes(&["solve", "--config", &cfg, "--out", tmp.path().to_str().unwrap()]), EXIT_CONFIG);
    assert_eq!(stokes(&["solve", "--config", "/nonexistent.toml"]), EXIT_CONFIG);
    assert_eq!(stokes(&["bogus"]), EXIT_CONFIG);
}

#[test]
fn solve_from_coefficient_file_relative_path() {
    let tmp = tempfile::tempdir().unwrap();
    write(tmp.path(), "c.csv", "k1,field,re,im\n1,g+1,1,0\n1,h-2,0,0.5\n-2,d,1,1\n");
    let cfg = write(tmp.path(), "f.toml", "[data.source]\nkind = \"file\"\npath = \"c.csv\"\n[solve]\nsurface = true\n");
    let out = tmp.path().join("o");
    assert_eq!(stokes(&["solve", "--config", &cfg, "--out", out.to_str().unwrap()]), EXIT_OK);
}

#[test]
fn evolve_zero_roundtrip_and_growth() {
    let tmp = tempfile::tempdir().unwrap();
    let zero = write(tmp.path(), "z.toml", "[data.source]\nkind = \"zero\"\n[contour]\ngamma = 1.0\nnodes = 256\ntau_max = 51.2\n");
    let out = tmp.path().join("z");
    assert_eq!(stokes(&["evolve", "--config", &zero, "--out", out.to_str().unwrap()]), EXIT_OK);
    let (_, header, rows) = read_report(&out.join("evolve_series.csv"));
    assert_eq!(header, ["t", "velocity_l2"]);
    assert_eq!(rows.len(), 256);
    assert!(rows.iter().all(|r| r[1].parse::<f64>().unwrap() == 0.0));

    let out = tmp.path().join("r");
    assert_eq!(stokes(&["evolve", "--out", out.to_str().unwrap()]), EXIT_OK);
    let (_, _, rows) = read_report(&out.join("evolve_report.csv"));
    assert!(value(&rows, "roundtrip") < 1e-4);

    let grow = write(tmp.path(), "g.toml", "[evolve.profile]\nkind = \"step_exp\"\nrate = 1.5\n");
    assert_eq!(stokes(&["evolve", "--config", &grow, "--out", tmp.path().to_str().unwrap()]), EXIT_CHECK);
}

#[test]
fn sweep_point_matches_solve_and_magnitudes_are_monotone() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "p.toml",
        "[solve]\nlambda = [[10.0, 0.0]]\n[sweep.rays]\nargs = [0.0]\nmag_min = 10.0\nmag_max = 10.0\npoints_per_decade = 1\n",
    );
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    stokes(&["sweep", "--config", &cfg, "--out", a.to_str().unwrap()]);
    assert_eq!(stokes(&["solve", "--config", &cfg, "--out", b.to_str().unwrap()]), EXIT_OK);
    let (_, _, sweep) = read_report(&a.join("sweep.csv"));
    let (_, _, solve) = read_report(&b.join("solve.csv"));
    assert_eq!(sweep.len(), 1);
    assert_eq!(sweep[0][6].parse::<f64>().unwrap(), value(&solve, "ratio"));

    let cfg = write(tmp.path(), "r.toml", "[sweep.rays]\nargs = [0.5]\nmag_min = 1.0\nmag_max = 1000.0\npoints_per_decade = 3\n");
    let c = tmp.path().join("c");
    stokes(&["sweep", "--config", &cfg, "--out", c.to_str().unwrap()]);
    let (_, _, rows) = read_report(&c.join("sweep.csv"));
    let mags: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(mags.len(), 10);
    assert!(mags.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn sweep_gamma_table() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "g.toml",
        "[contour]\ngamma = 1.0\nnodes = 512\ntau_max = 102.4\n[sweep]\ngammas = [1.0, 2.0]\n[sweep.rays]\nargs = [0.0]\nmag_min = 1.0\nmag_max = 10.0\npoints_per_decade = 1\n",
    );
    let out = tmp.path().join("o");
    stokes(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]);
    let (_, header, rows) = read_report(&out.join("sweep_gamma.csv"));
    assert_eq!(header, ["gamma", "lhs", "rhs", "ratio"]);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r[3].parse::<f64>().unwrap().is_finite()));
}
