use num_complex::Complex64 as C64;

use super::*;
use crate::evolution::TimeProfile;
use crate::resolvent::Decay;

#[test]
fn empty_config_is_the_default() {
    let cfg = RunConfig::from_toml("").unwrap();
    assert_eq!(cfg, RunConfig::default());
    assert!(cfg.validated().is_ok());
}

#[test]
fn canonical_form_round_trips() {
    let mut cfg = RunConfig::default();
    cfg.seed = 99;
    cfg.data.decay = Decay::Adapted(0.5);
    cfg.evolve.profile = TimeProfile::Bump { start: 0.5, width: 2.0 };
    let back = RunConfig::from_toml(&cfg.canonical()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn nested_sections_parse() {
    let text = r#"
        seed = 3
        [fluid]
        rho_plus = 1.0
        rho_minus = 1.0
        mu_plus = 1.0
        mu_minus = 1.0
        [data]
        decay = { adapted = 1.0 }
        [data.source]
        kind = "random_single_mode"
        k = [2]
        d = true
        [solve]
        lambda = [[3.0, 0.0]]
        [sweep.rays]
        args = [0.0]
        mag_min = 0.1
        mag_max = 10.0
        points_per_decade = 1
    "#;
    let cfg = RunConfig::from_toml(text).unwrap().validated().unwrap();
    assert_eq!(cfg.seed, 3);
    assert_eq!(cfg.solve.lambdas(), vec![C64::new(3.0, 0.0)]);
    assert_eq!(cfg.sweep.rays.lambdas().len(), 3);
    let data = build_data(&cfg).unwrap();
    assert_eq!(data.modes[0].k, vec![2]);
    assert_ne!(data.modes[0].d, C64::new(0.0, 0.0));
}

#[test]
fn unknown_keys_are_rejected_everywhere() {
    for text in ["bogus = 1", "[grid]\nbogus = 1", "[data.source]\nkind = \"zero\"\nextra = 1", "[evolve.profile]\nkind = \"step\"\nrate = 1.0"] {
        assert!(matches!(RunConfig::from_toml(text), Err(Error::Config(_))), "{text}");
    }
}

#[test]
fn invariant_violations_fail_validation() {
    let mut cfg = RunConfig::default();
    cfg.sector.eta = std::f64::consts::FRAC_PI_4;
    assert!(cfg.validated().is_err());
    let mut cfg = RunConfig::default();
    cfg.contour.nodes = 1000;
    assert!(cfg.validated().is_err());
    let mut cfg = RunConfig::default();
    cfg.solve.q = 1.0;
    assert!(cfg.validated().is_err());
}

#[test]
fn coefficient_file() {
    let csv = "k1,field,re,im\n# comment\n1,g+1,1.0,0.5\n1,h-2,-2.0,0.0\n1,d,0.0,1.0\n-1,f3:2,0.25,0.0\n1,g+1,1.0,0.0\n";
    let d = read_coefficients(csv.as_bytes(), 2).unwrap();
    assert_eq!(d.modes.len(), 2);
    let m = &d.modes[0];
    assert_eq!(m.g[0][0], C64::new(2.0, 0.5));
    assert_eq!(m.h[1][1], C64::new(-2.0, 0.0));
    assert_eq!(m.d, C64::new(0.0, 1.0));
    assert_eq!(d.modes[1].f[0].m, 3);
    assert_eq!(d.modes[1].f[0].c[1], C64::new(0.25, 0.0));
    assert!(read_coefficients("k1,k2,field,re,im\n".as_bytes(), 2).is_err());
    assert!(read_coefficients("k1,field,re,im\n1,g*1,1,0\n".as_bytes(), 2).is_err());
    assert!(read_coefficients("k1,field,re,im\n1,g+3,1,0\n".as_bytes(), 2).is_err());
}

#[test]
fn exit_codes() {
    let ok = Outcome { passed: true, files: vec![], failures: vec![] };
    let bad = Outcome { passed: false, ..ok.clone() };
    assert_eq!(exit_code(&Ok(ok)), EXIT_OK);
    assert_eq!(exit_code(&Ok(bad)), EXIT_CHECK);
    assert_eq!(exit_code(&Err(Error::Growth { rate: 2.0, gamma: 1.0 })), EXIT_CHECK);
    assert_eq!(exit_code(&Err(Error::Config("x".into()))), EXIT_CONFIG);
    assert_eq!(exit_code(&Err(Error::Dimension("x".into()))), EXIT_CONFIG);
}

#[test]
fn hash_depends_on_content() {
    let a = config_hash("a");
    assert_eq!(a.len(), 64);
    assert_eq!(a, config_hash("a"));
    assert_ne!(a, config_hash("b"));
}
