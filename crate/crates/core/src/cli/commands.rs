//! The four subcommands. Each writes its CSV reports into the output directory and
//! returns whether every check it owns passed.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;

use super::config::RunConfig;
use super::data::build_data;
use super::report::{num, Report};
use crate::certifier::{certify_all, BoundReport};
use crate::error::Result;
use crate::evolution::{maxreg_ratio, solve_evolution, ContourSpec, TimeData};
use crate::resolvent::dump::write_dump;
use crate::resolvent::{norms_and_ratio, ratio_sweep, residual_report, solve_rswith, solve_rswithout, summarize};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub files: Vec<PathBuf>,
    /// One line per failed check.
    pub failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, files: Vec::new(), failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.passed = false;
            self.failures.push(what());
        }
    }
}

pub fn cmd_certify(cfg: &RunConfig, hash: &str, out: &Path) -> Result<Outcome> {
    let res = certify_all(&cfg.sector, &cfg.fluid, cfg.seed, &cfg.tolerances)?;
    let mut o = Outcome::new();
    let mut rep = Report::create(out, "certify.csv", hash, &BoundReport::HEADER)?;
    for r in &res.reports {
        rep.row(r.csv_row())?;
        o.check(r.pass, || format!("{}: worst ratio {:e}", r.bound_id, r.worst_ratio));
    }
    o.files.push(rep.finish()?);
    Ok(o)
}

pub fn cmd_solve(cfg: &RunConfig, hash: &str, out: &Path) -> Result<Outcome> {
    let data = build_data(cfg)?;
    let (fp, grid, sc) = (&cfg.fluid, &cfg.grid, &cfg.solve);
    let mut o = Outcome::new();
    let mut rep = Report::create(out, "solve.csv", hash, &["lambda_re", "lambda_im", "quantity", "value"])?;
    for (i, lambda) in sc.lambdas().into_iter().enumerate() {
        let field = if sc.surface { solve_rswith(&data, lambda, fp, grid)? } else { solve_rswithout(&data, lambda, fp, grid)? };
        let res = residual_report(&field, &data, grid)?;
        let (_, ratio) = norms_and_ratio(&field, &data, grid, sc.q)?;
        let mut rows: Vec<(String, f64)> = Vec::new();
        for e in &res.spectral {
            rows.push((format!("residual.{}.abs", e.name), e.abs));
            rows.push((format!("residual.{}.rel", e.name), e.rel));
        }
        rows.push(("fd_momentum".into(), res.fd_momentum));
        rows.push(("fd_divergence".into(), res.fd_divergence));
        rows.push(("lhs".into(), ratio.lhs));
        rows.push(("rhs".into(), ratio.rhs));
        rows.push(("ratio".into(), ratio.ratio));
        for (name, v) in [("eta_w1", ratio.eta_w1), ("eta_l", ratio.eta_l)] {
            if let Some((l, r)) = v {
                rows.push((format!("{name}.lhs"), l));
                rows.push((format!("{name}.rhs"), r));
            }
        }
        for (q, v) in rows {
            rep.row([num(lambda.re), num(lambda.im), q, num(v)])?;
        }
        o.check(res.max_rel() < sc.residual_tol, || format!("λ = {lambda}: relative residual {:e} ≥ {:e}", res.max_rel(), sc.residual_tol));
        o.check(!ratio.inconsistent, || format!("λ = {lambda}: solution without data"));
        if sc.dump {
            let p = out.join(format!("field_{i}.s2pf"));
            let mut w = std::io::BufWriter::new(std::fs::File::create(&p)?);
            write_dump(&mut w, &field, grid)?;
            o.files.push(p);
        }
    }
    o.files.insert(0, rep.finish()?);
    Ok(o)
}

pub fn cmd_evolve(cfg: &RunConfig, hash: &str, out: &Path) -> Result<Outcome> {
    let ec = &cfg.evolve;
    let td = TimeData { spatial: build_data(cfg)?, profile: ec.profile.clone() };
    let sol = solve_evolution(&td, &cfg.contour, &cfg.fluid, &cfg.grid, ec.surface)?;
    let mut o = Outcome::new();
    let (times, norms) = sol.velocity_norms()?;
    let mut series = Report::create(out, "evolve_series.csv", hash, &["t", "velocity_l2"])?;
    for (t, v) in times.iter().zip(&norms) {
        series.row([num(*t), num(*v)])?;
    }
    o.files.push(series.finish()?);
    let ls = C64::new(ec.lambda_star[0], ec.lambda_star[1]);
    let rt = sol.roundtrip(ls, &ec.heights)?;
    let (u0, umax) = sol.causality()?;
    let mr = maxreg_ratio(&sol, ec.p, ec.q)?;
    let mut rep = Report::create(out, "evolve_report.csv", hash, &["quantity", "value"])?;
    let mut rows = vec![
        ("roundtrip".to_string(), rt),
        ("u_at_zero".into(), u0),
        ("u_max".into(), umax),
        ("tail".into(), sol.tail),
        ("maxreg.lhs".into(), mr.lhs),
        ("maxreg.rhs".into(), mr.rhs),
        ("maxreg.ratio".into(), mr.ratio),
    ];
    rows.extend(mr.terms.iter().map(|(k, v)| (format!("maxreg.term.{k}"), *v)));
    for (q, v) in rows {
        rep.row([q, num(v)])?;
    }
    o.files.push(rep.finish()?);
    o.check(rt < ec.roundtrip_tol, || format!("round trip {rt:e} ≥ {:e}", ec.roundtrip_tol));
    o.check(u0 <= ec.causality_tol * umax, || format!("‖U(0)‖ = {u0:e} > {:e}·max", ec.causality_tol));
    Ok(o)
}

pub fn cmd_sweep(cfg: &RunConfig, hash: &str, out: &Path) -> Result<Outcome> {
    let sc = &cfg.sweep;
    let data = build_data(cfg)?;
    let rows = ratio_sweep(&sc.rays, &data, &cfg.fluid, &cfg.grid)?;
    let mut o = Outcome::new();
    let mut rep = Report::create(out, "sweep.csv", hash, &["arg", "mag", "lambda_re", "lambda_im", "lhs", "rhs", "ratio"])?;
    for r in &rows {
        let l = r.report.lambda;
        rep.row([num(r.arg), num(r.mag), num(l.re), num(l.im), num(r.report.lhs), num(r.report.rhs), num(r.report.ratio)])?;
    }
    o.files.push(rep.finish()?);
    let mut sum = Report::create(out, "sweep_summary.csv", hash, &["arg", "slope", "spread", "pass"])?;
    for s in summarize(&rows) {
        let pass = s.slope.abs() <= sc.slope_tol && s.spread < sc.spread_max;
        sum.row([num(s.arg), num(s.slope), num(s.spread), pass.to_string()])?;
        o.check(pass, || format!("ray arg {:+.4}: slope {:+.4}, spread {:.3}", s.arg, s.slope, s.spread));
    }
    o.files.push(sum.finish()?);
    if !sc.gammas.is_empty() {
        let td = TimeData { spatial: data, profile: cfg.evolve.profile.clone() };
        let mut g = Report::create(out, "sweep_gamma.csv", hash, &["gamma", "lhs", "rhs", "ratio"])?;
        for &gamma in &sc.gammas {
            let contour = ContourSpec { gamma, ..cfg.contour.clone() };
            let sol = solve_evolution(&td, &contour, &cfg.fluid, &cfg.grid, cfg.evolve.surface)?;
            let mr = maxreg_ratio(&sol, cfg.evolve.p, cfg.evolve.q)?;
            g.row([num(gamma), num(mr.lhs), num(mr.rhs), num(mr.ratio)])?;
        }
        o.files.push(g.finish()?);
    }
    Ok(o)
}
