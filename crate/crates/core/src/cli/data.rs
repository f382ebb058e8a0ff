//! Bulk data from a config section: zero, seeded random, or a mode-coefficient CSV.
//!
//! CSV columns: `k1[,k2],field,re,im`, one row per coefficient. `field` is one of
//! `g+j`, `g-j`, `h+j`, `h-j` (phase and 1-based component), `d`, or `f<m>:j` (vertical
//! force mode `m`, component `j`). Repeated rows add up.

use std::io::Read;

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{DataSource, RunConfig};
use crate::error::{Error, Result};
use crate::resolvent::{ForceMode, ModeData, ResolventData};

pub fn build_data(cfg: &RunConfig) -> Result<ResolventData> {
    let (dc, grid) = (&cfg.data, &cfg.grid);
    let n = grid.n;
    let mut data = match &dc.source {
        DataSource::Zero {} => ResolventData::zero(n),
        DataSource::RandomSingleMode { k, force, d } => {
            if k.len() + 1 != n {
                return Err(Error::Config(format!("data mode {k:?} has the wrong length for n = {n}")));
            }
            ResolventData::random_single_mode(n, k.clone(), &mut ChaCha8Rng::seed_from_u64(cfg.seed), *force, *d)
        }
        DataSource::File { path } => {
            let p = cfg.resolve(path);
            let f = std::fs::File::open(&p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            read_coefficients(f, n)?
        }
    };
    data.decay = dc.decay;
    if let Some(bad) = data.modes.iter().find(|m| m.k.len() + 1 != n || !grid.contains_mode(&m.k)) {
        return Err(Error::Config(format!("data mode {:?} does not fit the grid", bad.k)));
    }
    data.validated(grid)
}

enum Field {
    G(usize, usize),
    H(usize, usize),
    D,
    F(i64, usize),
}

fn parse_field(s: &str, n: usize) -> Result<Field> {
    let bad = || Error::Config(format!("unknown coefficient field '{s}'"));
    let comp = |t: &str| -> Result<usize> {
        let j: usize = t.parse().map_err(|_| bad())?;
        if (1..=n).contains(&j) {
            Ok(j - 1)
        } else {
            Err(Error::Config(format!("component {j} outside 1..={n} in '{s}'")))
        }
    };
    if s == "d" {
        return Ok(Field::D);
    }
    if let Some(rest) = s.strip_prefix('f') {
        let (m, j) = rest.split_once(':').ok_or_else(bad)?;
        return Ok(Field::F(m.parse().map_err(|_| bad())?, comp(j)?));
    }
    let mut ch = s.chars();
    let (kind, sign) = (ch.next().ok_or_else(bad)?, ch.next().ok_or_else(bad)?);
    let side = match sign {
        '+' => 0,
        '-' => 1,
        _ => return Err(bad()),
    };
    let j = comp(ch.as_str())?;
    match kind {
        'g' => Ok(Field::G(side, j)),
        'h' => Ok(Field::H(side, j)),
        _ => Err(bad()),
    }
}

pub fn read_coefficients<R: Read>(r: R, n: usize) -> Result<ResolventData> {
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(r);
    let width = rd.headers()?.len();
    if width != n + 2 {
        return Err(Error::Config(format!("coefficient file has {width} columns, expected {} for n = {n}", n + 2)));
    }
    let mut data = ResolventData::zero(n);
    for rec in rd.records() {
        let rec = rec.map_err(|e| Error::Config(e.to_string()))?;
        let num = |i: usize| -> Result<f64> { rec[i].parse().map_err(|_| Error::Config(format!("bad number '{}'", &rec[i]))) };
        let k: Vec<i64> = (0..n - 1).map(|i| rec[i].parse().map_err(|_| Error::Config(format!("bad mode index '{}'", &rec[i])))).collect::<Result<_>>()?;
        let field = parse_field(&rec[n - 1], n)?;
        let v = C64::new(num(n)?, num(n + 1)?);
        let idx = match data.modes.iter().position(|m| m.k == k) {
            Some(i) => i,
            None => {
                data.modes.push(ModeData::zero(k, n));
                data.modes.len() - 1
            }
        };
        let md = &mut data.modes[idx];
        match field {
            Field::G(s, j) => md.g[s][j] += v,
            Field::H(s, j) => md.h[s][j] += v,
            Field::D => md.d += v,
            Field::F(m, j) => {
                if let Some(fm) = md.f.iter_mut().find(|f| f.m == m) {
                    fm.c[j] += v;
                } else {
                    let mut c = vec![C64::new(0.0, 0.0); n];
                    c[j] = v;
                    md.f.push(ForceMode { m, c });
                }
            }
        }
    }
    Ok(data)
}
