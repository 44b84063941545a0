use std::fmt::Write as _;

use clap::{Args, ValueEnum};
use dmcbounds::expurgation::e_ex_with;
use dmcbounds::gallager::{e_r, e_sp_with, BoundValue, RhoSearchConfig};
use dmcbounds::{Channel, Error};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::output;
use crate::{Failure, Format, Settings};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Bound {
    Sp,
    R,
    Ex,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    start: Option<f64>,
    #[arg(long)]
    stop: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    /// Explicit comma-separated rates instead of a grid.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["start", "stop", "step"])]
    rates: Vec<f64>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "sp,r,ex")]
    bounds: Vec<Bound>,
    /// Block length of the expurgation bound.
    #[arg(long, default_value_t = 1)]
    k: usize,
}

fn grid(args: &SweepArgs) -> Result<Vec<f64>, Failure> {
    let rates = if !args.rates.is_empty() {
        args.rates.clone()
    } else {
        let (Some(start), Some(stop), Some(step)) = (args.start, args.stop, args.step) else {
            return Err(Failure::parse("give --start, --stop and --step, or --rates"));
        };
        if !(step > 0.0) || !(start < stop) {
            return Err(Failure::validation("need step > 0 and start < stop"));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        // snap to 1e-12 so grid points print as written
        (0..count)
            .map(|i| ((start + step * i as f64) * 1e12).round() / 1e12)
            .collect()
    };
    if rates.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return Err(Failure::validation("rates must be positive and finite"));
    }
    Ok(rates)
}

/// One table cell: a number, a certified infinity, or a search that hit
/// the rho cap.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Cell {
    Value(f64),
    Infinite,
    CapExceeded,
}

impl Cell {
    fn from_bound(result: Result<BoundValue, Error>) -> Result<Cell, Error> {
        match result {
            Ok(BoundValue::Infinite { .. }) => Ok(Cell::Infinite),
            Ok(BoundValue::Finite { value, .. }) => Ok(Cell::Value(value)),
            Err(Error::RhoCapExceeded(_)) => Ok(Cell::CapExceeded),
            Err(e) => Err(e),
        }
    }

    fn text(self) -> String {
        match self {
            Cell::Value(v) => output::real(v),
            Cell::Infinite => "inf".into(),
            Cell::CapExceeded => "nan".into(),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Value(v) => Value::from(v),
            Cell::Infinite => Value::from("inf"),
            Cell::CapExceeded => Value::Null,
        }
    }
}

fn row(w: &Channel, rate: f64, bounds: &[Bound], k: usize, config: &RhoSearchConfig) -> Result<Vec<Cell>, Error> {
    bounds
        .iter()
        .map(|b| match b {
            Bound::Sp => Cell::from_bound(e_sp_with(w, rate, config)),
            Bound::R => e_r(w, rate).map(Cell::Value),
            Bound::Ex => Cell::from_bound(e_ex_with(w, rate, k, config).map(|r| r.value)),
        })
        .collect()
}

pub fn run(w: &Channel, args: &SweepArgs, settings: &Settings) -> Result<String, Failure> {
    if args.k == 0 {
        return Err(Failure::validation("k must be at least 1"));
    }
    let rates = grid(args)?;
    // fixed column order regardless of how --bounds was written
    let bounds: Vec<Bound> = [Bound::Sp, Bound::R, Bound::Ex]
        .into_iter()
        .filter(|b| args.bounds.contains(b))
        .collect();
    let config = RhoSearchConfig::with_rho_cap(settings.rho_cap);
    let rows: Vec<Vec<Cell>> = rates
        .par_iter()
        .map(|&rate| row(w, rate, &bounds, args.k, &config))
        .collect::<Result<_, _>>()?;
    let names: Vec<String> = bounds
        .iter()
        .map(|b| match b {
            Bound::Sp => "E_sp".to_string(),
            Bound::R => "E_r".to_string(),
            Bound::Ex => format!("E_ex_{}", args.k),
        })
        .collect();
    for (rate, cells) in rates.iter().zip(&rows) {
        for (name, cell) in names.iter().zip(cells) {
            if *cell == Cell::CapExceeded {
                eprintln!("warning: {name} at R = {rate}: rho search reached the cap {}; reported as nan", settings.rho_cap);
            }
        }
    }
    if settings.format == Some(Format::Json) {
        let table: Vec<Value> = rates
            .iter()
            .zip(&rows)
            .map(|(rate, cells)| {
                let mut obj = Map::new();
                obj.insert("R".into(), Value::from(*rate));
                for (name, cell) in names.iter().zip(cells) {
                    obj.insert(name.clone(), cell.json());
                }
                Value::Object(obj)
            })
            .collect();
        return Ok(output::json(&table));
    }
    let mut out = String::from("R");
    for name in &names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (rate, cells) in rates.iter().zip(&rows) {
        let _ = write!(out, "{rate}");
        for cell in cells {
            let _ = write!(out, ",{}", cell.text());
        }
        out.push('\n');
    }
    Ok(out)
}
