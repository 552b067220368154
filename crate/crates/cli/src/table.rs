//! Computed values next to the tabulated reference values.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;
use smallgon::asymptotics::{estimate_q_numeric, minimize_cubic, DEFAULT_GRID};
use smallgon::reference::{table2, table5, TABLE2, TABLE3, TABLE5};
use smallgon::{construct_q, regular_area, solve_full_nlp, upper_bound, NlpOptions, QOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Table2,
    Table3,
    Table5,
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub name: String,
    pub computed: Option<f64>,
    pub reference: f64,
    pub delta: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    /// Set when the value could not be computed.
    pub error: Option<String>,
}

impl Cell {
    fn new(name: impl Into<String>, computed: f64, reference: f64, tolerance: f64) -> Self {
        let delta = computed - reference;
        Self {
            name: name.into(),
            computed: Some(computed),
            reference,
            delta: Some(delta),
            tolerance,
            pass: delta.abs() <= tolerance,
            error: None,
        }
    }

    fn failed(name: impl Into<String>, reference: f64, tolerance: f64, err: impl ToString) -> Self {
        Self {
            name: name.into(),
            computed: None,
            reference,
            delta: None,
            tolerance,
            pass: false,
            error: Some(err.to_string()),
        }
    }

    fn from_result(
        name: impl Into<String>,
        computed: smallgon::Result<f64>,
        reference: f64,
        tolerance: f64,
    ) -> Self {
        match computed {
            Ok(v) => Self::new(name, v, reference, tolerance),
            Err(e) => Self::failed(name, reference, tolerance, e),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub key: String,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub table: String,
    pub rows: Vec<Row>,
    pub max_abs_delta: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub q: QOptions,
    pub nlp: NlpOptions,
}

const TOL_CLOSED_FORM: f64 = 1e-9;
const TOL_AREA: f64 = 1e-8;
const TOL_T3_AREA: f64 = 1e-9;
const TOL_T3_PARAM: f64 = 1e-6;
const TOL_Q_CUBIC: f64 = 1e-12;
const TOL_PARAM_CUBIC: f64 = 1e-9;
const TOL_Q0_FIT: f64 = 1e-8;
const TOL_Q_FIT: f64 = 1e-5;

fn table5_row(n: usize, opts: &TableOptions) -> Result<Row> {
    let Some(row) = table5(n) else {
        bail!("n = {n} is not a row of table5");
    };
    let mut cells = vec![
        Cell::from_result("regular", regular_area(n), row.regular, TOL_CLOSED_FORM),
        Cell::from_result("upper_bound", upper_bound(n), row.upper, TOL_CLOSED_FORM),
    ];
    for (r, reference) in row.q.iter().enumerate() {
        if let Some(reference) = *reference {
            let area = construct_q(n, r, &opts.q).map(|q| q.area);
            cells.push(Cell::from_result(
                format!("Q_r{r}"),
                area,
                reference,
                TOL_AREA,
            ));
        }
    }
    let p = solve_full_nlp(n, None, &opts.nlp).map(|s| s.area);
    cells.push(Cell::from_result("P_star", p, row.p_star, TOL_AREA));
    Ok(Row {
        key: format!("n={n}"),
        cells,
    })
}

fn table3_row(n: usize, opts: &TableOptions) -> Result<Row> {
    let Some(row) = TABLE3.iter().find(|row| row.n == n) else {
        bail!("n = {n} is not a row of table3");
    };
    let r = n / 2 - 2;
    let cells = match construct_q(n, r, &opts.q) {
        Ok(q) => {
            let p = &q.params;
            let mut cells = vec![
                Cell::new("area", q.area, row.area, TOL_T3_AREA),
                Cell::new("alpha", p.alpha, row.alpha, TOL_T3_PARAM),
            ];
            for (i, (&c, &t)) in p.betas.iter().zip(row.betas).enumerate() {
                cells.push(Cell::new(format!("beta_{}", i + 1), c, t, TOL_T3_PARAM));
            }
            for (i, (&c, &t)) in p.gammas_free.iter().zip(row.gammas).enumerate() {
                cells.push(Cell::new(format!("gamma_{}", i + 1), c, t, TOL_T3_PARAM));
            }
            cells
        }
        Err(e) => vec![Cell::failed("area", row.area, TOL_T3_AREA, e)],
    };
    Ok(Row {
        key: format!("n={n}"),
        cells,
    })
}

/// Rows r = 1..=3 come from the exact cubic; the rest from the numeric fit.
fn table2_row(r: usize) -> Result<Row> {
    let Some(row) = table2(r) else {
        bail!("r = {r} is not a row of table2");
    };
    let cells = if (1..=3).contains(&r) {
        match minimize_cubic(r) {
            Ok(m) => {
                let mut cells = vec![Cell::new("q", m.q, row.q, TOL_Q_CUBIC)];
                let refs = [Some(row.a), row.b.first().copied(), row.c.first().copied()];
                for (name, (&c, t)) in ["a", "b_1", "c_1"].iter().zip(m.point.iter().zip(refs)) {
                    if let Some(t) = t {
                        cells.push(Cell::new(*name, c, t, TOL_PARAM_CUBIC));
                    }
                }
                cells
            }
            Err(e) => vec![Cell::failed("q", row.q, TOL_Q_CUBIC, e)],
        }
    } else {
        let tol = if r == 0 { TOL_Q0_FIT } else { TOL_Q_FIT };
        let q = estimate_q_numeric(r, &DEFAULT_GRID).map(|f| f.q_estimate);
        vec![Cell::from_result("q_fit", q, row.q, tol)]
    };
    Ok(Row {
        key: format!("r={r}"),
        cells,
    })
}

/// Keys are vertex counts for table3/table5 and `r` values for table2; an
/// empty list means every tabulated row.
pub fn build(which: Which, keys: &[usize], opts: &TableOptions) -> Result<Report> {
    let keys: Vec<usize> = if !keys.is_empty() {
        keys.to_vec()
    } else {
        match which {
            Which::Table2 => TABLE2.iter().map(|row| row.r).collect(),
            Which::Table3 => TABLE3.iter().map(|row| row.n).collect(),
            Which::Table5 => TABLE5.iter().map(|row| row.n).collect(),
        }
    };
    let rows = keys
        .par_iter()
        .map(|&k| match which {
            Which::Table2 => table2_row(k),
            Which::Table3 => table3_row(k, opts),
            Which::Table5 => table5_row(k, opts),
        })
        .collect::<Result<Vec<_>>>()?;
    let cells = rows.iter().flat_map(|r| &r.cells);
    let max_abs_delta = cells
        .clone()
        .filter_map(|c| c.delta)
        .fold(0.0, |m: f64, d| m.max(d.abs()));
    let pass = cells.clone().all(|c| c.pass);
    let table = match which {
        Which::Table2 => "table2",
        Which::Table3 => "table3",
        Which::Table5 => "table5",
    };
    Ok(Report {
        table: table.into(),
        rows,
        max_abs_delta,
        pass,
    })
}

pub fn to_text(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<8} {:<12} {:>22} {:>22} {:>11} {:>8}  status",
        "row", "cell", "computed", "reference", "delta", "tol"
    );
    for row in &report.rows {
        for c in &row.cells {
            let computed = c.computed.map_or("-".into(), |v| format!("{v:.16}"));
            let delta = c.delta.map_or("-".into(), |d| format!("{d:.2e}"));
            let status = match (&c.error, c.pass) {
                (Some(e), _) => format!("ERROR {e}"),
                (None, true) => "ok".into(),
                (None, false) => "FAIL".into(),
            };
            let _ = writeln!(
                s,
                "{:<8} {:<12} {:>22} {:>22} {:>11} {:>8.0e}  {status}",
                row.key, c.name, computed, c.reference, delta, c.tolerance
            );
        }
    }
    let _ = writeln!(
        s,
        "{}: max |delta| = {:.2e}, {}",
        report.table,
        report.max_abs_delta,
        if report.pass {
            "all within tolerance"
        } else {
            "some cells out of tolerance"
        }
    );
    s
}
