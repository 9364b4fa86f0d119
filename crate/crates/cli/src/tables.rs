//! Error tables: grids, published reference errors, evaluation and output.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use mlein_core::asym::Branch;
use mlein_core::series::FunctionId;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{evaluate, EvalReport, EvalRequest, Method};
use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
}

impl FromStr for TableId {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s.to_ascii_uppercase().as_str() {
            "T1" | "1" => Ok(TableId::T1),
            "T2" | "2" => Ok(TableId::T2),
            "T3" | "3" => Ok(TableId::T3),
            _ => Err(HarnessError::Usage(format!("unknown table {s:?}; expected T1, T2 or T3"))),
        }
    }
}

impl std::fmt::Display for TableId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

pub const T1_X: [f64; 4] = [5.0, 10.0, 20.0, 30.0];
pub const T1_ALPHA: [(&str, f64); 10] = [
    ("0.25", 0.25),
    ("0.40", 0.40),
    ("0.50", 0.50),
    ("0.75", 0.75),
    ("1.00", 1.00),
    ("1.20", 1.20),
    ("1.40", 1.40),
    ("1.60", 1.60),
    ("1.80", 1.80),
    ("2.00", 2.00),
];
/// Published relative errors of Ein_{α,1}(x); rows follow [`T1_X`], columns [`T1_ALPHA`].
pub const PUBLISHED_T1: [[f64; 10]; 4] = [
    [1.602e-4, 1.678e-5, 2.012e-4, 2.115e-4, 5.249e-4, 1.121e-3, 1.301e-4, 5.279e-3, 1.407e-2, 1.550e-3],
    [5.733e-7, 1.735e-7, 4.413e-7, 2.339e-7, 1.442e-6, 4.345e-6, 3.168e-5, 2.103e-4, 1.536e-4, 2.849e-6],
    [3.680e-11, 3.031e-11, 6.526e-12, 9.362e-12, 2.753e-11, 2.147e-10, 2.277e-8, 1.671e-6, 4.751e-5, 4.926e-10],
    [1.808e-16, 9.384e-16, 1.543e-16, 1.337e-16, 7.595e-16, 4.388e-14, 2.363e-11, 2.125e-8, 6.216e-6, 1.613e-14],
];

pub const T2_MODULUS: f64 = 20.0;
pub const T2_THETA: [(&str, f64); 5] = [
    ("0", 0.0),
    ("pi/4", PI / 4.0),
    ("pi/2", PI / 2.0),
    ("3pi/4", 3.0 * PI / 4.0),
    ("pi", PI),
];
pub const T2_ALPHA: [(&str, f64); 5] =
    [("0.40", 0.40), ("0.50", 0.50), ("1.00", 1.00), ("1.50", 1.50), ("2.00", 2.00)];
/// Published relative errors of Ein_{α,1/3}(20e^{iθ}); rows follow [`T2_THETA`].
pub const PUBLISHED_T2: [[f64; 5]; 5] = [
    [2.400e-8, 5.494e-10, 2.702e-10, 1.572e-6, 5.119e-10],
    [2.553e-8, 1.820e-9, 1.142e-7, 1.202e-8, 8.204e-8],
    [3.026e-8, 4.057e-9, 1.756e-10, 2.021e-8, 3.684e-7],
    [3.897e-8, 8.028e-9, 1.423e-9, 2.320e-7, 8.204e-8],
    [5.398e-8, 1.617e-8, 6.457e-9, 3.005e-3, 5.119e-10],
];
/// Published relative error of Ein_{1,1/3}(20e^{iπ/4}) with the exponential term included.
pub const PUBLISHED_T2_STOKES: f64 = 6.935e-11;

pub const T3_X: [f64; 4] = [10.0, 20.0, 25.0, 30.0];
pub const T3_ALPHA: [(&str, f64); 5] = [
    ("1/4", 1.0 / 4.0),
    ("1/3", 1.0 / 3.0),
    ("1/2", 1.0 / 2.0),
    ("2/3", 2.0 / 3.0),
    ("1", 1.0),
];
/// Published relative errors of Sin_{α,4/3}(x); rows follow [`T3_X`].
pub const PUBLISHED_T3_SIN: [[f64; 5]; 4] = [
    [4.396e-7, 1.394e-8, 1.785e-6, 3.410e-6, 1.012e-5],
    [3.213e-11, 1.171e-13, 3.920e-11, 2.076e-8, 3.094e-11],
    [2.373e-13, 3.792e-14, 2.098e-13, 4.437e-10, 3.270e-12],
    [1.879e-15, 5.065e-15, 1.172e-15, 8.197e-12, 8.010e-15],
];
/// Published relative errors of Cin_{α,4/3}(x); rows follow [`T3_X`].
pub const PUBLISHED_T3_CIN: [[f64; 5]; 4] = [
    [9.237e-8, 3.787e-7, 6.608e-7, 2.270e-5, 7.756e-6],
    [1.293e-12, 4.473e-12, 1.090e-11, 2.462e-10, 2.576e-10],
    [8.066e-14, 2.334e-16, 5.326e-14, 6.881e-11, 1.437e-12],
    [1.160e-16, 9.285e-17, 2.764e-16, 2.934e-12, 7.716e-15],
];

/// Agreement factor required against a published error.
pub const AGREEMENT_FACTOR: f64 = 3.0;
/// Published errors below this are only required to stay below [`FLOOR_BOUND`].
pub const FLOOR_THRESHOLD: f64 = 1e-15;
pub const FLOOR_BOUND: f64 = 5e-15;

/// True when `rel_err` reproduces `published` within the agreement rule.
pub fn agrees(rel_err: f64, published: f64) -> bool {
    if !rel_err.is_finite() {
        return false;
    }
    if published < FLOOR_THRESHOLD {
        return rel_err <= FLOOR_BOUND;
    }
    rel_err <= published * AGREEMENT_FACTOR && rel_err >= published / AGREEMENT_FACTOR
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub table: TableId,
    pub function: FunctionId,
    pub alpha_label: &'static str,
    pub alpha: f64,
    pub beta: f64,
    /// x for T1/T3, θ in radians for T2.
    pub x_or_theta: f64,
    pub row_label: &'static str,
    pub z: Complex64,
    pub published: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableSpec {
    pub id: TableId,
    pub cells: Vec<Cell>,
}

fn row_label(x: f64) -> &'static str {
    match x as u32 {
        5 => "5",
        10 => "10",
        20 => "20",
        25 => "25",
        _ => "30",
    }
}

impl TableSpec {
    pub fn new(id: TableId) -> TableSpec {
        let mut cells = Vec::new();
        match id {
            TableId::T1 => {
                for (r, &x) in T1_X.iter().enumerate() {
                    for (c, &(label, alpha)) in T1_ALPHA.iter().enumerate() {
                        cells.push(Cell {
                            table: id,
                            function: FunctionId::Ein,
                            alpha_label: label,
                            alpha,
                            beta: 1.0,
                            x_or_theta: x,
                            row_label: row_label(x),
                            z: Complex64::new(x, 0.0),
                            published: PUBLISHED_T1[r][c],
                        });
                    }
                }
            }
            TableId::T2 => {
                for (r, &(row, theta)) in T2_THETA.iter().enumerate() {
                    for (c, &(label, alpha)) in T2_ALPHA.iter().enumerate() {
                        cells.push(Cell {
                            table: id,
                            function: FunctionId::Ein,
                            alpha_label: label,
                            alpha,
                            beta: 1.0 / 3.0,
                            x_or_theta: theta,
                            row_label: row,
                            z: Complex64::from_polar(T2_MODULUS, theta),
                            published: PUBLISHED_T2[r][c],
                        });
                    }
                }
            }
            TableId::T3 => {
                for (function, data) in
                    [(FunctionId::Sin, &PUBLISHED_T3_SIN), (FunctionId::Cin, &PUBLISHED_T3_CIN)]
                {
                    for (r, &x) in T3_X.iter().enumerate() {
                        for (c, &(label, alpha)) in T3_ALPHA.iter().enumerate() {
                            cells.push(Cell {
                                table: id,
                                function,
                                alpha_label: label,
                                alpha,
                                beta: 4.0 / 3.0,
                                x_or_theta: x,
                                row_label: row_label(x),
                                z: Complex64::new(x, 0.0),
                                published: data[r][c],
                            });
                        }
                    }
                }
            }
        }
        TableSpec { id, cells }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableOptions {
    pub stokes: bool,
    pub digits: u32,
    pub parallel: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellResult {
    pub cell: Cell,
    /// NaN when the cell could not be evaluated.
    pub rel_err: f64,
    pub report: Option<EvalReport>,
    pub warnings: Vec<String>,
}

impl CellResult {
    pub fn branch(&self) -> Option<Branch> {
        self.report.as_ref().and_then(|r| r.branch)
    }

    pub fn agrees(&self) -> bool {
        agrees(self.rel_err, self.cell.published)
    }
}

pub fn evaluate_cell(cell: &Cell, opts: TableOptions) -> CellResult {
    let req = EvalRequest {
        function: cell.function,
        alpha: cell.alpha,
        beta: cell.beta,
        gamma: 1.0,
        z: cell.z,
        method: Method::Both,
        stokes: opts.stokes,
        digits: opts.digits,
    };
    match evaluate(&req) {
        Ok(rep) => CellResult {
            cell: *cell,
            rel_err: rep.abs_rel_error.unwrap_or(f64::NAN),
            warnings: rep.warnings.clone(),
            report: Some(rep),
        },
        Err(e) => CellResult {
            cell: *cell,
            rel_err: f64::NAN,
            report: None,
            warnings: vec![format!("evaluation failed: {e}")],
        },
    }
}

/// Evaluates every cell; results keep grid order either way.
pub fn evaluate_table(spec: &TableSpec, opts: TableOptions) -> Vec<CellResult> {
    if opts.parallel {
        spec.cells.par_iter().map(|c| evaluate_cell(c, opts)).collect()
    } else {
        spec.cells.iter().map(|c| evaluate_cell(c, opts)).collect()
    }
}

pub const CSV_HEADER: &str = "alpha,beta,x_or_theta,rel_err,branch";

/// CSV rows for `results` (all functions mixed; see [`split_by_function`]).
pub fn to_csv(results: &[CellResult]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in results {
        let branch = r.branch().map_or("", |b| b.as_str());
        let _ = writeln!(
            s,
            "{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.cell.alpha, r.cell.beta, r.cell.x_or_theta, r.rel_err, branch
        );
    }
    s
}

/// Groups results by function in grid order.
pub fn split_by_function(results: &[CellResult]) -> Vec<(FunctionId, Vec<CellResult>)> {
    let mut out: Vec<(FunctionId, Vec<CellResult>)> = Vec::new();
    for r in results {
        match out.iter_mut().find(|(f, _)| *f == r.cell.function) {
            Some((_, v)) => v.push(r.clone()),
            None => out.push((r.cell.function, vec![r.clone()])),
        }
    }
    out
}

fn sci4(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{x:.3e}")
    }
}

/// Fixed-width table in scientific notation with 4 significant digits.
/// Cells that miss their published value are marked with `*`.
pub fn to_human(id: TableId, results: &[CellResult]) -> String {
    let mut s = String::new();
    let head = if id == TableId::T2 { "theta" } else { "x" };
    for (f, block) in split_by_function(results) {
        let _ = writeln!(s, "{id} {f}");
        let mut alphas: Vec<&str> = Vec::new();
        let mut rows: Vec<&str> = Vec::new();
        for r in &block {
            if !alphas.contains(&r.cell.alpha_label) {
                alphas.push(r.cell.alpha_label);
            }
            if !rows.contains(&r.cell.row_label) {
                rows.push(r.cell.row_label);
            }
        }
        let _ = write!(s, "{head:>6}");
        for a in &alphas {
            let _ = write!(s, " {:>12}", format!("a={a}"));
        }
        s.push('\n');
        for row in &rows {
            let _ = write!(s, "{row:>6}");
            for a in &alphas {
                let r = block
                    .iter()
                    .find(|r| r.cell.row_label == *row && r.cell.alpha_label == *a)
                    .expect("full grid");
                let mark = if r.agrees() { ' ' } else { '*' };
                let _ = write!(s, " {:>11}{mark}", sci4(r.rel_err));
            }
            s.push('\n');
        }
    }
    let misses = results.iter().filter(|r| !r.agrees()).count();
    let _ = writeln!(
        s,
        "{misses} of {} cells outside a factor {AGREEMENT_FACTOR} of the published error (marked *)",
        results.len()
    );
    for r in results {
        for w in &r.warnings {
            if w.starts_with("evaluation failed") {
                let _ = writeln!(s, "{} a={} {}: {w}", r.cell.function, r.cell.alpha_label, r.cell.row_label);
            }
        }
    }
    s
}
