use std::f64::consts::PI;

use mlein_cli::tables::{evaluate_cell, evaluate_table, TableId, TableOptions, TableSpec};
use mlein_cli::DEFAULT_DIGITS;
use mlein_core::asym::Branch;
use mlein_core::series::FunctionId;

fn opts(stokes: bool, parallel: bool) -> TableOptions {
    TableOptions { stokes, digits: DEFAULT_DIGITS, parallel }
}

#[test]
fn parallel_matches_serial() {
    for id in [TableId::T1, TableId::T2, TableId::T3] {
        let spec = TableSpec::new(id);
        let a = evaluate_table(&spec, opts(false, true));
        let b = evaluate_table(&spec, opts(false, false));
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.rel_err.to_bits(), y.rel_err.to_bits());
            assert_eq!(x.branch(), y.branch());
        }
    }
}

#[test]
fn grid_sizes() {
    assert_eq!(TableSpec::new(TableId::T1).cells.len(), 40);
    assert_eq!(TableSpec::new(TableId::T2).cells.len(), 25);
    let t3 = TableSpec::new(TableId::T3);
    assert_eq!(t3.cells.len(), 40);
    assert_eq!(t3.cells.iter().filter(|c| c.function == FunctionId::Sin).count(), 20);
}

#[test]
fn branches_follow_dispatch() {
    let t1 = evaluate_table(&TableSpec::new(TableId::T1), opts(false, true));
    for r in &t1 {
        let want = match r.cell.alpha {
            2.0 => Branch::Alpha2,
            a if a == 0.25 || a == 0.5 || a == 1.0 => Branch::LogCase,
            _ => Branch::Algebraic,
        };
        assert_eq!(r.branch(), Some(want), "alpha={} x={}", r.cell.alpha, r.cell.x_or_theta);
    }
    let spec = TableSpec::new(TableId::T2);
    let cell = spec
        .cells
        .iter()
        .find(|c| c.alpha == 1.0 && (c.x_or_theta - PI / 4.0).abs() < 1e-12)
        .unwrap();
    let plain = evaluate_cell(cell, opts(false, false));
    assert!(plain.branch().unwrap().is_algebraic_only());
    let stokes = evaluate_cell(cell, opts(true, false));
    assert_eq!(stokes.branch(), Some(Branch::StokesCorrected));
}

#[test]
fn published_example_cells() {
    let find = |id: TableId, f: FunctionId, alpha: f64, x: f64| {
        let spec = TableSpec::new(id);
        let c = spec
            .cells
            .iter()
            .find(|c| c.function == f && (c.alpha - alpha).abs() < 1e-12 && (c.x_or_theta - x).abs() < 1e-12)
            .copied()
            .unwrap();
        evaluate_cell(&c, opts(false, false))
    };
    let r = find(TableId::T1, FunctionId::Ein, 0.25, 5.0);
    assert!(r.agrees(), "{}", r.rel_err);
    let r = find(TableId::T3, FunctionId::Cin, 2.0 / 3.0, 10.0);
    assert!(r.agrees(), "{}", r.rel_err);
    let r = find(TableId::T1, FunctionId::Ein, 1.0, 10.0);
    assert!((r.rel_err / 1.442e-6 - 1.0).abs() < 0.01);
}
