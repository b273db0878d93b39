//! Spot checks of the committed fixtures against values read by hand from the
//! printed tables, independent of the transcription script.

use tomolens::fixtures::{default_fixture_dir, load_fixtures, FixtureSet};
use tomolens::ProtocolName::{self, *};

fn fix() -> FixtureSet {
    load_fixtures(default_fixture_dir()).unwrap()
}

#[test]
fn radius_table_entries() {
    let fix = fix();
    let cases: [(usize, ProtocolName, f64); 20] = [
        (1, Optimal, 0.0983),
        (1, Jkmw, 0.5712),
        (2, Mub, 0.1554),
        (3, Standard36, 0.2231),
        (4, Pauli, 0.2304),
        (5, Jkmw, 0.5767),
        (6, Optimal, 0.0999),
        (7, Mub, 0.2059),
        (7, Pauli, 0.3222),
        (8, Standard36, 0.2299),
        (9, Jkmw, 0.6135),
        (10, Pauli, 0.2668),
        (11, Optimal, 0.1130),
        (12, Mub, 0.1597),
        (13, Standard36, 0.2318),
        (14, Jkmw, 0.3907),
        (15, Optimal, 0.0864),
        (16, Pauli, 0.2479),
        (17, Mub, 0.1562),
        (17, Jkmw, 0.5229),
    ];
    for (state, name, want) in cases {
        assert_eq!(fix.r_value(name, state), want, "R({state}, {name})");
    }
}

#[test]
fn distance_table_entries() {
    let fix = fix();
    assert_eq!(fix.t_table[0], [0.1415, 0.1004, 0.1203]);
    // (state, column: 0 = O-M, 1 = O-S, 2 = M-S, value)
    let cases = [
        (2, 0, 0.1462),
        (3, 1, 0.1130),
        (4, 2, 0.1967),
        (5, 0, 0.0818),
        (6, 1, 0.1176),
        (6, 2, 0.0818),
        (7, 2, 0.0990),
        (8, 0, 0.1155),
        (9, 1, 0.1245),
        (10, 2, 0.1404),
        (11, 0, 0.0590),
        (12, 1, 0.1074),
        (13, 2, 0.0998),
        (14, 0, 0.0688),
        (15, 1, 0.0790),
        (16, 2, 0.1311),
        (17, 0, 0.1576),
        (17, 2, 0.1179),
    ];
    for (state, col, want) in cases {
        assert_eq!(fix.t_table[state - 1][col], want, "T({state}, {col})");
    }
}

fn check_grid(grid: &[Vec<f64>], cases: &[(usize, usize, f64)], what: &str) {
    for &(r, c, want) in cases {
        assert_eq!(grid[r - 1][c - 1], want, "{what}({r}, {c})");
    }
}

#[test]
fn pauli_variance_entries() {
    let fix = fix();
    let cases = [
        (1, 1, 1323.0),
        (1, 17, 1377.0),
        (2, 7, 853.0),
        (3, 14, 1823.0),
        (4, 15, 1870.0),
        (5, 1, 1392.0),
        (5, 14, 1953.0),
        (6, 8, 1311.0),
        (6, 13, 1000.0),
        (7, 15, 2024.0),
        (8, 4, 1273.0),
        (9, 7, 983.0),
        (10, 2, 1408.0),
        (10, 3, 1414.0),
        (11, 13, 1004.0),
        (12, 6, 1313.0),
        (13, 10, 1191.0),
        (14, 16, 1334.0),
        (15, 12, 1052.0),
        (16, 17, 1383.0),
    ];
    check_grid(&fix.variance_tables[&Pauli], &cases, "var_P");
}

#[test]
fn optimal_variance_entries() {
    let fix = fix();
    let cases = [
        (1, 1, 2727.0),
        (1, 17, 112.0),
        (2, 5, 2457.0),
        (2, 16, 3452.0),
        (3, 7, 13.0),
        (3, 13, 1141.0),
        (4, 8, 2274.0),
        (4, 17, 23.0),
        (5, 14, 2842.0),
        (5, 15, 3309.0),
        (6, 3, 1624.0),
        (7, 7, 23.0),
        (7, 17, 669.0),
        (8, 9, 785.0),
        (9, 15, 284.0),
        (10, 10, 1258.0),
        (11, 7, 1770.0),
        (12, 17, 2329.0),
        (13, 5, 2609.0),
        (14, 12, 1114.0),
        (15, 16, 150.0),
        (16, 1, 2806.0),
    ];
    check_grid(&fix.variance_tables[&Optimal], &cases, "var_O");
}

#[test]
fn observation_entries() {
    let fix = fix();
    let b = |name, r: usize, c: usize| fix.observations[&name][r - 1][c - 1];
    // overlined entries in the printed tables are negative
    assert_eq!(b(Standard36, 1, 1), 2727);
    assert_eq!(b(Standard36, 2, 17), 4102);
    assert_eq!(b(Standard36, 3, 12), 40);
    assert_eq!(b(Standard36, 7, 7), 13);
    assert_eq!(b(Standard36, 13, 15), 1634);
    assert_eq!(b(Optimal, 3, 1), 126);
    assert_eq!(b(Optimal, 5, 1), -108);
    assert_eq!(b(Optimal, 6, 14), 2823);
    assert_eq!(b(Optimal, 6, 15), -2980);
    assert_eq!(b(Optimal, 10, 13), -3);
    assert_eq!(b(Pauli, 1, 1), -1277);
    assert_eq!(b(Pauli, 2, 8), 1222);
    assert_eq!(b(Pauli, 4, 14), -830);
    assert_eq!(b(Pauli, 14, 15), -1638);
    assert_eq!(b(Pauli, 16, 1), 1397);
    assert_eq!(b(Pauli, 16, 17), 1383);
}

#[test]
fn density_matrix_entries() {
    let fix = fix();
    assert_eq!(fix.matrix(Optimal, 7).get(1, 1).re, 0.9818);
    let s1 = fix.matrix(Standard36, 1);
    assert_eq!(s1.get(0, 0).re, 0.4922);
    assert_eq!((s1.get(0, 3).re, s1.get(0, 3).im), (-0.4607, -0.0750));
}
