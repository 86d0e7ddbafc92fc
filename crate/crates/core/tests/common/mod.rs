#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use twomode::gaussian::InitialState;
use twomode::model::{stability_class, ModelParams, StabilityClass};

pub const GOLDEN_REVIVAL: &str = include_str!("../data/revival_dt0.1.csv");

pub fn params(w1: f64, w2: f64, g1: f64, g2: f64) -> ModelParams {
    ModelParams::new(w1, w2, g1, g2).unwrap()
}

/// Stable with some margin, so conditioning stays reasonable.
pub fn comfortably_stable(p: &ModelParams) -> bool {
    match stability_class(p) {
        StabilityClass::Stable {
            delta_sq,
            omega2_sq,
        } => delta_sq > 1e-3 && omega2_sq > 1e-3,
        _ => false,
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_stable(rng: &mut StdRng) -> ModelParams {
    loop {
        let p = params(
            rng.random_range(0.5..2.5),
            rng.random_range(0.5..2.5),
            rng.random_range(0.0..1.0),
            rng.random_range(0.0..1.0),
        );
        if comfortably_stable(&p) {
            return p;
        }
    }
}

pub fn random_state(rng: &mut StdRng) -> InitialState {
    let mut c = || {
        twomode::numerics::linalg::C64::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        )
    };
    let (a1, a2) = (c(), c());
    InitialState::new(
        a1,
        a2,
        rng.random_range(0.0..3.0),
        rng.random_range(0.0..3.0),
    )
    .unwrap()
}

/// Parsed numeric columns of a CSV whose last column is boolean.
pub fn numeric_rows(csv: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = csv.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            cells[..cells.len() - 1]
                .iter()
                .map(|c| c.parse().unwrap())
                .collect()
        })
        .collect();
    (header, rows)
}

/// Largest scaled difference between two evolve CSVs.
pub fn csv_distance(a: &str, b: &str) -> f64 {
    let (ha, ra) = numeric_rows(a);
    let (hb, rb) = numeric_rows(b);
    assert_eq!(ha, hb);
    assert_eq!(ra.len(), rb.len());
    ra.iter()
        .zip(&rb)
        .flat_map(|(x, y)| {
            x.iter()
                .zip(y)
                .map(|(p, q)| (p - q).abs() / q.abs().max(1.0))
        })
        .fold(0.0, f64::max)
}
