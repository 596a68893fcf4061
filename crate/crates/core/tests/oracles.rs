//! Independent checks against brute-force searches.

mod common;

use common::{brute_force_sequences, exhaustive_divisor_solutions};
use toric_twistor::divisors::{solve_divisor_data, TwistorDivisorData};
use toric_twistor::fibers::{invariant_fibers, model_degree};
use toric_twistor::lattice::{det, enumerate, normalize, UnimodularMatrix};
use toric_twistor::surface::ToricSurface;

fn catalan(n: usize) -> usize {
    (0..n).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 0..=4 {
        let fast: Vec<Vec<[i64; 2]>> = enumerate(n).iter().map(|s| s.pairs()).collect();
        assert_eq!(fast, brute_force_sequences(n), "n = {n}");
    }
}

#[test]
fn enumeration_counts_are_catalan() {
    for n in 0..=7 {
        assert_eq!(enumerate(n).len(), catalan(n), "n = {n}");
    }
}

#[test]
fn enumeration_closed_under_reversal_duality() {
    for n in 0..=6 {
        let all = enumerate(n);
        for seq in &all {
            let dual = seq.reversal_dual();
            assert!(all.contains(&dual), "{seq} has no dual {dual}");
            assert_eq!(dual.reversal_dual(), *seq);
        }
    }
}

fn brute_force_normalizers(pairs: &[[i64; 2]]) -> Vec<UnimodularMatrix> {
    let mut found = Vec::new();
    for p in -5..=5 {
        for q in -5..=5 {
            for r in -5..=5 {
                for s in -5..=5 {
                    let Some(m) = UnimodularMatrix::new([[p, q], [r, s]]) else {
                        continue;
                    };
                    let image: Vec<[i64; 2]> = pairs.iter().map(|&v| m.apply(v.into()).into()).collect();
                    if toric_twistor::validate(&image).is_ok() {
                        found.push(m);
                    }
                }
            }
        }
    }
    found
}

#[test]
fn normalize_matches_brute_force() {
    let cases: Vec<Vec<[i64; 2]>> = vec![
        vec![[0, 1], [1, 1], [1, 0]],
        vec![[1, 0], [1, -1], [0, -1]],
        vec![[0, 1], [-1, 1], [1, 0]],
        vec![[1, 0], [1, 1], [0, 1]],
        vec![[2, 1], [1, 1], [1, 2]],
        vec![[1, 1], [1, 0], [2, -1], [1, -1]],
        vec![[3, 1], [2, 1], [1, 1], [0, 1]],
        vec![[1, 2], [2, 3]],
    ];
    for pairs in cases {
        let brute = brute_force_normalizers(&pairs);
        match normalize(&pairs) {
            Ok((seq, m)) => {
                assert_eq!(brute, vec![m], "{pairs:?}");
                let image: Vec<[i64; 2]> = pairs.iter().map(|&v| m.apply(v.into()).into()).collect();
                assert_eq!(image, seq.pairs());
            }
            Err(_) => assert!(brute.is_empty(), "{pairs:?} normalizable by {brute:?}"),
        }
    }
}

#[test]
fn divisor_solve_matches_exhaustive_search() {
    for n in 0..=2 {
        for seq in enumerate(n) {
            let surface = ToricSurface::build(&seq).unwrap();
            for alpha in 1..=surface.k {
                let (f, fbar) = invariant_fibers(&surface, alpha).unwrap();
                let found = exhaustive_divisor_solutions(surface.k, &f.base, &fbar.base, 8);
                let solved = solve_divisor_data(&surface, alpha).unwrap();
                assert_eq!(
                    found,
                    vec![(solved.m, solved.l_plus.clone(), solved.l_minus.clone())],
                    "{seq} alpha = {alpha}"
                );
            }
        }
    }
}

#[test]
fn hexagon_divisor_data_by_exhaustion() {
    let seq = toric_twistor::validate(&[[0, 1], [1, 1], [1, 0]]).unwrap();
    let surface = ToricSurface::build(&seq).unwrap();
    let (f, fbar) = invariant_fibers(&surface, 1).unwrap();
    let found = exhaustive_divisor_solutions(3, &f.base, &fbar.base, 2);
    assert_eq!(found, vec![(1, vec![0, 0, 1], vec![1, 0, 0])]);
    let expected = TwistorDivisorData {
        alpha: 1,
        m: 1,
        l_plus: vec![0, 0, 1],
        l_minus: vec![1, 0, 0],
    };
    assert_eq!(solve_divisor_data(&surface, 1).unwrap(), expected);
}

#[test]
fn degree_equals_lattice_determinant() {
    for n in 0..=6 {
        for seq in enumerate(n) {
            let surface = ToricSurface::build(&seq).unwrap();
            for i in 1..=surface.k {
                for j in i + 1..=surface.k {
                    let d = model_degree(&surface, i, j).unwrap();
                    let lattice = det(seq.vector(i).get(), seq.vector(j).get()).abs();
                    assert_eq!(d, lattice, "{seq} ({i},{j})");
                }
            }
        }
    }
}
