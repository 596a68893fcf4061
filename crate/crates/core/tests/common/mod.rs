//! Brute-force searches shared by the oracle tests and the acceptance suite.

use toric_twistor::divisors::half_cycles;
use toric_twistor::lattice::{det, fibonacci, LatticeVector};
use toric_twistor::surface::ComponentDivisor;

/// Every sequence with entries in `[-bound, bound]` satisfying the
/// normalization conditions, found by extending prefixes with all box
/// vectors and filtering by determinant.
pub fn brute_force_sequences(n: usize) -> Vec<Vec<[i64; 2]>> {
    let k = n + 2;
    let bound = fibonacci(k);
    let mut boxed = Vec::new();
    for a in 1..=bound {
        for b in -bound..=bound {
            boxed.push(LatticeVector::new(a, b));
        }
    }
    let mut partial = vec![vec![LatticeVector::new(0, 1)]];
    for _ in 1..k - 1 {
        let mut next = Vec::new();
        for prefix in &partial {
            let last = *prefix.last().unwrap();
            for &w in &boxed {
                if w.is_primitive() && det(last, w) == -1 {
                    let mut p = prefix.clone();
                    p.push(w);
                    next.push(p);
                }
            }
        }
        partial = next;
    }
    let mut out: Vec<Vec<[i64; 2]>> = partial
        .into_iter()
        .filter(|p| det(*p.last().unwrap(), LatticeVector::new(1, 0)) == -1)
        .map(|mut p| {
            p.push(LatticeVector::new(1, 0));
            p.into_iter().map(Into::into).collect()
        })
        .collect();
    out.sort();
    out
}

/// All complementary multiplicity vectors with entries at most `cap` whose
/// half-cycle sum equals `m C - f + f̄` for some `m ≥ 1`.
pub fn exhaustive_divisor_solutions(
    k: usize,
    f: &ComponentDivisor,
    fbar: &ComponentDivisor,
    cap: i64,
) -> Vec<(i64, Vec<i64>, Vec<i64>)> {
    let halves: Vec<_> = (1..=k).map(|b| half_cycles(k, b).unwrap()).collect();
    // per-β choice: signed value s, l^+ = max(s, 0), l^- = max(-s, 0)
    let choices: Vec<i64> = (-cap..=cap).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let mut total = ComponentDivisor::zero(2 * k);
        let (mut plus, mut minus) = (vec![0; k], vec![0; k]);
        for beta in 0..k {
            let s = choices[idx[beta]];
            plus[beta] = s.max(0);
            minus[beta] = (-s).max(0);
            total = &total + &(plus[beta] * &halves[beta].0.divisor());
            total = &total + &(minus[beta] * &halves[beta].1.divisor());
        }
        let diff = &(&total + f) - fbar;
        let m = diff.coeffs[0];
        if m >= 1 && diff.coeffs.iter().all(|&c| c == m) {
            out.push((m, plus, minus));
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
