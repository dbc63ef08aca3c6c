//! Test support: the two singular worked examples, a regression case for the
//! incomplete threshold, and seeded generators of random comparison data.

use hre_core::{HreProblem, PcMatrix, SquareMatrix};
use rand::seq::SliceRandom;
use rand::Rng;
pub use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `26 + 5 sqrt 27`; its reciprocal is `26 - 5 sqrt 27`.
pub fn example1_large() -> f64 {
    26.0 + 5.0 * 27f64.sqrt()
}

/// `1351 + 780 sqrt 3`; its reciprocal is `1351 - 780 sqrt 3`.
pub fn example2_large() -> f64 {
    1351.0 + 780.0 * 3f64.sqrt()
}

/// 3x3 unknown block of the complete 5x5 example, `rho = 5`.
pub fn example1_block() -> PcMatrix {
    let a = example1_large();
    PcMatrix::from_values(&[
        vec![1.0, a, 1.0],
        vec![1.0 / a, 1.0, 1.0],
        vec![1.0, 1.0, 1.0],
    ])
    .unwrap()
}

/// The complete 5x5 example; free cells are 1.
pub fn example1_matrix() -> PcMatrix {
    let a = example1_large();
    let mut rows = vec![vec![Some(1.0); 5]; 5];
    rows[0][1] = Some(a);
    rows[1][0] = Some(1.0 / a);
    PcMatrix::from_rows(rows).unwrap()
}

/// Unknowns `a1..a3`, references `a4`, `a5` with weight 1.
pub fn example1_problem() -> HreProblem {
    HreProblem::from_references(example1_matrix(), vec![(3, 1.0), (4, 1.0)]).unwrap()
}

/// The incomplete 8x8 example: a ring of known comparisons among the first
/// six alternatives (closing entries `1351 -+ 780 sqrt 3`), free cells 1.
pub fn example2_matrix() -> PcMatrix {
    let big = example2_large();
    let mut rows = vec![vec![Some(1.0); 8]; 8];
    for i in 0..6 {
        for j in 0..6 {
            let ring = i == j || (i + 1) % 6 == j || (j + 1) % 6 == i;
            if !ring {
                rows[i][j] = None;
            }
        }
    }
    rows[0][5] = Some(1.0 / big);
    rows[5][0] = Some(big);
    PcMatrix::from_rows(rows).unwrap()
}

pub fn example2_problem() -> HreProblem {
    HreProblem::from_references(example2_matrix(), vec![(6, 1.0), (7, 1.0)]).unwrap()
}

/// The auxiliary matrix of the 6x6 unknown block as printed: diagonal 4,
/// ring entries 1, corners `1351 -+ 780 sqrt 3`.
pub fn example2_h6() -> SquareMatrix {
    let big = example2_large();
    let mut h = SquareMatrix::zeros(6);
    for i in 0..6 {
        h.set(i, i, 4.0);
        h.set(i, (i + 1) % 6, 1.0);
        h.set((i + 1) % 6, i, 1.0);
    }
    h.set(0, 5, 1.0 / big);
    h.set(5, 0, big);
    h
}

/// n = 5, k = 3, complete unknown block, `c_34` Missing. The block index
/// (0.816) is below the block-scope threshold 1 yet `A_3` is singular; the
/// full-row `s_max = 1` lowers the threshold to 1/2.
pub fn block_scope_counterexample() -> HreProblem {
    let (c12, c13, c23) = (0.5997305898632187, 5.474156613108704, 0.24687486535441602);
    let mut rows = vec![vec![Some(1.0); 5]; 5];
    rows[0][1] = Some(c12);
    rows[1][0] = Some(1.0 / c12);
    rows[0][2] = Some(c13);
    rows[2][0] = Some(1.0 / c13);
    rows[1][2] = Some(c23);
    rows[2][1] = Some(1.0 / c23);
    rows[2][3] = None;
    rows[3][2] = None;
    let c = PcMatrix::from_rows(rows).unwrap();
    HreProblem::from_references(c, vec![(3, 1.0), (4, 1.0)]).unwrap()
}

/// Weights log-uniform in `[0.1, 10]`.
pub fn log_uniform_weights(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| 10f64.powf(rng.random_range(-1.0..=1.0))).collect()
}

/// Symmetric known-pattern: a random spanning tree plus each remaining pair
/// with probability `extra`. Diagonal is always known.
pub fn connected_pattern(rng: &mut impl Rng, n: usize, extra: f64) -> Vec<Vec<bool>> {
    let mut known = vec![vec![false; n]; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (pos, &v) in order.iter().enumerate().skip(1) {
        let u = order[rng.random_range(0..pos)];
        known[u][v] = true;
        known[v][u] = true;
    }
    for i in 0..n {
        known[i][i] = true;
        for j in (i + 1)..n {
            if !known[i][j] && rng.random_bool(extra) {
                known[i][j] = true;
                known[j][i] = true;
            }
        }
    }
    known
}

/// `c_ij = (w_i / w_j) * exp(noise_ij)` on the pattern, with reciprocal lower
/// triangle and `noise_ij` uniform in `[-noise, noise]`.
pub fn perturbed_matrix(
    rng: &mut impl Rng,
    weights: &[f64],
    pattern: &[Vec<bool>],
    noise: f64,
) -> PcMatrix {
    let n = weights.len();
    let mut rows = vec![vec![None; n]; n];
    for i in 0..n {
        rows[i][i] = Some(1.0);
        for j in (i + 1)..n {
            if pattern[i][j] {
                let eps = if noise > 0.0 { rng.random_range(-noise..=noise) } else { 0.0 };
                let c = weights[i] / weights[j] * eps.exp();
                rows[i][j] = Some(c);
                rows[j][i] = Some(1.0 / c);
            }
        }
    }
    PcMatrix::from_rows(rows).unwrap()
}

/// Entries log-uniform in `[1/spread, spread]` on the pattern.
pub fn random_matrix(rng: &mut impl Rng, pattern: &[Vec<bool>], spread: f64) -> PcMatrix {
    let ones = vec![1.0; pattern.len()];
    perturbed_matrix(rng, &ones, pattern, spread.ln())
}

/// Picks `k` unknowns at random (at least one reference remains) and gives
/// the references the supplied weights.
pub fn split_problem(rng: &mut impl Rng, matrix: PcMatrix, weights: &[f64], k: usize) -> HreProblem {
    let n = matrix.n();
    assert!(k >= 1 && k < n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let unknowns = order[..k].to_vec();
    let references = order[k..].iter().map(|&i| (i, weights[i])).collect();
    HreProblem::new(matrix, unknowns, references).unwrap()
}

/// A random nonnegative `k x k` matrix with entries in `[0, 1)` and each
/// cell zeroed with probability `sparsity`.
pub fn nonnegative_matrix(rng: &mut impl Rng, k: usize, sparsity: f64) -> SquareMatrix {
    let data = (0..k * k)
        .map(|_| if rng.random_bool(sparsity) { 0.0 } else { rng.random_range(0.0..1.0) })
        .collect();
    SquareMatrix::new(k, data).unwrap()
}
