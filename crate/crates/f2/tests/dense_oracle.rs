//! Cross-checks the sparse elimination against a deliberately naive dense
//! implementation on seeded random matrices.

use annular_f2::matrix::{rank_and_solve, Solve, SparseMatrixF2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense row-reduction over GF(2) on Vec<Vec<bool>>, no tricks.
fn dense_rank(rows: usize, cols: usize, entries: &[(u32, u32)]) -> usize {
    let mut m = vec![vec![false; cols]; rows];
    for &(r, c) in entries {
        m[r as usize][c as usize] ^= true;
    }
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| m[r][col]);
        if let Some(p) = pivot {
            m.swap(row, p);
            for r in 0..rows {
                if r != row && m[r][col] {
                    for c in col..cols {
                        m[r][c] ^= m[row][c];
                    }
                }
            }
            rank += 1;
            row += 1;
        }
    }
    rank
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> (SparseMatrixF2, Vec<(u32, u32)>) {
    let mut m = SparseMatrixF2::new(rows, cols);
    let mut entries = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(0.35) {
                m.toggle(r as u32, c);
                entries.push((r as u32, c as u32));
            }
        }
    }
    (m, entries)
}

#[test]
fn rank_matches_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF2);
    for trial in 0..200 {
        let rows = rng.gen_range(1..12);
        let cols = rng.gen_range(1..12);
        let (m, entries) = random_matrix(&mut rng, rows, cols);
        assert_eq!(
            m.rank(),
            dense_rank(rows, cols, &entries),
            "trial {trial}: rank disagrees on {rows}x{cols}"
        );
        assert_eq!(m.rank(), m.transpose().rank(), "trial {trial}: rank != rank of transpose");
    }
}

#[test]
fn kernel_vectors_annihilate_and_span() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF3);
    for _ in 0..120 {
        let rows = rng.gen_range(1..10);
        let cols = rng.gen_range(1..10);
        let (m, _) = random_matrix(&mut rng, rows, cols);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), cols - m.rank());
        for v in &kernel {
            assert!(m.apply(v).is_empty(), "kernel vector not annihilated");
        }
        // Kernel vectors are linearly independent: their supports, viewed as
        // columns of a matrix, have full rank.
        let k = SparseMatrixF2::from_columns(cols, kernel.clone());
        assert_eq!(k.rank(), kernel.len());
    }
}

#[test]
fn solve_answers_are_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF4);
    for _ in 0..120 {
        let rows = rng.gen_range(1..10);
        let cols = rng.gen_range(0..10);
        let (m, _) = random_matrix(&mut rng, rows, cols);
        let mut targets = Vec::new();
        for _ in 0..4 {
            let t: Vec<u32> = (0..rows as u32).filter(|_| rng.gen_bool(0.4)).collect();
            targets.push(t);
        }
        let rs = rank_and_solve(&m, &targets);
        for (t, s) in targets.iter().zip(&rs.solves) {
            match s {
                Solve::Preimage(x) => {
                    assert_eq!(&m.apply(x), t, "preimage does not reproduce target");
                }
                Solve::NotInImage(y) => {
                    // y must kill every column and pair oddly with the target.
                    for c in 0..m.ncols() {
                        let parity =
                            m.column(c).iter().filter(|r| y.contains(r)).count() % 2;
                        assert_eq!(parity, 0, "certificate does not kill column {c}");
                    }
                    let pairing = t.iter().filter(|r| y.contains(r)).count() % 2;
                    assert_eq!(pairing, 1, "certificate does not separate target");
                }
            }
        }
    }
}
