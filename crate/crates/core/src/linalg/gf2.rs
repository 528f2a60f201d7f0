//! Bit-packed row reduction over GF(2).

use crate::gfarith::Elem;

/// Rows of an r×c binary matrix augmented with the r×r identity, packed into
/// 64-bit words. Returns the rank of the left block and, for every row that
/// reduces to zero there, the combination of original rows that produced it.
pub(crate) fn rank_left_kernel(rows: usize, cols: usize, data: &[Elem]) -> (usize, Vec<Vec<Elem>>) {
    let width = cols + rows;
    let words = width.div_ceil(64);
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut w = vec![0u64; words];
            for j in 0..cols {
                if data[i * cols + j].0 & 1 == 1 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            let b = cols + i;
            w[b / 64] |= 1 << (b % 64);
            w
        })
        .collect();

    let mut rank = 0;
    for col in 0..cols {
        let (wi, bit) = (col / 64, 1u64 << (col % 64));
        let Some(piv) = (rank..rows).find(|&r| m[r][wi] & bit != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[wi] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= *b;
                }
            }
        }
        rank += 1;
    }

    let kernel = m[rank..]
        .iter()
        .map(|w| {
            (0..rows)
                .map(|i| {
                    let b = cols + i;
                    Elem((w[b / 64] >> (b % 64)) & 1)
                })
                .collect()
        })
        .collect();
    (rank, kernel)
}
