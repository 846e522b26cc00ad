//! Homogeneous linear systems over `F_p`.

/// A basis of the solution space of `rows · x = 0` over `F_p`, computed by
/// Gauss-Jordan elimination with the first nonzero entry as pivot. Basis
/// vectors are returned in order of their free column, each with a 1 there.
pub fn nullspace(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inverse(m[r][col], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][col] != 0 {
                let f = m[i][col];
                for c in col..ncols {
                    m[i][c] = (m[i][c] + (p - f) * m[r][c]) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u64; ncols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row][free]) % p;
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<u64>], ncols: usize, p: u64) -> usize {
    ncols - nullspace(rows, ncols, p).len()
}

fn inverse(a: u64, p: u64) -> u64 {
    crate::arith::mod_inv(a as i64, p as i64).expect("nonzero mod p") as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_system() {
        // x + y + z = 0 over F_3
        let ns = nullspace(&[vec![1, 1, 1]], 3, 3);
        assert_eq!(ns, vec![vec![2, 1, 0], vec![2, 0, 1]]);
        assert_eq!(rank(&[vec![1, 2], vec![2, 1]], 2, 3), 1);
        assert_eq!(nullspace(&[], 2, 5).len(), 2);
    }

    proptest! {
        #[test]
        fn kernel_vectors_solve_the_system(
            rows in prop::collection::vec(prop::collection::vec(0u64..5, 6), 0..8)
        ) {
            let ns = nullspace(&rows, 6, 5);
            for v in &ns {
                for r in &rows {
                    let s: u64 = r.iter().zip(v).map(|(a, b)| a * b).sum();
                    prop_assert_eq!(s % 5, 0);
                }
            }
            // rank-nullity against an independent count of solutions
            let mut count = 0;
            for x in 0..5u64.pow(6) {
                let v: Vec<u64> = (0..6).map(|i| x / 5u64.pow(i) % 5).collect();
                if rows.iter().all(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % 5 == 0) {
                    count += 1;
                }
            }
            prop_assert_eq!(count, 5usize.pow(ns.len() as u32));
        }
    }
}
