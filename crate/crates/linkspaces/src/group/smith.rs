//! Integer Smith normal form, used for abelianizations of presented groups
//! and for lattice basis computations.

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn add_row(&mut self, src: usize, dst: usize, k: i128) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    fn add_col(&mut self, src: usize, dst: usize, k: i128) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    fn neg_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Diagonal of the Smith normal form with the divisibility chain
/// d1 | d2 | ..., nonnegative entries, zeros trailing.
pub fn smith_diagonal(m: &IntMat) -> Vec<i128> {
    let mut a = m.clone();
    let n = a.rows.min(a.cols);
    let mut t = 0usize;
    while t < n {
        // find a pivot
        let mut pivot = None;
        'search: for i in t..a.rows {
            for j in t..a.cols {
                if a[(i, j)] != 0 {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);

        loop {
            // clear column t
            let mut dirty = false;
            for i in (t + 1)..a.rows {
                if a[(i, t)] != 0 {
                    let q = a[(i, t)].div_euclid(a[(t, t)]);
                    a.add_row(t, i, -q);
                    if a[(i, t)] != 0 {
                        a.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            for j in (t + 1)..a.cols {
                if a[(t, j)] != 0 {
                    let q = a[(t, j)].div_euclid(a[(t, t)]);
                    a.add_col(t, j, -q);
                    if a[(t, j)] != 0 {
                        a.swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }

        // enforce divisibility of the remaining block by the pivot
        let p = a[(t, t)].abs();
        if p != 0 {
            let mut fixed = true;
            'div: for i in (t + 1)..a.rows {
                for j in (t + 1)..a.cols {
                    if a[(i, j)] % p != 0 {
                        a.add_row(i, t, 1);
                        fixed = false;
                        break 'div;
                    }
                }
            }
            if !fixed {
                continue; // redo the elimination at index t
            }
        }
        if a[(t, t)] < 0 {
            a.neg_row(t);
        }
        t += 1;
    }

    (0..n).map(|i| a[(i, i)].abs()).collect()
}

/// Cokernel of the integer matrix viewed as a map Z^cols <- Z^rows acting by
/// relations on the columns (each row is a relation among the column
/// generators): returns (free rank, torsion divisor chain with entries >= 2).
pub fn cokernel(relations: &IntMat) -> (usize, Vec<u64>) {
    let d = smith_diagonal(relations);
    let nonzero = d.iter().filter(|&&x| x != 0).count();
    let rank = relations.cols - nonzero;
    let torsion: Vec<u64> = d
        .iter()
        .filter(|&&x| x > 1)
        .map(|&x| x as u64)
        .collect();
    (rank, torsion)
}

/// gcd of a slice.
pub fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |a, &b| num_integer::Integer::gcd(&a, &b.abs()))
}
