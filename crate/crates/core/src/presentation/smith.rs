//! Smith normal form of small integer matrices, tracking column operations.

/// `U * A * V = diag(d_1, ..., d_r, 0, ...)` with `d_i | d_{i+1}`, `d_i > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// The nonzero invariant factors.
    pub invariants: Vec<i128>,
    /// The unimodular column transform `V`, as rows of a `cols x cols` matrix.
    pub right: Vec<Vec<i128>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

struct Work {
    a: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_dst -= q * row_src
    fn row_axpy(&mut self, dst: usize, src: usize, q: i128) {
        for j in 0..self.cols {
            let s = self.a[src][j];
            self.a[dst][j] -= q * s;
        }
    }

    /// col_dst -= q * col_src, mirrored in V.
    fn col_axpy(&mut self, dst: usize, src: usize, q: i128) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let s = row[src];
            row[dst] -= q * s;
        }
    }

    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.a[i][j];
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Diagonalizes the block starting at `(t, t)`.
    fn diagonalize_from(&mut self, start: usize) {
        let mut t = start;
        while t < self.rows.min(self.cols) {
            let Some((i, j)) = self.smallest_from(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let p = self.a[t][t];
                let mut clean = true;
                for i in t + 1..self.rows {
                    let q = self.a[i][t].div_euclid(p);
                    if q != 0 {
                        self.row_axpy(i, t, q);
                    }
                    clean &= self.a[i][t] == 0;
                }
                for j in t + 1..self.cols {
                    let q = self.a[t][j].div_euclid(p);
                    if q != 0 {
                        self.col_axpy(j, t, q);
                    }
                    clean &= self.a[t][j] == 0;
                }
                if clean {
                    break;
                }
                // a nonzero remainder smaller than the pivot exists in row or column t
                let row_min = (t + 1..self.cols).filter(|&j| self.a[t][j] != 0).min_by_key(|&j| self.a[t][j].abs());
                let col_min = (t + 1..self.rows).filter(|&i| self.a[i][t] != 0).min_by_key(|&i| self.a[i][t].abs());
                match (row_min, col_min) {
                    (Some(j), Some(i)) if self.a[i][t].abs() < self.a[t][j].abs() => self.swap_rows(t, i),
                    (Some(j), _) => self.swap_cols(t, j),
                    (None, Some(i)) => self.swap_rows(t, i),
                    (None, None) => unreachable!("unclean pivot with no off-diagonal entry"),
                }
            }
            if self.a[t][t] < 0 {
                for j in 0..self.cols {
                    self.a[t][j] = -self.a[t][j];
                }
            }
            t += 1;
        }
    }
}

pub fn smith_normal_form(matrix: &[Vec<i64>], cols: usize) -> SmithForm {
    let rows = matrix.len();
    let a = matrix.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let v = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let mut w = Work { a, v, rows, cols };
    w.diagonalize_from(0);
    'fix: loop {
        let rank = (0..rows.min(cols)).take_while(|&t| w.a[t][t] != 0).count();
        for i in 0..rank {
            for j in i + 1..rank {
                if w.a[j][j] % w.a[i][i] != 0 {
                    // col_i += col_j puts d_j into row j of column i
                    w.col_axpy(i, j, -1);
                    w.diagonalize_from(i);
                    continue 'fix;
                }
            }
        }
        return SmithForm { invariants: (0..rank).map(|t| w.a[t][t]).collect(), right: w.v };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply_right(a: &[Vec<i64>], v: &[Vec<i128>]) -> Vec<Vec<i128>> {
        a.iter()
            .map(|row| (0..v.len()).map(|j| row.iter().enumerate().map(|(k, &x)| x as i128 * v[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn invariant_factors() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&m, 3);
        assert_eq!(s.invariants, vec![2, 6, 12]);
    }

    #[test]
    fn divisibility_fix() {
        let s = smith_normal_form(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(s.invariants, vec![1, 6]);
    }

    #[test]
    fn kernel_column_for_knot_relations() {
        // trefoil <x, y | x^2 y^-3>
        let m = vec![vec![2, -3]];
        let s = smith_normal_form(&m, 2);
        assert_eq!(s.invariants, vec![1]);
        let av = apply_right(&m, &s.right);
        assert_eq!(av[0][1], 0);
        let kernel: Vec<i128> = s.right.iter().map(|r| r[1]).collect();
        assert_eq!(kernel.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![3, 2]);
    }

    #[test]
    fn empty_matrix() {
        let s = smith_normal_form(&[], 1);
        assert_eq!(s.rank(), 0);
        assert_eq!(s.right, vec![vec![1]]);
    }
}
