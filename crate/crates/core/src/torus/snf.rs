//! Smith normal form of small integer matrices.

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    /// Nonzero diagonal entries, all positive.
    pub diagonal: Vec<i128>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// Returns `None` if an intermediate entry overflows.
pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Option<Smith> {
    let m = a.len();
    let n = cols;
    let mut d: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut diagonal = Vec::new();

    // row_op: row[dst] -= q * row[src], applied to D and U
    fn row_op(mat: &mut [Vec<i128>], dst: usize, src: usize, q: i128) -> Option<()> {
        for k in 0..mat[dst].len() {
            let t = q.checked_mul(mat[src][k])?;
            mat[dst][k] = mat[dst][k].checked_sub(t)?;
        }
        Some(())
    }
    fn col_op(mat: &mut [Vec<i128>], dst: usize, src: usize, q: i128) -> Option<()> {
        for row in mat.iter_mut() {
            let t = q.checked_mul(row[src])?;
            row[dst] = row[dst].checked_sub(t)?;
        }
        Some(())
    }
    fn swap_cols(mat: &mut [Vec<i128>], i: usize, j: usize) {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    }

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the remaining block becomes the pivot
            let pivot = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| (d[i][j].abs(), i, j));
            let Some((pi, pj)) = pivot else {
                return Some(Smith { u, v, diagonal });
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = d[i][t].div_euclid(p);
                row_op(&mut d, i, t, q)?;
                row_op(&mut u, i, t, q)?;
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let q = d[t][j].div_euclid(p);
                col_op(&mut d, j, t, q)?;
                col_op(&mut v, j, t, q)?;
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            if let Some(i) = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % p != 0)) {
                row_op(&mut d, t, i, -1)?;
                row_op(&mut u, t, i, -1)?;
                continue;
            }
            break;
        }
        if d[t][t] < 0 {
            d[t].iter_mut().for_each(|v| *v = -*v);
            u[t].iter_mut().for_each(|v| *v = -*v);
        }
        diagonal.push(d[t][t]);
    }
    Some(Smith { u, v, diagonal })
}
