//! Exact linear algebra: determinants and minor ideals over `Z[t, 1/t]`,
//! Smith normal form over `Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{poly_gcd, LaurentPoly};

pub type PolyMatrix = Vec<Vec<LaurentPoly>>;

/// Fraction-free (Bareiss) determinant of a square matrix. Every division
/// is exact in the Laurent ring, so no fractions appear.
pub fn bareiss_det(mut m: PolyMatrix) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        let pivot = (k..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| {
            (
                m[i][k].span(),
                m[i][k].coefficients().iter().map(|c| c.bits()).max(),
            )
        });
        let Some(p) = pivot else {
            return LaurentPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let prow = &top[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = &(&row[j] * &prow[k]) - &(&lead * &prow[j]);
                row[j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step must divide exactly");
            }
            row[k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Eliminates unit pivots (`±t^k`) one at a time, deleting the pivot row and
/// column. The ideal of `j`-minors of the result equals the ideal of
/// `(j + p)`-minors of the input after `p` pivots. Pivots are chosen by
/// smallest Markowitz cost.
pub fn eliminate_units(mut m: PolyMatrix, ncols: usize) -> (PolyMatrix, usize) {
    let mut cols: Vec<usize> = (0..ncols).collect();
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        let row_nnz: Vec<usize> = m
            .iter()
            .map(|r| cols.iter().filter(|&&c| !r[c].is_zero()).count())
            .collect();
        let col_nnz: Vec<usize> = cols
            .iter()
            .map(|&c| m.iter().filter(|r| !r[c].is_zero()).count())
            .collect();
        for (i, row) in m.iter().enumerate() {
            for (jj, &c) in cols.iter().enumerate() {
                if row[c].is_unit() {
                    let cost = (row_nnz[i] - 1) * (col_nnz[jj] - 1);
                    if best.is_none_or(|b| cost < b.0) {
                        best = Some((cost, i, jj));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pc = cols[pj];
        let prow = m.swap_remove(pi);
        let inv = prow[pc].unit_inverse().unwrap();
        for row in m.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = &row[pc] * &inv;
            for &c in &cols {
                if !prow[c].is_zero() {
                    row[c] = &row[c] - &(&f * &prow[c]);
                }
            }
        }
        cols.remove(pj);
    }
    let out: PolyMatrix = m
        .into_iter()
        .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
        .collect();
    (out, cols.len())
}

/// Normalized gcd of all maximal (`ncols x ncols`) minors of an
/// `nrows x ncols` matrix. Zero when there are fewer rows than columns.
pub fn maximal_minor_gcd(m: PolyMatrix, ncols: usize) -> LaurentPoly {
    let (m, k) = eliminate_units(m, ncols);
    let m: PolyMatrix = m
        .into_iter()
        .filter(|r| r.iter().any(|e| !e.is_zero()))
        .collect();
    if k == 0 {
        return LaurentPoly::one();
    }
    if m.len() < k {
        return LaurentPoly::zero();
    }
    let mut g = LaurentPoly::zero();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let sub: PolyMatrix = subset.iter().map(|&i| m[i].clone()).collect();
        let d = bareiss_det(sub);
        if !d.is_zero() {
            g = poly_gcd(&g, &d);
            if g.is_unit() {
                return g;
            }
        }
        if !next_subset(&mut subset, m.len()) {
            break;
        }
    }
    g.normalized()
}

fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Smith normal form `U A V = D`.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    /// Column transform (`ncols x ncols`, unimodular).
    pub v: Vec<Vec<BigInt>>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

pub fn smith_normal_form(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Smith {
    let nrows = a.len();
    let mut v: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(x, y);
        }
    };
    // col_y -= q * col_x
    let sub_col =
        |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, x: usize, y: usize, q: &BigInt| {
            for row in a.iter_mut().chain(v.iter_mut()) {
                let t = &row[x] * q;
                row[y] -= t;
            }
        };

    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        swap_cols(&mut a, &mut v, t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0].iter_mut().zip(top[t].iter()) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                sub_col(&mut a, &mut v, t, j, &q);
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let mut m = (t, t);
                for i in t..nrows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[m.0][m.1].abs() {
                        m = (i, t);
                    }
                }
                for j in t..ncols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[m.0][m.1].abs() {
                        m = (t, j);
                    }
                }
                a.swap(t, m.0);
                swap_cols(&mut a, &mut v, t, m.1);
                continue;
            }
            let bad =
                (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t].iter_mut().zip(rest[0].iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
        t += 1;
    }
    Smith { diagonal, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    /// Cofactor expansion along the first row.
    fn laplace(m: &PolyMatrix) -> LaurentPoly {
        let n = m.len();
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        for j in 0..n {
            let minor: PolyMatrix = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &laplace(&minor);
            acc = if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        acc
    }

    #[test]
    fn small_determinants() {
        let m = vec![vec![p(&[1, -1]), p(&[0, 1])], vec![p(&[-1]), p(&[1, -1])]];
        assert_eq!(bareiss_det(m.clone()), laplace(&m));
        assert_eq!(bareiss_det(m), p(&[1, -1, 1]));
        assert_eq!(bareiss_det(vec![]), LaurentPoly::one());
        assert_eq!(
            bareiss_det(vec![vec![p(&[0, 0]), p(&[1])], vec![p(&[0]), p(&[2])]]),
            LaurentPoly::zero()
        );
    }

    #[test]
    fn minor_gcd_of_trefoil_jacobian() {
        // Wirtinger Jacobian of the trefoil with one column removed.
        let a = p(&[1, -1]);
        let t = p(&[0, 1]);
        let m1 = p(&[-1]);
        let m = vec![
            vec![a.clone(), t.clone()],
            vec![m1.clone(), a.clone()],
            vec![t.clone(), m1.clone()],
        ];
        assert_eq!(maximal_minor_gcd(m, 2), p(&[1, -1, 1]));
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(ints(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let s = smith_normal_form(ints(&[&[1, -1, 0], &[0, 1, -1]]), 3);
        assert_eq!(s.rank(), 2);
        assert!(s.diagonal.iter().all(|d| d.is_one()));
        let s = smith_normal_form(ints(&[&[0, 0]]), 2);
        assert_eq!(s.rank(), 0);
    }

    fn poly_entry() -> impl Strategy<Value = LaurentPoly> {
        (proptest::collection::vec(-3i64..4, 0..3), -1i64..2)
            .prop_map(|(c, s)| LaurentPoly::from_coeffs(&c).shifted(s))
    }

    fn square(n: usize) -> impl Strategy<Value = PolyMatrix> {
        proptest::collection::vec(proptest::collection::vec(poly_entry(), n), n)
    }

    proptest! {
        #[test]
        fn bareiss_matches_laplace(m in (1usize..5).prop_flat_map(square)) {
            prop_assert_eq!(bareiss_det(m.clone()), laplace(&m));
        }

        #[test]
        fn unit_elimination_preserves_determinant(m in (1usize..5).prop_flat_map(square)) {
            let n = m.len();
            let g = maximal_minor_gcd(m.clone(), n);
            prop_assert_eq!(g, laplace(&m).normalized());
        }

        #[test]
        fn smith_transform_is_consistent(rows in proptest::collection::vec(proptest::collection::vec(-6i64..7, 3), 0..4)) {
            let a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let s = smith_normal_form(a.clone(), 3);
            // A V has its last (3 - rank) columns in the row-space kernel: they must vanish.
            for row in &a {
                for c in s.rank()..3 {
                    let dot: BigInt = (0..3).map(|k| &row[k] * &s.v[k][c]).sum();
                    prop_assert!(dot.is_zero());
                }
            }
            for w in s.diagonal.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }
}
