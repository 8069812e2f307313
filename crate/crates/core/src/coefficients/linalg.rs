//! Exact linear algebra over a field. Subspaces are passed around as
//! matrices whose columns span them.

use super::{Field, Matrix};

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref<F: Field>(field: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&i| !field.is_zero(m.get(i, col))) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = field.inv(m.get(row, col));
        m.scale_row(field, row, &inv);
        for i in 0..m.rows() {
            if i != row && !field.is_zero(m.get(i, col)) {
                let c = field.neg(m.get(i, col));
                m.add_row_multiple(field, i, row, &c);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

pub fn rank<F: Field>(field: &F, a: &Matrix<F::Elem>) -> usize {
    rref(field, a).1.len()
}

/// Basis of the null space, one column per free variable.
pub fn kernel_basis<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (r, pivots) = rref(field, a);
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut k = Matrix::zeros(field, n, free.len());
    for (j, &f) in free.iter().enumerate() {
        k.set(f, j, field.one());
        for (i, &p) in pivots.iter().enumerate() {
            k.set(p, j, field.neg(r.get(i, f)));
        }
    }
    k
}

/// A maximal independent subset of the columns, in order.
pub fn column_basis<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (_, pivots) = rref(field, a);
    a.select_columns(&pivots)
}

/// Basis of the sum of two column spaces.
pub fn subspace_sum<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    column_basis(field, &a.hcat(b))
}

/// Columns of `z` that extend a basis of the span of `d` to one of
/// `span(d) + span(z)`.
pub fn complement_basis<F: Field>(
    field: &F,
    d: &Matrix<F::Elem>,
    z: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    let (_, pivots) = rref(field, &d.hcat(z));
    let extra: Vec<usize> = pivots
        .into_iter()
        .filter(|&p| p >= d.cols())
        .map(|p| p - d.cols())
        .collect();
    z.select_columns(&extra)
}

/// Some `x` with `a x = b`, or `None` if a column of `b` is outside the column space.
pub fn solve<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    let n = a.cols();
    let (r, pivots) = rref(field, &a.hcat(b));
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(field, n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, r.get(i, n + j).clone());
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{PrimeField, Rationals, Ring};
    use num_rational::BigRational;

    fn qmat(rows: &[&[i64]]) -> Matrix<BigRational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_kernel() {
        let q = Rationals;
        let a = qmat(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&q, &a), 1);
        let k = kernel_basis(&q, &a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&q, &k).is_zero(&q));
    }

    #[test]
    fn zero_and_mod_two() {
        let q = Rationals;
        assert_eq!(rank(&q, &Matrix::zeros(&q, 2, 3)), 0);
        let f2 = PrimeField::new(2).unwrap();
        let a = Matrix::from_rows(vec![vec![1, 1], vec![1, 1]], 2);
        assert_eq!(rank(&f2, &a), 1);
        assert_eq!(kernel_basis(&f2, &a).cols(), 1);
        let b = qmat(&[&[-1], &[-1]]);
        assert_eq!(rank(&q, &b), 1);
    }

    #[test]
    fn solve_and_complement() {
        let q = Rationals;
        let a = qmat(&[&[1, 0], &[0, 1], &[1, 1]]);
        let b = qmat(&[&[2], &[3], &[5]]);
        assert_eq!(solve(&q, &a, &b), Some(qmat(&[&[2], &[3]])));
        assert_eq!(solve(&q, &a, &qmat(&[&[1], &[1], &[0]])), None);
        let d = qmat(&[&[1], &[0], &[1]]);
        let c = complement_basis(&q, &d, &a);
        assert_eq!(c, qmat(&[&[0], &[1], &[1]]));
        assert_eq!(subspace_sum(&q, &d, &a).cols(), 2);
        assert_eq!(q.render(c.get(2, 0)), "1");
    }
}
