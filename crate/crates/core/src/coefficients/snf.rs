//! Smith normal form over a Euclidean domain.
//!
//! Pivoting always picks the nonzero entry of least Euclidean size in the
//! remaining block (first in row-major order on ties), so results are
//! deterministic.

use super::{EuclideanDomain, Matrix};

/// `u * a * v == d` with `u`, `v` invertible and `d` diagonal,
/// `divisors[i] | divisors[i+1]`, each divisor normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm<E> {
    pub u: Matrix<E>,
    pub d: Matrix<E>,
    pub v: Matrix<E>,
    /// The nonzero diagonal entries of `d`.
    pub divisors: Vec<E>,
}

impl<E> SmithForm<E> {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

struct Reducer<'a, R: EuclideanDomain> {
    ring: &'a R,
    a: Matrix<R::Elem>,
    u: Option<Matrix<R::Elem>>,
    v: Option<Matrix<R::Elem>>,
}

impl<R: EuclideanDomain> Reducer<'_, R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, c: &R::Elem) {
        self.a.add_row_multiple(self.ring, target, source, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(self.ring, target, source, c);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, c: &R::Elem) {
        self.a.add_col_multiple(self.ring, target, source, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(self.ring, target, source, c);
        }
    }

    fn scale_row(&mut self, i: usize, c: &R::Elem) {
        self.a.scale_row(self.ring, i, c);
        if let Some(u) = &mut self.u {
            u.scale_row(self.ring, i, c);
        }
    }

    /// Position of the smallest nonzero entry in the block starting at `(t, t)`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), R::Size)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if self.ring.is_zero(x) {
                    continue;
                }
                let s = self.ring.size(x);
                if best.as_ref().is_none_or(|(_, b)| s < *b) {
                    best = Some(((i, j), s));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn pivot_to(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Clear row and column `t` outside the pivot. Returns false if a smaller
    /// remainder appeared and the pivot must be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let ring = self.ring;
        let pivot = self.a.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            let x = self.a.get(i, t);
            if ring.is_zero(x) {
                continue;
            }
            let (q, r) = ring.div_rem(x, &pivot);
            self.add_row(i, t, &ring.neg(&q));
            if !ring.is_zero(&r) {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a.get(t, j);
            if ring.is_zero(x) {
                continue;
            }
            let (q, r) = ring.div_rem(x, &pivot);
            self.add_col(j, t, &ring.neg(&q));
            if !ring.is_zero(&r) {
                clean = false;
            }
        }
        clean
    }

    /// A row below `t` with an entry not divisible by the pivot.
    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let pivot = self.a.get(t, t);
        (t + 1..self.a.rows())
            .find(|&i| (t + 1..self.a.cols()).any(|j| !self.ring.divides(pivot, self.a.get(i, j))))
    }

    fn run(&mut self) -> Vec<R::Elem> {
        let ring = self.ring;
        let mut divisors = Vec::new();
        let n = self.a.rows().min(self.a.cols());
        for t in 0..n {
            let Some(p) = self.min_entry(t) else { break };
            self.pivot_to(t, p);
            loop {
                if !self.clear_cross(t) {
                    let p = self.min_entry(t).expect("nonzero block");
                    self.pivot_to(t, p);
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => {
                        let one = ring.one();
                        self.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            let unit = ring.normal_unit(self.a.get(t, t));
            self.scale_row(t, &unit);
            divisors.push(self.a.get(t, t).clone());
        }
        divisors
    }
}

/// Smith normal form with both transforms.
pub fn smith_normal_form<R: EuclideanDomain>(ring: &R, a: &Matrix<R::Elem>) -> SmithForm<R::Elem> {
    let mut red = Reducer {
        ring,
        a: a.clone(),
        u: Some(Matrix::identity(ring, a.rows())),
        v: Some(Matrix::identity(ring, a.cols())),
    };
    let divisors = red.run();
    SmithForm {
        u: red.u.expect("tracked"),
        d: red.a,
        v: red.v.expect("tracked"),
        divisors,
    }
}

/// Nonzero elementary divisors only, skipping the transforms.
pub fn elementary_divisors<R: EuclideanDomain>(ring: &R, a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    Reducer {
        ring,
        a: a.clone(),
        u: None,
        v: None,
    }
    .run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{Integers, LaurentRing, Rationals, Ring};
    use num_bigint::BigInt;

    fn zmat(rows: &[&[i64]]) -> Matrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    fn check<R: EuclideanDomain>(ring: &R, a: &Matrix<R::Elem>) -> SmithForm<R::Elem> {
        let s = smith_normal_form(ring, a);
        assert_eq!(s.u.mul(ring, a).mul(ring, &s.v), s.d);
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(ring.is_zero(s.d.get(i, j)));
                }
            }
        }
        for w in s.divisors.windows(2) {
            assert!(ring.divides(&w[0], &w[1]));
        }
        s
    }

    #[test]
    fn small_integer_matrix() {
        let s = check(&Integers, &zmat(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let z = Integers;
        let s = check(&z, &Matrix::identity(&z, 3));
        assert_eq!(s.d, Matrix::identity(&z, 3));
    }

    #[test]
    fn chain_needs_fixing() {
        // diag(2, 3) is not in normal form: divisors are 1, 6
        let s = check(&Integers, &zmat(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.divisors, vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(&Integers, &zmat(&[&[0, 0, 0], &[0, -4, 6]]));
        assert_eq!(s.divisors, vec![BigInt::from(2)]);
    }

    #[test]
    fn laurent_one_by_one_is_monic() {
        let r = LaurentRing::new(Rationals);
        let a = Matrix::from_rows(vec![vec![r.parse("-2*q^-3 - 2*q^-2").unwrap()]], 1);
        let s = check(&r, &a);
        assert_eq!(r.render(&s.divisors[0]), "1 + q");
    }

    #[test]
    fn divisors_without_transforms_agree() {
        let z = Integers;
        let a = zmat(&[&[4, 6, 2], &[8, 10, 0], &[3, 1, 7]]);
        assert_eq!(elementary_divisors(&z, &a), check(&z, &a).divisors);
    }
}
