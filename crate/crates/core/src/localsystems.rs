//! Local systems: a representation of the Artin group on a free module,
//! given by the action of each standard generator.

use num_bigint::BigInt;

use crate::coefficients::{Matrix, Ring};
use crate::coxeter::{CoxeterGraph, Label, ReducedWord, VertexSet};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Action<E> {
    /// Rank one: generator `s` multiplies by `units[s]`.
    Abelian(Vec<E>),
    /// Generator `s` acts by `matrices[s]` on column vectors.
    Matrix(Vec<Matrix<E>>),
}

#[derive(Clone, Debug)]
pub struct LocalSystem<R: Ring> {
    ring: R,
    rank: usize,
    action: Action<R::Elem>,
}

impl<R: Ring> LocalSystem<R> {
    /// Abelian system from one unit per vertex, constant on odd components.
    pub fn abelian(graph: &CoxeterGraph, ring: R, units: Vec<R::Elem>) -> Result<Self> {
        if units.len() != graph.rank() {
            return Err(Error::InvalidSystem(format!(
                "expected {} units, got {}",
                graph.rank(),
                units.len()
            )));
        }
        for (i, u) in units.iter().enumerate() {
            if !ring.is_unit(u) {
                return Err(Error::InvalidSystem(format!(
                    "`{}` assigned to {} is not a unit in {}",
                    ring.render(u),
                    graph.name(i),
                    ring.info().kind
                )));
            }
        }
        for comp in graph.odd_components() {
            let first = comp.iter().next().expect("nonempty");
            if let Some(bad) = comp.iter().find(|&i| units[i] != units[first]) {
                return Err(Error::InvalidSystem(format!(
                    "units differ on the odd component {} ({} vs {})",
                    graph.render_subset(comp),
                    graph.name(first),
                    graph.name(bad)
                )));
            }
        }
        Ok(LocalSystem {
            ring,
            rank: 1,
            action: Action::Abelian(units),
        })
    }

    /// One unit per odd component, in the order of [`CoxeterGraph::odd_components`].
    pub fn abelian_from_units(graph: &CoxeterGraph, ring: R, units: Vec<R::Elem>) -> Result<Self> {
        let comps = graph.odd_components();
        if units.len() != comps.len() {
            return Err(Error::InvalidSystem(format!(
                "graph has {} odd components, got {} units",
                comps.len(),
                units.len()
            )));
        }
        let mut per_vertex = vec![ring.zero(); graph.rank()];
        for (comp, u) in comps.iter().zip(units) {
            for i in comp.iter() {
                per_vertex[i] = u.clone();
            }
        }
        Self::abelian(graph, ring, per_vertex)
    }

    /// Every generator acts by the same unit.
    pub fn uniform(graph: &CoxeterGraph, ring: R, unit: R::Elem) -> Result<Self> {
        let units = vec![unit; graph.rank()];
        Self::abelian(graph, ring, units)
    }

    /// Matrix-valued system; checks shapes, invertibility and the braid relations.
    pub fn matrices(graph: &CoxeterGraph, ring: R, mats: Vec<Matrix<R::Elem>>) -> Result<Self> {
        if mats.len() != graph.rank() {
            return Err(Error::InvalidSystem(format!(
                "expected {} matrices, got {}",
                graph.rank(),
                mats.len()
            )));
        }
        let n = mats.first().map_or(1, |m| m.rows());
        if n == 0 {
            return Err(Error::InvalidSystem("module rank must be positive".into()));
        }
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::InvalidSystem(format!(
                    "matrix for {} is {}x{}, expected {n}x{n}",
                    graph.name(i),
                    m.rows(),
                    m.cols()
                )));
            }
            let det = determinant(&ring, m);
            if !ring.is_unit(&det) {
                return Err(Error::InvalidSystem(format!(
                    "matrix for {} has determinant {}, not a unit",
                    graph.name(i),
                    ring.render(&det)
                )));
            }
        }
        for s in 0..graph.rank() {
            for t in s + 1..graph.rank() {
                let Label::Finite(m) = graph.m(s, t) else {
                    continue;
                };
                let alt = |a: usize, b: usize| {
                    (0..m as usize).fold(Matrix::identity(&ring, n), |acc, i| {
                        acc.mul(&ring, &mats[if i % 2 == 0 { a } else { b }])
                    })
                };
                if alt(s, t) != alt(t, s) {
                    return Err(Error::InvalidSystem(format!(
                        "braid relation of length {m} fails for ({}, {})",
                        graph.name(s),
                        graph.name(t)
                    )));
                }
            }
        }
        Ok(LocalSystem {
            ring,
            rank: n,
            action: Action::Matrix(mats),
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn module_rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self) -> &Action<R::Elem> {
        &self.action
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.action, Action::Abelian(_))
    }

    pub fn vertex_count(&self) -> usize {
        match &self.action {
            Action::Abelian(u) => u.len(),
            Action::Matrix(m) => m.len(),
        }
    }

    /// The common unit when the system is abelian and all units agree.
    pub fn uniform_unit(&self) -> Option<&R::Elem> {
        match &self.action {
            Action::Abelian(u) if u.windows(2).all(|p| p[0] == p[1]) => u.first(),
            _ => None,
        }
    }

    /// The system on the full subgraph spanned by `t`.
    pub fn restrict(&self, t: VertexSet) -> Self {
        let action = match &self.action {
            Action::Abelian(u) => {
                Action::Abelian(t.iter().filter_map(|i| u.get(i).cloned()).collect())
            }
            Action::Matrix(m) => {
                Action::Matrix(t.iter().filter_map(|i| m.get(i).cloned()).collect())
            }
        };
        LocalSystem {
            ring: self.ring.clone(),
            rank: self.rank,
            action,
        }
    }

    /// Action of one generator as a matrix.
    pub fn generator(&self, s: usize) -> Result<Matrix<R::Elem>> {
        match &self.action {
            Action::Abelian(u) => u
                .get(s)
                .map(|x| Matrix::from_rows(vec![vec![x.clone()]], 1)),
            Action::Matrix(m) => m.get(s).cloned(),
        }
        .ok_or_else(|| Error::UnknownVertex(format!("#{s}")))
    }

    /// `λ(s1) λ(s2) ... λ(sk)` for the word `s1 s2 ... sk`.
    pub fn apply_word(&self, w: &ReducedWord) -> Result<Matrix<R::Elem>> {
        self.product(w.letters.iter().copied())
    }

    /// `λ(sk) ... λ(s2) λ(s1)`: the anti-homomorphic product, i.e. the right
    /// module action of the word.
    pub fn apply_word_reversed(&self, w: &ReducedWord) -> Result<Matrix<R::Elem>> {
        self.product(w.letters.iter().rev().copied())
    }

    fn product(&self, letters: impl Iterator<Item = usize>) -> Result<Matrix<R::Elem>> {
        let mut acc = Matrix::identity(&self.ring, self.rank);
        for s in letters {
            acc = acc.mul(&self.ring, &self.generator(s)?);
        }
        Ok(acc)
    }

    /// Product of the units along the word, abelian systems only.
    pub fn apply_word_unit(&self, w: &ReducedWord) -> Result<R::Elem> {
        match &self.action {
            Action::Abelian(u) => w.letters.iter().try_fold(self.ring.one(), |acc, &s| {
                u.get(s)
                    .map(|x| self.ring.mul(&acc, x))
                    .ok_or_else(|| Error::UnknownVertex(format!("#{s}")))
            }),
            Action::Matrix(_) => Err(Error::InvalidSystem("system is not abelian".into())),
        }
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = ring.one();
    let mut prev = ring.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !ring.is_zero(a.get(i, k))) else {
            return ring.zero();
        };
        if p != k {
            a.swap_rows(p, k);
            sign = ring.neg(&sign);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = ring.sub(
                    &ring.mul(a.get(k, k), a.get(i, j)),
                    &ring.mul(a.get(i, k), a.get(k, j)),
                );
                let v = ring
                    .divide_exact(&v, &prev)
                    .expect("Bareiss division is exact");
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    if n == 0 {
        return ring.one();
    }
    ring.mul(&sign, a.get(n - 1, n - 1))
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::from(0);
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// The `(n+1)`-dimensional representation of the three-strand braid group
/// on binary forms of degree `n` (basis `x^n, x^{n-1}y, ..., y^n`):
/// `(σ1)_{ij} = (-1)^{i-j} C(n+1-j, i-j)`, `(σ2)_{ij} = C(j-1, i-1)`,
/// indices from 1. Built on the `A2` graph.
pub fn symplectic_rep<R: Ring>(ring: R, n: usize) -> Result<(CoxeterGraph, LocalSystem<R>)> {
    let graph = CoxeterGraph::type_a(2);
    let (mats, _) = symplectic_matrices(&ring, n);
    let sys = LocalSystem::matrices(&graph, ring, mats)?;
    Ok((graph, sys))
}

/// The two matrices of [`symplectic_rep`] without validation.
pub fn symplectic_matrices<R: Ring>(ring: &R, n: usize) -> (Vec<Matrix<R::Elem>>, usize) {
    let d = n + 1;
    let n = n as i64;
    let s1 = Matrix::from_fn(d, d, |i, j| {
        let (i, j) = (i as i64 + 1, j as i64 + 1);
        let c = binomial(n + 1 - j, i - j);
        ring.from_int(&if (i - j) % 2 == 0 { c } else { -c })
    });
    let s2 = Matrix::from_fn(d, d, |i, j| ring.from_int(&binomial(j as i64, i as i64)));
    (vec![s1, s2], d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{Integers, LaurentRing, PrimeField, Rationals};
    use crate::coxeter::{all_reduced_words, enumerate_elements};

    fn zrows(m: &Matrix<BigInt>) -> Vec<Vec<i64>> {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn symplectic_small_cases() {
        let (_, s) = symplectic_rep(Integers, 1).unwrap();
        assert_eq!(
            zrows(&s.generator(0).unwrap()),
            vec![vec![1, 0], vec![-1, 1]]
        );
        assert_eq!(
            zrows(&s.generator(1).unwrap()),
            vec![vec![1, 1], vec![0, 1]]
        );
        let (_, s) = symplectic_rep(Integers, 0).unwrap();
        assert_eq!(zrows(&s.generator(0).unwrap()), vec![vec![1]]);
        let (_, s) = symplectic_rep(Integers, 2).unwrap();
        assert_eq!(
            zrows(&s.generator(1).unwrap()),
            vec![vec![1, 1, 1], vec![0, 1, 2], vec![0, 0, 1]]
        );
    }

    #[test]
    fn symplectic_is_unipotent_and_braided() {
        let z = Integers;
        for n in 0..=6 {
            let (_, s) = symplectic_rep(z, n).unwrap();
            for g in 0..2 {
                let a = s.generator(g).unwrap();
                let id = Matrix::identity(&z, n + 1);
                let nil = a.sub(&z, &id);
                let p = (0..=n).fold(id, |acc, _| acc.mul(&z, &nil));
                assert!(p.is_zero(&z), "n = {n}");
                assert!(z.is_unit(&determinant(&z, &a)));
            }
            let w = |l: &[usize]| {
                s.apply_word(&ReducedWord {
                    letters: l.to_vec(),
                })
                .unwrap()
            };
            assert_eq!(w(&[0, 1, 0]), w(&[1, 0, 1]));
        }
    }

    #[test]
    fn abelian_validation() {
        let b3 = CoxeterGraph::type_b(3);
        let r = LaurentRing::new(Integers);
        let q = r.variable();
        assert!(LocalSystem::abelian(&b3, r.clone(), vec![q.clone(), r.one(), q.clone()]).is_err());
        assert!(LocalSystem::abelian_from_units(&b3, r.clone(), vec![q.clone()]).is_err());
        let s = LocalSystem::abelian_from_units(&b3, r.clone(), vec![r.one(), q.clone()]).unwrap();
        assert_eq!(s.uniform_unit(), None);
        let two = r.from_i64(2);
        assert!(LocalSystem::uniform(&b3, r.clone(), two).is_err());
        let f = PrimeField::new(3).unwrap();
        assert!(LocalSystem::uniform(&b3, f, 0).is_err());
    }

    #[test]
    fn apply_word_abelian() {
        let a3 = CoxeterGraph::type_a(3);
        let r = LaurentRing::new(Rationals);
        let s = LocalSystem::uniform(&a3, r.clone(), r.variable()).unwrap();
        let w = ReducedWord {
            letters: vec![0, 1, 0],
        };
        assert_eq!(r.render(&s.apply_word_unit(&w).unwrap()), "q^3");
        assert_eq!(
            s.apply_word(&ReducedWord::identity()).unwrap(),
            Matrix::identity(&r, 1)
        );
        assert!(s.apply_word(&ReducedWord { letters: vec![7] }).is_err());
    }

    #[test]
    fn rejects_non_braided_matrices() {
        let z = Integers;
        let a2 = CoxeterGraph::type_a(2);
        let a = Matrix::from_rows(vec![vec![1.into(), 1.into()], vec![0.into(), 1.into()]], 2);
        let b = Matrix::from_rows(vec![vec![0.into(), 1.into()], vec![1.into(), 0.into()]], 2);
        assert!(LocalSystem::matrices(&a2, z, vec![a.clone(), b]).is_err());
        let singular =
            Matrix::from_rows(vec![vec![2.into(), 0.into()], vec![0.into(), 1.into()]], 2);
        assert!(LocalSystem::matrices(&a2, z, vec![a, singular]).is_err());
    }

    #[test]
    fn matrix_words_are_word_independent() {
        let (graph, s) = symplectic_rep(Integers, 2).unwrap();
        for w in enumerate_elements(&graph, graph.all(), 100).unwrap() {
            let v = s.apply_word(&w).unwrap();
            for other in all_reduced_words(&graph, &w) {
                assert_eq!(s.apply_word(&other).unwrap(), v);
            }
        }
    }
}
