//! The Salvetti cochain and chain complexes, the affine augmentation, and
//! the cocycles `z_h(i)`, `v_h(i)` of the braid complexes.
//!
//! Matrices act on column vectors: column blocks are indexed by the source
//! generators, row blocks by the targets. Each generator `e_T` occupies
//! `module_rank` consecutive coordinates.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::coefficients::{EuclideanDomain, IntPoly, Integers, LaurentRing, Matrix, Ring};
use crate::coxeter::{
    classify_parabolic, poincare_polynomial, CoxeterGraph, ParabolicGroup, VertexSet,
};
use crate::localsystems::{Action, LocalSystem};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `δ` raises degree.
    Cochain,
    /// `∂` lowers degree.
    Chain,
}

#[derive(Clone, Debug)]
pub struct GradedComplex<R: Ring> {
    ring: R,
    direction: Direction,
    graph: CoxeterGraph,
    module_rank: usize,
    generators: Vec<Vec<VertexSet>>,
    /// `differentials[k]` leaves degree `k`.
    differentials: Vec<Matrix<R::Elem>>,
}

impl<R: Ring> GradedComplex<R> {
    /// Assemble a complex from raw parts, checking shapes.
    pub fn from_parts(
        ring: R,
        direction: Direction,
        graph: CoxeterGraph,
        module_rank: usize,
        generators: Vec<Vec<VertexSet>>,
        differentials: Vec<Matrix<R::Elem>>,
    ) -> Result<Self> {
        let cx = GradedComplex {
            ring,
            direction,
            graph,
            module_rank,
            generators,
            differentials,
        };
        if cx.differentials.len() != cx.generators.len() {
            return Err(Error::InvalidArgument(
                "one differential per degree expected".into(),
            ));
        }
        for k in 0..cx.generators.len() {
            let d = &cx.differentials[k];
            let target = cx.target_degree(k).map_or(0, |t| cx.dim(t));
            if d.cols() != cx.dim(k) || d.rows() != target {
                return Err(Error::InvalidArgument(format!(
                    "differential from degree {k} is {}x{}, expected {target}x{}",
                    d.rows(),
                    d.cols(),
                    cx.dim(k)
                )));
            }
        }
        Ok(cx)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn module_rank(&self) -> usize {
        self.module_rank
    }

    /// Highest degree with a slot (possibly empty), plus one.
    pub fn num_degrees(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self, k: usize) -> &[VertexSet] {
        self.generators.get(k).map_or(&[], |g| g.as_slice())
    }

    /// Rank of the free module in degree `k`.
    pub fn dim(&self, k: usize) -> usize {
        self.generators(k).len() * self.module_rank
    }

    /// Degree reached by the differential leaving `k`, if it exists.
    pub fn target_degree(&self, k: usize) -> Option<usize> {
        match self.direction {
            Direction::Cochain => (k + 1 < self.num_degrees()).then_some(k + 1),
            Direction::Chain => k.checked_sub(1),
        }
    }

    /// Differential leaving degree `k`; shape `dim(target) x dim(k)`.
    pub fn differential(&self, k: usize) -> &Matrix<R::Elem> {
        &self.differentials[k]
    }

    /// Differential arriving at degree `k`, if any.
    pub fn incoming(&self, k: usize) -> Option<&Matrix<R::Elem>> {
        let src = match self.direction {
            Direction::Cochain => k.checked_sub(1)?,
            Direction::Chain => k + 1,
        };
        self.differentials.get(src)
    }

    /// `(degree, position)` of a generator.
    pub fn locate(&self, t: VertexSet) -> Option<(usize, usize)> {
        let k = t.len();
        self.generators(k)
            .iter()
            .position(|&g| g == t)
            .map(|i| (k, i))
    }

    /// Label such as `e{s1,s2}`; with module rank > 1, coordinate `j` is `e{s1,s2}[j]`.
    pub fn coordinate_label(&self, k: usize, coord: usize) -> String {
        let g = self.generators(k)[coord / self.module_rank];
        let base = format!("e{}", self.graph.render_subset(g));
        if self.module_rank == 1 {
            base
        } else {
            format!("{base}[{}]", coord % self.module_rank)
        }
    }

    /// Block of the differential between two generators.
    pub fn block(&self, source: VertexSet, target: VertexSet) -> Option<Matrix<R::Elem>> {
        let (k, i) = self.locate(source)?;
        let (l, j) = self.locate(target)?;
        if self.target_degree(k) != Some(l) {
            return None;
        }
        let r = self.module_rank;
        Some(self.differentials[k].block(j * r, i * r, r, r))
    }

    /// Entry of a rank-one complex between two generators.
    pub fn coefficient(&self, source: VertexSet, target: VertexSet) -> Option<R::Elem> {
        (self.module_rank == 1).then(|| self.block(source, target).map(|b| b.get(0, 0).clone()))?
    }

    /// Whether every composite of consecutive differentials vanishes.
    pub fn is_complex(&self) -> bool {
        (0..self.num_degrees()).all(|k| match self.target_degree(k) {
            Some(t) => self.differentials[t]
                .mul(&self.ring, &self.differentials[k])
                .is_zero(&self.ring),
            None => true,
        })
    }

    /// Apply the differential leaving degree `k` to a coordinate vector.
    pub fn apply(&self, k: usize, v: &[R::Elem]) -> Vec<R::Elem> {
        self.differentials[k].mul_vec(&self.ring, v)
    }

    /// Coordinate vector in degree `k` of a formal sum of rank-one generators.
    pub fn vector(&self, k: usize, terms: &[(VertexSet, R::Elem)]) -> Result<Vec<R::Elem>> {
        if self.module_rank != 1 {
            return Err(Error::InvalidArgument(
                "formal sums need a rank-one system".into(),
            ));
        }
        let mut v = vec![self.ring.zero(); self.dim(k)];
        for (t, c) in terms {
            let (deg, i) = self.locate(*t).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "no generator {} in the complex",
                    self.graph.render_subset(*t)
                ))
            })?;
            if deg != k {
                return Err(Error::InvalidArgument(format!(
                    "generator {} has degree {deg}, not {k}",
                    self.graph.render_subset(*t)
                )));
            }
            v[i] = self.ring.add(&v[i], c);
        }
        Ok(v)
    }

    /// Apply a ring map to every entry.
    pub fn map_ring<S: Ring>(
        &self,
        target: S,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> GradedComplex<S> {
        GradedComplex {
            differentials: self.differentials.iter().map(|d| d.map(&f)).collect(),
            ring: target,
            direction: self.direction,
            graph: self.graph.clone(),
            module_rank: self.module_rank,
            generators: self.generators.clone(),
        }
    }

    /// Matrix-market style dump of every nonzero differential.
    pub fn to_matrix_market(&self) -> String {
        let mut out = String::new();
        for k in 0..self.num_degrees() {
            let Some(t) = self.target_degree(k) else {
                continue;
            };
            let d = &self.differentials[k];
            let nnz: Vec<(usize, usize)> = (0..d.rows())
                .flat_map(|i| (0..d.cols()).map(move |j| (i, j)))
                .filter(|&(i, j)| !self.ring.is_zero(d.get(i, j)))
                .collect();
            let _ = writeln!(out, "%%MatrixMarket matrix coordinate general");
            let _ = writeln!(out, "% differential {k} -> {t}");
            let _ = writeln!(out, "% ring {}", self.ring.info().kind);
            let rows: Vec<String> = (0..d.rows()).map(|i| self.coordinate_label(t, i)).collect();
            let cols: Vec<String> = (0..d.cols()).map(|j| self.coordinate_label(k, j)).collect();
            let _ = writeln!(out, "% rows {}", rows.join(" "));
            let _ = writeln!(out, "% cols {}", cols.join(" "));
            let _ = writeln!(out, "{} {} {}", d.rows(), d.cols(), nnz.len());
            for (i, j) in nnz {
                let _ = writeln!(out, "{} {} {}", i + 1, j + 1, self.ring.render(d.get(i, j)));
            }
        }
        out
    }
}

/// Subsets of `graph` of size `k` generating finite parabolics, in
/// lexicographic order of their sorted index lists.
pub fn finite_subsets(graph: &CoxeterGraph, k: usize) -> Result<Vec<VertexSet>> {
    let n = graph.rank();
    let mut out = Vec::new();
    if k > n {
        return Ok(out);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let t = VertexSet::from_indices(idx.iter().copied());
        if classify_parabolic(graph, t)?.is_finite() {
            out.push(t);
        }
        // next combination
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(out)
}

fn all_finite_subsets(graph: &CoxeterGraph) -> Result<Vec<Vec<VertexSet>>> {
    let mut gens = Vec::new();
    for k in 0..=graph.rank() {
        let g = finite_subsets(graph, k)?;
        if g.is_empty() {
            break;
        }
        gens.push(g);
    }
    Ok(gens)
}

/// `(-1)^{σ(s,T)+1}` where `σ(s,T)` counts elements of `T` below `s`.
pub fn sign(s: usize, t: VertexSet) -> i64 {
    if t.without(s).count_below(s).is_multiple_of(2) {
        -1
    } else {
        1
    }
}

/// Computes `Σ_w (-1)^{l(w)} λ(ψ(w))` over minimal representatives of
/// `W_big / W_small`, with per-subset caches.
struct CosetSums<'a, R: Ring> {
    graph: &'a CoxeterGraph,
    sys: &'a LocalSystem<R>,
    cap: usize,
    reversed: bool,
    polys: HashMap<VertexSet, IntPoly>,
    groups: HashMap<VertexSet, ParabolicGroup>,
}

impl<'a, R: Ring> CosetSums<'a, R> {
    fn new(graph: &'a CoxeterGraph, sys: &'a LocalSystem<R>, cap: usize, reversed: bool) -> Self {
        CosetSums {
            graph,
            sys,
            cap,
            reversed,
            polys: HashMap::new(),
            groups: HashMap::new(),
        }
    }

    fn poly(&mut self, t: VertexSet) -> Result<IntPoly> {
        if let Some(p) = self.polys.get(&t) {
            return Ok(p.clone());
        }
        let p = poincare_polynomial(self.graph, t)?;
        self.polys.insert(t, p.clone());
        Ok(p)
    }

    fn group(&mut self, t: VertexSet) -> Result<&ParabolicGroup> {
        if !self.groups.contains_key(&t) {
            let g = ParabolicGroup::new(self.graph, t, self.cap)?;
            self.groups.insert(t, g);
        }
        Ok(&self.groups[&t])
    }

    fn sum(&mut self, big: VertexSet, small: VertexSet) -> Result<Matrix<R::Elem>> {
        let ring = self.sys.ring().clone();
        if let Some(u) = self.sys.uniform_unit() {
            // W_big(x) / W_small(x) at x = -u
            let zr = LaurentRing::new(Integers);
            let ratio = zr
                .divide_exact(&self.poly(big)?, &self.poly(small)?)
                .expect("parabolic Poincaré polynomials divide");
            let x = ring.neg(u);
            let v = zr
                .evaluate(&ring, &ratio, &x, |c| ring.from_int(c))
                .expect("polynomial");
            return Ok(Matrix::from_rows(vec![vec![v]], 1));
        }
        let sys = self.sys;
        let reversed = self.reversed;
        let reps = self.group(big)?.minimal_reps(small);
        match sys.action() {
            Action::Abelian(units) => {
                let neg: Vec<R::Elem> = units.iter().map(|u| ring.neg(u)).collect();
                let total = reps.iter().fold(ring.zero(), |acc, w| {
                    let term = w
                        .letters
                        .iter()
                        .fold(ring.one(), |p, &l| ring.mul(&p, &neg[l]));
                    ring.add(&acc, &term)
                });
                Ok(Matrix::from_rows(vec![vec![total]], 1))
            }
            Action::Matrix(_) => {
                let mut acc = Matrix::zeros(&ring, sys.module_rank(), sys.module_rank());
                for w in &reps {
                    let m = if reversed {
                        sys.apply_word_reversed(w)?
                    } else {
                        sys.apply_word(w)?
                    };
                    acc = if w.len() % 2 == 0 {
                        acc.add(&ring, &m)
                    } else {
                        acc.sub(&ring, &m)
                    };
                }
                Ok(acc)
            }
        }
    }
}

fn check_system<R: Ring>(graph: &CoxeterGraph, sys: &LocalSystem<R>) -> Result<()> {
    if sys.vertex_count() != graph.rank() {
        return Err(Error::InvalidSystem(format!(
            "system has {} generators, graph has {} vertices",
            sys.vertex_count(),
            graph.rank()
        )));
    }
    Ok(())
}

fn place<R: Ring>(
    ring: &R,
    d: &mut Matrix<R::Elem>,
    row: usize,
    col: usize,
    r: usize,
    sign: i64,
    b: &Matrix<R::Elem>,
) {
    let b = if sign < 0 {
        b.scale(ring, &ring.from_i64(-1))
    } else {
        b.clone()
    };
    d.set_block(row * r, col * r, &b);
}

/// The cochain complex `δ(a.e_T) = Σ_s (-1)^{σ(s,T)+1} Σ_w (-1)^{l(w)} λ(ψ(w))(a) e_{T∪s}`.
pub fn build_cochain_complex<R: Ring>(
    graph: &CoxeterGraph,
    sys: &LocalSystem<R>,
    cap: usize,
) -> Result<GradedComplex<R>> {
    check_system(graph, sys)?;
    let ring = sys.ring().clone();
    let r = sys.module_rank();
    let gens = all_finite_subsets(graph)?;
    let mut sums = CosetSums::new(graph, sys, cap, false);
    let mut differentials = Vec::with_capacity(gens.len());
    for k in 0..gens.len() {
        let targets = gens.get(k + 1).map_or(&[][..], |g| g.as_slice());
        let mut d = Matrix::zeros(&ring, targets.len() * r, gens[k].len() * r);
        for (col, &t) in gens[k].iter().enumerate() {
            for (row, &big) in targets.iter().enumerate() {
                if !t.is_subset(big) {
                    continue;
                }
                let s = big.without_set(t);
                let b = sums.sum(big, t)?;
                place(&ring, &mut d, row, col, r, sign(s, t), &b);
            }
        }
        differentials.push(d);
    }
    GradedComplex::from_parts(
        ring,
        Direction::Cochain,
        graph.clone(),
        r,
        gens,
        differentials,
    )
}

/// The chain complex `∂(a.e_T) = Σ_{s∈T} (-1)^{σ(s,T)+1} Σ_w (-1)^{l(w)} λ(ψ(w))(a) e_{T∖s}`.
///
/// For matrix systems the word `s1...sk` acts as `λ(sk)...λ(s1)`, the right
/// module structure that makes `∂∘∂ = 0`.
pub fn build_chain_complex<R: Ring>(
    graph: &CoxeterGraph,
    sys: &LocalSystem<R>,
    cap: usize,
) -> Result<GradedComplex<R>> {
    check_system(graph, sys)?;
    let ring = sys.ring().clone();
    let r = sys.module_rank();
    let gens = all_finite_subsets(graph)?;
    let mut sums = CosetSums::new(graph, sys, cap, true);
    let mut differentials = Vec::with_capacity(gens.len());
    for k in 0..gens.len() {
        let targets = if k == 0 {
            &[][..]
        } else {
            gens[k - 1].as_slice()
        };
        let mut d = Matrix::zeros(&ring, targets.len() * r, gens[k].len() * r);
        for (col, &big) in gens[k].iter().enumerate() {
            for (row, &t) in targets.iter().enumerate() {
                if !t.is_subset(big) {
                    continue;
                }
                let s = big.without_set(t);
                let b = sums.sum(big, t)?;
                place(&ring, &mut d, row, col, r, sign(s, t), &b);
            }
        }
        differentials.push(d);
    }
    GradedComplex::from_parts(
        ring,
        Direction::Chain,
        graph.clone(),
        r,
        gens,
        differentials,
    )
}

/// The quasi-Poincaré polynomial `lcm_s (W_{S∖s})_λ` of an affine graph,
/// with `(W_T)_λ = Σ_{w∈W_T} (-1)^{l(w)} λ(ψ(w))`, normalized to have
/// lowest coefficient one. Also returns the per-vertex series.
pub fn quasi_poincare<R: EuclideanDomain>(
    graph: &CoxeterGraph,
    sys: &LocalSystem<R>,
    cap: usize,
) -> Result<(R::Elem, Vec<R::Elem>)> {
    check_system(graph, sys)?;
    let Action::Abelian(units) = sys.action() else {
        return Err(Error::InvalidSystem(
            "the augmented complex needs an abelian system".into(),
        ));
    };
    let all = graph.all();
    if graph.rank() == 0 || classify_parabolic(graph, all)?.is_finite() {
        return Err(Error::InvalidGraph(
            "augmentation needs an affine graph: the whole vertex set generates a finite group"
                .into(),
        ));
    }
    let ring = sys.ring();
    let neg: Vec<R::Elem> = units.iter().map(|u| ring.neg(u)).collect();
    let mut series = Vec::new();
    for s in 0..graph.rank() {
        let t = all.without(s);
        if !classify_parabolic(graph, t)?.is_finite() {
            return Err(Error::InvalidGraph(format!(
                "not affine: the proper subset {} generates an infinite group",
                graph.render_subset(t)
            )));
        }
        series.push(crate::coxeter::poincare_series(graph, t, ring, &neg, cap)?);
    }
    if let Some(i) = series.iter().position(|p| ring.is_zero(p)) {
        return Err(Error::InvalidSystem(format!(
            "(W_T)_λ vanishes for T = {}; the lcm is undefined",
            graph.render_subset(all.without(i))
        )));
    }
    let lcm = series
        .iter()
        .skip(1)
        .fold(series[0].clone(), |acc, p| ring.lcm(&acc, p));
    Ok((ring.normalize_low(&lcm), series))
}

/// The cochain complex plus a top generator `e_S` with
/// `δ e_{S∖s} = (-1)^{σ(s,S∖s)+1} Ŵ / (W_{S∖s})_λ · e_S`.
pub fn build_augmented_complex<R: EuclideanDomain>(
    graph: &CoxeterGraph,
    sys: &LocalSystem<R>,
    cap: usize,
) -> Result<GradedComplex<R>> {
    let (hat, series) = quasi_poincare(graph, sys, cap)?;
    let base = build_cochain_complex(graph, sys, cap)?;
    let ring = sys.ring().clone();
    let n = graph.rank();
    let all = graph.all();
    let mut generators = base.generators.clone();
    let mut differentials = base.differentials.clone();
    while generators.len() < n {
        generators.push(Vec::new());
        differentials.push(Matrix::zeros(&ring, 0, 0));
    }
    let top = &generators[n - 1];
    let mut d = Matrix::zeros(&ring, 1, top.len());
    for (col, &t) in top.iter().enumerate() {
        let s = all.without_set(t);
        let ratio = ring.divide_exact(&hat, &series[s]).ok_or_else(|| {
            Error::InvalidSystem("quasi-Poincaré polynomial not divisible".into())
        })?;
        let v = if sign(s, t) < 0 {
            ring.neg(&ratio)
        } else {
            ratio
        };
        d.set(0, col, v);
    }
    differentials[n - 1] = d;
    generators.push(vec![all]);
    differentials.push(Matrix::zeros(&ring, 0, 1));
    GradedComplex::from_parts(
        ring,
        Direction::Cochain,
        graph.clone(),
        1,
        generators,
        differentials,
    )
}

impl VertexSet {
    /// The single element of `self ∖ other`; panics unless there is exactly one.
    fn without_set(self, other: VertexSet) -> usize {
        let diff = VertexSet(self.0 & !other.0);
        assert_eq!(diff.len(), 1, "subsets differ by one vertex");
        diff.iter().next().expect("one element")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    Z,
    V,
}

/// Formal sum of bitstrings with integer coefficients, first-appearance order.
pub type StringSum = Vec<(String, i64)>;

fn concat(a: &StringSum, b: &StringSum) -> StringSum {
    let mut out: StringSum = Vec::new();
    for (x, c) in a {
        for (y, d) in b {
            push_term(&mut out, format!("{x}{y}"), c * d);
        }
    }
    out
}

fn push_term(out: &mut StringSum, s: String, c: i64) {
    match out.iter_mut().find(|(t, _)| *t == s) {
        Some(entry) => entry.1 += c,
        None => out.push((s, c)),
    }
}

fn add_sums(out: &mut StringSum, a: &StringSum, sign: i64) {
    for (s, c) in a {
        push_term(out, s.clone(), sign * c);
    }
}

fn single(s: String) -> StringSum {
    vec![(s, 1)]
}

fn power(a: &StringSum, k: usize) -> StringSum {
    (0..k).fold(single(String::new()), |acc, _| concat(&acc, a))
}

/// The cocycles `z_h(i)` (length `n = hi`) and `v_h(i)` (length `n = hi - 1`)
/// of the braid complex on `n` vertices, built from `w_h = 01^{h-2}0`,
/// `z_h = 1^{h-1}0 + (-1)^h 01^{h-1}`, `b_h = 01^{h-2}`, `c_h = 1^{h-1}`.
pub fn dps_cocycle(kind: CocycleKind, h: usize, i: usize, n: usize) -> Result<StringSum> {
    let expected = match kind {
        CocycleKind::Z => h * i,
        CocycleKind::V => (h * i).wrapping_sub(1),
    };
    if h < 2 || i < 1 || n != expected {
        return Err(Error::InvalidArgument(format!(
            "no {} cocycle with h = {h}, i = {i} on {n} vertices",
            match kind {
                CocycleKind::Z => "z",
                CocycleKind::V => "v",
            }
        )));
    }
    let ones = |k: usize| "1".repeat(k);
    let sgn = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
    let w = single(format!("0{}0", ones(h - 2)));
    let mut z = single(format!("{}0", ones(h - 1)));
    push_term(&mut z, format!("0{}", ones(h - 1)), sgn(h));
    let b = single(format!("0{}", ones(h - 2)));
    let c = single(ones(h - 1));
    let mut out = StringSum::new();
    match kind {
        CocycleKind::Z => {
            for j in 0..i {
                let term = concat(&concat(&power(&w, j), &z), &power(&w, i - j - 1));
                add_sums(&mut out, &term, sgn(h * j));
            }
        }
        CocycleKind::V => {
            for j in 0..i.saturating_sub(1) {
                let term = concat(
                    &concat(&concat(&power(&w, j), &z), &power(&w, i - j - 2)),
                    &b,
                );
                add_sums(&mut out, &term, sgn(h * j));
            }
            add_sums(&mut out, &concat(&power(&w, i - 1), &c), sgn(h * (i - 1)));
        }
    }
    out.retain(|(_, c)| *c != 0);
    Ok(out)
}

/// Degree (number of ones) and coordinate vector of a formal bitstring sum.
pub fn string_sum_vector<R: Ring>(
    cx: &GradedComplex<R>,
    sum: &StringSum,
) -> Result<(usize, Vec<R::Elem>)> {
    let graph = cx.graph();
    let terms: Vec<(VertexSet, R::Elem)> = sum
        .iter()
        .map(|(s, c)| Ok((graph.from_bitstring(s)?, cx.ring().from_i64(*c))))
        .collect::<Result<_>>()?;
    let k = terms.first().map_or(0, |(t, _)| t.len());
    Ok((k, cx.vector(k, &terms)?))
}
