//! The filtration of a Salvetti complex by tails of the vertex order, the
//! spectral sequence it induces over a field, and the recursion that
//! identifies its graded pieces with complexes of smaller graphs.
//!
//! `F^k` is spanned by the generators `e_T` with `{s_{N-k+1}, ..., s_N} ⊆ T`.
//! For chain complexes the boundary lowers the level, so the pieces are
//! indexed by `p = level` and the differential `d_r` has bidegree `(-r, r-1)`.

use std::collections::{BTreeMap, HashMap};

use crate::coefficients::linalg::{column_basis, complement_basis, kernel_basis, solve};
use crate::coefficients::{CyclotomicField, Field, LaurentRing, Matrix, Ring};
use crate::complex::{build_cochain_complex, Direction, GradedComplex};
use crate::coxeter::{CoxeterGraph, Label, VertexSet};
use crate::localsystems::LocalSystem;
use crate::{Error, Result};

/// Largest `k` with `{s_{N-k+1}, ..., s_N} ⊆ T`.
pub fn filtration_level(graph: &CoxeterGraph, t: VertexSet) -> usize {
    let n = graph.rank();
    (0..n).rev().take_while(|&i| t.contains(i)).count()
}

#[derive(Clone, Debug)]
pub struct FilteredComplex<R: Ring> {
    base: GradedComplex<R>,
    /// Level of each coordinate, per degree.
    levels: Vec<Vec<usize>>,
}

impl<R: Ring> FilteredComplex<R> {
    pub fn base(&self) -> &GradedComplex<R> {
        &self.base
    }

    /// Level of generator `i` in degree `k`.
    pub fn level(&self, k: usize, i: usize) -> usize {
        self.levels[k][i * self.base.module_rank()]
    }

    /// Number of vertices `N`; levels run over `0..=N`.
    pub fn depth(&self) -> usize {
        self.base.graph().rank()
    }
}

/// Attach levels and check that the differential respects the filtration.
pub fn filtration<R: Ring>(cx: &GradedComplex<R>) -> Result<FilteredComplex<R>> {
    let r = cx.module_rank();
    let levels: Vec<Vec<usize>> = (0..cx.num_degrees())
        .map(|k| {
            cx.generators(k)
                .iter()
                .flat_map(|&t| std::iter::repeat_n(filtration_level(cx.graph(), t), r))
                .collect()
        })
        .collect();
    let ring = cx.ring();
    for k in 0..cx.num_degrees() {
        let Some(t) = cx.target_degree(k) else {
            continue;
        };
        let d = cx.differential(k);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if ring.is_zero(d.get(i, j)) {
                    continue;
                }
                let ok = match cx.direction() {
                    Direction::Cochain => levels[t][i] >= levels[k][j],
                    Direction::Chain => levels[t][i] <= levels[k][j],
                };
                if !ok {
                    return Err(Error::InvalidArgument(format!(
                        "differential from {} to {} breaks the filtration",
                        cx.coordinate_label(k, j),
                        cx.coordinate_label(t, i)
                    )));
                }
            }
        }
    }
    Ok(FilteredComplex {
        base: cx.clone(),
        levels,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PageDifferential<E> {
    pub source: (usize, usize),
    pub target: (usize, usize),
    /// `dim target x dim source`, in the chosen bases of the two subquotients.
    pub matrix: Matrix<E>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Page<E> {
    pub r: usize,
    /// Nonzero dimensions keyed by `(s, t)`.
    pub dims: BTreeMap<(usize, usize), usize>,
    /// Nonzero differentials `d_r`.
    pub differentials: Vec<PageDifferential<E>>,
}

impl<E> Page<E> {
    pub fn dim(&self, s: usize, t: usize) -> usize {
        self.dims.get(&(s, t)).copied().unwrap_or(0)
    }

    /// `Σ_{s+t=k} dim E^{s,t}`.
    pub fn total(&self, k: usize) -> usize {
        self.dims
            .iter()
            .filter(|((s, t), _)| s + t == k)
            .map(|(_, d)| d)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralPages<E> {
    pub direction: Direction,
    pub pages: Vec<Page<E>>,
    /// First page from which every differential vanishes.
    pub r_max: usize,
}

impl<E> SpectralPages<E> {
    pub fn page(&self, r: usize) -> &Page<E> {
        &self.pages[r.min(self.pages.len() - 1)]
    }

    pub fn infinity(&self) -> &Page<E> {
        self.pages.last().expect("at least one page")
    }
}

struct Machine<'a, F: Field> {
    fcx: &'a FilteredComplex<F>,
    field: F,
    n: i64,
    z_cache: HashMap<(i64, i64, usize), Matrix<F::Elem>>,
}

impl<F: Field> Machine<'_, F> {
    /// Levels in the decreasing convention: for chains `N - level`.
    fn lvl(&self, k: usize, i: usize) -> i64 {
        let l = self.fcx.levels[k][i] as i64;
        match self.fcx.base.direction() {
            Direction::Cochain => l,
            Direction::Chain => self.n - l,
        }
    }

    fn coords(&self, k: usize, pred: impl Fn(i64) -> bool) -> Vec<usize> {
        (0..self.fcx.base.dim(k))
            .filter(|&i| pred(self.lvl(k, i)))
            .collect()
    }

    /// `Z_r^s` in degree `k`: chains in `F^s` with differential in `F^{s+r}`.
    fn z(&mut self, s: i64, r: i64, k: usize) -> Matrix<F::Elem> {
        if let Some(z) = self.z_cache.get(&(s, r, k)) {
            return z.clone();
        }
        let cx = &self.fcx.base;
        let cols = self.coords(k, |l| l >= s);
        let dim = cx.dim(k);
        let mut out = Matrix::zeros(&self.field, dim, 0);
        if !cols.is_empty() {
            let basis = match cx.target_degree(k) {
                Some(t) => {
                    let rows = self.coords(t, |l| l < s + r);
                    let d = cx.differential(k);
                    let sub = Matrix::from_fn(rows.len(), cols.len(), |i, j| {
                        d.get(rows[i], cols[j]).clone()
                    });
                    kernel_basis(&self.field, &sub)
                }
                None => Matrix::identity(&self.field, cols.len()),
            };
            out = Matrix::zeros(&self.field, dim, basis.cols());
            for (a, &c) in cols.iter().enumerate() {
                for j in 0..basis.cols() {
                    out.set(c, j, basis.get(a, j).clone());
                }
            }
        }
        self.z_cache.insert((s, r, k), out.clone());
        out
    }

    /// Basis of `Z_{r-1}^{s+1} + d Z_{r-1}^{s-r+1}` and a complement inside `Z_r^s`.
    fn subquotient(&mut self, s: i64, r: i64, k: usize) -> (Matrix<F::Elem>, Matrix<F::Elem>) {
        let cx = &self.fcx.base;
        let source = match cx.direction() {
            Direction::Cochain => k.checked_sub(1),
            Direction::Chain => (k + 1 < cx.num_degrees()).then_some(k + 1),
        };
        let mut d = self.z(s + 1, r - 1, k);
        if let Some(src) = source {
            let zs = self.z(s - r + 1, r - 1, src);
            let img = self.fcx.base.differential(src).mul(&self.field, &zs);
            d = d.hcat(&img);
        }
        let d = column_basis(&self.field, &d);
        let z = self.z(s, r, k);
        let comp = complement_basis(&self.field, &d, &z);
        (d, comp)
    }
}

/// All pages `E_0, ..., E_{N+1}` of the spectral sequence of the filtration.
pub fn compute_pages<F: Field>(fcx: &FilteredComplex<F>) -> Result<SpectralPages<F::Elem>> {
    let field = fcx.base.ring().clone();
    if !field.info().is_field {
        return Err(Error::UnsupportedRing(format!(
            "spectral pages need a field, got {}",
            field.info().kind
        )));
    }
    let n = fcx.depth() as i64;
    let direction = fcx.base.direction();
    let mut m = Machine {
        fcx,
        field: field.clone(),
        n,
        z_cache: HashMap::new(),
    };
    let degrees = fcx.base.num_degrees();
    // displayed (s, t) for internal level s and total degree k
    let show = |s: i64, k: usize| -> (usize, usize) {
        let p = match direction {
            Direction::Cochain => s,
            Direction::Chain => n - s,
        } as usize;
        (p, k - p)
    };
    let mut pages = Vec::new();
    for r in 0..=(n + 1) {
        let mut quotients = HashMap::new();
        let mut dims = BTreeMap::new();
        for k in 0..degrees {
            for s in 0..=n {
                let (d, comp) = m.subquotient(s, r, k);
                if comp.cols() > 0 {
                    dims.insert(show(s, k), comp.cols());
                    quotients.insert((s, k), (d, comp));
                }
            }
        }
        let mut differentials = Vec::new();
        for (&(s, k), (_, comp)) in &quotients {
            let Some(tk) = fcx.base.target_degree(k) else {
                continue;
            };
            let Some((td, tcomp)) = quotients.get(&(s + r, tk)) else {
                continue;
            };
            let image = fcx.base.differential(k).mul(&field, comp);
            let x = solve(&field, &td.hcat(tcomp), &image)
                .expect("differential of a representative lies in the target Z");
            let mat = x.block(td.cols(), 0, tcomp.cols(), comp.cols());
            if !mat.is_zero(&field) {
                differentials.push(PageDifferential {
                    source: show(s, k),
                    target: show(s + r, tk),
                    matrix: mat,
                });
            }
        }
        differentials.sort_by_key(|d| d.source);
        pages.push(Page {
            r: r as usize,
            dims,
            differentials,
        });
    }
    let r_max = (0..pages.len())
        .find(|&r| pages[r..].iter().all(|p| p.differentials.is_empty()))
        .unwrap_or(pages.len() - 1);
    Ok(SpectralPages {
        direction,
        pages,
        r_max,
    })
}

/// Image of a complex over `K[q^±]` in `Q[q]/φ_h`.
pub fn specialize_cyclotomic<K: Ring>(
    cx: &GradedComplex<LaurentRing<K>>,
    h: u64,
) -> Result<GradedComplex<CyclotomicField>> {
    let field = CyclotomicField::new(h)?;
    let base = cx.ring().base().clone();
    let kind = cx.ring().info().kind;
    let failed = std::cell::Cell::new(false);
    let out = cx.map_ring(field.clone(), |p| {
        field.from_laurent(&base, p).unwrap_or_else(|| {
            failed.set(true);
            Vec::new()
        })
    });
    if failed.get() {
        return Err(Error::UnsupportedRing(format!(
            "cannot map {kind} into Q[q]/phi{h}"
        )));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecursionWitness<E> {
    pub k: usize,
    pub head: VertexSet,
    pub tail: VertexSet,
    /// `(T, T ∪ tail)` rendered, per degree of the smaller complex.
    pub generator_map: Vec<(String, String)>,
    /// Differentials of `F^k / F^{k+1}` from degree `d + k`.
    pub quotient: Vec<Matrix<E>>,
    /// Differentials of the complex of the head subgraph from degree `d`.
    pub head_complex: Vec<Matrix<E>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RecursionOutcome<E> {
    /// `ρ` is a chain isomorphism of degree `k`.
    Isomorphism(RecursionWitness<E>),
    /// The head and tail do not commute.
    HypothesisFails {
        head: String,
        tail: String,
        m: Label,
    },
    /// The hypothesis holds but `ρ` fails to be an isomorphism.
    Mismatch { degree: usize, reason: String },
}

/// Compare `F^k/F^{k+1}` with the complex of `{s_1, ..., s_{N-k-1}}` shifted by `k`
/// through `ρ(e_T) = e_{T ∪ {s_{N-k+1}, ..., s_N}}`.
pub fn recursion_check<R: Ring>(
    graph: &CoxeterGraph,
    sys: &LocalSystem<R>,
    k: usize,
    cap: usize,
) -> Result<RecursionOutcome<R::Elem>> {
    let n = graph.rank();
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "level {k} exceeds the rank {n}"
        )));
    }
    let tail = VertexSet::from_indices(n - k..n);
    let head = VertexSet::from_indices(0..(n - k).saturating_sub(1));
    for s in head.iter() {
        for t in tail.iter() {
            let m = graph.m(s, t);
            if m != Label::Finite(2) {
                return Ok(RecursionOutcome::HypothesisFails {
                    head: graph.name(s).to_string(),
                    tail: graph.name(t).to_string(),
                    m,
                });
            }
        }
    }
    let base = build_cochain_complex(graph, sys, cap)?;
    let fcx = filtration(&base)?;
    let sub_graph = graph.subgraph(head);
    let sub = build_cochain_complex(&sub_graph, &sys.restrict(head), cap)?;
    let ring = sys.ring();
    let r = sys.module_rank();

    // ρ on generators, degree by degree
    let mut images: Vec<Vec<usize>> = Vec::new();
    let mut generator_map = Vec::new();
    for d in 0..sub.num_degrees() {
        let mut row = Vec::new();
        for &t in sub.generators(d) {
            let image = t.union(tail);
            let Some((deg, pos)) = base.locate(image) else {
                return Ok(RecursionOutcome::Mismatch {
                    degree: d,
                    reason: format!("{} has no image generator", sub_graph.render_subset(t)),
                });
            };
            debug_assert_eq!(deg, d + k);
            row.push(pos);
            generator_map.push((sub_graph.render_subset(t), graph.render_subset(image)));
        }
        images.push(row);
    }
    for deg in 0..base.num_degrees() {
        let count = (0..base.generators(deg).len())
            .filter(|&i| fcx.level(deg, i) == k)
            .count();
        let expected = deg
            .checked_sub(k)
            .map_or(0, |d| images.get(d).map_or(0, Vec::len));
        if count != expected {
            return Ok(RecursionOutcome::Mismatch {
                degree: deg,
                reason: format!(
                    "{count} generators of level {k} in degree {deg}, expected {expected}"
                ),
            });
        }
    }

    let mut quotient = Vec::new();
    let mut head_complex = Vec::new();
    for d in 0..sub.num_degrees() {
        let cols = &images[d];
        let empty = Vec::new();
        let rows = images.get(d + 1).unwrap_or(&empty);
        let big = base.differential(d + k);
        let q = Matrix::from_fn(rows.len() * r, cols.len() * r, |i, j| {
            big.get(rows[i / r] * r + i % r, cols[j / r] * r + j % r)
                .clone()
        });
        let small = sub.differential(d).clone();
        if q != small {
            return Ok(RecursionOutcome::Mismatch {
                degree: d,
                reason: format!(
                    "quotient differential differs from the head complex in degree {d}: {} vs {}",
                    q.render(ring),
                    small.render(ring)
                ),
            });
        }
        quotient.push(q);
        head_complex.push(small);
    }
    Ok(RecursionOutcome::Isomorphism(RecursionWitness {
        k,
        head,
        tail,
        generator_map,
        quotient,
        head_complex,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::{PrimeField, Rationals};
    use crate::complex::build_chain_complex;
    use crate::homology::compute_homology;

    fn a_n_f2(n: usize) -> GradedComplex<PrimeField> {
        let g = CoxeterGraph::type_a(n);
        let f2 = PrimeField::new(2).unwrap();
        build_cochain_complex(&g, &LocalSystem::uniform(&g, f2, 1).unwrap(), 1000).unwrap()
    }

    #[test]
    fn a2_levels() {
        let g = CoxeterGraph::type_a(2);
        assert_eq!(filtration_level(&g, VertexSet::singleton(1)), 1);
        assert_eq!(filtration_level(&g, g.all()), 2);
        assert_eq!(filtration_level(&g, VertexSet::singleton(0)), 0);
        assert_eq!(filtration_level(&g, VertexSet::empty()), 0);
    }

    #[test]
    fn abutment_a4_mod_two() {
        let cx = a_n_f2(4);
        let pages = compute_pages(&filtration(&cx).unwrap()).unwrap();
        let h = compute_homology(&cx).unwrap();
        for d in &h.degrees {
            assert_eq!(pages.infinity().total(d.degree), d.free_rank);
        }
        // E_1 columns: H*(B4), H*(B3), H*(B2), then the two single cells
        let e1 = pages.page(1);
        for (s, sub) in [(0usize, 3usize), (1, 2), (2, 1)] {
            let hs = compute_homology(&a_n_f2(sub)).unwrap();
            for d in &hs.degrees {
                assert_eq!(e1.dim(s, d.degree), d.free_rank, "s={s} t={}", d.degree);
            }
        }
        assert_eq!(e1.dim(3, 0), 1);
        assert_eq!(e1.dim(4, 0), 1);
    }

    #[test]
    fn pages_are_subquotients() {
        let cx = a_n_f2(3);
        let pages = compute_pages(&filtration(&cx).unwrap()).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        for w in pages.pages.windows(2) {
            let (cur, next) = (&w[0], &w[1]);
            let mut rank_out = BTreeMap::new();
            let mut rank_in = BTreeMap::new();
            for d in &cur.differentials {
                let rk = crate::coefficients::linalg::rank(&f2, &d.matrix);
                *rank_out.entry(d.source).or_insert(0) += rk;
                *rank_in.entry(d.target).or_insert(0) += rk;
            }
            for (&pos, &dim) in &cur.dims {
                let expect =
                    dim - rank_out.get(&pos).unwrap_or(&0) - rank_in.get(&pos).unwrap_or(&0);
                assert_eq!(next.dim(pos.0, pos.1), expect, "page {} at {pos:?}", cur.r);
            }
        }
    }

    #[test]
    fn zero_differential_stays_put() {
        let g = CoxeterGraph::new(vec!["a".into(), "b".into()], &[]).unwrap();
        let f2 = PrimeField::new(2).unwrap();
        // A1 x A1 with unit 1 over F2: every coefficient is 1 + x at x = -1
        let cx = build_cochain_complex(&g, &LocalSystem::uniform(&g, f2, 1).unwrap(), 100).unwrap();
        let pages = compute_pages(&filtration(&cx).unwrap()).unwrap();
        assert!(cx.differential(0).is_zero(&f2));
        assert_eq!(pages.page(0).dims, pages.infinity().dims);
        assert_eq!(pages.r_max, 0);
    }

    #[test]
    fn cyclotomic_e1_for_a2() {
        let g = CoxeterGraph::type_a(2);
        let r = LaurentRing::new(Rationals);
        let u = r.neg(&r.variable());
        let cx = build_cochain_complex(&g, &LocalSystem::uniform(&g, r, u).unwrap(), 100).unwrap();
        let k = specialize_cyclotomic(&cx, 2).unwrap();
        let pages = compute_pages(&filtration(&k).unwrap()).unwrap();
        // column 0 is the complex of A1 = B2 over the field: H^0 = H^1 = 1
        assert_eq!(pages.page(1).dim(0, 0), 1);
        assert_eq!(pages.page(1).dim(0, 1), 1);
        assert_eq!(pages.page(1).dim(1, 0), 1);
        assert_eq!(pages.page(1).dim(2, 0), 1);
        let h = compute_homology(&k).unwrap();
        for d in &h.degrees {
            assert_eq!(pages.infinity().total(d.degree), d.free_rank);
        }
    }

    #[test]
    fn chain_direction_abutment() {
        let g = CoxeterGraph::type_a(4);
        let f2 = PrimeField::new(2).unwrap();
        let cx = build_chain_complex(&g, &LocalSystem::uniform(&g, f2, 1).unwrap(), 1000).unwrap();
        let pages = compute_pages(&filtration(&cx).unwrap()).unwrap();
        let h = compute_homology(&cx).unwrap();
        for d in &h.degrees {
            assert_eq!(pages.infinity().total(d.degree), d.free_rank);
        }
    }

    #[test]
    fn recursion_on_a4() {
        let g = CoxeterGraph::type_a(4);
        let r = LaurentRing::new(Rationals);
        let sys = LocalSystem::uniform(&g, r.clone(), r.variable()).unwrap();
        for k in 0..=4 {
            match recursion_check(&g, &sys, k, 1000).unwrap() {
                RecursionOutcome::Isomorphism(w) => {
                    assert_eq!(w.head.len(), 4usize.saturating_sub(k + 1));
                    assert_eq!(w.tail.len(), k);
                }
                other => panic!("k={k}: {other:?}"),
            }
        }
    }

    #[test]
    fn recursion_reports_violation() {
        let g = CoxeterGraph::affine_a(2);
        let f2 = PrimeField::new(2).unwrap();
        let sys = LocalSystem::uniform(&g, f2, 1).unwrap();
        match recursion_check(&g, &sys, 1, 100).unwrap() {
            RecursionOutcome::HypothesisFails { m, .. } => assert_eq!(m, Label::Finite(3)),
            other => panic!("{other:?}"),
        }
    }
}
