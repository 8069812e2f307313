//! Ring-erased results and per-ring capabilities, so front ends can pick a
//! coefficient ring at run time.

use serde::{Deserialize, Serialize};

use crate::coefficients::{
    CyclotomicField, EuclideanDomain, Field, Integers, Laurent, Laurent2Ring, LaurentRing, Matrix,
    PrimeField, Rationals, Ring,
};
use crate::complex::{
    build_augmented_complex, build_cochain_complex, quasi_poincare, Direction, GradedComplex,
};
use crate::coxeter::CoxeterGraph;
use crate::homology::{compute_homology, HomologyResult};
use crate::localsystems::LocalSystem;
use crate::spectral::{compute_pages, filtration, specialize_cyclotomic, SpectralPages};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixView {
    pub from: usize,
    pub to: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixView {
    pub fn new<R: Ring>(ring: &R, from: usize, to: usize, m: &Matrix<R::Elem>) -> Self {
        MatrixView {
            from,
            to,
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| ring.render(x)).collect())
                .collect(),
        }
    }

    pub fn parse<R: Ring>(&self, ring: &R) -> Result<Matrix<R::Elem>> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Parse(format!(
                "matrix {} -> {} does not have shape {}x{}",
                self.from, self.to, self.rows, self.cols
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| ring.parse(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows, self.cols))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionView {
    Cochain,
    Chain,
}

impl From<Direction> for DirectionView {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Cochain => DirectionView::Cochain,
            Direction::Chain => DirectionView::Chain,
        }
    }
}

impl From<DirectionView> for Direction {
    fn from(d: DirectionView) -> Self {
        match d {
            DirectionView::Cochain => Direction::Cochain,
            DirectionView::Chain => Direction::Chain,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexView {
    pub ring: String,
    pub direction: DirectionView,
    pub module_rank: usize,
    /// Generator subsets per degree, rendered as `{s1,s2}`.
    pub generators: Vec<Vec<String>>,
    pub differentials: Vec<MatrixView>,
}

impl ComplexView {
    pub fn new<R: Ring>(cx: &GradedComplex<R>) -> Self {
        let graph = cx.graph();
        ComplexView {
            ring: cx.ring().info().kind.to_string(),
            direction: cx.direction().into(),
            module_rank: cx.module_rank(),
            generators: (0..cx.num_degrees())
                .map(|k| {
                    cx.generators(k)
                        .iter()
                        .map(|&t| graph.render_subset(t))
                        .collect()
                })
                .collect(),
            differentials: (0..cx.num_degrees())
                .map(|k| {
                    MatrixView::new(
                        cx.ring(),
                        k,
                        cx.target_degree(k).unwrap_or(k),
                        cx.differential(k),
                    )
                })
                .collect(),
        }
    }

    /// Rebuild the complex over `ring` on `graph`.
    pub fn to_complex<R: Ring>(&self, ring: R, graph: &CoxeterGraph) -> Result<GradedComplex<R>> {
        let generators = self
            .generators
            .iter()
            .map(|deg| {
                deg.iter()
                    .map(|s| {
                        let names: Vec<&str> = s
                            .trim_start_matches('{')
                            .trim_end_matches('}')
                            .split(',')
                            .map(str::trim)
                            .filter(|x| !x.is_empty())
                            .collect();
                        graph.subset(&names)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let differentials = self
            .differentials
            .iter()
            .map(|m| m.parse(&ring))
            .collect::<Result<Vec<_>>>()?;
        GradedComplex::from_parts(
            ring,
            self.direction.into(),
            graph.clone(),
            self.module_rank,
            generators,
            differentials,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeView {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    /// Cyclotomic factorization of each divisor, when available.
    pub cyclotomic: Vec<Option<String>>,
    pub description: String,
    /// Dimension over the base field, when finite and meaningful.
    pub dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyView {
    pub ring: String,
    pub direction: DirectionView,
    pub shift: usize,
    pub degrees: Vec<DegreeView>,
}

impl HomologyView {
    pub fn new<E>(
        res: &HomologyResult<E>,
        dimension: impl Fn(usize, &[E]) -> Option<usize>,
    ) -> Self {
        HomologyView {
            ring: res.ring.clone(),
            direction: res.direction.into(),
            shift: res.shift,
            degrees: res
                .degrees
                .iter()
                .map(|d| DegreeView {
                    degree: d.degree,
                    free_rank: d.free_rank,
                    torsion: d.torsion_text.clone(),
                    cyclotomic: d
                        .factorizations
                        .iter()
                        .map(|f| f.as_ref().map(|f| f.render()))
                        .collect(),
                    description: d.describe(&res.ring),
                    dimension: dimension(d.free_rank, &d.torsion),
                })
                .collect(),
        }
    }

    pub fn degree(&self, k: usize) -> Option<&DegreeView> {
        self.degrees.iter().find(|d| d.degree == k)
    }

    /// Relabel `H^{k+1}` as `H^k` of the Milnor fibre.
    pub fn milnor_shift(&self) -> Self {
        HomologyView {
            shift: self.shift + 1,
            degrees: self
                .degrees
                .iter()
                .filter(|d| d.degree > 0)
                .map(|d| DegreeView {
                    degree: d.degree - 1,
                    ..d.clone()
                })
                .collect(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageView {
    pub r: usize,
    /// `(s, t, dim)` for nonzero entries.
    pub entries: Vec<(usize, usize, usize)>,
    pub differentials: Vec<PageDifferentialView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageDifferentialView {
    pub source: (usize, usize),
    pub target: (usize, usize),
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PagesView {
    pub ring: String,
    pub direction: DirectionView,
    pub r_max: usize,
    pub pages: Vec<PageView>,
}

impl PagesView {
    pub fn new<R: Ring>(ring: &R, p: &SpectralPages<R::Elem>) -> Self {
        PagesView {
            ring: ring.info().kind.to_string(),
            direction: p.direction.into(),
            r_max: p.r_max,
            pages: p
                .pages
                .iter()
                .map(|page| PageView {
                    r: page.r,
                    entries: page.dims.iter().map(|(&(s, t), &d)| (s, t, d)).collect(),
                    differentials: page
                        .differentials
                        .iter()
                        .map(|d| PageDifferentialView {
                            source: d.source,
                            target: d.target,
                            matrix: d
                                .matrix
                                .to_rows()
                                .iter()
                                .map(|r| r.iter().map(|x| ring.render(x)).collect())
                                .collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn infinity(&self) -> &PageView {
        self.pages.last().expect("at least one page")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedView {
    pub quasi_poincare: String,
    /// `(W_{S∖s})_λ` for each vertex `s`.
    pub series: Vec<String>,
    pub complex: ComplexView,
    pub cohomology: HomologyView,
    pub augmented_cohomology: HomologyView,
}

fn unsupported<R: Ring>(ring: &R, what: &str) -> Error {
    Error::UnsupportedRing(format!("{what} is not available over {}", ring.info().kind))
}

/// What each coefficient ring can do.
pub trait Engine: Ring {
    fn homology(cx: &GradedComplex<Self>) -> Result<HomologyView> {
        Err(unsupported(cx.ring(), "homology"))
    }

    fn pages(cx: &GradedComplex<Self>) -> Result<PagesView> {
        Err(unsupported(cx.ring(), "the spectral sequence"))
    }

    fn augmented(
        _graph: &CoxeterGraph,
        sys: &LocalSystem<Self>,
        _cap: usize,
    ) -> Result<AugmentedView> {
        Err(unsupported(sys.ring(), "the augmented complex"))
    }

    fn at_cyclotomic(cx: &GradedComplex<Self>, h: u64) -> Result<GradedComplex<CyclotomicField>> {
        let _ = h;
        Err(unsupported(cx.ring(), "cyclotomic specialization"))
    }
}

fn homology_over<R: EuclideanDomain>(
    cx: &GradedComplex<R>,
    dimension: impl Fn(usize, &[R::Elem]) -> Option<usize>,
) -> Result<HomologyView> {
    Ok(HomologyView::new(&compute_homology(cx)?, dimension))
}

fn pages_over<F: Field>(cx: &GradedComplex<F>) -> Result<PagesView> {
    Ok(PagesView::new(cx.ring(), &compute_pages(&filtration(cx)?)?))
}

fn augmented_over<R: EuclideanDomain + Engine>(
    graph: &CoxeterGraph,
    sys: &LocalSystem<R>,
    cap: usize,
) -> Result<AugmentedView> {
    let ring = sys.ring();
    let (hat, series) = quasi_poincare(graph, sys, cap)?;
    let aug = build_augmented_complex(graph, sys, cap)?;
    let base = build_cochain_complex(graph, sys, cap)?;
    Ok(AugmentedView {
        quasi_poincare: ring.render(&hat),
        series: series.iter().map(|p| ring.render(p)).collect(),
        complex: ComplexView::new(&aug),
        cohomology: R::homology(&base)?,
        augmented_cohomology: R::homology(&aug)?,
    })
}

fn field_dimension(free: usize, _t: &[impl Sized]) -> Option<usize> {
    Some(free)
}

/// `K[q]/(d)` has dimension `deg d` over `K`.
fn polynomial_dimension<E>(free: usize, torsion: &[Laurent<E>]) -> Option<usize> {
    (free == 0).then(|| {
        torsion
            .iter()
            .map(|d| d.degree().map_or(0, |top| (top - d.valuation()) as usize))
            .sum()
    })
}

impl Engine for Integers {
    fn homology(cx: &GradedComplex<Self>) -> Result<HomologyView> {
        homology_over(cx, |_, _| None)
    }

    fn augmented(
        graph: &CoxeterGraph,
        sys: &LocalSystem<Self>,
        cap: usize,
    ) -> Result<AugmentedView> {
        augmented_over(graph, sys, cap)
    }
}

macro_rules! field_engine {
    ($t:ty) => {
        impl Engine for $t {
            fn homology(cx: &GradedComplex<Self>) -> Result<HomologyView> {
                homology_over(cx, field_dimension)
            }

            fn pages(cx: &GradedComplex<Self>) -> Result<PagesView> {
                pages_over(cx)
            }

            fn augmented(
                graph: &CoxeterGraph,
                sys: &LocalSystem<Self>,
                cap: usize,
            ) -> Result<AugmentedView> {
                augmented_over(graph, sys, cap)
            }
        }
    };
}

field_engine!(Rationals);
field_engine!(PrimeField);
field_engine!(CyclotomicField);

macro_rules! polynomial_engine {
    ($k:ty) => {
        impl Engine for LaurentRing<$k> {
            fn homology(cx: &GradedComplex<Self>) -> Result<HomologyView> {
                homology_over(cx, polynomial_dimension)
            }

            fn augmented(
                graph: &CoxeterGraph,
                sys: &LocalSystem<Self>,
                cap: usize,
            ) -> Result<AugmentedView> {
                augmented_over(graph, sys, cap)
            }

            fn at_cyclotomic(
                cx: &GradedComplex<Self>,
                h: u64,
            ) -> Result<GradedComplex<CyclotomicField>> {
                specialize_cyclotomic(cx, h)
            }
        }
    };
}

polynomial_engine!(Rationals);

impl Engine for LaurentRing<PrimeField> {
    fn homology(cx: &GradedComplex<Self>) -> Result<HomologyView> {
        homology_over(cx, polynomial_dimension)
    }

    fn augmented(
        graph: &CoxeterGraph,
        sys: &LocalSystem<Self>,
        cap: usize,
    ) -> Result<AugmentedView> {
        augmented_over(graph, sys, cap)
    }
}

impl Engine for LaurentRing<Integers> {
    fn at_cyclotomic(cx: &GradedComplex<Self>, h: u64) -> Result<GradedComplex<CyclotomicField>> {
        specialize_cyclotomic(cx, h)
    }
}

impl Engine for Laurent2Ring<Integers> {}
impl Engine for Laurent2Ring<Rationals> {}
impl Engine for Laurent2Ring<PrimeField> {}
