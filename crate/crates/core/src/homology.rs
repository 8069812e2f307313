//! (Co)homology of graded complexes over Euclidean domains, read off from
//! Smith normal forms of the differentials.

use std::fmt::Write as _;

use crate::coefficients::{
    elementary_divisors, smith_normal_form, CyclotomicFactorization, EuclideanDomain, Ring,
};
use crate::complex::{Direction, GradedComplex};
use crate::Result;

/// Trial-division bound for cyclotomic factors of torsion divisors.
pub const CYCLOTOMIC_BOUND: u64 = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeHomology<E> {
    pub degree: usize,
    pub free_rank: usize,
    /// Non-unit elementary divisors, normalized, each dividing the next.
    pub torsion: Vec<E>,
    pub torsion_text: Vec<String>,
    /// Present when the ring is a polynomial ring over `Q`.
    pub factorizations: Vec<Option<CyclotomicFactorization>>,
}

impl<E> DegreeHomology<E> {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Module description such as `Z^2 + Z/2` or `Q[q]/(1 + q)`.
    pub fn describe(&self, base: &str) -> String {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push(base.to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("{base}^{}", self.free_rank));
        }
        for (t, f) in self.torsion_text.iter().zip(&self.factorizations) {
            match f {
                Some(f) if f.remainder.is_none() => parts.push(format!("{base}/({})", f.render())),
                _ => parts.push(format!("{base}/({t})")),
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomologyResult<E> {
    pub direction: Direction,
    pub ring: String,
    /// Offset subtracted from raw degrees; 1 after a Milnor shift.
    pub shift: usize,
    pub degrees: Vec<DegreeHomology<E>>,
}

impl<E> HomologyResult<E> {
    pub fn degree(&self, k: usize) -> Option<&DegreeHomology<E>> {
        self.degrees.iter().find(|d| d.degree == k)
    }

    /// `Σ (-1)^k free_rank_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| {
                if d.degree % 2 == 0 {
                    d.free_rank as i64
                } else {
                    -(d.free_rank as i64)
                }
            })
            .sum()
    }
}

/// `H^k = ker δ^k / im δ^{k-1}` (or the chain analogue) in every degree.
pub fn compute_homology<R: EuclideanDomain>(
    cx: &GradedComplex<R>,
) -> Result<HomologyResult<R::Elem>> {
    let ring = cx.ring();
    let kind = ring.info().kind;
    let mut degrees = Vec::with_capacity(cx.num_degrees());
    let out_ranks: Vec<usize> = (0..cx.num_degrees())
        .map(|k| elementary_divisors(ring, cx.differential(k)).len())
        .collect();
    for (k, out_rank) in out_ranks.into_iter().enumerate() {
        let incoming = cx
            .incoming(k)
            .map(|m| elementary_divisors(ring, m))
            .unwrap_or_default();
        let in_rank = incoming.len();
        let torsion: Vec<R::Elem> = incoming.into_iter().filter(|d| !ring.is_unit(d)).collect();
        let free_rank = cx.dim(k) - out_rank - in_rank;
        degrees.push(DegreeHomology {
            degree: k,
            free_rank,
            torsion_text: torsion.iter().map(|d| ring.render(d)).collect(),
            factorizations: torsion
                .iter()
                .map(|d| ring.cyclotomic_factors(d, CYCLOTOMIC_BOUND))
                .collect(),
            torsion,
        });
    }
    Ok(HomologyResult {
        direction: cx.direction(),
        ring: kind.to_string(),
        shift: 0,
        degrees,
    })
}

/// Relabel `H^{k+1}` as `H^k` of the Milnor fibre; raw degree 0 is dropped.
pub fn milnor_shift<E: Clone>(res: &HomologyResult<E>) -> HomologyResult<E> {
    HomologyResult {
        direction: res.direction,
        ring: res.ring.clone(),
        shift: res.shift + 1,
        degrees: res
            .degrees
            .iter()
            .filter(|d| d.degree > 0)
            .map(|d| DegreeHomology {
                degree: d.degree - 1,
                ..d.clone()
            })
            .collect(),
    }
}

/// Whether `v` in degree `k` lies in the image of the incoming differential.
pub fn is_boundary<R: EuclideanDomain>(cx: &GradedComplex<R>, k: usize, v: &[R::Elem]) -> bool {
    let ring = cx.ring();
    let Some(a) = cx.incoming(k) else {
        return v.iter().all(|x| ring.is_zero(x));
    };
    let snf = smith_normal_form(ring, a);
    let uv = snf.u.mul_vec(ring, v);
    uv.iter()
        .enumerate()
        .all(|(i, x)| match snf.divisors.get(i) {
            Some(d) => ring.divides(d, x),
            None => ring.is_zero(x),
        })
}

/// Whether `v` in degree `k` is killed by the outgoing differential.
pub fn is_cycle<R: Ring>(cx: &GradedComplex<R>, k: usize, v: &[R::Elem]) -> bool {
    cx.apply(k, v).iter().all(|x| cx.ring().is_zero(x))
}

/// Betti table: one row per labelled result, one column per degree.
pub fn betti_table<E>(results: &[(String, HomologyResult<E>)]) -> String {
    if results.is_empty() {
        return String::new();
    }
    let width = results
        .iter()
        .flat_map(|(_, r)| r.degrees.iter().map(|d| d.degree + 1))
        .max()
        .unwrap_or(0);
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec![String::new()];
    header.extend((0..width).map(|k| format!("H{k}")));
    rows.push(header);
    for (label, r) in results {
        let mut row = vec![label.clone()];
        for k in 0..width {
            row.push(r.degree(k).map_or("0".into(), |d| d.describe(&r.ring)));
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..=width)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}
