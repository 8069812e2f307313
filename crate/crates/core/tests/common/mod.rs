#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use salvetti::coefficients::{
    cyclotomic, divisors, q_binomial, q_integer, smith_normal_form, EuclideanDomain, Field,
    IntPoly, Integers, Laurent2, Laurent2Ring, LaurentRing, Matrix, PrimeField, Rationals, Ring,
};
use salvetti::complex::{build_chain_complex, build_cochain_complex, GradedComplex};
use salvetti::coxeter::{
    all_reduced_words, classify_parabolic, enumerate_elements, exponents, minimal_coset_reps,
    poincare_polynomial, poincare_series, CoxeterGraph, Label, ParabolicGroup, VertexSet,
};
use salvetti::homology::compute_homology;
use salvetti::localsystems::{determinant, LocalSystem};
use salvetti::spectral::{compute_pages, filtration};

pub const PROPERTY_CAP: usize = 30_000;

fn label() -> impl Strategy<Value = Label> {
    prop_oneof![
        4 => Just(Label::Finite(2)),
        3 => Just(Label::Finite(3)),
        1 => Just(Label::Finite(4)),
        1 => Just(Label::Finite(5)),
        1 => Just(Label::Infinite),
    ]
}

/// Coxeter graphs on 1 to `max` vertices with labels in {2, 3, 4, 5, ∞}.
pub fn arb_graph(max: usize) -> impl Strategy<Value = CoxeterGraph> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(label(), n * (n - 1) / 2).prop_map(move |labels| {
            let mut m = vec![vec![Label::Finite(2); n]; n];
            let mut it = labels.into_iter();
            for i in 0..n {
                m[i][i] = Label::Finite(1);
                for j in i + 1..n {
                    let l = it.next().expect("enough labels");
                    m[i][j] = l;
                    m[j][i] = l;
                }
            }
            let names = (1..=n).map(|i| format!("s{i}")).collect();
            CoxeterGraph::from_matrix(names, m).expect("valid matrix")
        })
    })
}

/// `δ∘δ = 0` and `∂∘∂ = 0` with the unit `q`, and with `q1`, `q2`
/// alternating over the odd components.
pub fn check_delta_squared(g: &CoxeterGraph) -> Result<(), String> {
    let r = LaurentRing::new(Integers);
    let sys = LocalSystem::uniform(g, r.clone(), r.variable()).map_err(|e| e.to_string())?;
    let cx = build_cochain_complex(g, &sys, PROPERTY_CAP).map_err(|e| e.to_string())?;
    if !cx.is_complex() {
        return Err(format!("δ² ≠ 0 for uniform q on {g:?}"));
    }
    let ch = build_chain_complex(g, &sys, PROPERTY_CAP).map_err(|e| e.to_string())?;
    if !ch.is_complex() {
        return Err(format!("∂² ≠ 0 for uniform q on {g:?}"));
    }
    let comps = g.odd_components();
    if comps.len() > 1 {
        let r2 = Laurent2Ring::new(Integers);
        let units = (0..comps.len()).map(|i| r2.variable(i % 2)).collect();
        let sys = LocalSystem::abelian_from_units(g, r2, units).map_err(|e| e.to_string())?;
        let cx = build_cochain_complex(g, &sys, PROPERTY_CAP).map_err(|e| e.to_string())?;
        if !cx.is_complex() {
            return Err(format!("δ² ≠ 0 for two units on {g:?}"));
        }
    }
    Ok(())
}

pub fn arb_int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-30i64..=30, c), r)
    })
}

/// Random polynomial matrices over Q[q], entries of degree at most 2.
pub fn arb_poly_matrix() -> impl Strategy<Value = Vec<Vec<Vec<i64>>>> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
        proptest::collection::vec(
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), c),
            r,
        )
    })
}

fn check_snf<R: EuclideanDomain>(ring: &R, a: &Matrix<R::Elem>) -> Result<(), String> {
    let s = smith_normal_form(ring, a);
    if s.u.mul(ring, a).mul(ring, &s.v) != s.d {
        return Err("U A V ≠ D".into());
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            let x = s.d.get(i, j);
            if i != j && !ring.is_zero(x) {
                return Err(format!("off-diagonal entry at ({i}, {j})"));
            }
            if i == j && i >= s.rank() && !ring.is_zero(x) {
                return Err("nonzero diagonal entry past the rank".into());
            }
        }
    }
    for (i, d) in s.divisors.iter().enumerate() {
        if s.d.get(i, i) != d || ring.normalize(d) != *d {
            return Err(format!("divisor {i} is not the normalized diagonal entry"));
        }
    }
    if s.divisors.windows(2).any(|w| !ring.divides(&w[0], &w[1])) {
        return Err("divisors do not form a chain".into());
    }
    if !ring.is_unit(&determinant(ring, &s.u)) || !ring.is_unit(&determinant(ring, &s.v)) {
        return Err("transform is not invertible".into());
    }
    Ok(())
}

pub fn check_snf_integers(rows: &[Vec<i64>]) -> Result<(), String> {
    let cols = rows[0].len();
    let a = Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
        cols,
    );
    check_snf(&Integers, &a)
}

pub fn check_snf_polynomials(rows: &[Vec<Vec<i64>>]) -> Result<(), String> {
    let r = LaurentRing::new(Rationals);
    let cols = rows[0].len();
    let a = Matrix::from_rows(
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|c| r.from_coeffs(0, c.iter().map(|&x| Rationals.from_i64(x)).collect()))
                    .collect()
            })
            .collect(),
        cols,
    );
    check_snf(&r, &a)
}

/// A random finite parabolic subset of `g` small enough to enumerate.
pub fn finite_subset(g: &CoxeterGraph, bits: u64) -> Option<VertexSet> {
    let t = VertexSet(bits & g.all().0);
    let ptype = classify_parabolic(g, t).ok()?;
    ptype.order().filter(|&o| o <= 5_000).map(|_| t)
}

/// Every reduced word of an element names that element, with the same length
/// and the same two-variable weight. Elements up to length 12 are sampled.
pub fn check_matsumoto(g: &CoxeterGraph, t: VertexSet, pick: usize) -> Result<(), String> {
    let group = ParabolicGroup::new(g, t, PROPERTY_CAP).map_err(|e| e.to_string())?;
    let short: Vec<usize> = (0..group.order())
        .filter(|&i| group.length(i) <= 12)
        .collect();
    let idx = short[pick % short.len()];
    let w = &group.words()[idx];
    let r2 = Laurent2Ring::new(Integers);
    let comps = g.odd_components();
    let units = (0..comps.len()).map(|i| r2.variable(i % 2)).collect();
    let sys = LocalSystem::abelian_from_units(g, r2, units).map_err(|e| e.to_string())?;
    let weight = sys.apply_word_unit(w).map_err(|e| e.to_string())?;
    let words = all_reduced_words(g, w);
    if words.is_empty() || !words.contains(w) {
        return Err(format!(
            "word set of {} misses the word itself",
            w.render(g)
        ));
    }
    for v in &words {
        if v.len() != w.len() || group.element_of(&v.letters) != Some(idx) {
            return Err(format!(
                "{} and {} name different elements",
                v.render(g),
                w.render(g)
            ));
        }
        if sys.apply_word_unit(v).map_err(|e| e.to_string())? != weight {
            return Err(format!("λ differs on {} and {}", v.render(g), w.render(g)));
        }
    }
    Ok(())
}

/// Length generating function of `W_T` equals `∏ [m_i + 1]_q` over the exponents.
pub fn check_poincare(g: &CoxeterGraph, t: VertexSet) -> Result<(), String> {
    let z = LaurentRing::new(Integers);
    let group = ParabolicGroup::new(g, t, PROPERTY_CAP).map_err(|e| e.to_string())?;
    let mut counts = vec![BigInt::from(0); 1];
    for i in 0..group.order() {
        let l = group.length(i);
        if counts.len() <= l {
            counts.resize(l + 1, BigInt::from(0));
        }
        counts[l] += 1;
    }
    let by_length = z.from_coeffs(0, counts);
    let ptype = classify_parabolic(g, t).map_err(|e| e.to_string())?;
    let product = exponents(&ptype)
        .map_err(|e| e.to_string())?
        .iter()
        .fold(z.one(), |acc, &m| z.mul(&acc, &q_integer(m as u64 + 1)));
    let formula = poincare_polynomial(g, t).map_err(|e| e.to_string())?;
    if by_length != product || formula != product {
        return Err(format!(
            "W_T(q) mismatch on {}: enumeration {}, product {}, library {}",
            g.render_subset(t),
            z.render(&by_length),
            z.render(&product),
            z.render(&formula)
        ));
    }
    Ok(())
}

/// `([n, d_1], ..., [n, d_k]) = (φ_{d_{k+1}} ... φ_{d_m})` in `Q[q^±]`.
pub fn check_binomial_ideals(n: u64) -> Result<(), String> {
    let r = LaurentRing::new(Rationals);
    let z = LaurentRing::new(Integers);
    let to_q = |p: &IntPoly| z.map_coeffs(&r, p, |c| Rationals.from_int(c));
    let ds = divisors(n);
    for k in 1..=ds.len() {
        let gcd = ds[..k].iter().fold(r.zero(), |acc, &d| {
            let b = q_binomial(n as i64, d as i64).expect("0 <= d <= n");
            r.gcd(&acc, &to_q(&b))
        });
        let product = ds[k..].iter().fold(r.one(), |acc, &d| {
            r.mul(&acc, &to_q(&cyclotomic(d).expect("d >= 1")))
        });
        if r.normalize(&gcd) != r.normalize(&product) {
            return Err(format!(
                "n = {n}, k = {k}: gcd {} vs product {}",
                r.render(&gcd),
                r.render(&product)
            ));
        }
    }
    Ok(())
}

/// Two-variable weights: `q1` and `q2` alternating over the odd components.
fn two_variable_weights(g: &CoxeterGraph) -> (Laurent2Ring<Integers>, Vec<Laurent2<BigInt>>) {
    let r2 = Laurent2Ring::new(Integers);
    let mut w = vec![r2.one(); g.rank()];
    for (c, comp) in g.odd_components().into_iter().enumerate() {
        for i in comp.iter() {
            w[i] = r2.variable(c % 2);
        }
    }
    (r2, w)
}

/// A finite `T` and a vertex `s ∉ T` with `W_{T ∪ {s}}` small enough to enumerate.
pub fn finite_pair(g: &CoxeterGraph, bits: u64, s: usize) -> Option<(VertexSet, usize)> {
    let s = s % g.rank();
    let t = VertexSet(bits & g.all().0).without(s);
    finite_subset(g, t.with(s).0).map(|_| (t, s))
}

/// Minimal representatives times `W_T` tile `W_{T ∪ {s}}` with lengths adding.
pub fn check_coset_partition(g: &CoxeterGraph, t: VertexSet, s: usize) -> Result<(), String> {
    let big = ParabolicGroup::new(g, t.with(s), PROPERTY_CAP).map_err(|e| e.to_string())?;
    let reps = minimal_coset_reps(g, t, s, PROPERTY_CAP).map_err(|e| e.to_string())?;
    let small = enumerate_elements(g, t, PROPERTY_CAP).map_err(|e| e.to_string())?;
    let mut seen = vec![false; big.order()];
    for u in &reps {
        for v in &small {
            let word: Vec<usize> = u.letters.iter().chain(&v.letters).copied().collect();
            let i = big.element_of(&word).ok_or("product outside the group")?;
            if big.length(i) != u.len() + v.len() {
                return Err(format!(
                    "l({} · {}) is not additive",
                    u.render(g),
                    v.render(g)
                ));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(format!("{} · {} is hit twice", u.render(g), v.render(g)));
            }
        }
    }
    if seen.iter().any(|&x| !x) {
        return Err("cosets do not cover the group".into());
    }
    Ok(())
}

/// `(W_{T ∪ {s}})_λ = (W_T)_λ · Σ_{reps} λ(ψ(h))` with two-variable weights.
pub fn check_weighted_factorization(
    g: &CoxeterGraph,
    t: VertexSet,
    s: usize,
) -> Result<(), String> {
    let (r2, w) = two_variable_weights(g);
    let series = |t| poincare_series(g, t, &r2, &w, PROPERTY_CAP).map_err(|e| e.to_string());
    let reps = minimal_coset_reps(g, t, s, PROPERTY_CAP).map_err(|e| e.to_string())?;
    let rep_sum = reps.iter().fold(r2.zero(), |acc, u| {
        let term = u.letters.iter().fold(r2.one(), |p, &l| r2.mul(&p, &w[l]));
        r2.add(&acc, &term)
    });
    let (lhs, rhs) = (series(t.with(s))?, r2.mul(&series(t)?, &rep_sum));
    if lhs != rhs {
        return Err(format!(
            "T = {}, s = {}: {} vs {}",
            g.render_subset(t),
            g.name(s),
            r2.render(&lhs),
            r2.render(&rhs)
        ));
    }
    Ok(())
}

/// The product-formula coefficients equal the enumerated ones, with parabolics up to order 1152.
pub fn check_fast_path(g: &CoxeterGraph) -> Result<bool, String> {
    let r = LaurentRing::new(Integers);
    let q = r.variable();
    let uniform = LocalSystem::uniform(g, r.clone(), q.clone()).map_err(|e| e.to_string())?;
    let mats = vec![Matrix::from_rows(vec![vec![q]], 1); g.rank()];
    let matrices = LocalSystem::matrices(g, r, mats).map_err(|e| e.to_string())?;
    let slow = match build_cochain_complex(g, &matrices, 1152) {
        Ok(cx) => cx,
        Err(salvetti::Error::CapExceeded { .. }) => return Ok(false),
        Err(e) => return Err(e.to_string()),
    };
    let fast = build_cochain_complex(g, &uniform, 1152).map_err(|e| e.to_string())?;
    for k in 0..fast.num_degrees() {
        if fast.differential(k) != slow.differential(k) {
            return Err(format!("degree {k} differs"));
        }
    }
    Ok(true)
}

/// The Euler characteristic of the constant system agrees over F2, F3 and Q.
pub fn check_euler_characteristic(g: &CoxeterGraph) -> Result<(), String> {
    fn chi<R: EuclideanDomain>(g: &CoxeterGraph, ring: R) -> Result<i64, String> {
        let one = ring.one();
        let sys = LocalSystem::uniform(g, ring, one).map_err(|e| e.to_string())?;
        let cx = build_cochain_complex(g, &sys, PROPERTY_CAP).map_err(|e| e.to_string())?;
        Ok(compute_homology(&cx)
            .map_err(|e| e.to_string())?
            .euler_characteristic())
    }
    let f2 = PrimeField::new(2).map_err(|e| e.to_string())?;
    let f3 = PrimeField::new(3).map_err(|e| e.to_string())?;
    let values = [chi(g, f2)?, chi(g, f3)?, chi(g, Rationals)?];
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!("Euler characteristics {values:?}"));
    }
    Ok(())
}

/// `ℒ_{-q}` on `A_n` over `Q[q^±]`.
pub fn milnor_complex(n: usize) -> GradedComplex<LaurentRing<Rationals>> {
    let g = CoxeterGraph::type_a(n);
    let r = LaurentRing::new(Rationals);
    let u = r.neg(&r.variable());
    let sys = LocalSystem::uniform(&g, r, u).expect("unit");
    build_cochain_complex(&g, &sys, 1_000_000).expect("finite type")
}

/// `E_∞` totals equal `dim H^k`, and column `s` of `E_1` is the cohomology
/// of the first `n - s - 1` vertices (a single class for `s >= n - 1`).
pub fn field_abutment<F: Field + EuclideanDomain>(
    label: &str,
    complex: impl Fn(usize) -> GradedComplex<F>,
    n: usize,
) -> Result<(), String> {
    let cx = complex(n);
    let pages =
        compute_pages(&filtration(&cx).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let h = compute_homology(&cx).map_err(|e| e.to_string())?;
    for d in &h.degrees {
        if pages.infinity().total(d.degree) != d.free_rank {
            return Err(format!(
                "{label} A_{n}: E_inf total {} vs dim H^{} = {}",
                pages.infinity().total(d.degree),
                d.degree,
                d.free_rank
            ));
        }
    }
    let e1 = pages.page(1);
    for s in 0..=n {
        let head = n.saturating_sub(s + 1);
        let expect: BTreeMap<usize, usize> = if head == 0 {
            BTreeMap::from([(0, 1)])
        } else {
            compute_homology(&complex(head))
                .map_err(|e| e.to_string())?
                .degrees
                .iter()
                .map(|d| (d.degree, d.free_rank))
                .collect()
        };
        for t in 0..=n {
            let want = expect.get(&t).copied().unwrap_or(0);
            if e1.dim(s, t) != want {
                return Err(format!(
                    "{label} A_{n}: E_1^({s},{t}) = {}, subgraph gives {want}",
                    e1.dim(s, t)
                ));
            }
        }
    }
    Ok(())
}
