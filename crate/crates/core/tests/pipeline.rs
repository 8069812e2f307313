mod common;

use common::{field_abutment, milnor_complex};
use num_bigint::BigInt;
use num_integer::Integer;
use salvetti::coefficients::{Integers, LaurentRing, PrimeField, Rationals, Ring};
use salvetti::complex::{build_chain_complex, build_cochain_complex};
use salvetti::coxeter::CoxeterGraph;
use salvetti::homology::{compute_homology, milnor_shift};
use salvetti::job::{run_report, JobSpec, Report};
use salvetti::localsystems::LocalSystem;
use salvetti::spectral::specialize_cyclotomic;

fn integral_homology(n: usize) -> Vec<(usize, Vec<BigInt>)> {
    let g = CoxeterGraph::type_a(n);
    let sys = LocalSystem::uniform(&g, Integers, BigInt::from(1)).unwrap();
    let h = compute_homology(&build_chain_complex(&g, &sys, 10_000).unwrap()).unwrap();
    h.degrees
        .into_iter()
        .map(|d| (d.free_rank, d.torsion))
        .collect()
}

#[test]
fn braid_group_on_four_strands() {
    // H_*(B_4; Z) = Z, Z, Z/2, 0
    let h = integral_homology(3);
    let two = BigInt::from(2);
    assert_eq!(
        h,
        vec![(1, vec![]), (1, vec![]), (0, vec![two]), (0, vec![])]
    );
}

#[test]
fn universal_coefficients_mod_two() {
    let f2 = PrimeField::new(2).unwrap();
    for n in 1..=6 {
        let z = integral_homology(n);
        let even = |k: usize| z[k].1.iter().filter(|t| t.is_even()).count();
        let g = CoxeterGraph::type_a(n);
        let sys = LocalSystem::uniform(&g, f2, 1).unwrap();
        let h = compute_homology(&build_chain_complex(&g, &sys, 10_000).unwrap()).unwrap();
        for d in &h.degrees {
            let k = d.degree;
            let expect = z[k].0 + even(k) + if k > 0 { even(k - 1) } else { 0 };
            assert_eq!(d.free_rank, expect, "A_{n}, degree {k}");
        }
    }
}

#[test]
fn milnor_fibre_of_the_cusp() {
    let g = CoxeterGraph::type_a(2);
    let r = LaurentRing::new(Rationals);
    let sys = LocalSystem::uniform(&g, r.clone(), r.neg(&r.variable())).unwrap();
    let h =
        milnor_shift(&compute_homology(&build_cochain_complex(&g, &sys, 100).unwrap()).unwrap());
    let descriptions: Vec<String> = h.degrees.iter().map(|d| d.describe("Q[q]")).collect();
    assert_eq!(descriptions, ["Q[q]/(phi2)", "Q[q]/(phi3)"]);
}

#[test]
fn job_report_round_trip() {
    let job = JobSpec::parse(
        r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b", 4], ["b", "c", 3]],
            "system": {"preset": "plain-q"}, "command": "cohomology"}"#,
    )
    .unwrap();
    let report = run_report(&job).unwrap();
    let text = report.to_structured();
    assert_eq!(Report::from_structured(&text).unwrap(), report);
    let h = report.homology.unwrap();
    assert_eq!(h.degrees.len(), 4);
    // δ is injective on e{}, so H^0 vanishes
    assert_eq!(h.degrees[0].description, "0");
}

#[test]
fn universal_coefficients_mod_three() {
    let f3 = PrimeField::new(3).unwrap();
    for n in 1..=6 {
        let z = integral_homology(n);
        let div3 = |k: usize| z[k].1.iter().filter(|t| (*t % 3u32).bits() == 0).count();
        let g = CoxeterGraph::type_a(n);
        let sys = LocalSystem::uniform(&g, f3, 1).unwrap();
        let h = compute_homology(&build_chain_complex(&g, &sys, 10_000).unwrap()).unwrap();
        for d in &h.degrees {
            let k = d.degree;
            let expect = z[k].0 + div3(k) + if k > 0 { div3(k - 1) } else { 0 };
            assert_eq!(d.free_rank, expect, "A_{n}, degree {k}");
        }
    }
}

#[test]
fn first_page_columns_up_to_six_vertices() {
    let f2 = PrimeField::new(2).unwrap();
    let mod2 = |m: usize| {
        let g = CoxeterGraph::type_a(m);
        build_cochain_complex(&g, &LocalSystem::uniform(&g, f2, 1).unwrap(), 10_000).unwrap()
    };
    field_abutment("F2", mod2, 6).unwrap();
    for h in 2..=5 {
        let at = |m: usize| specialize_cyclotomic(&milnor_complex(m), h).unwrap();
        field_abutment(&format!("Q[q]/phi{h}"), at, 6).unwrap();
    }
}
