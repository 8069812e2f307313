"""Smoke test for the compiled module; run from this directory after copying
the built library here as pysalvetti.so."""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pysalvetti as ps


def main():
    a3 = ps.CoxeterGraph.type_a(3)
    assert a3.classify() == "A3", a3.classify()
    assert a3.exponents() == [1, 2, 3]
    assert a3.order() == 24
    assert len(a3.elements()) == 24
    assert a3.poincare(["s1", "s2"]) == "1 + 2*q + 2*q^2 + q^3"
    reps = a3.coset_reps(["s1"], "s2")
    assert [len(w) for w in reps] == [0, 1, 2], reps

    g = ps.CoxeterGraph(["a", "b", "c"], [("a", "b", 3), ("b", "c", "inf")])
    assert g.classify() == "infinite"
    assert g.odd_components() == [["a", "b"], ["c"]]
    assert g.order() is None

    assert ps.cyclotomic(6) == "1 - q + q^2"
    assert ps.q_binomial(4, 2) == "1 + q + 2*q^2 + q^3 + q^4"
    assert ps.cyclotomic_factors("1 - q^4") == "phi1 * phi2 * phi4"

    u, d, v = ps.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [d[i][i] for i in range(3)] == [2, 6, 12], d

    a2 = ps.CoxeterGraph.type_a(2)
    text = a2.run("cohomology", preset="milnor-q")
    assert "H^2 = Q[q]/(phi3)" in text, text

    job = json.dumps({"vertices": ["s1", "s2"], "edges": [["s1", "s2", 3]],
                      "system": {"preset": "mod 2"}, "command": "homology"})
    report = json.loads(ps.run_job(job, format="structured"))
    assert [d["free_rank"] for d in report["homology"]["degrees"]] == [1, 1, 0]

    try:
        ps.run_job(json.dumps({"vertices": ["a"], "command": "cohomology"}), field="Q[q1,q2]")
    except NotImplementedError:
        pass
    else:
        raise AssertionError("expected NotImplementedError")
    try:
        ps.CoxeterGraph(["a"], [("a", "z", 3)])
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("pysalvetti smoke test passed")


if __name__ == "__main__":
    main()
