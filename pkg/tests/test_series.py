import pytest

from skewbrace.brace import is_ideal, is_left_ideal, trivial_brace
from skewbrace.groups import cyclic, group_by_name
from skewbrace.series import (
    NotApplicable,
    abelian_corollary_check,
    analyze,
    bound_attainment_search,
    central_class,
    left_series,
    proof_containments_check,
    proposition_check,
    right_series,
    shortest_central_chain,
    sn_chain,
    term,
    theorem_a_check,
    upper_central_chain,
)


def test_trivial_brace_classes():
    rep = analyze(trivial_brace(cyclic(4)))
    assert rep.left_class == rep.right_class == 1
    assert rep.central_class == 1
    assert rep.bsq_class_r == 0


def test_one_point_brace():
    rep = analyze(trivial_brace(cyclic(1)))
    assert rep.left_class == rep.right_class == rep.central_class == 0


def test_example_one_series(ex1):
    left, right = left_series(ex1), right_series(ex1)
    assert term(left, 2) == term(right, 2) == {0, 1, 2}
    assert term(left, 3) == {0}
    assert term(right, 3) == term(right, 2)
    rep = analyze(ex1)
    assert rep.left_class == 2
    assert rep.right_class is None
    assert rep.central_class is None


def test_example_two_series(ex2):
    right = right_series(ex2)
    assert [sorted(s) for s in right] == [list(range(8)), [0, 2, 4, 6], [0, 4], [0]]
    rep = analyze(ex2)
    assert rep.left_class == 2 and rep.right_class == 3
    # golden value from the first run of the upper central chain
    assert rep.central_class == 3


def test_term_indexing(ex2):
    right = right_series(ex2)
    assert term(right, 1) == ex2.whole
    assert term(right, 10) == {0}
    with pytest.raises(ValueError):
        term(right, 0)


def test_theorem_a_verdicts(ex1, ex2):
    v = theorem_a_check(ex1)
    assert not v.applicable and "not nilpotent" in v.reason
    v = theorem_a_check(ex2)
    assert v.applicable and v.passed
    assert (v.m, v.r, v.right_class, v.bound) == (1, 1, 3, 3)
    v = theorem_a_check(trivial_brace(cyclic(6)))
    assert v.applicable and v.passed and v.right_class <= v.bound


def test_verdict_json(ex2):
    data = theorem_a_check(ex2).to_json("c4c2-d8")
    assert data == {
        "brace_id": "c4c2-d8",
        "applicable": True,
        "m": 1,
        "r": 1,
        "left_class": 2,
        "right_class": 3,
        "bound": 3,
        "pass": True,
    }


def test_abelian_corollary(ex1, ex2):
    assert abelian_corollary_check(ex2).passed
    assert abelian_corollary_check(trivial_brace(cyclic(5))).passed
    assert not abelian_corollary_check(ex1).applicable


def test_sn_chain_example_two(ex2):
    chain = sn_chain(ex2)
    assert len(chain.z_terms) == 2  # r = 1
    assert chain.s_terms[0] == {0, 4}  # ker(lambda) meets B^2 in <b>
    rep = proof_containments_check(ex2)
    assert rep.m == 1 and rep.r == 1
    assert rep.all_passed
    assert term(right_series(ex2), 3) <= chain.s_terms[0]


def test_sn_chain_trivial():
    rep = proof_containments_check(trivial_brace(group_by_name("D8")))
    assert rep.r == 0 and rep.all_passed


def test_sn_chain_not_applicable(ex1):
    with pytest.raises(NotApplicable):
        sn_chain(ex1)


def test_proposition():
    b = trivial_brace(cyclic(4))
    v = proposition_check(b)
    assert v.applicable and v.passed


def test_proposition_on_abelian_multiplicative_groups(brace_corpus):
    hits = 0
    for e in brace_corpus:
        b = e.brace
        v = proposition_check(b)
        if v.applicable and b.mul.is_abelian:
            hits += 1
            assert 2 in v.checked_k
            assert term(right_series(b), 3 + v.m) == {0}
        if v.applicable:
            assert v.passed
    assert hits > 0


def test_series_invariants(brace_corpus):
    for e in brace_corpus:
        b = e.brace
        left, right = left_series(b), right_series(b)
        for chain in (left, right):
            assert all(y <= x for x, y in zip(chain, chain[1:]))
            assert len(chain) <= b.order + 1
        assert all(is_ideal(b, s) for s in right), e.brace_id
        assert all(is_left_ideal(b, s) for s in left), e.brace_id
        rep = analyze(b)
        if rep.central_class is not None:
            assert rep.left_class is not None and rep.right_class is not None


def test_central_nilpotency_matches_left_and_right(brace_corpus):
    for e in brace_corpus:
        rep = analyze(e.brace)
        if rep.add_class_m is None:
            continue
        both = rep.left_class is not None and rep.right_class is not None
        assert (rep.central_class is not None) == both, e.brace_id


def test_central_chain_search_agrees(brace_corpus):
    for e in brace_corpus:
        b = e.brace
        chain = upper_central_chain(b)
        assert all(is_ideal(b, i) for i in chain)
        assert shortest_central_chain(b) == central_class(b), e.brace_id


def test_bound_attainment_search(ex2):
    report = bound_attainment_search([("c4c2", ex2), ("trivial", trivial_brace(cyclic(3)))])
    top = report["ranked"][0]
    assert top["brace_id"] == "c4c2" and top["attains_bound"] and top["ratio"] == 1.0
    trivial = report["ranked"][1]
    assert trivial["ratio"] == 0.0 and not trivial["attains_bound"]
    assert report["attaining_with_mr_above_1"] == []


def test_bound_attainment_search_on_corpus(brace_corpus):
    report = bound_attainment_search((e.brace_id, e.brace) for e in brace_corpus)
    assert report["applicable"] > 0
    for row in report["ranked"]:
        assert row["right_class"] <= row["bound"]
