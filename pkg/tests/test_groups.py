import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewbrace.groups import (
    GroupError,
    NoIdentityAtZero,
    NotAssociative,
    NotASubgroup,
    NotLatinSquare,
    NotNormal,
    OrderCapExceeded,
    automorphisms,
    automorphisms_bruteforce,
    compose,
    coset_map,
    cyclic,
    dihedral,
    direct_product,
    group_by_name,
    group_from_json,
    group_from_table,
    identify,
    invert,
    is_homomorphism,
    is_isomorphic,
    lower_central_series,
    nilpotency_class,
    nilpotency_class_upper,
    quaternion,
    quotient_group,
    small_groups,
    upper_central_series,
)

SMALL = small_groups(8)
UP_TO_6 = [g for g in SMALL if g.order <= 6]


def check_axioms(g):
    n = g.order
    t = g.table
    for a in range(n):
        assert t[0][a] == a and t[a][0] == a
        assert t[a][g.inverse[a]] == 0 and t[g.inverse[a]][a] == 0
        assert sorted(t[a]) == list(range(n))
        assert sorted(t[b][a] for b in range(n)) == list(range(n))
    for a, b, c in itertools.product(range(n), repeat=3):
        assert t[t[a][b]][c] == t[a][t[b][c]]


def relabel(g, perm):
    """Move element x to perm[x]; perm must fix 0."""
    inv = invert(perm)
    n = g.order
    return group_from_table([[perm[g.table[inv[a]][inv[b]]] for b in range(n)] for a in range(n)])


def test_trivial_group():
    g = group_from_table([[0]])
    assert g.order == 1 and g.inverse == (0,)


def test_c2():
    g = group_from_table([[0, 1], [1, 0]])
    assert g.inverse == (0, 1)


def test_sym3_presentation(s3):
    # s = 1, t = 3: 3s = 2t = 0 and s + t = t + 2s
    sigma, tau = 1, 3
    assert s3.power(sigma, 3) == 0 and s3.power(tau, 2) == 0
    assert s3.op(sigma, tau) == s3.product(tau, sigma, sigma)
    assert not s3.is_abelian
    check_axioms(s3)


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_constructed_groups_satisfy_axioms(g):
    check_axioms(g)


def test_errors_name_the_axiom():
    with pytest.raises(NoIdentityAtZero):
        group_from_table([[1, 0], [0, 1]])
    with pytest.raises(NotLatinSquare):
        group_from_table([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    # identity at 0, Latin, but not associative (a loop of order 5)
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative, match=r"witness \("):
        group_from_table(loop)
    with pytest.raises(GroupError):
        group_from_table([[0, 1], [1]])


def test_constructor_numbering():
    c6 = cyclic(6)
    assert c6.op(4, 5) == 3
    d8 = dihedral(8)
    s, t = 1, 4
    # s t = t s^3
    assert d8.op(s, t) == d8.product(t, s, s, s)
    assert d8.op(s, t) == 1 + 4  # s t is numbered 5
    p = direct_product(cyclic(4), cyclic(2))
    assert p.op(1, 4) == 5  # a + b
    assert p.is_abelian and p.order == 8


def test_closure(s3):
    assert s3.closure([]) == {0}
    assert s3.closure([1]) == {0, 1, 2}
    c4c2 = group_by_name("C4xC2")
    assert len(c4c2.closure([2, 4])) == 4


def test_commutators(s3):
    for a in s3.elements:
        assert s3.commutator(a, a) == 0
    c4c2 = group_by_name("C4xC2")
    assert c4c2.commutator_subgroup(c4c2.elements, c4c2.elements) == {0}
    # brute force: every commutator, then close under products by fixed-point iteration
    comms = {s3.commutator(a, b) for a in range(6) for b in range(6)}
    closed = set(comms) | {0}
    while True:
        nxt = closed | {s3.table[x][y] for x in closed for y in closed}
        if nxt == closed:
            break
        closed = nxt
    assert len(closed) == 3
    assert s3.commutator_subgroup(s3.elements, s3.elements) == closed


def test_is_normal(s3):
    assert s3.is_normal({0, 1, 2})
    assert not s3.is_normal({0, 3})
    with pytest.raises(NotASubgroup):
        s3.is_normal({0, 1})


def test_central_series():
    assert nilpotency_class(cyclic(5)) == 1
    assert lower_central_series(cyclic(5))[-1] == {0}
    assert nilpotency_class(group_by_name("S3")) is None
    assert nilpotency_class(group_from_table([[0]])) == 0


def _naive_class(g):
    """Lower central series computed from scratch with sets."""
    current = set(g.elements)
    k = 1
    seen = []
    while current != {0}:
        comms = {g.commutator(x, y) for x in current for y in g.elements} | {0}
        while True:
            nxt = comms | {g.table[x][y] for x in comms for y in comms}
            if nxt == comms:
                break
            comms = nxt
        if comms == current or comms in seen:
            return None
        seen.append(current)
        current = comms
        k += 1
    return k - 1


def test_d8_class_two():
    d8 = dihedral(8)
    assert _naive_class(d8) == 2
    assert nilpotency_class(d8) == 2


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_series_agree(g):
    assert nilpotency_class(g) == nilpotency_class_upper(g) == _naive_class(g)
    assert len(lower_central_series(g)) <= g.order + 1
    assert len(upper_central_series(g)) <= g.order + 1


def test_automorphism_counts(s3):
    assert automorphisms(cyclic(2)) == [(0, 1)]
    brute = [
        p
        for p in itertools.permutations(range(6))
        if all(p[s3.table[a][b]] == s3.table[p[a]][p[b]] for a in range(6) for b in range(6))
    ]
    assert len(brute) == 6
    assert sorted(brute) == automorphisms(s3)


def test_aut_c4c2_contains_example_action():
    g = group_by_name("C4xC2")
    phi_sigma = (0, 7, 2, 5, 4, 3, 6, 1)  # a -> 3a + b, b -> b
    assert phi_sigma in automorphisms(g)


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_automorphisms_form_a_group(g):
    auts = set(automorphisms(g))
    assert sorted(auts) == automorphisms_bruteforce(g)
    for p in auts:
        assert invert(p) in auts
        for q in auts:
            assert compose(p, q) in auts


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        automorphisms(cyclic(17))
    with pytest.raises(OrderCapExceeded):
        is_isomorphic(cyclic(17), cyclic(17))


def test_isomorphism_classes_of_small_groups():
    for g, h in itertools.combinations(SMALL, 2):
        assert is_isomorphic(g, h) is None, (g.name, h.name)
    for g in SMALL:
        f = is_isomorphic(g, g)
        assert f is not None and is_homomorphism(g, g, f)
        assert identify(g) == g.name
    assert is_isomorphic(dihedral(6), group_by_name("S3")) is not None
    assert is_isomorphic(dihedral(4), group_by_name("C2xC2")) is not None
    assert identify(quaternion()) == "Q8"


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.randoms(use_true_random=False))
def test_relabelled_groups_are_isomorphic(g, rnd):
    rest = list(range(1, g.order))
    rnd.shuffle(rest)
    perm = (0, *rest)
    h = relabel(g, perm)
    f = is_isomorphic(g, h)
    assert f is not None and is_homomorphism(g, h, f)
    back = is_isomorphic(h, g)
    assert back is not None and is_homomorphism(h, g, back)


def test_quotients(s3):
    q, proj = quotient_group(s3, {0})
    assert q.order == 6 and is_isomorphic(q, s3) is not None
    q, proj = quotient_group(s3, s3.elements)
    assert q.order == 1 and set(proj) == {0}
    q, proj = quotient_group(s3, {0, 1, 2})
    # cosets {0,1,2} and {3,4,5}; the non-trivial coset squares to the identity
    assert q.table == ((0, 1), (1, 0))
    assert proj == (0, 0, 0, 1, 1, 1)
    with pytest.raises(NotNormal):
        quotient_group(s3, {0, 3})


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.name)
def test_quotient_map_is_homomorphism_with_kernel(g):
    for n in g.all_subgroups():
        if not g.is_normal(n):
            continue
        q, proj = quotient_group(g, n)
        assert is_homomorphism(g, q, proj)
        assert {x for x in g.elements if proj[x] == 0} == n
        assert proj == coset_map(g, n)


def test_group_names():
    assert group_by_name("C2^3").table == group_by_name("C2xC2xC2").table
    with pytest.raises(ValueError):
        group_by_name("Z9")


def test_group_json_roundtrip(s3):
    data = s3.to_json()
    assert set(data) == {"order", "table"}
    assert group_from_json(data).table == s3.table
    with pytest.raises(GroupError):
        group_from_json({"order": 3, "table": [[0, 1], [1, 0]]})
