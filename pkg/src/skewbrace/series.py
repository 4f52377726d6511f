"""Left, right and central series of a skew brace and the class-bound checks.

Classes are ``int`` when the series reaches the trivial ideal (or the whole
brace, for the central chain) and ``None`` otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .brace import ZERO, SkewBrace, all_ideals, centre, is_ideal, quotient_brace
from .groups import (
    coset_map,
    nilpotency_class,
    upper_central_series,
)


class NotApplicable(ValueError):
    pass


def left_series(b: SkewBrace) -> list[frozenset[int]]:
    """``B^1 = B, B^{n+1} = B * B^n`` until the chain repeats."""
    chain = [b.whole]
    for _ in range(b.order + 1):
        nxt = b.star_span(b.elements, chain[-1])
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def right_series(b: SkewBrace) -> list[frozenset[int]]:
    """``B^(1) = B, B^(n+1) = B^(n) * B`` until the chain repeats."""
    chain = [b.whole]
    for _ in range(b.order + 1):
        nxt = b.star_span(chain[-1], b.elements)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def term(chain: list[frozenset[int]], k: int) -> frozenset[int]:
    """The ``k``-th term (1-based) of a stabilised chain."""
    if k < 1:
        raise ValueError("series terms are indexed from 1")
    return chain[min(k, len(chain)) - 1]


def chain_class(chain: list[frozenset[int]]) -> int | None:
    return len(chain) - 1 if chain[-1] == ZERO else None


def upper_central_chain(b: SkewBrace) -> list[frozenset[int]]:
    """``I_0 = 0`` and ``I_{j+1}`` the preimage of the centre of ``B/I_j``."""
    chain = [ZERO]
    for _ in range(b.order + 1):
        q, proj = quotient_brace(b, chain[-1])
        z = centre(q)
        nxt = frozenset(x for x in b.elements if proj[x] in z)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def central_class(b: SkewBrace) -> int | None:
    chain = upper_central_chain(b)
    return len(chain) - 1 if chain[-1] == b.whole else None


def shortest_central_chain(b: SkewBrace) -> int | None:
    """Length of the shortest central chain of ideals, by search over all ideals.

    Independent of quotient construction: ``J/I`` lies in the centre of
    ``B/I`` exactly when every star and additive commutator of ``J`` against
    ``B`` lands in ``I``.
    """
    ideals = all_ideals(b)
    st = b.star_table

    def central_over(j: frozenset[int], i: frozenset[int]) -> bool:
        return all(
            st[a][x] in i and st[x][a] in i and b.add.commutator(a, x) in i
            for x in j
            for a in b.elements
        )

    dist = {ZERO: 0}
    frontier = [ZERO]
    while frontier:
        nxt = []
        for i in frontier:
            for j in ideals:
                if j not in dist and i < j and central_over(j, i):
                    dist[j] = dist[i] + 1
                    nxt.append(j)
        frontier = nxt
    return dist.get(b.whole)


def bsq(b: SkewBrace) -> frozenset[int]:
    return b.star_span(b.elements, b.elements)


def additive_class_of(b: SkewBrace, members: frozenset[int]) -> int | None:
    sub, _ = b.add.subgroup(members)
    return nilpotency_class(sub)


@dataclass
class SeriesReport:
    left_chain: list[frozenset[int]]
    right_chain: list[frozenset[int]]
    left_class: int | None
    right_class: int | None
    add_class_m: int | None
    bsq_class_r: int | None
    central_class: int | None
    lambda_kernel: frozenset[int]

    @property
    def cube_zero(self) -> bool:
        return term(self.left_chain, 3) == ZERO

    def to_json(self) -> dict:
        return {
            "left_chain": [sorted(s) for s in self.left_chain],
            "right_chain": [sorted(s) for s in self.right_chain],
            "left_class": self.left_class,
            "right_class": self.right_class,
            "add_class_m": self.add_class_m,
            "bsq_class_r": self.bsq_class_r,
            "central_class": self.central_class,
            "lambda_kernel": sorted(self.lambda_kernel),
        }


def analyze(b: SkewBrace) -> SeriesReport:
    left = left_series(b)
    right = right_series(b)
    return SeriesReport(
        left_chain=left,
        right_chain=right,
        left_class=chain_class(left),
        right_class=chain_class(right),
        add_class_m=nilpotency_class(b.add),
        bsq_class_r=additive_class_of(b, term(right, 2)),
        central_class=central_class(b),
        lambda_kernel=b.lambda_kernel,
    )


# -- verdicts -----------------------------------------------------------------


@dataclass
class Verdict:
    applicable: bool
    passed: bool
    reason: str = ""
    m: int | None = None
    r: int | None = None
    left_class: int | None = None
    right_class: int | None = None
    bound: int | None = None
    centrally_nilpotent: bool | None = None

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not-applicable"
        return "pass" if self.passed else "FAIL"

    def to_json(self, brace_id=None) -> dict:
        return {
            "brace_id": brace_id,
            "applicable": self.applicable,
            "m": self.m,
            "r": self.r,
            "left_class": self.left_class,
            "right_class": self.right_class,
            "bound": self.bound,
            "pass": self.passed if self.applicable else None,
        }


def theorem_a_check(b: SkewBrace, report: SeriesReport | None = None) -> Verdict:
    """Right class at most ``2 + m r`` and central nilpotency, when ``(B,+)``
    is nilpotent and ``B^3 = 0``."""
    rep = report or analyze(b)
    v = Verdict(
        applicable=False,
        passed=False,
        m=rep.add_class_m,
        r=rep.bsq_class_r,
        left_class=rep.left_class,
        right_class=rep.right_class,
        centrally_nilpotent=rep.central_class is not None,
    )
    if rep.add_class_m is None:
        v.reason = "additive group not nilpotent"
        return v
    if not rep.cube_zero:
        v.reason = "B^3 != 0"
        return v
    v.applicable = True
    # (B^2,+) is a subgroup of the nilpotent group (B,+)
    v.bound = 2 + v.m * v.r
    vanishes = term(rep.right_chain, v.bound + 1) == ZERO
    v.passed = vanishes and v.centrally_nilpotent
    if not v.passed:
        v.reason = "right series does not vanish at the bound" if not vanishes else "not centrally nilpotent"
    return v


def abelian_corollary_check(b: SkewBrace, report: SeriesReport | None = None) -> Verdict:
    rep = report or analyze(b)
    v = Verdict(False, False, left_class=rep.left_class, right_class=rep.right_class, bound=3)
    if not b.add.is_abelian:
        v.reason = "additive group not abelian"
        return v
    if not rep.cube_zero:
        v.reason = "B^3 != 0"
        return v
    v.applicable = True
    v.m, v.r = rep.add_class_m, rep.bsq_class_r
    v.passed = term(rep.right_chain, 4) == ZERO
    return v


@dataclass
class PropositionVerdict:
    applicable: bool
    passed: bool
    reason: str = ""
    m: int | None = None
    checked_k: list[int] = field(default_factory=list)


def proposition_check(b: SkewBrace, report: SeriesReport | None = None) -> PropositionVerdict:
    """For every ``k >= 2`` with ``B^(k)`` central in ``(B,.)``, ``B^(k+m+1) = 0``."""
    rep = report or analyze(b)
    if rep.add_class_m is None:
        return PropositionVerdict(False, False, "additive group not nilpotent")
    if not rep.cube_zero:
        return PropositionVerdict(False, False, "B^3 != 0")
    m = rep.add_class_m
    zmul = b.mul.centre()
    out = PropositionVerdict(True, True, m=m)
    for k in range(2, len(rep.right_chain) + 2):
        if term(rep.right_chain, k) <= zmul:
            out.checked_k.append(k)
            if term(rep.right_chain, k + m + 1) != ZERO:
                out.passed = False
                out.reason = f"B^({k + m + 1}) != 0 although B^({k}) is central"
    return out


# -- the ideals S_n from the bound's proof ------------------------------------------


@dataclass
class SnChain:
    z_terms: list[frozenset[int]]  # Z_n(B^2,+), n = 0..r
    kernels: list[frozenset[int]]  # kernel of lambda acting modulo Z_n
    s_terms: list[frozenset[int]]  # kernel intersected with B^2


def sn_chain(b: SkewBrace) -> SnChain:
    if nilpotency_class(b.add) is None:
        raise NotApplicable("additive group not nilpotent")
    sq = bsq(b)
    if b.star_span(b.elements, sq) != ZERO:
        raise NotApplicable("B^3 != 0")
    sub, members = b.add.subgroup(sq)
    z_terms = [frozenset(members[i] for i in z) for z in upper_central_series(sub)]
    lam = b.lambda_table
    kernels, s_terms = [], []
    for z in z_terms:
        if not all(lam[a][x] in z for a in b.elements for x in z):
            raise AssertionError(f"Z_n(B^2,+) = {sorted(z)} is not lambda-invariant")
        proj = coset_map(b.add, z)
        ker = frozenset(
            a for a in b.elements if all(proj[lam[a][x]] == proj[x] for x in b.elements)
        )
        kernels.append(ker)
        s_terms.append(ker & sq)
    return SnChain(z_terms, kernels, s_terms)


@dataclass
class ProofReport:
    m: int
    r: int
    chain: SnChain
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(self.checks.values())


def proof_containments_check(b: SkewBrace) -> ProofReport:
    """Check every intermediate containment of the ``2 + m r`` argument."""
    chain = sn_chain(b)
    m = nilpotency_class(b.add)
    sq = bsq(b)
    r = len(chain.z_terms) - 1
    right = right_series(b)
    rep = ProofReport(m, r, chain)
    c = rep.checks
    c["z_terms_are_ideals"] = all(is_ideal(b, z) for z in chain.z_terms)
    c["s_terms_are_ideals"] = all(is_ideal(b, s) for s in chain.s_terms)
    c["s_terms_ascending"] = all(s <= t for s, t in zip(chain.s_terms, chain.s_terms[1:]))
    c["s_top_is_bsq"] = chain.s_terms[-1] == sq
    if r >= 1:
        c["first_step"] = term(right, 2 + m) <= chain.s_terms[r - 1]
    c["each_step"] = all(term(right, 2 + m * k) <= chain.s_terms[r - k] for k in range(1, r + 1))
    c["final_step"] = term(right, 2 + m * r) <= (b.lambda_kernel & sq)
    c["vanishes"] = term(right, 3 + m * r) == ZERO

    # c * x = [-c, x]_+ + [x, [c^-1, x^-1]_.]_+ + [c^-1, x^-1]_. for c in B^2
    P, N = b.plus, b.neg
    add_comm, mul_comm, minv = b.add.commutator, b.mul.commutator, b.mul.inverse
    st = b.star_table
    ok = True
    for cc in sq:
        for x in b.elements:
            k = mul_comm(minv[cc], minv[x])
            if st[cc][x] != P(add_comm(N(cc), x), add_comm(x, k), k):
                ok = False
    c["star_expansion"] = ok
    if r >= 1:
        s_top = chain.s_terms[r - 1]
        c["commutator_in_s"] = all(
            mul_comm(minv[cc], minv[x]) in s_top for cc in sq for x in b.elements
        )
    return rep


# -- empirical look at how sharp the bound is ------------------------------------------


def bound_attainment_search(entries) -> dict:
    """Rank applicable braces by how close the right class is to ``2 + m r``.

    ``entries`` is an iterable of ``(brace_id, SkewBrace)``.
    """
    rows = []
    for brace_id, b in entries:
        v = theorem_a_check(b)
        if not v.applicable:
            continue
        mr = v.m * v.r
        ratio = max(v.right_class - 2, 0) / mr if mr else 0.0
        rows.append(
            {
                "brace_id": brace_id,
                "m": v.m,
                "r": v.r,
                "right_class": v.right_class,
                "bound": v.bound,
                "ratio": ratio,
                "attains_bound": v.right_class == v.bound,
            }
        )
    rows.sort(key=lambda row: (-row["ratio"], -row["right_class"], str(row["brace_id"])))
    return {
        "applicable": len(rows),
        "ranked": rows,
        "attaining_with_mr_above_1": [
            row for row in rows if row["attains_bound"] and row["m"] * row["r"] > 1
        ],
    }
