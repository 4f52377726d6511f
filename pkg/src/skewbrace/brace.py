"""Skew braces on a shared carrier, star products, ideals and quotients."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .groups import FiniteGroup, GroupError, coset_map, group_from_table, quotient_group

ZERO = frozenset({0})


class DistributivityFails(GroupError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"a(b+c) != ab - a + ac for witness ({a}, {b}, {c})")
        self.witness = (a, b, c)


class NotIdeal(ValueError):
    def __init__(self, flag: str, members: Iterable[int]):
        super().__init__(f"{sorted(members)} is not an ideal: {flag} fails")
        self.flag = flag


@dataclass(frozen=True, eq=False)
class SkewBrace:
    add: FiniteGroup
    mul: FiniteGroup
    labels: tuple[str, ...] | None = None

    @property
    def order(self) -> int:
        return self.add.order

    @property
    def elements(self) -> range:
        return self.add.elements

    @property
    def whole(self) -> frozenset[int]:
        return self.add.whole

    def plus(self, *xs: int) -> int:
        return self.add.product(*xs)

    def neg(self, a: int) -> int:
        return self.add.inverse[a]

    def times(self, *xs: int) -> int:
        return self.mul.product(*xs)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @cached_property
    def lambda_table(self) -> tuple[tuple[int, ...], ...]:
        """Row ``a`` is the permutation ``b -> -a + ab``."""
        at, mt, neg = self.add.table, self.mul.table, self.add.inverse
        return tuple(tuple(at[neg[a]][mt[a][b]] for b in self.elements) for a in self.elements)

    @cached_property
    def star_table(self) -> tuple[tuple[int, ...], ...]:
        at, neg, lam = self.add.table, self.add.inverse, self.lambda_table
        return tuple(tuple(at[lam[a][b]][neg[b]] for b in self.elements) for a in self.elements)

    def lam(self, a: int) -> tuple[int, ...]:
        return self.lambda_table[a]

    def star(self, a: int, b: int) -> int:
        return self.star_table[a][b]

    @cached_property
    def lambda_kernel(self) -> frozenset[int]:
        ident = tuple(self.elements)
        return frozenset(a for a in self.elements if self.lambda_table[a] == ident)

    @property
    def is_trivial(self) -> bool:
        return self.add.table == self.mul.table

    def star_span(self, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
        """Additive subgroup generated by all ``x * y``."""
        ys = list(ys)
        st = self.star_table
        return self.add.closure(st[x][y] for x in xs for y in ys)

    def to_json(self) -> dict:
        data = {
            "order": self.order,
            "add_table": [list(r) for r in self.add.table],
            "mul_table": [list(r) for r in self.mul.table],
        }
        if self.labels:
            data["labels"] = list(self.labels)
        return data

    def __repr__(self) -> str:
        return f"<SkewBrace of order {self.order}>"


def check_distributivity(add: FiniteGroup, mul: FiniteGroup) -> tuple[int, int, int] | None:
    at, mt, neg = add.table, mul.table, add.inverse
    for a in add.elements:
        row, na = mt[a], neg[a]
        for b, c in itertools.product(add.elements, repeat=2):
            if row[at[b][c]] != at[at[row[b]][na]][row[c]]:
                return a, b, c
    return None


def brace_from_groups(
    add: FiniteGroup, mul: FiniteGroup, labels: Sequence[str] | None = None
) -> SkewBrace:
    if add.order != mul.order:
        raise GroupError(f"carrier sizes differ: {add.order} vs {mul.order}")
    witness = check_distributivity(add, mul)
    if witness is not None:
        raise DistributivityFails(*witness)
    if labels is not None and len(labels) != add.order:
        raise ValueError("one label per element required")
    return SkewBrace(add, mul, tuple(labels) if labels is not None else None)


def brace_from_tables(add_table, mul_table, labels: Sequence[str] | None = None) -> SkewBrace:
    return brace_from_groups(group_from_table(add_table), group_from_table(mul_table), labels)


def brace_from_json(data: dict) -> SkewBrace:
    n = len(data["add_table"])
    if data.get("order", n) != n:
        raise GroupError(f"declared order {data['order']} != table size {n}")
    return brace_from_tables(data["add_table"], data["mul_table"], data.get("labels"))


def trivial_brace(g: FiniteGroup) -> SkewBrace:
    return SkewBrace(g, g)


# -- ideals ------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    members: frozenset[int]
    add_subgroup: bool
    normal_add: bool
    mul_subgroup: bool
    normal_mul: bool
    lambda_invariant: bool
    star_absorbing_left: bool  # I * B within I
    star_absorbing_right: bool  # B * I within I

    @property
    def by_stars(self) -> bool:
        return self.normal_add and self.star_absorbing_left and self.star_absorbing_right

    @property
    def by_lambda(self) -> bool:
        return self.normal_add and self.lambda_invariant and self.normal_mul

    @property
    def is_ideal(self) -> bool:
        return self.by_stars

    def first_failure(self) -> str | None:
        for flag in ("add_subgroup", "normal_add", "star_absorbing_left", "star_absorbing_right"):
            if not getattr(self, flag):
                return flag
        return None


def ideal_flags(b: SkewBrace, members: Iterable[int]) -> Ideal:
    i = frozenset(members)
    add_sub = b.add.is_subgroup(i)
    mul_sub = b.mul.is_subgroup(i)
    st, lam = b.star_table, b.lambda_table
    return Ideal(
        members=i,
        add_subgroup=add_sub,
        normal_add=add_sub and b.add.is_normal(i),
        mul_subgroup=mul_sub,
        normal_mul=mul_sub and b.mul.is_normal(i),
        lambda_invariant=all(lam[a][x] in i for a in b.elements for x in i),
        star_absorbing_left=all(st[x][a] in i for x in i for a in b.elements),
        star_absorbing_right=all(st[a][x] in i for x in i for a in b.elements),
    )


def check_ideal(b: SkewBrace, members: Iterable[int]) -> Ideal:
    flags = ideal_flags(b, members)
    bad = flags.first_failure()
    if bad is not None:
        raise NotIdeal(bad, flags.members)
    return flags


def is_ideal(b: SkewBrace, members: Iterable[int]) -> bool:
    return ideal_flags(b, members).is_ideal


def is_left_ideal(b: SkewBrace, members: Iterable[int]) -> bool:
    i = frozenset(members)
    lam = b.lambda_table
    return b.add.is_subgroup(i) and all(lam[a][x] in i for a in b.elements for x in i)


def all_ideals(b: SkewBrace) -> list[frozenset[int]]:
    return [h for h in b.add.all_subgroups() if is_ideal(b, h)]


def quotient_brace(b: SkewBrace, members: Iterable[int]) -> tuple[SkewBrace, tuple[int, ...]]:
    """``B/I`` with cosets numbered by least member, plus the projection."""
    ideal = check_ideal(b, members)
    i = sorted(ideal.members)
    add_q, proj = quotient_group(b.add, i)
    if proj != coset_map(b.mul, i):
        raise AssertionError("additive and multiplicative cosets disagree")
    size = add_q.order
    reps = [proj.index(k) for k in range(size)]
    mul_q = group_from_table([[proj[b.mul.table[x][y]] for y in reps] for x in reps])
    return brace_from_groups(add_q, mul_q), proj


def centre(b: SkewBrace) -> frozenset[int]:
    """Elements with ``a*x = x*a = [a, x]_+ = 0`` for every ``a``."""
    st = b.star_table
    return frozenset(
        x
        for x in b.elements
        if all(st[a][x] == 0 and st[x][a] == 0 and b.add.commutator(a, x) == 0 for a in b.elements)
    )


# -- identities holding in every brace / in braces with B^3 = 0 -----------------


@dataclass
class IdentityResult:
    checked: bool
    passed: bool = True
    witness: tuple[int, ...] | None = None


@dataclass
class LemmaReport:
    cube_zero: bool
    results: dict[str, IdentityResult] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results.values() if r.checked)


def _first_failure(cases, pred) -> tuple[int, ...] | None:
    for case in cases:
        if not pred(*case):
            return case
    return None


def lemma_identities_check(b: SkewBrace) -> LemmaReport:
    """Exhaustively test the star-product identities.

    ``(ab)*c = a*(b*c) + b*c + a*c`` is tested always.  The four identities
    that need ``B^3 = 0`` are tested only when ``B^3`` is computed to vanish.
    """
    st = b.star_table
    P, N, M = b.plus, b.neg, b.times
    minv = b.mul.inverse
    els = list(b.elements)
    triples = list(itertools.product(els, repeat=3))

    bsq = b.star_span(els, els)
    cube_zero = b.star_span(els, bsq) == ZERO
    report = LemmaReport(cube_zero)

    def record(name: str, cases, pred, gated: bool = True):
        if gated and not cube_zero:
            report.results[name] = IdentityResult(checked=False)
            return
        w = _first_failure(cases, pred)
        report.results[name] = IdentityResult(True, w is None, w)

    record(
        "remark",
        triples,
        lambda a, x, c: st[M(a, x)][c] == P(st[a][st[x][c]], st[x][c], st[a][c]),
        gated=False,
    )
    pairs_c = [(a, c) for a in els for c in sorted(bsq)]
    record("part1_product_is_sum", pairs_c, lambda a, c: M(a, c) == P(a, c))
    record("part1_inverse", [(c,) for c in sorted(bsq)], lambda c: minv[c] == N(c))
    record("part2_product", triples, lambda a, x, y: st[M(a, x)][y] == P(st[x][y], st[a][y]))
    record(
        "part2_inverse",
        [(a, x) for a in els for x in els],
        lambda a, x: st[minv[a]][x] == N(st[a][x]),
    )
    record(
        "part3_commutator",
        triples,
        lambda a, x, y: st[b.mul.commutator(a, x)][y]
        == b.add.commutator(N(st[x][y]), N(st[a][y])),
    )
    record(
        "part4_sum",
        [(a, c, x) for a in els for c in sorted(bsq) for x in els],
        lambda a, c, x: st[P(a, c)][x] == P(st[c][x], st[a][x]),
    )
    return report
