"""Set-theoretic solutions of the Yang-Baxter equation and their retractions.

A solution on ``range(n)`` is stored as two tables: ``r(x, y) =
(lam[x][y], rho[y][x])``.

Retraction identifies ``x ~ y`` when both ``lam[x] == lam[y]`` and
``rho[x] == rho[y]``.  The one-point solution has multipermutation level 0
and the flip on two or more points has level 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .brace import SkewBrace


class SolutionError(ValueError):
    pass


class ConstructionInvariantFailed(AssertionError):
    pass


@dataclass(frozen=True)
class Solution:
    n: int
    lam: tuple[tuple[int, ...], ...]
    rho: tuple[tuple[int, ...], ...]

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return self.lam[x][y], self.rho[y][x]

    def to_json(self) -> dict:
        return {"n": self.n, "lam": [list(r) for r in self.lam], "rho": [list(r) for r in self.rho]}


def make_solution(lam, rho) -> Solution:
    """Build and validate; raises ``SolutionError`` naming the failed property."""
    n = len(lam)
    s = Solution(n, tuple(tuple(int(v) for v in r) for r in lam), tuple(tuple(int(v) for v in r) for r in rho))
    problem = solution_problem(s)
    if problem:
        raise SolutionError(problem)
    return s


def solution_from_json(data: dict) -> Solution:
    s = make_solution(data["lam"], data["rho"])
    if data.get("n", s.n) != s.n:
        raise SolutionError(f"declared n = {data['n']} but tables have {s.n} rows")
    return s


def solution_problem(s: Solution) -> str | None:
    n = s.n
    full = list(range(n))
    if len(s.rho) != n or any(len(r) != n for r in s.lam + s.rho):
        return "tables are not n x n"
    if any(not 0 <= v < n for r in s.lam + s.rho for v in r):
        return "entries outside the carrier"
    for x in range(n):
        if sorted(s.lam[x]) != full:
            return f"lam[{x}] is not a permutation (degenerate)"
        if sorted(s.rho[x]) != full:
            return f"rho[{x}] is not a permutation (degenerate)"
    if len({s(x, y) for x in range(n) for y in range(n)}) != n * n:
        return "r is not a bijection on pairs"
    w = braid_violation(s)
    if w is not None:
        return f"braid relation fails at {w}"
    return None


def braid_violation(s: Solution) -> tuple[int, int, int] | None:
    """First triple where ``r12 r23 r12 != r23 r12 r23``."""
    for x, y, z in itertools.product(range(s.n), repeat=3):
        a, b = s(x, y)
        b, c = s(b, z)
        a, b = s(a, b)
        left = (a, b, c)
        b, c = s(y, z)
        a, b = s(x, b)
        b, c = s(b, c)
        if left != (a, b, c):
            return x, y, z
    return None


def solution_from_brace(b: SkewBrace) -> Solution:
    """``r(x, y) = (lambda_x(y), lambda_x(y)^-1 . x . y)``."""
    lt, mt, minv = b.lambda_table, b.mul.table, b.mul.inverse
    n = b.order
    lam = lt
    rho = tuple(tuple(mt[minv[lt[x][y]]][mt[x][y]] for x in range(n)) for y in range(n))
    s = Solution(n, lam, rho)
    problem = solution_problem(s)
    if problem:
        raise ConstructionInvariantFailed(problem)
    return s


def flip(n: int) -> Solution:
    ident = tuple(range(n))
    return Solution(n, (ident,) * n, (ident,) * n)


def retract(s: Solution) -> tuple[Solution, tuple[int, ...]]:
    """Quotient by ``x ~ y``; classes are numbered by least member."""
    proj = [-1] * s.n
    keys: dict[tuple, int] = {}
    for x in range(s.n):
        key = (s.lam[x], s.rho[x])
        if key not in keys:
            keys[key] = len(keys)
        proj[x] = keys[key]
    k = len(keys)
    lam = [[-1] * k for _ in range(k)]
    rho = [[-1] * k for _ in range(k)]
    for x in range(s.n):
        i = proj[x]
        for y in range(s.n):
            j = proj[y]
            for table, v in ((lam, s.lam[x][y]), (rho, s.rho[x][y])):
                if table[i][j] < 0:
                    table[i][j] = proj[v]
                elif table[i][j] != proj[v]:
                    raise SolutionError(f"retraction is not well defined at ({x}, {y})")
    return make_solution(lam, rho), tuple(proj)


def retraction_tower(s: Solution) -> list[int]:
    """Sizes of ``s, Ret(s), Ret^2(s), ...`` until the size stops dropping."""
    sizes = [s.n]
    while s.n > 1:
        nxt, _ = retract(s)
        if nxt.n == s.n:
            break
        s = nxt
        sizes.append(s.n)
    return sizes


def multipermutation_level(s: Solution) -> int | None:
    """Least ``k`` with ``Ret^k(s)`` a single point, or ``None`` if the tower stalls."""
    sizes = retraction_tower(s)
    return len(sizes) - 1 if sizes[-1] == 1 else None
