"""Finite groups stored as Cayley tables over the carrier ``range(n)``.

Element 0 is always the identity.  Subsets of a carrier are plain
``frozenset`` objects; anything that needs a stable order sorts them.

Commutators follow ``[a, b] = a*b*a^-1*b^-1`` everywhere in the package.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Perm = tuple[int, ...]
SubSet = frozenset

DEFAULT_ORDER_CAP = 16


class GroupError(ValueError):
    """Base class for group construction and validation failures."""


class NoIdentityAtZero(GroupError):
    pass


class NotLatinSquare(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class OrderCapExceeded(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    name: str | None = None

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def product(self, *xs: int) -> int:
        acc = 0
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def commutator(self, a: int, b: int) -> int:
        t, inv = self.table, self.inverse
        return t[t[t[a][b]][inv[a]]][inv[b]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        acc = 0
        for _ in range(k):
            acc = self.table[acc][a]
        return acc

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in self.elements:
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    @property
    def whole(self) -> frozenset[int]:
        return frozenset(self.elements)

    # -- subgroups ---------------------------------------------------------

    def closure(self, xs: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``xs`` (``{0}`` for an empty iterable)."""
        gens = sorted(set(xs) - {0})
        seen = {0}
        queue = deque([0])
        t = self.table
        while queue:
            x = queue.popleft()
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_subgroup(self, h: Iterable[int]) -> bool:
        h = frozenset(h)
        if 0 not in h:
            return False
        t = self.table
        return all(t[x][y] in h for x in h for y in h)

    def is_normal(self, h: Iterable[int]) -> bool:
        h = frozenset(h)
        if not self.is_subgroup(h):
            raise NotASubgroup(f"{sorted(h)} is not a subgroup")
        t, inv = self.table, self.inverse
        return all(t[t[g][x]][inv[g]] in h for g in self.elements for x in h)

    def commutator_subgroup(self, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
        ys = list(ys)
        return self.closure(self.commutator(x, y) for x in xs for y in ys)

    def centre(self) -> frozenset[int]:
        t = self.table
        return frozenset(z for z in self.elements if all(t[z][g] == t[g][z] for g in self.elements))

    def centralizes_mod(self, x: int, base: frozenset[int]) -> bool:
        return all(self.commutator(x, g) in base for g in self.elements)

    def subgroup(self, h: Iterable[int]) -> tuple[FiniteGroup, tuple[int, ...]]:
        """The subgroup ``h`` as a group in its own right.

        Returns the group and the list of ambient elements, position ``i``
        holding the ambient name of local element ``i``.
        """
        members = tuple(sorted(h))
        if not self.is_subgroup(members):
            raise NotASubgroup(f"{list(members)} is not a subgroup")
        local = {x: i for i, x in enumerate(members)}
        table = [[local[self.table[x][y]] for y in members] for x in members]
        return group_from_table(table), members

    def all_subgroups(self) -> list[frozenset[int]]:
        found = {frozenset({0})}
        frontier = list(found)
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.elements:
                    if g in h:
                        continue
                    k = self.closure(h | {g})
                    if k not in found:
                        found.add(k)
                        nxt.append(k)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def generators(self) -> list[int]:
        """A small deterministic generating set (greedy by element order)."""
        gens: list[int] = []
        h = frozenset({0})
        by_order = sorted(self.elements, key=lambda a: (-self.element_orders[a], a))
        for a in by_order:
            if len(h) == self.order:
                break
            if a not in h:
                gens.append(a)
                h = self.closure(h | {a})
        return gens

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(row) for row in self.table]}

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<FiniteGroup {label} of order {self.order}>"


def group_from_table(table: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
    """Validate a Cayley table and build the group.

    Raises the ``GroupError`` subclass naming the first broken axiom, with a
    witness in the message.
    """
    n = len(table)
    if n == 0:
        raise GroupError("empty table")
    rows = tuple(tuple(int(x) for x in row) for row in table)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise GroupError(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise GroupError(f"entry {x} in row {i} outside [0, {n})")
    for a in range(n):
        if rows[0][a] != a or rows[a][0] != a:
            raise NoIdentityAtZero(f"0 is not an identity: witness ({a}, 0, {a})")
    full = set(range(n))
    for a in range(n):
        if set(rows[a]) != full:
            raise NotLatinSquare(f"row {a} is not a permutation")
        if {rows[b][a] for b in range(n)} != full:
            raise NotLatinSquare(f"column {a} is not a permutation")
    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NotAssociative(f"(a*b)*c != a*(b*c) for witness ({a}, {b}, {c})")
    inverse = tuple(row.index(0) for row in rows)
    return FiniteGroup(rows, inverse, name)


def group_from_json(data: dict) -> FiniteGroup:
    table = data["table"]
    if "order" in data and data["order"] != len(table):
        raise GroupError(f"declared order {data['order']} != table size {len(table)}")
    return group_from_table(table, data.get("name"))


# -- named constructors --------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    return group_from_table([[(i + j) % n for j in range(n)] for i in range(n)], f"C{n}")


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order.

    Element ``r^i f^e`` is numbered ``i + (order // 2) * e``, with
    ``f r = r^-1 f``.
    """
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and at least 2")
    n = order // 2

    def mul(x: int, y: int) -> int:
        r1, f1 = x % n, x // n
        r2, f2 = y % n, y // n
        r = (r1 + (-r2 if f1 else r2)) % n
        return r + n * ((f1 + f2) % 2)

    return group_from_table([[mul(x, y) for y in range(order)] for x in range(order)], f"D{order}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """``g x h`` with the pair ``(x, y)`` numbered ``x + |g| * y``."""
    n, m = g.order, h.order

    def mul(p: int, q: int) -> int:
        return g.table[p % n][q % n] + n * h.table[p // n][q // n]

    name = f"{g.name}x{h.name}" if g.name and h.name else None
    size = n * m
    return group_from_table([[mul(p, q) for q in range(size)] for p in range(size)], name)


# quaternion units 1, i, j, k as (sign, unit) products
_QUAT = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion() -> FiniteGroup:
    """Q8 with ``+-u`` numbered ``u + 4 * (sign is minus)`` for ``u`` in 1, i, j, k."""

    def mul(x: int, y: int) -> int:
        sign, unit = _QUAT[x % 4, y % 4]
        neg = (x // 4 + y // 4 + (sign < 0)) % 2
        return unit + 4 * neg

    return group_from_table([[mul(x, y) for y in range(8)] for x in range(8)], "Q8")


def symmetric3() -> FiniteGroup:
    """Sym(3) as <s, t | 3s = 2t = 0, s + t = t + 2s>; ``i s + j t`` is ``i + 3j``."""
    g = dihedral(6)
    return FiniteGroup(g.table, g.inverse, "S3")


_NAME_RE = re.compile(r"^(C|D)(\d+)$")


def group_by_name(name: str) -> FiniteGroup:
    """Resolve names such as ``C6``, ``D8``, ``S3``, ``Q8``, ``C4xC2``, ``C2^3``."""
    key = name.strip().replace("×", "x").replace("*", "x")
    if "x" in key:
        parts = [group_by_name(p) for p in key.split("x")]
        acc = parts[0]
        for p in parts[1:]:
            acc = direct_product(acc, p)
        return FiniteGroup(acc.table, acc.inverse, key)
    if "^" in key:
        base, _, exp = key.partition("^")
        k = int(exp)
        return group_by_name("x".join([base] * k))
    if key in ("S3", "Sym3"):
        return symmetric3()
    if key == "Q8":
        return quaternion()
    m = _NAME_RE.match(key)
    if not m:
        raise ValueError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    return cyclic(n) if kind == "C" else dihedral(n)


# one representative per isomorphism type
SMALL_GROUP_NAMES = {
    1: ["C1"],
    2: ["C2"],
    3: ["C3"],
    4: ["C4", "C2xC2"],
    5: ["C5"],
    6: ["C6", "S3"],
    7: ["C7"],
    8: ["C8", "C4xC2", "C2xC2xC2", "D8", "Q8"],
}


def small_groups(max_order: int = 8) -> list[FiniteGroup]:
    if max_order > max(SMALL_GROUP_NAMES):
        raise OrderCapExceeded(f"small group list only goes up to {max(SMALL_GROUP_NAMES)}")
    return [group_by_name(name) for n in range(1, max_order + 1) for name in SMALL_GROUP_NAMES[n]]


# -- series -----------------------------------------------------------------


def lower_central_series(g: FiniteGroup) -> list[frozenset[int]]:
    """``gamma_1 = G, gamma_{k+1} = [gamma_k, G]`` up to (and including) the first repeat-free term."""
    series = [g.whole]
    for _ in range(g.order + 1):
        nxt = g.commutator_subgroup(series[-1], g.elements)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def upper_central_series(g: FiniteGroup) -> list[frozenset[int]]:
    series = [frozenset({0})]
    for _ in range(g.order + 1):
        base = series[-1]
        nxt = frozenset(x for x in g.elements if g.centralizes_mod(x, base))
        if nxt == base:
            break
        series.append(nxt)
    return series


def nilpotency_class(g: FiniteGroup) -> int | None:
    """Least ``m`` with ``gamma_{m+1} = 1``; ``None`` if ``g`` is not nilpotent."""
    lower = lower_central_series(g)
    if lower[-1] != frozenset({0}):
        return None
    return len(lower) - 1


def nilpotency_class_upper(g: FiniteGroup) -> int | None:
    upper = upper_central_series(g)
    if upper[-1] != g.whole:
        return None
    return len(upper) - 1


# -- quotients ----------------------------------------------------------------


def coset_map(g: FiniteGroup, n: Iterable[int]) -> tuple[int, ...]:
    """Number the left cosets ``xN`` by their least member, in increasing order."""
    n = sorted(n)
    proj = [-1] * g.order
    k = 0
    for x in g.elements:
        if proj[x] < 0:
            for y in n:
                proj[g.table[x][y]] = k
            k += 1
    return tuple(proj)


def quotient_group(g: FiniteGroup, n: Iterable[int]) -> tuple[FiniteGroup, tuple[int, ...]]:
    n = frozenset(n)
    if not g.is_normal(n):
        raise NotNormal(f"{sorted(n)} is not normal")
    proj = coset_map(g, n)
    size = max(proj) + 1
    reps = [proj.index(i) for i in range(size)]
    table = [[proj[g.table[x][y]] for y in reps] for x in reps]
    return group_from_table(table), proj


# -- homomorphisms ----------------------------------------------------------


def extend_homomorphism(
    g: FiniteGroup, h: FiniteGroup, gens: Sequence[int], images: Sequence[int]
) -> list[int] | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism on ``<gens>``.

    Returns a list indexed by elements of ``g`` (``-1`` outside ``<gens>``),
    or ``None`` when the assignment is inconsistent.
    """
    f = [-1] * g.order
    f[0] = 0
    queue = deque([0])
    gt, ht = g.table, h.table
    while queue:
        x = queue.popleft()
        fx = f[x]
        for s, fs in zip(gens, images):
            y = gt[x][s]
            fy = ht[fx][fs]
            if f[y] < 0:
                f[y] = fy
                queue.append(y)
            elif f[y] != fy:
                return None
    return f


def _isomorphisms(g: FiniteGroup, h: FiniteGroup, first_only: bool) -> list[Perm]:
    if g.order != h.order or sorted(g.element_orders) != sorted(h.element_orders):
        return []
    gens = g.generators()
    candidates = [
        [y for y in h.elements if h.element_orders[y] == g.element_orders[s]] for s in gens
    ]
    found: list[Perm] = []

    def search(depth: int, images: list[int]) -> bool:
        f = extend_homomorphism(g, h, gens[:depth], images)
        if f is None:
            return False
        covered = [v for v in f if v >= 0]
        if len(set(covered)) != len(covered):
            return False
        if depth == len(gens):
            found.append(tuple(f))
            return first_only
        for y in candidates[depth]:
            if search(depth + 1, images + [y]):
                return True
        return False

    search(0, [])
    return found


def automorphisms(g: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> list[Perm]:
    """All automorphisms of ``g`` as permutation tuples, sorted."""
    if g.order > cap:
        raise OrderCapExceeded(f"order {g.order} exceeds cap {cap}")
    return sorted(_isomorphisms(g, g, first_only=False))


def automorphisms_bruteforce(g: FiniteGroup) -> list[Perm]:
    """Scan every bijection fixing 0; only sensible for order <= 8."""
    if g.order > 8:
        raise OrderCapExceeded("brute-force automorphism scan is limited to order 8")
    t = g.table
    rest = list(range(1, g.order))
    out = []
    for p in itertools.permutations(rest):
        f = (0,) + p
        if all(f[t[a][b]] == t[f[a]][f[b]] for a in rest for b in rest):
            out.append(f)
    return sorted(out)


def is_isomorphic(g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> Perm | None:
    """A witness isomorphism ``g -> h`` or ``None``."""
    if max(g.order, h.order) > cap:
        raise OrderCapExceeded(f"order exceeds cap {cap}")
    found = _isomorphisms(g, h, first_only=True)
    return found[0] if found else None


def is_homomorphism(g: FiniteGroup, h: FiniteGroup, f: Sequence[int]) -> bool:
    return all(f[g.table[a][b]] == h.table[f[a]][f[b]] for a in g.elements for b in g.elements)


def identify(g: FiniteGroup) -> str | None:
    """Name of the small group isomorphic to ``g``, if ``g`` has order <= 8."""
    if g.order > 8:
        return None
    for name in SMALL_GROUP_NAMES[g.order]:
        if is_isomorphic(g, group_by_name(name)) is not None:
            return name
    return None


# -- permutations -------------------------------------------------------------


def compose(p: Perm, q: Perm) -> Perm:
    """``p o q``: apply ``q`` first."""
    return tuple(p[x] for x in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)
