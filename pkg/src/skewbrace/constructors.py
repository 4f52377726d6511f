"""Building skew braces: from bijective derivations, the two worked
examples, and exhaustive enumeration over a fixed additive group."""
from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .brace import SkewBrace, brace_from_groups
from .groups import (
    FiniteGroup,
    GroupError,
    OrderCapExceeded,
    Perm,
    automorphisms,
    compose,
    cyclic,
    dihedral,
    direct_product,
    extend_homomorphism,
    group_from_table,
    identify,
    invert,
    is_isomorphic,
    symmetric3,
)

ENUMERATION_CAP = 8
HARD_CAP = 12


class SizeMismatch(ValueError):
    pass


class InvalidDerivation(ValueError):
    pass


@dataclass(frozen=True)
class DerivationInput:
    """``delta: G -> A`` with ``delta(xy) = delta(x) + phi[x](delta(y))``."""

    G: FiniteGroup
    A: FiniteGroup
    phi: tuple[Perm, ...]
    delta: tuple[int, ...]


class DerivationCheck(NamedTuple):
    ok: bool
    reason: str = ""
    witness: tuple[int, ...] | None = None


def check_derivation(d: DerivationInput) -> DerivationCheck:
    n = d.A.order
    if d.G.order != n or len(d.phi) != n or len(d.delta) != n:
        raise SizeMismatch(f"|G| = {d.G.order}, |A| = {n}, {len(d.phi)} actions, {len(d.delta)} images")
    at = d.A.table
    for g, p in enumerate(d.phi):
        if sorted(p) != list(range(n)):
            return DerivationCheck(False, "phi value is not a permutation", (g,))
        for x in range(n):
            for y in range(n):
                if p[at[x][y]] != at[p[x]][p[y]]:
                    return DerivationCheck(False, "phi value is not an automorphism", (g, x, y))
    gt = d.G.table
    for x in range(n):
        for y in range(n):
            if d.phi[gt[x][y]] != compose(d.phi[x], d.phi[y]):
                return DerivationCheck(False, "phi is not a homomorphism", (x, y))
    if sorted(d.delta) != list(range(n)):
        return DerivationCheck(False, "delta is not a bijection")
    if d.delta[0] != 0:
        return DerivationCheck(False, "delta(1) != 0", (0,))
    for x in range(n):
        for y in range(n):
            if d.delta[gt[x][y]] != at[d.delta[x]][d.phi[x][d.delta[y]]]:
                return DerivationCheck(False, "cocycle law fails", (x, y))
    return DerivationCheck(True)


def brace_from_derivation(d: DerivationInput, labels: Sequence[str] | None = None) -> SkewBrace:
    """Multiplication ``a . b = a + phi[delta^-1(a)](b)`` on the carrier of ``A``."""
    res = check_derivation(d)
    if not res.ok:
        raise InvalidDerivation(f"{res.reason} (witness {res.witness})")
    n = d.A.order
    at = d.A.table
    back = invert(d.delta)
    mul = group_from_table([[at[a][d.phi[back[a]][b]] for b in range(n)] for a in range(n)])
    b = brace_from_groups(d.A, mul, labels)
    gt = d.G.table
    if any(d.delta[gt[x][y]] != mul.table[d.delta[x]][d.delta[y]] for x in range(n) for y in range(n)):
        raise AssertionError("delta is not an isomorphism onto (B,.)")
    return b


def identity_derivation(b: SkewBrace) -> DerivationInput:
    """``(B,.) -> (B,+)`` by the identity map, acting through lambda."""
    return DerivationInput(b.mul, b.add, b.lambda_table, tuple(b.elements))


def action_from_generators(
    g: FiniteGroup, gens: Sequence[int], gen_perms: Sequence[Perm]
) -> tuple[Perm, ...]:
    """Extend generator images to a homomorphism ``g -> Sym(carrier)``."""
    size = len(gen_perms[0])
    act: list[Perm | None] = [None] * g.order
    act[0] = tuple(range(size))
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s, p in zip(gens, gen_perms):
            y = g.table[x][s]
            q = compose(act[x], p)
            if act[y] is None:
                act[y] = q
                queue.append(y)
            elif act[y] != q:
                raise InvalidDerivation(f"generator images do not define an action (at element {y})")
    if any(a is None for a in act):
        raise InvalidDerivation("generators do not generate the group")
    return tuple(act)


def automorphism_from_images(a: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> Perm:
    f = extend_homomorphism(a, a, gens, images)
    if f is None or -1 in f or sorted(f) != list(a.elements):
        raise InvalidDerivation(f"images {list(images)} of {list(gens)} do not define an automorphism")
    return tuple(f)


# -- the two worked examples ----------------------------------------------------------

# 0=0, 1=s, 2=2s, 3=t, 4=s+t, 5=2s+t
SYM3_LABELS = ("0", "sigma", "2sigma", "tau", "sigma+tau", "2sigma+tau")
# 0=0, 1=a, 2=2a, 3=3a, 4=b, 5=a+b, 6=2a+b, 7=3a+b
C4C2_LABELS = ("0", "a", "2a", "3a", "b", "a+b", "2a+b", "3a+b")


def c4xc2() -> FiniteGroup:
    g = direct_product(cyclic(4), cyclic(2))
    return FiniteGroup(g.table, g.inverse, "C4xC2")


def example_nonnilpotent_type_input() -> DerivationInput:
    A = symmetric3()
    G = cyclic(6)
    phi_g = automorphism_from_images(A, [1, 3], [1, 4])  # s -> s, t -> s + t
    phi = action_from_generators(G, [1], [phi_g])
    delta = (0, 5, 2, 3, 1, 4)  # g^k -> 0, 2s+t, 2s, t, s, s+t
    return DerivationInput(G, A, phi, delta)


def example_c4c2_input() -> DerivationInput:
    A = c4xc2()
    G = dihedral(8)  # s^i t^e numbered i + 4e
    phi_s = automorphism_from_images(A, [1, 4], [7, 4])  # a -> 3a + b, b -> b
    phi_t = automorphism_from_images(A, [1, 4], [5, 4])  # a -> a + b, b -> b
    phi = action_from_generators(G, [1, 4], [phi_s, phi_t])
    # 1, s, s^2, s^3, t, st, s^2t, s^3t
    delta = (0, 5, 4, 1, 2, 7, 6, 3)
    return DerivationInput(G, A, phi, delta)


def worked_example_nonnilpotent_type() -> SkewBrace:
    """Brace with additive group Sym(3) and cyclic multiplicative group of order 6."""
    return brace_from_derivation(example_nonnilpotent_type_input(), SYM3_LABELS)


def worked_example_c4c2() -> SkewBrace:
    """Abelian-type brace on C4 x C2 with dihedral multiplicative group of order 8."""
    return brace_from_derivation(example_c4c2_input(), C4C2_LABELS)


EXAMPLES = {
    "nonnilpotent-type": worked_example_nonnilpotent_type,
    "c4c2-d8": worked_example_c4c2,
}


# -- enumeration -----------------------------------------------------------------


def _check_cap(a: FiniteGroup, cap: int) -> None:
    if cap > HARD_CAP:
        raise OrderCapExceeded(f"enumeration cap {cap} exceeds the hard limit {HARD_CAP}")
    if a.order > cap:
        raise OrderCapExceeded(f"order {a.order} exceeds enumeration cap {cap}")
    if a.order > ENUMERATION_CAP:
        warnings.warn(f"enumerating braces of order {a.order} may be slow", stacklevel=3)


def regular_subgroups_holomorph(a: FiniteGroup, auts: Sequence[Perm] | None = None) -> set[tuple]:
    """Multiplication tables from regular subgroups of ``Hol(A)``.

    ``Hol(A)`` acts on the carrier by ``x -> t + alpha(x)``.  A regular
    subgroup holds exactly one element ``p_a`` with ``p_a(0) = a``, and
    ``a . b = p_a(b)``, so the mul table is the list of those permutations.
    """
    n = a.order
    auts = auts if auts is not None else automorphisms(a)
    at = a.table
    hol = {(t, i): tuple(at[t][alpha[x]] for x in range(n)) for t in range(n) for i, alpha in enumerate(auts)}
    ident = tuple(range(n))
    found: set[tuple] = set()

    def close(gens: list[Perm]) -> dict[int, Perm] | None:
        elems = {0: ident}
        queue = deque([ident])
        while queue:
            p = queue.popleft()
            for s in gens:
                q = tuple(p[x] for x in s)
                old = elems.get(q[0])
                if old is None:
                    elems[q[0]] = q
                    queue.append(q)
                elif old != q:
                    return None  # some non-identity element fixes a point
        return elems

    def search(gens: list[Perm], elems: dict[int, Perm]) -> None:
        if len(elems) == n:
            found.add(tuple(elems[x] for x in range(n)))
            return
        target = min(x for x in range(n) if x not in elems)
        for i in range(len(auts)):
            g = hol[target, i]
            nxt = close(gens + [g])
            if nxt is not None:
                search(gens + [g], nxt)

    search([], {0: ident})
    return found


def lambda_assignments(a: FiniteGroup, auts: Sequence[Perm] | None = None) -> set[tuple]:
    """Multiplication tables from a direct search over ``lambda: A -> Aut(A)``.

    Candidate maps are pruned with ``lambda_{a + lambda_a(b)} = lambda_a lambda_b``
    and every survivor is re-validated as a brace from scratch.
    """
    n = a.order
    auts = list(auts if auts is not None else automorphisms(a))
    at = a.table
    index = {p: i for i, p in enumerate(auts)}
    ident = index[tuple(range(n))]
    prod = [[index[compose(p, q)] for q in auts] for p in auts]
    found: set[tuple] = set()

    def propagate(lam: list[int]) -> list[int] | None:
        lam = lam[:]
        changed = True
        while changed:
            changed = False
            known = [x for x in range(n) if lam[x] >= 0]
            for x in known:
                px = auts[lam[x]]
                for y in known:
                    z = at[x][px[y]]
                    want = prod[lam[x]][lam[y]]
                    if lam[z] < 0:
                        lam[z] = want
                        changed = True
                    elif lam[z] != want:
                        return None
        return lam

    def search(lam: list[int]) -> None:
        lam = propagate(lam)
        if lam is None:
            return
        if -1 not in lam:
            table = [[at[x][auts[lam[x]][y]] for y in range(n)] for x in range(n)]
            try:
                mul = group_from_table(table)
                brace_from_groups(a, mul)
            except GroupError:
                return
            found.add(tuple(tuple(row) for row in table))
            return
        x = lam.index(-1)
        for i in range(len(auts)):
            nxt = lam[:]
            nxt[x] = i
            search(nxt)

    start = [-1] * n
    start[0] = ident
    search(start)
    return found


def canonical_table(table: tuple, auts: Sequence[Perm]) -> tuple:
    """Least relabelling of a mul table under the additive automorphisms."""
    n = len(table)
    best = None
    for alpha in auts:
        inv = invert(alpha)
        cand = tuple(tuple(alpha[table[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
        if best is None or cand < best:
            best = cand
    return best


@dataclass
class CatalogEntry:
    brace: SkewBrace
    brace_id: str
    source: str
    add_group: str | None = None
    mul_group: str | None = None
    iso_class_id: int | None = None

    def to_json(self) -> dict:
        data = self.brace.to_json()
        data.update(
            {
                "id": self.brace_id,
                "source": self.source,
                "add_group": self.add_group,
                "mul_group": self.mul_group,
            }
        )
        if self.iso_class_id is not None:
            data["iso_class_id"] = self.iso_class_id
        return data


@dataclass
class BraceCatalog:
    entries: list[CatalogEntry] = field(default_factory=list)
    dedup: str = "brace_isomorphism"

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def braces(self) -> list[SkewBrace]:
        return [e.brace for e in self.entries]


def enumerate_braces(
    a: FiniteGroup,
    dedup: bool = True,
    cap: int = ENUMERATION_CAP,
    method: str = "holomorph",
) -> BraceCatalog:
    """Every skew brace with additive group ``a`` (up to isomorphism by default)."""
    _check_cap(a, cap)
    auts = automorphisms(a)
    if method == "holomorph":
        tables = regular_subgroups_holomorph(a, auts)
    elif method == "lambda":
        tables = lambda_assignments(a, auts)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")

    add_name = a.name or identify(a)
    if dedup:
        classes = sorted({canonical_table(t, auts) for t in tables})
        picked = [(t, i) for i, t in enumerate(classes)]
    else:
        picked = [(t, None) for t in sorted(tables)]

    entries = []
    for k, (t, iso) in enumerate(picked):
        mul = group_from_table(t)
        b = brace_from_groups(a, mul)
        entries.append(
            CatalogEntry(
                brace=b,
                brace_id=f"{add_name}#{k}",
                source="holomorph" if method == "holomorph" else "lambda-search",
                add_group=add_name,
                mul_group=identify(mul),
                iso_class_id=iso,
            )
        )
    return BraceCatalog(entries, "brace_isomorphism" if dedup else "none")


def dedup_catalog(catalog: BraceCatalog) -> BraceCatalog:
    """Drop entries that are brace-isomorphic to an earlier one."""
    kept: list[CatalogEntry] = []
    for e in catalog.entries:
        if not any(brace_isomorphic(k.brace, e.brace) is not None for k in kept):
            kept.append(e)
    return BraceCatalog(kept, "brace_isomorphism")


def brace_isomorphic(b1: SkewBrace, b2: SkewBrace, cap: int = ENUMERATION_CAP) -> Perm | None:
    """A bijection that is an isomorphism of both group structures, or ``None``."""
    if b1.order != b2.order:
        return None
    if b1.order > cap:
        raise OrderCapExceeded(f"order {b1.order} exceeds cap {cap}")
    if len(b1.lambda_kernel) != len(b2.lambda_kernel):
        return None
    if sorted(b1.mul.element_orders) != sorted(b2.mul.element_orders):
        return None
    psi = is_isomorphic(b1.add, b2.add)
    if psi is None:
        return None
    m1, m2 = b1.mul.table, b2.mul.table
    for alpha in automorphisms(b1.add):
        f = compose(psi, alpha)
        if all(f[m1[x][y]] == m2[f[x]][f[y]] for x in b1.elements for y in b1.elements):
            return f
    return None


def corpus(max_order: int = 8) -> list[CatalogEntry]:
    """Every skew brace, up to isomorphism, on every group of order <= ``max_order``."""
    from .groups import small_groups

    out: list[CatalogEntry] = []
    for a in small_groups(max_order):
        out.extend(enumerate_braces(a).entries)
    return out
