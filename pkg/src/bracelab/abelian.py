"""Exact arithmetic on finite abelian groups given as products of cyclic groups.

Elements are coordinate tuples, reduced componentwise; ranks follow a
little-endian mixed-radix rule (rank(a) = sum a_i * prod_{j<i} d_j), and every
table or file in the package indexes elements by that rank.  All values are
immutable after construction, so concurrent reads are safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Callable, Iterable, Iterator, Sequence

Element = tuple[int, ...]


class AbelianError(Exception):
    """Base error for the abelian layer."""


class NotHomomorphism(AbelianError):
    """A candidate column violates the order-divisibility condition."""


class NotBijective(AbelianError):
    """A candidate automorphism is not a bijection on the group."""


class StructuralAnomaly(AbelianError):
    """An internal consistency fact that must hold was observed to fail."""


class AbelianGroup:
    """Finite abelian group Z_{d_1} x ... x Z_{d_k} with tuple elements.

    The trivial group is permitted as the empty product (used by quotients);
    every listed modulus must be at least 2.
    """

    __slots__ = ("moduli", "order", "elements", "_neg", "_add_flat", "_index")

    def __init__(self, moduli: Sequence[int]):
        moduli = tuple(int(d) for d in moduli)
        if any(d < 2 for d in moduli):
            raise ValueError(f"moduli must all be >= 2, got {moduli}")
        self.moduli: tuple[int, ...] = moduli
        self.order: int = prod(moduli) if moduli else 1
        self.elements: list[Element] = [
            tuple(reversed(e)) for e in itertools.product(*[range(d) for d in reversed(moduli)])
        ]
        self._index: dict[Element, int] = {e: i for i, e in enumerate(self.elements)}
        self._neg: list[int] | None = None
        self._add_flat: list[int] | None = None

    # -- rank / unrank -------------------------------------------------------

    def rank(self, e: Element) -> int:
        r = self._index.get(tuple(e))
        if r is None:
            raise ValueError(f"element {e!r} not in group with moduli {self.moduli}")
        return r

    def unrank(self, i: int) -> Element:
        if not 0 <= i < self.order:
            raise IndexError(f"rank {i} out of range for order {self.order}")
        return self.elements[i]

    # -- arithmetic on coordinate tuples ------------------------------------

    def reduce(self, e: Sequence[int]) -> Element:
        return tuple(int(x) % d for x, d in zip(e, self.moduli))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.moduli))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % d for x, d in zip(a, self.moduli))

    def scalar_multiple(self, n: int, a: Element) -> Element:
        return tuple((n * x) % d for x, d in zip(a, self.moduli))

    @property
    def zero(self) -> Element:
        return (0,) * len(self.moduli)

    def element_order(self, a: Element) -> int:
        out = 1
        for x, d in zip(a, self.moduli):
            out = out * (d // gcd(x, d)) // gcd(out, d // gcd(x, d))
        return out

    def exponent(self) -> int:
        out = 1
        for d in self.moduli:
            out = out * d // gcd(out, d)
        return out

    # -- rank-level tables (hot paths) ---------------------------------------

    @property
    def neg_rank(self) -> list[int]:
        if self._neg is None:
            self._neg = [self.rank(self.neg(e)) for e in self.elements]
        return self._neg

    @property
    def add_flat(self) -> list[int]:
        """Flat n*n addition table over ranks; built on first use."""
        if self._add_flat is None:
            n = self.order
            rank = self._index
            add = self.add
            flat = [0] * (n * n)
            for i, a in enumerate(self.elements):
                base = i * n
                for j, b in enumerate(self.elements):
                    flat[base + j] = rank[add(a, b)]
            self._add_flat = flat
        return self._add_flat

    def add_rank(self, i: int, j: int) -> int:
        return self.add_flat[i * self.order + j]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AbelianGroup) and self.moduli == other.moduli

    def __hash__(self) -> int:
        return hash(self.moduli)

    def __repr__(self) -> str:
        return f"AbelianGroup{self.moduli}"


class Automorphism:
    """Additive automorphism, stored by its columns (images of generators)."""

    __slots__ = ("moduli", "columns", "_perm", "_inv_perm")

    def __init__(self, moduli: tuple[int, ...], columns: tuple[Element, ...]):
        self.moduli = moduli
        self.columns = columns
        self._perm: tuple[int, ...] | None = None
        self._inv_perm: tuple[int, ...] | None = None

    def apply(self, e: Element) -> Element:
        img = [0] * len(self.moduli)
        for coeff, col in zip(e, self.columns):
            if coeff:
                for t, (x, d) in enumerate(zip(col, self.moduli)):
                    img[t] = (img[t] + coeff * x) % d
        return tuple(img)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other, as an automorphism (columns are mapped columns)."""
        return Automorphism(self.moduli, tuple(self.apply(c) for c in other.columns))

    def perm(self, group: AbelianGroup) -> tuple[int, ...]:
        if self._perm is None:
            self._perm = tuple(group.rank(self.apply(e)) for e in group.elements)
        return self._perm

    def inv_perm(self, group: AbelianGroup) -> tuple[int, ...]:
        if self._inv_perm is None:
            p = self.perm(group)
            inv = [0] * len(p)
            for i, v in enumerate(p):
                inv[v] = i
            self._inv_perm = tuple(inv)
        return self._inv_perm

    def perm_order(self, group: AbelianGroup) -> int:
        p = self.perm(group)
        seen = [False] * len(p)
        out = 1
        for start in range(len(p)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = p[i]
                length += 1
            out = out * length // gcd(out, length)
        return out

    def is_identity(self) -> bool:
        k = len(self.moduli)
        return all(col == tuple(1 if t == j else 0 for t in range(k)) for j, col in enumerate(self.columns))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Automorphism)
            and self.moduli == other.moduli
            and self.columns == other.columns
        )

    def __hash__(self) -> int:
        return hash((self.moduli, self.columns))

    def __repr__(self) -> str:
        return f"Automorphism(columns={self.columns})"


def identity_automorphism(group: AbelianGroup) -> Automorphism:
    k = len(group.moduli)
    cols = tuple(tuple(1 if t == j else 0 for t in range(k)) for j in range(k))
    return Automorphism(group.moduli, cols)


def validate_automorphism(group: AbelianGroup, columns: Sequence[Sequence[int]]) -> Automorphism:
    """Accept candidate columns iff they induce a well-defined bijection.

    Column j must have additive order dividing d_j (well-definedness); the
    induced map is then checked bijective by full image enumeration.
    """
    cols = tuple(group.reduce(c) for c in columns)
    if len(cols) != len(group.moduli):
        raise NotHomomorphism(f"expected {len(group.moduli)} columns, got {len(cols)}")
    for j, col in enumerate(cols):
        d = group.moduli[j]
        if group.scalar_multiple(d, col) != group.zero:
            raise NotHomomorphism(f"column {j} has order not dividing {d}: {col}")
    phi = Automorphism(group.moduli, cols)
    if len(set(phi.perm(group))) != group.order:
        raise NotBijective(f"columns {cols} do not induce a bijection")
    return phi


def all_automorphisms(group: AbelianGroup) -> list[Automorphism]:
    """Every automorphism, sorted by the rank tuple of its columns."""
    candidates: list[list[Element]] = []
    for d in group.moduli:
        candidates.append([e for e in group.elements if group.scalar_multiple(d, e) == group.zero])
    out = []
    for combo in itertools.product(*candidates):
        phi = Automorphism(group.moduli, tuple(combo))
        if len(set(phi.perm(group))) == group.order:
            out.append(phi)
    out.sort(key=lambda f: tuple(group.rank(c) for c in f.columns))
    return out


@dataclass(frozen=True)
class Subgroup:
    """Subgroup stored as the sorted tuple of its member ranks."""

    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", tuple(sorted(self.ranks)))

    @property
    def order(self) -> int:
        return len(self.ranks)

    def members(self) -> frozenset[int]:
        return frozenset(self.ranks)

    def __contains__(self, rank: int) -> bool:
        return rank in self.members()

    def __iter__(self) -> Iterator[int]:
        return iter(self.ranks)

    def __len__(self) -> int:
        return len(self.ranks)

    def elements(self, group: AbelianGroup) -> list[Element]:
        return [group.unrank(i) for i in self.ranks]

    def is_trivial(self) -> bool:
        return self.ranks == (0,)


def subgroup_closure(group: AbelianGroup, seed_ranks: Iterable[int]) -> Subgroup:
    """Smallest additively closed subset containing the seeds and 0."""
    add = group.add_rank
    neg = group.neg_rank
    members = {0}
    frontier = [0]
    for r in seed_ranks:
        if r not in members:
            members.add(r)
            frontier.append(r)
    while frontier:
        x = frontier.pop()
        nx = neg[x]
        if nx not in members:
            members.add(nx)
            frontier.append(nx)
        for y in list(members):
            s = add(x, y)
            if s not in members:
                members.add(s)
                frontier.append(s)
    return Subgroup(tuple(members))


def subgroup_generated(group: AbelianGroup, gens: Iterable[Element]) -> Subgroup:
    return subgroup_closure(group, [group.rank(e) for e in gens])


def multiples_subgroup(group: AbelianGroup, k: int) -> Subgroup:
    """The subgroup {k*a : a in A}, computed by direct image enumeration."""
    if k < 1:
        raise ValueError("k must be >= 1")
    ranks = {group.rank(group.scalar_multiple(k, e)) for e in group.elements}
    return Subgroup(tuple(ranks))


def primary_invariants(moduli: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Multiset of prime-power orders in the primary decomposition, sorted."""
    parts: list[tuple[int, int]] = []
    for d in moduli:
        m = d
        f = 2
        while f * f <= m:
            if m % f == 0:
                q = 1
                while m % f == 0:
                    m //= f
                    q *= f
                parts.append((f, q))
            f += 1
        if m > 1:
            parts.append((m, m))
    return tuple(sorted(parts))


def abelian_basis(n: int, add: Callable[[int, int], int], zero: int) -> list[tuple[int, int]]:
    """Cyclic basis (generator, order) pairs for an abelian group on 0..n-1.

    Greedy: repeatedly pick an element whose order in the current quotient is
    maximal and equals its full order; such an element always exists because a
    cyclic subgroup of exponent order is a direct summand.
    """
    span = {zero}
    gens: list[tuple[int, int]] = []
    orders: dict[int, int] = {}
    for x in range(n):
        t, y = 1, x
        while y != zero:
            y = add(y, x)
            t += 1
        orders[x] = t

    while len(span) < n:
        qord: dict[int, int] = {}
        for x in range(n):
            if x in span:
                continue
            t, y = 1, x
            while y not in span:
                y = add(y, x)
                t += 1
            qord[x] = t
        d = max(qord.values())
        best = next((x for x in range(n) if qord.get(x) == d and orders[x] == d), None)
        if best is None:
            raise StructuralAnomaly("no basis element with matching order; group not abelian?")
        gens.append((best, d))
        powers = [zero]
        y = best
        for _ in range(d - 1):
            powers.append(y)
            y = add(y, best)
        new_span = {add(s, q) for s in span for q in powers}
        if len(new_span) != len(span) * d:
            raise StructuralAnomaly("span did not grow multiplicatively")
        span = new_span
    return gens
