"""Set-theoretic solutions derived from braces, their defining checks, and
retraction / multipermutation level.

A solution is a table map r(x, y) = (u, v) over element ranks.  For a brace,
u = lambda_x(y) and v = u' o x o y (u' the circle inverse), which is always
involutive and non-degenerate.  Retraction identifies points with equal left
component maps; the multipermutation level is the number of retraction steps
to reach a single point (level 0 for an already-trivial solution, so the
trivial brace on n >= 2 points has level 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .brace import Brace, BraceError


class PropertyFailure(BraceError):
    """A brace-derived table failed involutivity or non-degeneracy."""


class NotWellDefined(BraceError):
    """The retraction quotient is inconsistent on equivalence classes."""


@dataclass(frozen=True)
class SolutionReport:
    size: int
    involutive: bool
    nondegenerate: bool
    braid: bool
    triples_checked: int
    exhaustive: bool
    seed: int | None
    witness: tuple | None

    @property
    def passed(self) -> bool:
        return self.involutive and self.nondegenerate and self.braid


class YBESolution:
    """Pair map on ranks 0..n-1, stored as two flat n*n tables (u and v)."""

    __slots__ = ("n", "u", "v")

    def __init__(self, n: int, u: list[int], v: list[int]):
        if len(u) != n * n or len(v) != n * n:
            raise ValueError("component tables must have n*n entries")
        self.n = n
        self.u = u
        self.v = v

    def apply(self, x: int, y: int) -> tuple[int, int]:
        i = x * self.n + y
        return self.u[i], self.v[i]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, YBESolution)
            and self.n == other.n
            and self.u == other.u
            and self.v == other.v
        )

    def sigma_row(self, x: int) -> tuple[int, ...]:
        return tuple(self.u[x * self.n : (x + 1) * self.n])


def twist_solution(n: int) -> YBESolution:
    u = [0] * (n * n)
    v = [0] * (n * n)
    for x in range(n):
        for y in range(n):
            u[x * n + y] = y
            v[x * n + y] = x
    return YBESolution(n, u, v)


def identity_pair_map(n: int) -> YBESolution:
    u = [0] * (n * n)
    v = [0] * (n * n)
    for x in range(n):
        for y in range(n):
            u[x * n + y] = x
            v[x * n + y] = y
    return YBESolution(n, u, v)


def solution_from_brace(brace: Brace) -> YBESolution:
    """u = lambda_x(y), v = u' o x o y; involutivity and non-degeneracy are
    asserted at build time (a failure would mean a brace-validation bug)."""
    n = brace.order
    u = [0] * (n * n)
    v = [0] * (n * n)
    for x in range(n):
        base = x * n
        for y in range(n):
            uu = brace.lam_r(x, y)
            u[base + y] = uu
            v[base + y] = brace.circ_r(brace.circ_inverse_r(uu), brace.circ_r(x, y))
    sol = YBESolution(n, u, v)
    if not _involutive(sol):
        raise PropertyFailure("brace-derived table is not involutive")
    if not _nondegenerate(sol):
        raise PropertyFailure("brace-derived table is degenerate")
    return sol


def _involutive(sol: YBESolution) -> bool:
    n = sol.n
    for x in range(n):
        for y in range(n):
            u, v = sol.apply(x, y)
            if sol.apply(u, v) != (x, y):
                return False
    return True


def _nondegenerate(sol: YBESolution) -> bool:
    n = sol.n
    for x in range(n):
        if len(set(sol.u[x * n : (x + 1) * n])) != n:
            return False
    for y in range(n):
        if len({sol.v[x * n + y] for x in range(n)}) != n:
            return False
    return True


def _braid_at(sol: YBESolution, x: int, y: int, z: int) -> bool:
    # r12 r23 r12 = r23 r12 r23 on (x, y, z)
    a, b = sol.apply(x, y)
    c, d = sol.apply(b, z)
    e, f = sol.apply(a, c)
    lhs = (e, f, d)
    g, h = sol.apply(y, z)
    i, j = sol.apply(x, g)
    k, l = sol.apply(j, h)
    rhs = (i, k, l)
    return lhs == rhs


def check_solution(
    sol: YBESolution,
    exhaustive_limit: int = 81,
    sample_budget: int = 1_000_000,
    seed: int = 0,
) -> SolutionReport:
    """Involutivity, non-degeneracy (always exhaustive), and the braid
    relation (exhaustive up to the limit, seeded sampling above)."""
    n = sol.n
    involutive = _involutive(sol)
    nondeg = _nondegenerate(sol)
    braid = True
    witness = None
    checked = 0
    exhaustive = n <= exhaustive_limit
    if exhaustive:
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    checked += 1
                    if not _braid_at(sol, x, y, z):
                        braid = False
                        witness = (x, y, z)
                        break
                if not braid:
                    break
            if not braid:
                break
        used_seed = None
    else:
        rng = random.Random(seed)
        for _ in range(sample_budget):
            x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            checked += 1
            if not _braid_at(sol, x, y, z):
                braid = False
                witness = (x, y, z)
                break
        used_seed = seed
    return SolutionReport(n, involutive, nondeg, braid, checked, exhaustive, used_seed, witness)


def retraction(sol: YBESolution) -> YBESolution:
    """Quotient by x ~ y when the left component maps agree, with the induced
    table checked well defined on classes."""
    n = sol.n
    class_of: dict[tuple[int, ...], int] = {}
    cls = [0] * n
    for x in range(n):
        row = sol.sigma_row(x)
        if row not in class_of:
            class_of[row] = len(class_of)
        cls[x] = class_of[row]
    m = len(class_of)
    rep = [0] * m
    seen = set()
    for x in range(n):
        if cls[x] not in seen:
            seen.add(cls[x])
            rep[cls[x]] = x

    u = [0] * (m * m)
    v = [0] * (m * m)
    for cx in range(m):
        for cy in range(m):
            uu, vv = sol.apply(rep[cx], rep[cy])
            u[cx * m + cy] = cls[uu]
            v[cx * m + cy] = cls[vv]
    for x in range(n):
        for y in range(n):
            uu, vv = sol.apply(x, y)
            i = cls[x] * m + cls[y]
            if u[i] != cls[uu] or v[i] != cls[vv]:
                raise NotWellDefined(f"retraction inconsistent at ({x}, {y})")
    return YBESolution(m, u, v)


def multipermutation_level(sol: YBESolution, max_steps: int | None = None) -> int | None:
    """Least k with |Ret^k| = 1; None when the size stops shrinking above 1."""
    steps = 0
    current = sol
    limit = max_steps if max_steps is not None else sol.n + 1
    while current.n > 1 and steps <= limit:
        nxt = retraction(current)
        if nxt.n == current.n:
            return None
        current = nxt
        steps += 1
    return steps if current.n == 1 else None
