"""Exhaustive enumeration of braces on small abelian groups, with an
independent holomorph-based count as a cross-check.

A lambda table is a map A -> Aut(A,+) with lambda_0 = id satisfying the
cocycle law lambda_{a + lambda_a(b)} = lambda_a . lambda_b; the search
branches over automorphism choices for the smallest-rank undetermined
element and propagates the law to a fixed point, pruning contradictions.
Candidates are tried in increasing automorphism rank (lexicographic column
order), so the representative list is deterministic.

The oracle counts regular subgroups of Hol(A) = A x| Aut(A): valid lambda
tables correspond exactly to regular subgroups, and brace isomorphism
classes to their orbits under conjugation by Aut(A,+).
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import AbelianGroup, all_automorphisms, identity_automorphism
from .brace import Brace, BraceError, is_isomorphic


class GuardExceeded(BraceError):
    """Requested enumeration is outside the configured guard."""


DEFAULT_MAX_ORDER = 16
DEFAULT_MAX_AUT = 1000


@dataclass(frozen=True)
class EnumerationResult:
    moduli: tuple[int, ...]
    representatives: tuple[Brace, ...]
    total_tables: int
    isomorphism_classes: int
    class_sizes: tuple[int, ...]
    nodes_explored: int

    def __post_init__(self) -> None:
        assert self.isomorphism_classes == len(self.representatives)


def enumerate_braces(
    moduli,
    max_order: int = DEFAULT_MAX_ORDER,
    max_aut: int = DEFAULT_MAX_AUT,
    force: bool = False,
) -> EnumerationResult:
    """All braces on the given additive group, deduplicated up to isomorphism.

    Guarded by group order and |Aut(A,+)| (automorphism counts explode long
    before the order does, e.g. |Aut(C_2^4)| = 20160); ``force`` overrides.
    """
    group = AbelianGroup(moduli)
    if not force and group.order > max_order:
        raise GuardExceeded(f"order {group.order} exceeds guard {max_order}; use force")
    auts = all_automorphisms(group)
    if not force and len(auts) > max_aut:
        raise GuardExceeded(f"|Aut| = {len(auts)} exceeds guard {max_aut}; use force")

    n = group.order
    perms = [f.perm(group) for f in auts]
    aut_index = {f.columns: i for i, f in enumerate(auts)}
    comp: dict[tuple[int, int], int] = {}

    def compose(i: int, j: int) -> int:
        key = (i, j)
        out = comp.get(key)
        if out is None:
            out = aut_index[auts[i].compose(auts[j]).columns]
            comp[key] = out
        return out

    add = group.add_rank
    identity_id = aut_index[identity_automorphism(group).columns]

    tables: list[list[int]] = []
    nodes = 0

    def close(assign: list[int]) -> bool:
        """Full fixed-point closure; simpler than tracking pair frontiers."""
        changed = True
        while changed:
            changed = False
            known = [x for x in range(n) if assign[x] >= 0]
            for x in known:
                px = perms[assign[x]]
                ax = assign[x]
                for y in known:
                    c = add(x, px[y])
                    want = compose(ax, assign[y])
                    if assign[c] < 0:
                        assign[c] = want
                        changed = True
                    elif assign[c] != want:
                        return False
        return True

    def dfs(assign: list[int]) -> None:
        nonlocal nodes
        nodes += 1
        u = next((x for x in range(n) if assign[x] < 0), None)
        if u is None:
            tables.append(list(assign))
            return
        for cand in range(len(auts)):
            trial = list(assign)
            trial[u] = cand
            if close(trial):
                dfs(trial)

    start = [-1] * n
    start[0] = identity_id
    if close(start):
        dfs(start)

    braces = [
        Brace(group, table, auts, name=f"enum{tuple(group.moduli)}#{i}")
        for i, table in enumerate(tables)
    ]
    reps: list[Brace] = []
    sizes: list[int] = []
    for b in braces:
        for i, r in enumerate(reps):
            if is_isomorphic(b, r) is not None:
                sizes[i] += 1
                break
        else:
            reps.append(b)
            sizes.append(1)
    for i, r in enumerate(reps):
        r.name = f"enum{tuple(group.moduli)}-{i:03d}"
    return EnumerationResult(
        group.moduli, tuple(reps), len(tables), len(reps), tuple(sizes), nodes
    )


# -- holomorph oracle ---------------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    moduli: tuple[int, ...]
    regular_subgroups: int
    aut_conjugacy_classes: int
    holomorph_order: int


def holomorph_count_oracle(moduli, max_order: int = DEFAULT_MAX_ORDER, max_aut: int = 100_000) -> OracleResult:
    """Count regular subgroups of Hol(A) and their Aut(A,+)-conjugacy classes.

    Independent of the lambda-table search: subgroups of order |A| are found
    by breadth-first generator extension inside the holomorph, then filtered
    for regularity (first coordinates exactly A).
    """
    group = AbelianGroup(moduli)
    if group.order > max_order:
        raise GuardExceeded(f"order {group.order} exceeds oracle guard {max_order}")
    auts = all_automorphisms(group)
    if len(auts) > max_aut:
        raise GuardExceeded(f"|Aut| = {len(auts)} exceeds oracle guard {max_aut}")

    n = group.order
    k = len(auts)
    perms = [f.perm(group) for f in auts]
    aut_index = {f.columns: i for i, f in enumerate(auts)}
    comp_table = [[aut_index[auts[i].compose(auts[j]).columns] for j in range(k)] for i in range(k)]
    identity_id = aut_index[identity_automorphism(group).columns]
    inv_aut = [row.index(identity_id) for row in comp_table]

    add = group.add_rank

    def hmul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        (a, m), (b, mm) = x, y
        return (add(a, perms[m][b]), comp_table[m][mm])

    ident = (0, identity_id)
    elements = [(a, m) for a in range(n) for m in range(k)]

    def closure(seed: frozenset) -> frozenset:
        """Subgroup generated by the seed, aborting once it exceeds n."""
        members = {ident} | set(seed)
        changed = True
        while changed and len(members) <= n:
            changed = False
            snapshot = list(members)
            for x in snapshot:
                for y in snapshot:
                    z = hmul(x, y)
                    if z not in members:
                        members.add(z)
                        changed = True
                        if len(members) > n:
                            return frozenset(members)
        return frozenset(members)

    # BFS over subgroups of order <= n by single-generator extension
    seen: set[frozenset] = set()
    found: set[frozenset] = set()
    base = frozenset([ident])
    queue = [base]
    seen.add(base)
    while queue:
        h = queue.pop()
        if len(h) == n:
            found.add(h)
            continue
        for g in elements:
            if g in h:
                continue
            kq = closure(h | {g})
            if len(kq) > n or kq in seen:
                continue
            seen.add(kq)
            queue.append(kq)
            if len(kq) == n:
                found.add(kq)

    regular = [h for h in found if len({a for a, _ in h}) == n]

    # orbits under conjugation by (0, alpha)
    orbits = 0
    remaining = set(regular)
    while remaining:
        h = remaining.pop()
        orbit = set()
        for alpha in range(k):
            conj = frozenset(
                (perms[alpha][a], comp_table[alpha][comp_table[m][inv_aut[alpha]]]) for a, m in h
            )
            orbit.add(conj)
        remaining -= orbit
        orbits += 1
    return OracleResult(group.moduli, len(regular), orbits, n * k)
