"""The brace data structure and its operations.

A left brace is stored as an abelian group plus one additive automorphism
lambda_a per element rank.  The two products are derived views:

    a o b = a + lambda_a(b)          (the multiplicative group)
    a * b = lambda_a(b) - b          (so a o b = a * b + a + b)

Validation reduces to: lambda_0 = id, every lambda_a a valid automorphism,
and the cocycle law lambda_{a + lambda_a(b)} = lambda_a . lambda_b for all
pairs.  Braces are immutable once validated; all queries are safe to share.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .abelian import (
    AbelianGroup,
    Automorphism,
    Element,
    NotBijective,
    NotHomomorphism,
    StructuralAnomaly,
    Subgroup,
    abelian_basis,
    identity_automorphism,
    subgroup_closure,
    validate_automorphism,
)


class BraceError(Exception):
    """Base error for brace construction and validation."""


class BadLambdaZero(BraceError):
    """lambda_0 is not the identity map."""


class NotAutomorphism(BraceError):
    """Some lambda_a fails the automorphism conditions."""

    def __init__(self, rank: int, cause: str):
        self.rank = rank
        super().__init__(f"lambda at rank {rank}: {cause}")


class CocycleViolation(BraceError):
    """lambda_{a o b} != lambda_a . lambda_b for some witness pair."""

    def __init__(self, a: Element, b: Element):
        self.witness = (a, b)
        super().__init__(f"cocycle law fails at a={a}, b={b}")


class NotAnIdeal(BraceError):
    """A subset fails the ideal closure conditions."""


@dataclass(frozen=True)
class BraceReport:
    """Validation outcome with witnesses; empty violations means accepted."""

    order: int
    violations: tuple[tuple[str, tuple], ...]
    checks: int

    @property
    def passed(self) -> bool:
        return not self.violations


class Brace:
    """Validated left brace; construct via ``validate_brace`` or the builders."""

    __slots__ = (
        "group",
        "lambda_ids",
        "auts",
        "_perms",
        "_inv_perms",
        "_circ_order",
        "_star_span",
        "_cache",
        "name",
    )

    def __init__(self, group: AbelianGroup, lambda_ids: list[int], auts: list[Automorphism], name: str = ""):
        self.group = group
        self.lambda_ids = lambda_ids
        self.auts = auts
        self._perms: list[tuple[int, ...]] = [f.perm(group) for f in auts]
        self._inv_perms: list[tuple[int, ...]] = [f.inv_perm(group) for f in auts]
        self._circ_order: list[int] | None = None
        self._star_span: Subgroup | None = None
        self._cache: dict = {}  # memo for derived analyses (series, centers, ...)
        self.name = name

    # -- basics ---------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.group.moduli

    def rank(self, e: Element) -> int:
        return self.group.rank(e)

    def element(self, i: int) -> Element:
        return self.group.unrank(i)

    def lambda_of(self, a: Element) -> Automorphism:
        return self.auts[self.lambda_ids[self.rank(a)]]

    def lambda_columns(self) -> list[tuple[Element, ...]]:
        return [self.auts[i].columns for i in self.lambda_ids]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Brace)
            and self.moduli == other.moduli
            and self.lambda_columns() == other.lambda_columns()
        )

    def __hash__(self) -> int:
        return hash((self.moduli, tuple(self.lambda_columns())))

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"Brace(moduli={self.moduli}{tag})"

    # -- rank-level operations (hot paths) -------------------------------------

    def lam_r(self, a: int, b: int) -> int:
        return self._perms[self.lambda_ids[a]][b]

    def star_r(self, a: int, b: int) -> int:
        g = self.group
        return g.add_rank(self._perms[self.lambda_ids[a]][b], g.neg_rank[b])

    def circ_r(self, a: int, b: int) -> int:
        return self.group.add_rank(a, self._perms[self.lambda_ids[a]][b])

    def circ_inverse_r(self, a: int) -> int:
        return self._inv_perms[self.lambda_ids[a]][self.group.neg_rank[a]]

    def circ_power_r(self, a: int, n: int) -> int:
        if n < 0:
            return self.circ_inverse_r(self.circ_power_r(a, -n))
        acc = 0
        base = a
        while n:
            if n & 1:
                acc = self.circ_r(acc, base)
            base = self.circ_r(base, base)
            n >>= 1
        return acc

    def circ_order_r(self, a: int) -> int:
        if self._circ_order is None:
            self._circ_order = [0] * self.order
        cached = self._circ_order[a]
        if cached:
            return cached
        t, y = 1, a
        while y != 0:
            y = self.circ_r(y, a)
            t += 1
        self._circ_order[a] = t
        return t

    # -- element-level operations ----------------------------------------------

    def star(self, a: Element, b: Element) -> Element:
        return self.element(self.star_r(self.rank(a), self.rank(b)))

    def circ(self, a: Element, b: Element) -> Element:
        return self.element(self.circ_r(self.rank(a), self.rank(b)))

    def circ_inverse(self, a: Element) -> Element:
        return self.element(self.circ_inverse_r(self.rank(a)))

    def circ_power(self, a: Element, n: int) -> Element:
        return self.element(self.circ_power_r(self.rank(a), n))

    def circ_order(self, a: Element) -> int:
        return self.circ_order_r(self.rank(a))

    def commutator(self, a: Element, b: Element) -> Element:
        i, j = self.rank(a), self.rank(b)
        c = self.circ_r(self.circ_r(self.circ_inverse_r(i), self.circ_inverse_r(j)), self.circ_r(i, j))
        return self.element(c)

    def is_circ_abelian(self) -> bool:
        n = self.order
        return all(self.circ_r(a, b) == self.circ_r(b, a) for a in range(n) for b in range(a + 1, n))

    # -- subset star and ideals --------------------------------------------------

    def subset_star(self, xs: Iterable[int] | Subgroup, ys: Iterable[int] | Subgroup) -> Subgroup:
        """Additive subgroup generated by {x * y : x in X, y in Y} (rank sets)."""
        xr = list(xs.ranks if isinstance(xs, Subgroup) else xs)
        yr = list(ys.ranks if isinstance(ys, Subgroup) else ys)
        seeds = {self.star_r(x, y) for x in xr for y in yr}
        return subgroup_closure(self.group, seeds)

    def star_span(self) -> Subgroup:
        """A * A, cached (the additive span of all pairwise stars)."""
        if self._star_span is None:
            n = range(self.order)
            self._star_span = self.subset_star(n, n)
        return self._star_span

    def ideal_generated(self, c: Element) -> Subgroup:
        """Smallest set containing c closed under +, -, every lambda_a, and
        two-sided stars with arbitrary elements."""
        n = self.order
        members = set(subgroup_closure(self.group, [self.rank(c)]).ranks)
        changed = True
        while changed:
            changed = False
            new: set[int] = set()
            for x in members:
                for a in range(n):
                    for y in (self.lam_r(a, x), self.star_r(a, x), self.star_r(x, a)):
                        if y not in members:
                            new.add(y)
            if new:
                members = set(subgroup_closure(self.group, members | new).ranks)
                changed = True
        return Subgroup(tuple(members))

    def is_ideal(self, sub: Subgroup) -> bool:
        mem = sub.members()
        if 0 not in mem:
            return False
        add = self.group.add_rank
        neg = self.group.neg_rank
        for x in sub:
            if neg[x] not in mem:
                return False
            for y in sub:
                if add(x, y) not in mem:
                    return False
        for a in range(self.order):
            for x in sub:
                if self.lam_r(a, x) not in mem:
                    return False
                if self.star_r(a, x) not in mem:
                    return False
                if self.star_r(x, a) not in mem:
                    return False
        return True


def _dedupe_lambdas(group: AbelianGroup, lambdas: Sequence[Automorphism]) -> tuple[list[int], list[Automorphism]]:
    ids: list[int] = []
    auts: list[Automorphism] = []
    index: dict[tuple, int] = {}
    for f in lambdas:
        key = f.columns
        if key not in index:
            index[key] = len(auts)
            auts.append(f)
        ids.append(index[key])
    return ids, auts


def _check_cocycle(brace: Brace) -> tuple[Element, Element] | None:
    """First pair violating lambda_{a o b} = lambda_a . lambda_b, or None.

    Compositions are memoised per distinct lambda pair, so the n^2 scan stays
    cheap even at order 625.
    """
    group = brace.group
    ids = brace.lambda_ids
    auts = brace.auts
    comp: dict[tuple[int, int], tuple] = {}
    for a in range(group.order):
        ia = ids[a]
        perm_a = auts[ia].perm(group)
        for b in range(group.order):
            ib = ids[b]
            c = group.add_rank(a, perm_a[b])
            key = (ia, ib)
            cols = comp.get(key)
            if cols is None:
                cols = auts[ia].compose(auts[ib]).columns
                comp[key] = cols
            if auts[ids[c]].columns != cols:
                return group.unrank(a), group.unrank(b)
    return None


def validate_brace(
    group: AbelianGroup,
    lambda_columns: Sequence[Sequence[Sequence[int]]],
    name: str = "",
) -> Brace:
    """Validate a full lambda table and return the brace; raise on violation."""
    if len(lambda_columns) != group.order:
        raise BraceError(f"expected {group.order} lambda entries, got {len(lambda_columns)}")
    lambdas: list[Automorphism] = []
    for i, cols in enumerate(lambda_columns):
        try:
            lambdas.append(validate_automorphism(group, cols))
        except (NotHomomorphism, NotBijective) as exc:
            raise NotAutomorphism(i, str(exc)) from exc
    if not lambdas[0].is_identity():
        raise BadLambdaZero("lambda at rank 0 must be the identity")
    ids, auts = _dedupe_lambdas(group, lambdas)
    brace = Brace(group, ids, auts, name=name)
    witness = _check_cocycle(brace)
    if witness is not None:
        raise CocycleViolation(*witness)
    return brace


def brace_report(
    group: AbelianGroup,
    lambda_columns: Sequence[Sequence[Sequence[int]]],
    spot_triples: int = 200,
    seed: int = 0,
) -> BraceReport:
    """Collect all axiom violations (with witnesses) instead of raising.

    Also spot-verifies the distributivity law a o (b+c) + a = a o b + a o c on
    seeded triples as a self-test; it is implied by the lambda representation.
    """
    violations: list[tuple[str, tuple]] = []
    checks = 0
    if len(lambda_columns) != group.order:
        return BraceReport(group.order, (("TableSize", (len(lambda_columns),)),), 1)
    lambdas: list[Automorphism] = []
    for i, cols in enumerate(lambda_columns):
        checks += 1
        try:
            lambdas.append(validate_automorphism(group, cols))
        except (NotHomomorphism, NotBijective) as exc:
            violations.append(("NotAutomorphism", (i, str(exc))))
            lambdas.append(identity_automorphism(group))
    if not lambdas[0].is_identity():
        violations.append(("BadLambdaZero", (0,)))
    ids, auts = _dedupe_lambdas(group, lambdas)
    brace = Brace(group, ids, auts)
    if not violations:
        witness = _check_cocycle(brace)
        checks += group.order * group.order
        if witness is not None:
            violations.append(("CocycleViolation", witness))
    if not violations:
        rng = random.Random(seed)
        n = group.order
        for _ in range(spot_triples):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            add = group.add_rank
            lhs = add(brace.circ_r(a, add(b, c)), a)
            rhs = add(brace.circ_r(a, b), brace.circ_r(a, c))
            checks += 1
            if lhs != rhs:
                violations.append(("DistributivityViolation", (a, b, c)))
                break
    return BraceReport(group.order, tuple(violations), checks)


def brace_from_lambda_ranks(group: AbelianGroup, images: Sequence[Sequence[int]], name: str = "") -> Brace:
    """Build from per-element generator images given as ranks, then validate."""
    columns = [[group.unrank(r) for r in row] for row in images]
    return validate_brace(group, columns, name=name)


def brace_from_circ_table(group: AbelianGroup, circ: Sequence[Sequence[int]], name: str = "") -> Brace:
    """Recover lambda from a multiplication table (lambda_a(b) = a o b - a).

    Additivity of each lambda_a is enforced by comparing the raw map with the
    linear extension of its generator images, which is exact at any order.
    """
    n = group.order
    if len(circ) != n or any(len(row) != n for row in circ):
        raise BraceError("multiplication table must be n x n")
    gen_ranks = [group.rank(tuple(1 if t == j else 0 for t in range(len(group.moduli)))) for j in range(len(group.moduli))]
    columns = []
    raw_rows = []
    for a in range(n):
        row = circ[a]
        raw = [group.add_rank(row[b], group.neg_rank[a]) for b in range(n)]
        raw_rows.append(raw)
        columns.append([group.unrank(raw[g]) for g in gen_ranks])
    brace = validate_brace(group, columns, name=name)
    for a in range(n):
        perm = brace._perms[brace.lambda_ids[a]]
        if list(perm) != raw_rows[a]:
            b = next(b for b in range(n) if perm[b] != raw_rows[a][b])
            raise NotAutomorphism(a, f"table map is not additive at b={group.unrank(b)}")
    return brace


def trivial_brace(moduli: Sequence[int], name: str = "") -> Brace:
    group = AbelianGroup(moduli)
    ident = identity_automorphism(group)
    return Brace(group, [0] * group.order, [ident], name=name or f"trivial{tuple(moduli)}")


# -- quotients ----------------------------------------------------------------


def quotient_brace(brace: Brace, ideal: Subgroup) -> tuple[Brace, dict[int, int]]:
    """Brace on the cosets of an ideal, plus the rank projection map.

    Raises NotAnIdeal when the closure conditions fail, and StructuralAnomaly
    if the induced lambda table turns out not to be well defined (which the
    ideal conditions should rule out).
    """
    if not brace.is_ideal(ideal):
        raise NotAnIdeal(f"subset of order {ideal.order} fails ideal closure")
    group = brace.group
    n = group.order
    add = group.add_rank
    imembers = list(ideal.ranks)

    coset_id = [-1] * n
    reps: list[int] = []
    for r in range(n):
        if coset_id[r] >= 0:
            continue
        cid = len(reps)
        reps.append(r)
        for i in imembers:
            coset_id[add(r, i)] = cid
    m = len(reps)

    def qadd(x: int, y: int) -> int:
        return coset_id[add(reps[x], reps[y])]

    if m == 1:
        qgroup = AbelianGroup(())
        qbrace = Brace(qgroup, [0], [identity_automorphism(qgroup)], name=f"{brace.name}/I")
        return qbrace, {r: 0 for r in range(n)}

    basis = abelian_basis(m, qadd, coset_id[0])
    basis.sort(key=lambda t: t[1])  # moduli in increasing order
    qmoduli = tuple(d for _, d in basis)
    qgroup = AbelianGroup(qmoduli)

    # coset id <-> quotient rank, via coordinates over the basis
    coset_to_rank = [-1] * m
    for qr, coords in enumerate(qgroup.elements):
        acc = coset_id[0]
        for coeff, (g, _) in zip(coords, basis):
            for _ in range(coeff):
                acc = qadd(acc, g)
        if coset_to_rank[acc] != -1:
            raise StructuralAnomaly("quotient coordinates are not a bijection")
        coset_to_rank[acc] = qr

    gen_cosets = [g for g, _ in basis]
    columns_per_coset: list[list[Element]] = []
    for cid in range(m):
        a = reps[cid]
        cols = [qgroup.unrank(coset_to_rank[coset_id[brace.lam_r(a, reps[g])]]) for g in gen_cosets]
        columns_per_coset.append(cols)

    # well-definedness of the induced lambda across each coset
    for cid in range(m):
        a = reps[cid]
        for i in imembers:
            a2 = add(a, i)
            for g in gen_cosets:
                if coset_id[brace.lam_r(a2, reps[g])] != coset_id[brace.lam_r(a, reps[g])]:
                    raise StructuralAnomaly("induced lambda not constant on cosets")

    rank_to_coset = [0] * m
    for cid, qr in enumerate(coset_to_rank):
        rank_to_coset[qr] = cid
    table = [columns_per_coset[rank_to_coset[qr]] for qr in range(m)]
    qbrace = validate_brace(qgroup, table, name=f"{brace.name}/I")

    projection = {r: coset_to_rank[coset_id[r]] for r in range(n)}
    # the projection must be a brace homomorphism
    for a in range(n):
        for b in range(n):
            if projection[brace.circ_r(a, b)] != qbrace.circ_r(projection[a], projection[b]):
                raise StructuralAnomaly("quotient projection is not multiplicative")
    return qbrace, projection


# -- isomorphism ---------------------------------------------------------------


def _fingerprints(brace: Brace) -> list[tuple[int, int, int]]:
    g = brace.group
    return [
        (
            g.element_order(g.unrank(r)),
            brace.circ_order_r(r),
            brace.auts[brace.lambda_ids[r]].perm_order(g),
        )
        for r in range(brace.order)
    ]


def is_isomorphic(a: Brace, b: Brace) -> dict[Element, Element] | None:
    """Search for a bijection preserving + and o; None when there is none.

    Backtracks over images of the additive generators of ``a``, pruned by
    (additive order, circle order, lambda order) fingerprints.
    """
    if a.order != b.order:
        return None
    fa, fb = _fingerprints(a), _fingerprints(b)
    if sorted(fa) != sorted(fb):
        return None

    ga, gb = a.group, b.group
    k = len(ga.moduli)
    gen_ranks = [ga.rank(tuple(1 if t == j else 0 for t in range(k))) for j in range(k)]
    cand: list[list[int]] = []
    for j, g in enumerate(gen_ranks):
        d = ga.moduli[j]
        opts = [
            r
            for r in range(b.order)
            if fb[r] == fa[g] and gb.element_order(gb.unrank(r)) == d
        ]
        if not opts:
            return None
        cand.append(opts)

    n = a.order
    for combo_index in itertools.product(*[range(len(c)) for c in cand]):
        cols = tuple(gb.unrank(cand[j][ci]) for j, ci in enumerate(combo_index))
        image = [0] * n
        ok = True
        for r in range(n):
            coords = ga.unrank(r)
            acc = gb.zero
            for coeff, col in zip(coords, cols):
                acc = gb.add(acc, gb.scalar_multiple(coeff, col))
            image[r] = gb.rank(acc)
        if len(set(image)) != n:
            continue
        for x in range(n):
            ix = image[x]
            for y in range(n):
                if image[a.circ_r(x, y)] != b.circ_r(ix, image[y]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return {ga.unrank(r): gb.unrank(image[r]) for r in range(n)}
    return None
