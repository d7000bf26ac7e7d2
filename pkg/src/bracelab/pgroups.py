"""Concrete multiplication models for the nonabelian groups of order p^4 used
by the verification suites, and classification of a brace's circle group.

Each model stores elements as exponent tuples over its generators and
multiplies by collection; every built model is then validated against its
defining relations and checked associative (exhaustively up to order 81,
by seeded sampling above).  Collection formulas are easy to get subtly wrong,
so the validator is the actual source of trust.

Tag summary (odd p unless noted):

    VII   P^{p^2}=Q^p=R^p=1, PQ=QP, PR=RP, R^-1 Q R = Q P^p
    VIII  P^{p^2}=Q^{p^2}=1, Q^-1 P Q = P^{1+p}
    IX    P^{p^2}=Q^p=R^p=1, PQ=QP, QR=RQ, R^-1 P R = P^{1+p}
    X     P^{p^2}=Q^p=R^p=1, PQ=QP, QR=RQ, R^-1 P R = P Q
    XI    as XII/XIII with alpha = 0
    XII   ... R^-1 Q R = P^{alpha p} Q with alpha = 1
    XIII  ... with alpha the smallest quadratic non-residue mod p
    G4    P^{p^3}=Q^p=1, Q^-1 P Q = P^{1+p^2}   (any prime, incl. p = 2)
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Callable

from .abelian import abelian_basis
from .brace import Brace, BraceError

NONABELIAN_TAGS = ("VII", "VIII", "IX", "X", "XI", "XII", "XIII", "G4")


class GroupModelError(BraceError):
    """Base error for group-model construction."""


class UnsupportedPrime(GroupModelError):
    """The tag's presentation is not available at this prime."""


class BadAlpha(GroupModelError):
    """alpha does not lie in the residue class the tag requires."""


class RelationFailure(GroupModelError):
    """A defining relation fails in the built model."""


class NoMatch(GroupModelError):
    """No model matches a nonabelian circle group where coverage is promised."""


def smallest_nonresidue(p: int) -> int:
    squares = {(x * x) % p for x in range(1, p)}
    return next(a for a in range(2, p) if a % p not in squares)


class GroupModel:
    """Finite group on exponent tuples with a collection-style product."""

    def __init__(
        self,
        tag: str,
        p: int,
        bounds: tuple[int, ...],
        mul: Callable[[tuple, tuple], tuple],
        gens: dict[str, tuple],
        alpha: int | None = None,
    ):
        self.tag = tag
        self.p = p
        self.alpha = alpha
        self.bounds = bounds
        self.gens = gens
        self._mul_raw = mul
        self.order = 1
        for b in bounds:
            self.order *= b
        self.elements: list[tuple] = []
        self._index: dict[tuple, int] = {}
        self._fill_elements()
        self.identity = (0,) * len(bounds)
        self._table: list[int] | None = None
        self._inv: list[int] | None = None
        self._orders: list[int] | None = None
        self._fingerprint = None

    def _fill_elements(self) -> None:
        self.elements = [
            tuple(reversed(e))
            for e in itertools.product(*[range(b) for b in reversed(self.bounds)])
        ]
        self._index = {e: i for i, e in enumerate(self.elements)}

    def rank(self, e: tuple) -> int:
        return self._index[e]

    def mul(self, a: tuple, b: tuple) -> tuple:
        return self._mul_raw(a, b)

    @property
    def table(self) -> list[int]:
        """Flat n*n product table over ranks."""
        if self._table is None:
            n = self.order
            idx = self._index
            flat = [0] * (n * n)
            for i, a in enumerate(self.elements):
                base = i * n
                for j, b in enumerate(self.elements):
                    flat[base + j] = idx[self._mul_raw(a, b)]
            self._table = flat
        return self._table

    def mul_r(self, i: int, j: int) -> int:
        return self.table[i * self.order + j]

    @property
    def inv(self) -> list[int]:
        if self._inv is None:
            n = self.order
            inv = [-1] * n
            for i in range(n):
                for j in range(n):
                    if self.mul_r(i, j) == 0:
                        inv[i] = j
                        break
            self._inv = inv
        return self._inv

    def inv_r(self, i: int) -> int:
        return self.inv[i]

    def pow_r(self, i: int, k: int) -> int:
        if k < 0:
            return self.inv_r(self.pow_r(i, -k))
        acc = 0
        base = i
        while k:
            if k & 1:
                acc = self.mul_r(acc, base)
            base = self.mul_r(base, base)
            k >>= 1
        return acc

    @property
    def element_orders(self) -> list[int]:
        if self._orders is None:
            out = [0] * self.order
            for i in range(self.order):
                t, y = 1, i
                while y != 0:
                    y = self.mul_r(y, i)
                    t += 1
                out[i] = t
            self._orders = out
        return self._orders

    def gen_rank(self, name: str) -> int:
        return self.rank(self.gens[name])

    def __repr__(self) -> str:
        a = f", alpha={self.alpha}" if self.alpha is not None else ""
        return f"GroupModel({self.tag}, p={self.p}{a})"


# -- table-backed group view (for circle groups of braces) ------------------------


class TableGroup:
    """Group on ranks 0..n-1 given by a product function; identity must be 0."""

    def __init__(self, n: int, mul_r: Callable[[int, int], int]):
        self.order = n
        self.mul_r = mul_r
        self._inv: list[int] | None = None
        self._orders: list[int] | None = None

    @property
    def inv(self) -> list[int]:
        if self._inv is None:
            inv = [-1] * self.order
            for i in range(self.order):
                for j in range(self.order):
                    if self.mul_r(i, j) == 0:
                        inv[i] = j
                        break
            self._inv = inv
        return self._inv

    def inv_r(self, i: int) -> int:
        return self.inv[i]

    def pow_r(self, i: int, k: int) -> int:
        if k < 0:
            return self.inv_r(self.pow_r(i, -k))
        acc, base = 0, i
        while k:
            if k & 1:
                acc = self.mul_r(acc, base)
            base = self.mul_r(base, base)
            k >>= 1
        return acc

    @property
    def element_orders(self) -> list[int]:
        if self._orders is None:
            out = [0] * self.order
            for i in range(self.order):
                t, y = 1, i
                while y != 0:
                    y = self.mul_r(y, i)
                    t += 1
                out[i] = t
            self._orders = out
        return self._orders


def circle_group(brace: Brace) -> TableGroup:
    return TableGroup(brace.order, brace.circ_r)


# -- fingerprints -------------------------------------------------------------------


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    abelian: bool
    exponent: int
    order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int


def fingerprint(group: GroupModel | TableGroup) -> GroupFingerprint:
    """Exact invariants by full iteration."""
    if isinstance(group, GroupModel):
        cached = group._fingerprint
        if cached is not None:
            return cached
    n = group.order
    mul = group.mul_r
    orders = group.element_orders
    hist: dict[int, int] = {}
    exponent = 1
    for o in orders:
        hist[o] = hist.get(o, 0) + 1
        exponent = exponent * o // gcd(exponent, o)
    abelian = all(mul(a, b) == mul(b, a) for a in range(n) for b in range(a + 1, n))
    center = sum(1 for c in range(n) if all(mul(c, a) == mul(a, c) for a in range(n)))
    inv = group.inv
    comms = {mul(mul(inv[a], inv[b]), mul(a, b)) for a in range(n) for b in range(n)}
    derived = _group_closure(group, comms)
    fp = GroupFingerprint(n, abelian, exponent, tuple(sorted(hist.items())), center, len(derived))
    if isinstance(group, GroupModel):
        group._fingerprint = fp
    return fp


def _group_closure(group: GroupModel | TableGroup, seeds: set[int]) -> set[int]:
    """Subgroup generated by the seeds (words suffice in a finite group)."""
    gens = sorted(seeds)
    members = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.mul_r(x, g)
            if y not in members:
                members.add(y)
                frontier.append(y)
    return members


# -- model builders ------------------------------------------------------------------


def _build_vii(p: int) -> GroupModel:
    p2 = p * p

    def mul(x: tuple, y: tuple) -> tuple:
        a1, b1, c1 = x
        a2, b2, c2 = y
        return ((a1 + a2 - p * c1 * b2) % p2, (b1 + b2) % p, (c1 + c2) % p)

    return GroupModel("VII", p, (p2, p, p), mul, {"P": (1, 0, 0), "Q": (0, 1, 0), "R": (0, 0, 1)})


def _build_viii(p: int) -> GroupModel:
    p2 = p * p
    shift = pow(1 + p, -1, p2)

    def mul(x: tuple, y: tuple) -> tuple:
        a1, b1 = x
        a2, b2 = y
        return ((a1 + a2 * pow(shift, b1, p2)) % p2, (b1 + b2) % p2)

    return GroupModel("VIII", p, (p2, p2), mul, {"P": (1, 0), "Q": (0, 1)})


def _build_ix(p: int) -> GroupModel:
    p2 = p * p
    shift = pow(1 + p, -1, p2)

    def mul(x: tuple, y: tuple) -> tuple:
        a1, b1, c1 = x
        a2, b2, c2 = y
        return ((a1 + a2 * pow(shift, c1, p2)) % p2, (b1 + b2) % p, (c1 + c2) % p)

    return GroupModel("IX", p, (p2, p, p), mul, {"P": (1, 0, 0), "Q": (0, 1, 0), "R": (0, 0, 1)})


def _build_x(p: int) -> GroupModel:
    p2 = p * p

    def mul(x: tuple, y: tuple) -> tuple:
        a1, b1, c1 = x
        a2, b2, c2 = y
        return ((a1 + a2) % p2, (b1 + b2 - a2 * c1) % p, (c1 + c2) % p)

    return GroupModel("X", p, (p2, p, p), mul, {"P": (1, 0, 0), "Q": (0, 1, 0), "R": (0, 0, 1)})


def _build_xi_family(tag: str, p: int, alpha: int) -> GroupModel:
    """XI/XII/XIII as (modular p^3 group) extended by R acting on it.

    The action phi(x) = R^-1 x R is given on generators (phi(P) = PQ,
    phi(Q) = P^{alpha p} Q), extended multiplicatively over the normal
    subgroup N = <P, Q>, inverted as a permutation, and verified to be an
    automorphism with phi^p = id.
    """
    p2 = p * p
    shift = pow(1 + p, -1, p2)

    def n_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        a1, b1 = x
        a2, b2 = y
        return ((a1 + a2 * pow(shift, b1, p2)) % p2, (b1 + b2) % p)

    def n_pow(x: tuple[int, int], k: int) -> tuple[int, int]:
        acc = (0, 0)
        for _ in range(k):
            acc = n_mul(acc, x)
        return acc

    n_elems = [(a, b) for b in range(p) for a in range(p2)]
    phi_p = (1, 1)            # image of P
    phi_q = ((alpha * p) % p2, 1)  # image of Q
    phi: dict[tuple[int, int], tuple[int, int]] = {}
    for a, b in n_elems:
        phi[(a, b)] = n_mul(n_pow(phi_p, a), n_pow(phi_q, b))
    if len(set(phi.values())) != len(n_elems):
        raise RelationFailure(f"{tag}: R-action is not a bijection on N")
    for x in n_elems:
        for y in n_elems:
            if phi[n_mul(x, y)] != n_mul(phi[x], phi[y]):
                raise RelationFailure(f"{tag}: R-action is not an automorphism of N")
    power = dict(phi)
    for _ in range(p - 1):
        power = {x: phi[power[x]] for x in n_elems}
    if any(power[x] != x for x in n_elems):
        raise RelationFailure(f"{tag}: R-action does not have order dividing p")
    psi = {v: k for k, v in phi.items()}  # psi(x) = R x R^-1
    psi_pows: list[dict] = [{x: x for x in n_elems}]
    for _ in range(p - 1):
        psi_pows.append({x: psi[psi_pows[-1][x]] for x in n_elems})

    def mul(x: tuple, y: tuple) -> tuple:
        a1, b1, c1 = x
        a2, b2, c2 = y
        moved = psi_pows[c1][(a2, b2)]
        a, b = n_mul((a1, b1), moved)
        return (a, b, (c1 + c2) % p)

    return GroupModel(
        tag, p, (p2, p, p), mul, {"P": (1, 0, 0), "Q": (0, 1, 0), "R": (0, 0, 1)}, alpha=alpha
    )


def _build_g4(p: int) -> GroupModel:
    p3 = p ** 3
    shift = pow(1 + p * p, -1, p3)

    def mul(x: tuple, y: tuple) -> tuple:
        a1, b1 = x
        a2, b2 = y
        return ((a1 + a2 * pow(shift, b1, p3)) % p3, (b1 + b2) % p)

    return GroupModel("G4", p, (p3, p), mul, {"P": (1, 0), "Q": (0, 1)})


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % f for f in range(2, int(n ** 0.5) + 1))


def defining_relations(model: GroupModel) -> list[tuple[str, bool]]:
    """Evaluate the tag's defining relations in the model."""
    p = model.p
    tag = model.tag
    P = model.gen_rank("P")
    Q = model.gen_rank("Q")
    mul, inv, pw = model.mul_r, model.inv_r, model.pow_r
    out: list[tuple[str, bool]] = []
    if tag == "G4":
        out.append(("P^{p^3} = 1", pw(P, p ** 3) == 0))
        out.append(("Q^p = 1", pw(Q, p) == 0))
        out.append(("Q^-1 P Q = P^{1+p^2}", mul(mul(inv(Q), P), Q) == pw(P, 1 + p * p)))
        return out
    out.append(("P^{p^2} = 1", pw(P, p * p) == 0))
    if tag == "VIII":
        out.append(("Q^{p^2} = 1", pw(Q, p * p) == 0))
        out.append(("Q^-1 P Q = P^{1+p}", mul(mul(inv(Q), P), Q) == pw(P, 1 + p)))
        return out
    R = model.gen_rank("R")
    out.append(("Q^p = 1", pw(Q, p) == 0))
    out.append(("R^p = 1", pw(R, p) == 0))
    if tag == "VII":
        out.append(("PQ = QP", mul(P, Q) == mul(Q, P)))
        out.append(("PR = RP", mul(P, R) == mul(R, P)))
        out.append(("R^-1 Q R = Q P^p", mul(mul(inv(R), Q), R) == mul(Q, pw(P, p))))
    elif tag == "IX":
        out.append(("PQ = QP", mul(P, Q) == mul(Q, P)))
        out.append(("QR = RQ", mul(Q, R) == mul(R, Q)))
        out.append(("R^-1 P R = P^{1+p}", mul(mul(inv(R), P), R) == pw(P, 1 + p)))
    elif tag == "X":
        out.append(("PQ = QP", mul(P, Q) == mul(Q, P)))
        out.append(("QR = RQ", mul(Q, R) == mul(R, Q)))
        out.append(("R^-1 P R = P Q", mul(mul(inv(R), P), R) == mul(P, Q)))
    elif tag in ("XI", "XII", "XIII"):
        out.append(("Q^-1 P Q = P^{1+p}", mul(mul(inv(Q), P), Q) == pw(P, 1 + p)))
        out.append(("R^-1 P R = P Q", mul(mul(inv(R), P), R) == mul(P, Q)))
        out.append(
            (
                "R^-1 Q R = P^{alpha p} Q",
                mul(mul(inv(R), Q), R) == mul(pw(P, model.alpha * p), Q),
            )
        )
    else:
        raise GroupModelError(f"unknown tag {tag!r}")
    return out


def derived_relations(model: GroupModel) -> list[tuple[str, bool]]:
    """Consequences each tag must also satisfy (centrality of P^p etc.)."""
    p = model.p
    tag = model.tag
    P = model.gen_rank("P")
    mul, pw = model.mul_r, model.pow_r
    n = model.order
    out: list[tuple[str, bool]] = []

    def central(x: int) -> bool:
        return all(mul(x, a) == mul(a, x) for a in range(n))

    if tag == "G4":
        out.append(("P^{p^2} central", central(pw(P, p * p))))
        out.append(("has an element of order p^3", (p ** 3) in dict(fingerprint(model).order_histogram)))
        return out
    pp = pw(P, p)
    if tag == "VII":
        out.append(("P central", central(P)))
        out.append(("P^p central", central(pp)))
    elif tag == "VIII":
        out.append(("P^p central", central(pp)))
        out.append(("Q^p central", central(pw(model.gen_rank("Q"), p))))
    elif tag in ("IX", "X"):
        out.append(("Q central", central(model.gen_rank("Q"))))
        out.append(("P^p central", central(pp)))
        R = model.gen_rank("R")
        out.append(("R^-1 P^p R = P^p", mul(mul(model.inv_r(R), pp), R) == pp))
    elif tag in ("XI", "XII", "XIII"):
        R = model.gen_rank("R")
        out.append(("R^-1 P^p R = P^p", mul(mul(model.inv_r(R), pp), R) == pp))
        out.append(("P^p central", central(pp)))
    return out


@dataclass(frozen=True)
class RelationReport:
    tag: str
    p: int
    defining: tuple[tuple[str, bool], ...]
    derived: tuple[tuple[str, bool], ...]
    associativity_checked: int
    associativity_ok: bool

    @property
    def passed(self) -> bool:
        return (
            self.associativity_ok
            and all(ok for _, ok in self.defining)
            and all(ok for _, ok in self.derived)
        )


def verify_presentation_relations(model: GroupModel, seed: int = 0, sample: int = 100_000) -> RelationReport:
    """Defining relations, derived consequences, and associativity."""
    n = model.order
    checked = 0
    ok = True
    if n <= 81:
        for a in range(n):
            for b in range(n):
                ab = model.mul_r(a, b)
                for c in range(n):
                    checked += 1
                    if model.mul_r(ab, c) != model.mul_r(a, model.mul_r(b, c)):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
    else:
        rng = random.Random(seed)
        for _ in range(sample):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            checked += 1
            if model.mul_r(model.mul_r(a, b), c) != model.mul_r(a, model.mul_r(b, c)):
                ok = False
                break
    return RelationReport(
        model.tag,
        model.p,
        tuple(defining_relations(model)),
        tuple(derived_relations(model)),
        checked,
        ok,
    )


@lru_cache(maxsize=None)
def build_model(tag: str, p: int, alpha: int | None = None) -> GroupModel:
    """Build and validate a model; raises on bad prime, bad alpha, or any
    failed relation/associativity check."""
    if not _is_prime(p):
        raise UnsupportedPrime(f"p = {p} is not prime")
    if tag != "G4" and p == 2:
        raise UnsupportedPrime(f"tag {tag} requires an odd prime")
    if tag == "XI":
        alpha = 0 if alpha is None else alpha
        if alpha % p != 0:
            raise BadAlpha("XI requires alpha = 0 mod p")
    elif tag == "XII":
        alpha = 1 if alpha is None else alpha
        squares = {(x * x) % p for x in range(1, p)}
        if alpha % p not in squares:
            raise BadAlpha("XII requires alpha a nonzero quadratic residue mod p")
    elif tag == "XIII":
        alpha = smallest_nonresidue(p) if alpha is None else alpha
        squares = {(x * x) % p for x in range(1, p)}
        if alpha % p in squares or alpha % p == 0:
            raise BadAlpha(f"XIII requires a non-residue mod {p}")
    elif alpha is not None:
        raise BadAlpha(f"tag {tag} takes no alpha")

    if tag == "VII":
        model = _build_vii(p)
    elif tag == "VIII":
        model = _build_viii(p)
    elif tag == "IX":
        model = _build_ix(p)
    elif tag == "X":
        model = _build_x(p)
    elif tag in ("XI", "XII", "XIII"):
        model = _build_xi_family(tag, p, alpha)
    elif tag == "G4":
        model = _build_g4(p)
    else:
        raise GroupModelError(f"unknown tag {tag!r}")

    report = verify_presentation_relations(model)
    if not all(ok for _, ok in report.defining) or not report.associativity_ok:
        bad = [name for name, ok in report.defining if not ok]
        raise RelationFailure(f"{tag} at p={p}: failed {bad or 'associativity'}")
    gen_ranks = {model.gen_rank(g) for g in model.gens}
    if len(_group_closure(model, gen_ranks)) != model.order:
        raise RelationFailure(f"{tag} at p={p}: generators do not generate")
    return model


def available_models(p: int) -> list[GroupModel]:
    tags = NONABELIAN_TAGS if p != 2 else ("G4",)
    return [build_model(t, p) for t in tags]


# -- classification --------------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    kind: str  # "abelian" | "tag" | "unmatched"
    tag: str | None  # canonical (first) matching tag
    abelian_type: tuple[int, ...] | None
    fingerprint: GroupFingerprint
    witness: dict[tuple, int] | None  # model generator tuple -> target rank
    matched_tags: tuple[str, ...] = ()  # every tag whose model is isomorphic

    def label(self) -> str:
        if self.kind == "abelian":
            return "abelian " + "x".join(f"C{d}" for d in self.abelian_type)
        if self.kind == "tag":
            return self.tag
        return "unmatched"


def _iso_from_model(model: GroupModel, target: TableGroup) -> dict[tuple, int] | None:
    """Generator-image backtracking from a validated model into a table group.

    Candidate generator images must match orders and satisfy the defining
    relations; the normal-form extension is then checked bijective, which
    makes the map an isomorphism because the presentation is faithful.
    """
    n = model.order
    if target.order != n:
        return None
    t_orders = target.element_orders
    m_orders = model.element_orders
    by_order: dict[int, list[int]] = {}
    for r, o in enumerate(t_orders):
        by_order.setdefault(o, []).append(r)

    gen_names = [g for g in ("P", "Q", "R") if g in model.gens]
    gen_ranks = [model.gen_rank(g) for g in gen_names]
    gen_orders = [m_orders[r] for r in gen_ranks]

    mulT, invT, powT = target.mul_r, target.inv_r, target.pow_r
    p = model.p

    tag = model.tag

    def pq_ok(P: int, Q: int) -> bool:
        if tag == "G4":
            return mulT(mulT(invT(Q), P), Q) == powT(P, 1 + p * p)
        if tag in ("VIII", "XI", "XII", "XIII"):
            return mulT(mulT(invT(Q), P), Q) == powT(P, 1 + p)
        return mulT(P, Q) == mulT(Q, P)

    def pqr_ok(P: int, Q: int, R: int) -> bool:
        if tag == "VII":
            return mulT(P, R) == mulT(R, P) and mulT(mulT(invT(R), Q), R) == mulT(Q, powT(P, p))
        if tag == "IX":
            return mulT(Q, R) == mulT(R, Q) and mulT(mulT(invT(R), P), R) == powT(P, 1 + p)
        if tag == "X":
            return mulT(Q, R) == mulT(R, Q) and mulT(mulT(invT(R), P), R) == mulT(P, Q)
        return (
            mulT(mulT(invT(R), P), R) == mulT(P, Q)
            and mulT(mulT(invT(R), Q), R) == mulT(powT(P, model.alpha * p), Q)
        )

    def full_map(images: dict[str, int]) -> dict[tuple, int] | None:
        img = [0] * n
        gen_imgs = [images[g] for g in gen_names]
        seen = set()
        for r, e in enumerate(model.elements):
            acc = 0
            for coeff, gi in zip(e, gen_imgs):
                if coeff:
                    acc = mulT(acc, powT(gi, coeff))
            img[r] = acc
            if acc in seen:
                return None
            seen.add(acc)
        return {model.elements[r]: img[r] for r in range(n)}

    cands = [by_order.get(o, []) for o in gen_orders]
    if len(gen_names) == 2:
        for Pi in cands[0]:
            for Qi in cands[1]:
                if not pq_ok(Pi, Qi):
                    continue
                mapping = full_map({"P": Pi, "Q": Qi})
                if mapping is not None:
                    return mapping
        return None
    for Pi in cands[0]:
        for Qi in cands[1]:
            if not pq_ok(Pi, Qi):
                continue
            for Ri in cands[2]:
                if not pqr_ok(Pi, Qi, Ri):
                    continue
                mapping = full_map({"P": Pi, "Q": Qi, "R": Ri})
                if mapping is not None:
                    return mapping
    return None


def classify_multiplicative_group(brace: Brace) -> Classification:
    """Match the circle group of a p^4 brace against the model family.

    Abelian circle groups are reported with their cyclic decomposition.  A
    nonabelian group with no model match raises NoMatch for odd p >= 5, where
    the family is known to cover every possibility; at p in {2, 3} the result
    is reported unmatched with its fingerprint.
    """
    from .nilpotency import InputShapeMismatch

    n = brace.order
    p = next((f for f in range(2, n + 1) if n % f == 0), 0)
    if p == 0 or p ** 4 != n:
        raise InputShapeMismatch(f"classification expects order p^4, got {n}")
    target = circle_group(brace)
    fp = fingerprint(target)
    if fp.abelian:
        basis = abelian_basis(n, brace.circ_r, 0)
        shape = tuple(sorted(d for _, d in basis))
        return Classification("abelian", None, shape, fp, None)
    matched: list[str] = []
    first_witness: dict[tuple, int] | None = None
    for model in available_models(p):
        if fingerprint(model) != fp:
            continue
        witness = _iso_from_model(model, target)
        if witness is not None:
            matched.append(model.tag)
            if first_witness is None:
                first_witness = witness
    if matched:
        return Classification("tag", matched[0], None, fp, first_witness, tuple(matched))
    if p >= 5:
        raise NoMatch(f"nonabelian circle group at p={p} matches no model; coverage bug")
    return Classification("unmatched", None, None, fp, None)
