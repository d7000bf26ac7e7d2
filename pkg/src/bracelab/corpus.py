"""The standard built-in brace corpus used by tests, scripts, and reports."""

from __future__ import annotations

from .brace import Brace, trivial_brace
from .constructions import RING_PRESETS, diagonal_brace_m1, diagonal_brace_m2, ring_brace

TRIVIAL_MODULI = ((4, 4), (2, 8), (3, 27), (9, 9), (25, 25))
DIAGONAL_PRIMES = (2, 3, 5)


def builtin_braces(max_order: int | None = None) -> list[Brace]:
    """Every built-in construction, optionally capped by order."""
    out: list[Brace] = []
    for moduli in TRIVIAL_MODULI:
        out.append(trivial_brace(moduli))
    for p in DIAGONAL_PRIMES:
        out.append(diagonal_brace_m1(p))
    for p in DIAGONAL_PRIMES:
        out.append(diagonal_brace_m2(p))
    for preset, (moduli, products) in sorted(RING_PRESETS.items()):
        out.append(ring_brace(moduli, products, name=f"ring:{preset}"))
    if max_order is not None:
        out = [b for b in out if b.order <= max_order]
    return out
