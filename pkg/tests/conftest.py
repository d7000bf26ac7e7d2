"""Shared fixtures: the built-in corpus and cached small enumerations."""

from __future__ import annotations

import pytest

from bracelab.corpus import builtin_braces
from bracelab.enumeration import enumerate_braces

ENUM_MODULI = [(2,), (3,), (4,), (5,), (2, 2), (8,), (9,), (2, 4), (3, 3), (4, 4)]


@pytest.fixture(scope="session")
def builtin_corpus():
    return builtin_braces()


@pytest.fixture(scope="session")
def small_corpus(builtin_corpus):
    return [b for b in builtin_corpus if b.order <= 81]


@pytest.fixture(scope="session")
def enumerations():
    return {moduli: enumerate_braces(moduli) for moduli in ENUM_MODULI}


@pytest.fixture(scope="session")
def enumerated_braces(enumerations):
    out = []
    for res in enumerations.values():
        out.extend(res.representatives)
    return out
