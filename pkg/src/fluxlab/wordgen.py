"""Seeded word generators for the identity suites.

Every sampled word is reproducible bit-for-bit from the integer seed, and
``word_digest`` serializes enough of a word to replay a failing sample.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .maps import (
    DEFAULT_STEPS_PER_UNIT, HamiltonianPrimitive, MapWord, TwistPrimitive,
    make_ham_flow, make_twist,
)

# Identity instances keep flows short so the whole suite stays at desk
# scale; accuracy is governed by steps per unit time, not by word length.
GEN_STEPS_PER_UNIT = 256


def subseed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def random_twist(rng: np.random.Generator, rel: bool = False) -> MapWord:
    m = int(rng.integers(1, 3)) if rel else int(rng.integers(0, 3))
    deg = int(rng.integers(0, 3))
    coeffs = rng.uniform(-1.0, 1.0, size=deg + 1)
    return make_twist(m, tuple(coeffs))


def random_ham(rng: np.random.Generator, rel: bool = False,
               fix_origin: bool = False) -> MapWord:
    k = 2 if rel else int(rng.integers(1, 3))
    q = rng.uniform(-0.8, 0.8, size=(3, 3))
    q[2, 1:] = 0.0
    q[1:, 2] = 0.0
    q[2, 2] = 0.0  # keep total degree <= 2
    if fix_origin:
        q[1, 0] = 0.0
        q[0, 1] = 0.0
    t = float(rng.uniform(0.15, 0.45))
    return make_ham_flow(k, q, t, steps_per_unit=GEN_STEPS_PER_UNIT)


def random_word(rng: np.random.Generator, group: str = "H",
                max_factors: int = 3) -> MapWord:
    """A word of 1..max_factors primitives inside the requested subgroup.

    Groups: ``H`` (all), ``H_rel`` (identity on the boundary), ``G``
    (origin fixing), ``G_rel`` (both).
    """
    if group not in ("H", "H_rel", "G", "G_rel"):
        raise ValueError(f"unknown group {group!r}")
    rel = group.endswith("_rel")
    fix = group.startswith("G")
    n = int(rng.integers(1, max_factors + 1))
    factors = []
    for _ in range(n):
        if rng.uniform() < 0.5:
            w = random_twist(rng, rel=rel)
        else:
            w = random_ham(rng, rel=rel, fix_origin=fix)
        factors.extend(w.factors)
    return MapWord(tuple(factors))


def word_spec(word: MapWord) -> list:
    """JSON-ready factor list, the same schema the CLI word library uses."""
    out = []
    for prim, exp in word.factors:
        if isinstance(prim, TwistPrimitive):
            out.append({"type": "twist", "m": prim.m,
                        "poly_r2": list(prim.poly_u), "exp": exp})
        elif isinstance(prim, HamiltonianPrimitive):
            out.append({"type": "ham", "k": prim.k,
                        "q": [list(r) for r in prim.q],
                        "time": prim.time, "steps": prim.steps_per_unit,
                        "exp": exp})
        else:
            raise TypeError(f"unknown primitive {type(prim).__name__}")
    return out


def word_from_spec(factors: list) -> MapWord:
    out = []
    for f in factors:
        exp = int(f.get("exp", 1))
        if f["type"] == "twist":
            prim = TwistPrimitive(int(f["m"]),
                                  tuple(float(c) for c in f["poly_r2"]))
        elif f["type"] == "ham":
            prim = HamiltonianPrimitive(
                int(f["k"]),
                tuple(tuple(float(c) for c in row) for row in f["q"]),
                float(f["time"]),
                int(f.get("steps", DEFAULT_STEPS_PER_UNIT)))
        else:
            raise ValueError(f"unknown factor type {f['type']!r}")
        out.append((prim, exp))
    return MapWord(tuple(out))


def word_digest(word: MapWord) -> str:
    payload = json.dumps(word_spec(word), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:12]
