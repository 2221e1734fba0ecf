"""Random construction generators shared by the test modules."""

from __future__ import annotations

import random
from collections import Counter

from geokb.model import (
    Construction,
    DISTINCT_ARG_PREDICATES,
    Fact,
    ObjectDecl,
    PREDICATES,
    normalize_fact,
    parse_construction,
)

BARE_TRIANGLE_TEXT = """\
point A
point B
point C
line a
line b
line c
line_through(a, B, C)
line_through(b, A, C)
line_through(c, A, B)
"""

TRIANGLE_WITH_CIRCLE_TEXT = BARE_TRIANGLE_TEXT + "circle k\n"

# Three lines through one shared point: its depth-2 fingerprint dominates
# the bare triangle's, but no triangle embeds into it.
CONCURRENT_LINES_TEXT = """\
point P
point X
point Y
point Z
line a
line b
line c
line_through(a, P, X)
line_through(b, P, Y)
line_through(c, P, Z)
"""


def bare_triangle() -> Construction:
    return parse_construction(BARE_TRIANGLE_TEXT)


def triangle_with_circle() -> Construction:
    return parse_construction(TRIANGLE_WITH_CIRCLE_TEXT)


def concurrent_lines() -> Construction:
    return parse_construction(CONCURRENT_LINES_TEXT)


def _feasible(predicate: str, pool: dict[str, list[str]]) -> bool:
    kinds = PREDICATES[predicate]
    if predicate in DISTINCT_ARG_PREDICATES:
        return len(pool[kinds[0]]) >= len(kinds)
    if predicate == "equidistant":
        return len(pool["point"]) >= 2
    needed = Counter(kinds)
    return all(len(pool[kind]) >= 1 for kind in needed)


def random_fact(rng: random.Random, pool: dict[str, list[str]]) -> Fact | None:
    feasible = [p for p in PREDICATES if _feasible(p, pool)]
    if not feasible:
        return None
    predicate = rng.choice(feasible)
    kinds = PREDICATES[predicate]
    if predicate in DISTINCT_ARG_PREDICATES:
        args = rng.sample(pool[kinds[0]], len(kinds))
    elif predicate == "equidistant":
        args = rng.sample(pool["point"], 2) + rng.sample(pool["point"], 2)
    else:
        args = [rng.choice(pool[kind]) for kind in kinds]
    return normalize_fact(Fact(predicate, tuple(args)))


def random_construction(
    rng: random.Random,
    max_points: int = 5,
    max_lines: int = 4,
    max_circles: int = 2,
    max_facts: int = 10,
) -> Construction:
    pool = {
        "point": [f"P{i}" for i in range(rng.randint(0, max_points))],
        "line": [f"l{i}" for i in range(rng.randint(0, max_lines))],
        "circle": [f"k{i}" for i in range(rng.randint(0, max_circles))],
    }
    objects = frozenset(
        ObjectDecl(name, kind) for kind, names in pool.items() for name in names
    )
    facts = set()
    for _ in range(rng.randint(0, max_facts)):
        f = random_fact(rng, pool)
        if f is not None:
            facts.add(f)
    return Construction(objects, frozenset(facts))


def induced_subconstruction(
    rng: random.Random, construction: Construction, keep: float = 0.6
) -> Construction:
    kept = {o.name for o in construction.objects if rng.random() < keep}
    objects = frozenset(o for o in construction.objects if o.name in kept)
    facts = frozenset(
        f for f in construction.facts if all(a in kept for a in f.args)
    )
    return Construction(objects, facts)
