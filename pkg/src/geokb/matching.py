"""Exact structural matching of one construction inside another.

Both sides are closed first, so matching compares semantic descriptions
and is invariant to logically equivalent inputs.  The search backtracks
over the query's objects, most-constrained first (highest closed fact
degree).  A candidate target object must have the query object's kind and
at least its per-predicate fact degree; every query fact is checked by
canonical membership in the target's closed fact set as soon as all of its
arguments are mapped.  Relation nodes need no mapping of their own because
a fact is determined by its arguments.

Worst-case cost is exponential, so the search carries a step budget and
raises :class:`~geokb.errors.SearchBudgetExceeded` when it runs out;
callers that cannot wait treat that as "no match" with a warning.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from .errors import SearchBudgetExceeded
from .model import Construction, Fact, normalize_fact
from .rules import FactSet, RuleSet, closure

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class Embedding:
    """An injective, kind-preserving map taking the query into a target.

    ``mapping`` pairs query object names with target object names, sorted
    by query name; ``matched_facts`` are the target's closed facts covered
    by the mapped query facts (the part of the target to highlight).
    """

    mapping: tuple[tuple[str, str], ...]
    matched_facts: frozenset[Fact]

    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)


def _degrees(kinds: Mapping[str, str], facts: FactSet) -> dict[str, Counter[str]]:
    degrees: dict[str, Counter[str]] = {name: Counter() for name in kinds}
    for f in facts:
        for name in set(f.args):
            degrees[name][f.predicate] += 1
    return degrees


def embed_closed(
    query_kinds: Mapping[str, str],
    query_facts: FactSet,
    target_kinds: Mapping[str, str],
    target_facts: FactSet,
    limit: int,
    *,
    budget: int = DEFAULT_BUDGET,
) -> list[Embedding]:
    """Embeddings between already-closed sides; see :func:`find_embeddings`."""
    if limit < 1:
        raise ValueError(f"limit must be positive, got {limit!r}")

    query_degree = _degrees(query_kinds, query_facts)
    target_degree = _degrees(target_kinds, target_facts)
    order = sorted(
        query_kinds, key=lambda n: (-sum(query_degree[n].values()), n)
    )

    candidates: dict[str, list[str]] = {}
    for qname in order:
        needed = query_degree[qname]
        options = [
            tname
            for tname in sorted(target_kinds)
            if target_kinds[tname] == query_kinds[qname]
            and all(target_degree[tname].get(p, 0) >= n for p, n in needed.items())
        ]
        if not options:
            return []
        candidates[qname] = options

    # Check each query fact at the step where its last argument gets mapped.
    position = {qname: i for i, qname in enumerate(order)}
    schedule: list[list[Fact]] = [[] for _ in order]
    for f in query_facts:
        schedule[max(position[a] for a in f.args)].append(f)

    found: list[Embedding] = []
    mapping: dict[str, str] = {}
    used: set[str] = set()
    steps = budget

    def emit() -> bool:
        matched = frozenset(
            normalize_fact(Fact(f.predicate, tuple(mapping[a] for a in f.args)))
            for f in query_facts
        )
        found.append(Embedding(tuple(sorted(mapping.items())), matched))
        return len(found) >= limit

    def extend(i: int) -> bool:
        nonlocal steps
        if i == len(order):
            return emit()
        qname = order[i]
        for tname in candidates[qname]:
            if tname in used:
                continue
            if steps <= 0:
                raise SearchBudgetExceeded(
                    f"embedding search exceeded its budget of {budget} steps"
                )
            steps -= 1
            mapping[qname] = tname
            used.add(tname)
            consistent = all(
                normalize_fact(Fact(f.predicate, tuple(mapping[a] for a in f.args)))
                in target_facts
                for f in schedule[i]
            )
            if consistent and extend(i + 1):
                return True
            del mapping[qname]
            used.discard(tname)
        return False

    extend(0)
    return sorted(found, key=lambda e: e.mapping)


def find_embeddings(
    query: Construction,
    target: Construction,
    ruleset: RuleSet,
    limit: int,
    *,
    budget: int = DEFAULT_BUDGET,
) -> list[Embedding]:
    """Up to ``limit`` distinct embeddings of the closed query into the
    closed target, in lexicographic mapping order; empty iff none exist."""
    return embed_closed(
        query.kinds,
        closure(query, ruleset),
        target.kinds,
        closure(target, ruleset),
        limit,
        budget=budget,
    )


def is_subconstruction(
    query: Construction,
    target: Construction,
    ruleset: RuleSet,
    *,
    budget: int = DEFAULT_BUDGET,
) -> Embedding | None:
    """First embedding of the query into the target, or ``None``."""
    found = find_embeddings(query, target, ruleset, 1, budget=budget)
    return found[0] if found else None
