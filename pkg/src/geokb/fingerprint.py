"""Conceptual graphs of closed constructions and their count fingerprints.

A closed construction becomes a bipartite labeled graph: one node per
object, one node per closed fact, and one edge per (fact, argument
position).  The fingerprint, called GTD (global trail distribution), is a
map from label keys to counts at a chosen depth:

    depth 0   ``kind:<kind>``            objects of each kind
    depth 1   ``rel:<predicate>``        facts with each predicate
    depth 2   ``path:<p1>-<kind>-<p2>``  unordered pairs of distinct facts
                                         sharing an object of that kind
                                         (p1 <= p2 lexicographically)

Each depth includes all keys of the lower depths.  Componentwise superset
comparison of fingerprints is the candidate filter for structural search:
whenever one closed construction embeds into another, the bigger one's
fingerprint dominates the smaller one's, so filtering never loses a true
match.  The converse fails, which is why matches are confirmed exactly
afterwards.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from .errors import ConstructionError
from .model import Construction, ObjectDecl
from .rules import FactSet, RuleSet, closure

VALID_DEPTHS = (0, 1, 2)
DEFAULT_DEPTH = 2


@dataclass(frozen=True)
class ConceptualGraph:
    """Bipartite graph of object nodes and relation (fact) nodes."""

    object_nodes: tuple[ObjectDecl, ...]
    relation_nodes: tuple[tuple[int, str], ...]
    edges: tuple[tuple[int, int, str], ...]


@dataclass(frozen=True)
class Gtd:
    """Label-count fingerprint of a conceptual graph at one depth."""

    depth: int
    counts: Mapping[str, int]


def build_graph(construction: Construction, closed: FactSet) -> ConceptualGraph:
    """Graph a construction together with its closed fact set.

    Object nodes are the declared objects; relation nodes are the closed
    facts in text order; edges connect each relation node to its arguments
    by position.
    """
    kinds = construction.kinds
    for f in closed:
        for arg in f.args:
            if arg not in kinds:
                raise ConstructionError(f"closed fact references undeclared object {arg!r}")
    objects = tuple(sorted(construction.objects, key=lambda o: (o.kind, o.name)))
    facts = sorted(closed, key=lambda f: f.text)
    relation_nodes = tuple((i, f.predicate) for i, f in enumerate(facts))
    edges = tuple(
        (i, position, name)
        for i, f in enumerate(facts)
        for position, name in enumerate(f.args)
    )
    return ConceptualGraph(objects, relation_nodes, edges)


def gtd(graph: ConceptualGraph, depth: int) -> Gtd:
    """Count the graph's labels at the given depth (0, 1 or 2)."""
    if depth not in VALID_DEPTHS:
        raise ValueError(f"depth must be one of {VALID_DEPTHS}, got {depth!r}")
    counts: Counter[str] = Counter()
    for obj in graph.object_nodes:
        counts[f"kind:{obj.kind}"] += 1
    if depth >= 1:
        for _, predicate in graph.relation_nodes:
            counts[f"rel:{predicate}"] += 1
    if depth >= 2:
        kind_of = {o.name: o.kind for o in graph.object_nodes}
        label = dict(graph.relation_nodes)
        members: dict[int, set[str]] = defaultdict(set)
        for relation, _position, name in graph.edges:
            members[relation].add(name)
        for i, j in combinations(sorted(label), 2):
            shared = members[i] & members[j]
            if not shared:
                continue
            p1, p2 = sorted((label[i], label[j]))
            for kind in {kind_of[name] for name in shared}:
                counts[f"path:{p1}-{kind}-{p2}"] += 1
    return Gtd(depth, dict(counts))


def gtd_subsumes(candidate: Gtd, query: Gtd) -> bool:
    """True iff the candidate has at least the query's count for every key."""
    if candidate.depth != query.depth:
        raise ValueError(
            f"depth mismatch: candidate depth {candidate.depth}, query depth {query.depth}"
        )
    return all(candidate.counts.get(key, 0) >= n for key, n in query.counts.items())


def serialize_gtd(fingerprint: Gtd) -> str:
    """Single-line cache form: ``depth=<d>`` then ``key=count`` sorted by key."""
    parts = [f"depth={fingerprint.depth}"]
    parts.extend(f"{key}={n}" for key, n in sorted(fingerprint.counts.items()))
    return " ".join(parts)


def parse_gtd(text: str) -> Gtd:
    """Inverse of :func:`serialize_gtd`; raises ``ValueError`` on bad input."""
    parts = text.split()
    if not parts or not parts[0].startswith("depth="):
        raise ValueError(f"fingerprint must start with 'depth=', got {text!r}")
    depth = int(parts[0][len("depth="):])
    if depth not in VALID_DEPTHS:
        raise ValueError(f"depth must be one of {VALID_DEPTHS}, got {depth}")
    counts: dict[str, int] = {}
    for part in parts[1:]:
        key, sep, value = part.rpartition("=")
        if not sep or not key:
            raise ValueError(f"bad fingerprint component {part!r}")
        n = int(value)
        if n < 1:
            raise ValueError(f"fingerprint counts must be positive, got {part!r}")
        counts[key] = n
    return Gtd(depth, counts)


def construction_gtd(
    construction: Construction, ruleset: RuleSet, depth: int = DEFAULT_DEPTH
) -> Gtd:
    """Close the construction and fingerprint the resulting graph."""
    return gtd(build_graph(construction, closure(construction, ruleset)), depth)
