"""Conceptual graphs, fingerprints and the candidate filter
============================================================

Matching a query construction against every stored entry by subgraph
isomorphism would be slow, so candidates are screened first: each closed
construction gets a count fingerprint (its "global trail distribution"),
and an entry survives only if its counts dominate the query's.  The filter
never loses a true match; this demo also shows the price, a false
candidate only the exact matcher can reject.
"""

from geokb import (
    build_graph,
    closure,
    construction_gtd,
    default_rules,
    gtd_subsumes,
    is_subconstruction,
    parse_construction,
    serialize_gtd,
)

rules = default_rules()

TRIANGLE = parse_construction("""\
point A
point B
point C
line a
line b
line c
line_through(a, B, C)
line_through(b, A, C)
line_through(c, A, B)
""")

# The conceptual graph has one node per object, one per closed fact.
closed = closure(TRIANGLE, rules)
graph = build_graph(TRIANGLE, closed)
print(
    f"triangle graph: {len(graph.object_nodes)} object nodes, "
    f"{len(graph.relation_nodes)} relation nodes, {len(graph.edges)} edges"
)

# Fingerprints at increasing depth: object kinds, then predicate counts,
# then counts of fact pairs sharing an object of each kind.
for depth in (0, 1, 2):
    print(f"\ndepth {depth}: {serialize_gtd(construction_gtd(TRIANGLE, rules, depth))}")

# A strip of two parallels with a transversal has enough points, lines and
# incidences to fool the depth-1 filter, but its depth-2 pair counts give
# it away: its three line_through facts share only two points.
STRIP = parse_construction("""\
point A
point B
point C
point D
line a
line b
line t
parallel(a, b)
line_through(a, A, B)
line_through(b, C, D)
line_through(t, A, C)
""")

print("\nparallel strip vs triangle query:")
for depth in (0, 1, 2):
    survives = gtd_subsumes(
        construction_gtd(STRIP, rules, depth), construction_gtd(TRIANGLE, rules, depth)
    )
    print(f"  passes depth-{depth} filter? {survives}")

# Three concurrent lines survive even depth 2: every pair of line_through
# facts shares a point, just as in a triangle.  Only the exact matcher
# notices that all three pairs share the SAME point.
CONCURRENT = parse_construction("""\
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
""")

print("\nthree concurrent lines vs triangle query:")
for depth in (0, 1, 2):
    survives = gtd_subsumes(
        construction_gtd(CONCURRENT, rules, depth), construction_gtd(TRIANGLE, rules, depth)
    )
    print(f"  passes depth-{depth} filter? {survives}")
embedding = is_subconstruction(TRIANGLE, CONCURRENT, rules)
print(f"  exact matcher finds a triangle? {embedding is not None}")

# And the matcher's positive side: the triangle inside a richer figure,
# with the witness mapping (the part of the target to highlight).
CIRCUMCIRCLE = parse_construction("""\
point A
point B
point C
point O
line a
line b
line c
circle k
line_through(a, B, C)
line_through(b, A, C)
line_through(c, A, B)
circle_centered(k, O, A)
on_circle(B, k)
on_circle(C, k)
""")

embedding = is_subconstruction(TRIANGLE, CIRCUMCIRCLE, rules)
print("\ntriangle inside the circumcircle figure:")
print(f"  mapping: {embedding.as_dict()}")
print(f"  covers {len(embedding.matched_facts)} target facts")
