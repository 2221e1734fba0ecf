"""The repository: text search, geometric search, filters, duplicate gate
==========================================================================

A repository persists one JSON document per entry, keeps a volatile text
index, caches each entry's fingerprint and guards collaborative inserts by
searching for structurally equal or containing entries first.
"""

import tempfile

from geokb import DuplicateReport, ProblemEntry, Repository, parse_construction, parse_filters
from geokb.corpus import seed_repository

workdir = tempfile.TemporaryDirectory()
repo = Repository(workdir.name)
seed_repository(repo)
print(f"seeded {len(repo)} classic entries into {repo.data_dir}")

# Simple text search: a regular expression over the name field.
print("\nsimple search 'ceva':", repo.text_query("ceva"))

# Extended search: tokenized, field-weighted, OR semantics, best first.
print("extended search 'circle midpoint':")
for identifier in repo.text_query("circle midpoint", mode="extended")[:5]:
    print(f"  {identifier}  {repo.get(identifier).name}")

# Filters conjoin key=value predicates and combine with any query.
filters = parse_filters("kind=conjecture AND keyword=triangle")
print("\nconjectures about triangles:", repo.text_query(".*", filters=filters))
print("entries in Portuguese:", repo.text_query(".*", filters=parse_filters("language=pt")))

# Geometric search: draw three points and the lines connecting them...
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
candidates = repo.geometric_query(TRIANGLE, confirm=False)
print(f"\nbare triangle, candidates only: {len(candidates)} of {len(repo)} entries")

# ...then let the exact matcher confirm and attach the witness mapping.
confirmed = repo.geometric_query(TRIANGLE, confirm=True)
identifier, embedding = confirmed[0]
print(f"confirmed matches: {len(confirmed)}; e.g. {identifier} via {embedding.as_dict()}")

# Narrower query: the triangle plus a circle keeps only circle figures.
WITH_CIRCLE = parse_construction(
    "point A\npoint B\npoint C\nline a\nline b\nline c\ncircle k\n"
    "line_through(a, B, C)\nline_through(b, A, C)\nline_through(c, A, B)\n"
)
print(
    "triangle + circle:",
    [identifier for identifier, _ in repo.geometric_query(WITH_CIRCLE, confirm=True)],
)

# The duplicate gate: inserting a plain triangle is refused because richer
# entries already contain it; inserting with force=True overrides.
draft = ProblemEntry(
    name="Yet another triangle",
    code="point A\npoint B\npoint C\nline a\nline b\nline c\n"
    "line_through(a, B, C)\nline_through(b, A, C)\nline_through(c, A, B)\n",
    kind="construction",
    level=1,
)
outcome = repo.insert(draft)
assert isinstance(outcome, DuplicateReport)
print(
    f"\ninsert refused; contained in {len(outcome.containing_entries)} stored entries, "
    f"e.g. {outcome.containing_entries[:4]}"
)
identifier = repo.insert(draft, force=True)
print(f"forced insert stored it as {identifier}")

workdir.cleanup()
