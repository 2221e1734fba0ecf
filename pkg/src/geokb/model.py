"""Geometric constructions: typed objects plus predicate facts.

A construction is written in a line-oriented UTF-8 text format:

    # blank lines and lines starting with '#' are ignored
    point A
    point B
    line a
    line_through(a, A, B)

Declaration lines are ``point <name>``, ``line <name>`` or ``circle <name>``
with names matching ``[A-Za-z][A-Za-z0-9_]*``; they may appear anywhere in
the file.  Fact lines apply a predicate to declared names, one statement
per line, with optional spaces after commas.  Lines end with ``\\n``.

Facts are normalized on parse so that logically equivalent statements
compare equal: ``parallel(b, a)`` is stored as ``parallel(a, b)``.  Distinct
names are assumed to denote distinct objects, so degenerate statements such
as ``parallel(a, a)`` or ``collinear(A, A, B)`` are rejected outright.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .errors import ConstructionError

KINDS = ("point", "line", "circle")

#: predicate name -> argument kinds (arity is the tuple length)
PREDICATES: dict[str, tuple[str, ...]] = {
    "incident": ("point", "line"),
    "on_circle": ("point", "circle"),
    "center": ("point", "circle"),
    "line_through": ("line", "point", "point"),
    "circle_centered": ("circle", "point", "point"),
    "parallel": ("line", "line"),
    "perpendicular": ("line", "line"),
    "collinear": ("point", "point", "point"),
    "concurrent": ("line", "line", "line"),
    "midpoint": ("point", "point", "point"),
    "equidistant": ("point", "point", "point", "point"),
}

#: predicates degenerate under any repeated argument
DISTINCT_ARG_PREDICATES = frozenset(
    {"parallel", "perpendicular", "collinear", "concurrent", "midpoint"}
)

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_FACT_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*\(\s*(.*?)\s*\)\s*\Z")


@dataclass(frozen=True, order=True)
class ObjectDecl:
    """A named geometric object of one of the three kinds."""

    name: str
    kind: str


@dataclass(frozen=True, order=True)
class Fact:
    """One predicate applied to object names, e.g. ``parallel(a, b)``."""

    predicate: str
    args: tuple[str, ...]

    @property
    def text(self) -> str:
        return f"{self.predicate}({', '.join(self.args)})"

    def __str__(self) -> str:
        return self.text


def fact(predicate: str, *args: str) -> Fact:
    """Build a fact already in canonical argument order."""
    return normalize_fact(Fact(predicate, tuple(args)))


def argument_variants(predicate: str, args: tuple[str, ...]) -> tuple[tuple[str, ...], ...]:
    """Every argument order that states the same thing as ``args``.

    This is the orbit of the predicate's symmetry group; the canonical
    order produced by :func:`normalize_fact` is its lexicographic minimum.
    """
    if predicate in ("parallel", "perpendicular"):
        variants = {args, (args[1], args[0])}
    elif predicate in ("collinear", "concurrent"):
        variants = set(permutations(args))
    elif predicate in ("line_through", "midpoint"):
        variants = {args, (args[0], args[2], args[1])}
    elif predicate == "equidistant":
        variants = set()
        for first in ((args[0], args[1]), (args[1], args[0])):
            for second in ((args[2], args[3]), (args[3], args[2])):
                variants.add(first + second)
                variants.add(second + first)
    else:
        variants = {args}
    return tuple(sorted(variants))


def normalize_fact(f: Fact) -> Fact:
    """Sort arguments within each symmetric position group.  Idempotent.

    ``parallel``/``perpendicular``/``collinear``/``concurrent`` sort all
    arguments; ``line_through`` and ``midpoint`` sort the trailing point
    pair; ``equidistant`` sorts within each distance pair and then sorts
    the two pairs as units; the remaining predicates are asymmetric.
    """
    a = f.args
    p = f.predicate
    if p in ("parallel", "perpendicular", "collinear", "concurrent"):
        return Fact(p, tuple(sorted(a)))
    if p in ("line_through", "midpoint"):
        return Fact(p, (a[0],) + tuple(sorted(a[1:3])))
    if p == "equidistant":
        pairs = sorted((tuple(sorted(a[0:2])), tuple(sorted(a[2:4]))))
        return Fact(p, pairs[0] + pairs[1])
    return f


@dataclass(frozen=True)
class Construction:
    """A set of declared objects plus a set of canonical facts over them."""

    objects: frozenset[ObjectDecl]
    facts: frozenset[Fact]

    @cached_property
    def kinds(self) -> dict[str, str]:
        """Object name -> kind (later duplicates of an invalid value win)."""
        return {o.name: o.kind for o in sorted(self.objects)}

    def names_of_kind(self, kind: str) -> list[str]:
        return sorted(o.name for o in self.objects if o.kind == kind)


EMPTY_CONSTRUCTION = Construction(frozenset(), frozenset())


@dataclass(frozen=True)
class Violation:
    """One broken invariant, naming the object or fact at fault."""

    subject: str
    problem: str

    def __str__(self) -> str:
        return f"{self.subject}: {self.problem}"


def _degeneracy(predicate: str, args: tuple[str, ...]) -> str | None:
    if predicate in DISTINCT_ARG_PREDICATES and len(set(args)) != len(args):
        return "repeated argument"
    if predicate == "equidistant" and (args[0] == args[1] or args[2] == args[3]):
        return "repeated point within a distance pair"
    return None


def _parse_fact(line: str, kinds: dict[str, str], lineno: int) -> Fact:
    m = _FACT_RE.match(line)
    if m is None:
        raise ConstructionError(f"expected 'predicate(name, ...)', got {line!r}", line=lineno)
    predicate, argtext = m.group(1), m.group(2)
    spec = PREDICATES.get(predicate)
    if spec is None:
        raise ConstructionError(f"unknown predicate {predicate!r}", line=lineno)
    args = tuple(t.strip() for t in argtext.split(",")) if argtext.strip() else ()
    for arg in args:
        if not _NAME_RE.match(arg):
            raise ConstructionError(f"bad object name {arg!r}", line=lineno)
    if len(args) != len(spec):
        raise ConstructionError(
            f"{predicate} expects {len(spec)} arguments, got {len(args)}", line=lineno
        )
    for i, (arg, kind) in enumerate(zip(args, spec)):
        declared = kinds.get(arg)
        if declared is None:
            raise ConstructionError(f"undeclared object {arg!r}", line=lineno)
        if declared != kind:
            raise ConstructionError(
                f"argument {i + 1} of {predicate} must be a {kind}, "
                f"got {declared} {arg!r}",
                line=lineno,
            )
    problem = _degeneracy(predicate, args)
    if problem is not None:
        raise ConstructionError(f"{predicate}({', '.join(args)}): {problem}", line=lineno)
    return normalize_fact(Fact(predicate, args))


def parse_construction(text: str) -> Construction:
    """Parse construction-format text.

    Declarations are collected in a first pass, so the order of lines never
    affects the result.  Raises :class:`ConstructionError` with the line
    number for syntax errors, unknown predicates, arity or kind mismatches,
    undeclared objects, duplicate declarations and degenerate facts.
    """
    decls: dict[str, ObjectDecl] = {}
    fact_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword = line.split(None, 1)[0]
        if keyword in KINDS:
            name = line[len(keyword):].strip()
            if not _NAME_RE.match(name):
                raise ConstructionError(f"bad object name {name!r}", line=lineno)
            if name in decls:
                raise ConstructionError(f"duplicate declaration of {name!r}", line=lineno)
            decls[name] = ObjectDecl(name, keyword)
        else:
            fact_lines.append((lineno, line))
    kinds = {name: decl.kind for name, decl in decls.items()}
    facts = {_parse_fact(line, kinds, lineno) for lineno, line in fact_lines}
    return Construction(frozenset(decls.values()), frozenset(facts))


def serialize_construction(construction: Construction) -> str:
    """Deterministic text form: objects by kind then name, facts by text.

    ``parse_construction(serialize_construction(c)) == c`` for any valid
    construction; the empty construction serializes to the empty string.
    """
    lines = [
        f"{o.kind} {o.name}"
        for o in sorted(construction.objects, key=lambda o: (o.kind, o.name))
    ]
    lines.extend(sorted(f.text for f in construction.facts))
    return "".join(line + "\n" for line in lines)


def validate(construction: Construction) -> list[Violation]:
    """Check every construction invariant; an empty list means valid.

    Violations are values rather than exceptions so that callers can report
    all problems at once.
    """
    out: list[Violation] = []
    kinds: dict[str, str] = {}
    for decl in sorted(construction.objects):
        if not _NAME_RE.match(decl.name):
            out.append(Violation(decl.name, "invalid object name"))
        if decl.kind not in KINDS:
            out.append(Violation(decl.name, f"unknown kind {decl.kind!r}"))
        if decl.name in kinds:
            out.append(Violation(decl.name, "duplicate object name"))
        kinds[decl.name] = decl.kind
    for f in sorted(construction.facts):
        spec = PREDICATES.get(f.predicate)
        if spec is None:
            out.append(Violation(f.text, "unknown predicate"))
            continue
        if len(f.args) != len(spec):
            out.append(Violation(f.text, f"expects {len(spec)} arguments, got {len(f.args)}"))
            continue
        well_typed = True
        for i, (arg, kind) in enumerate(zip(f.args, spec)):
            declared = kinds.get(arg)
            if declared is None:
                out.append(Violation(f.text, f"undeclared object {arg!r}"))
                well_typed = False
            elif declared != kind:
                out.append(
                    Violation(f.text, f"argument {i + 1} must be a {kind}, got {declared} {arg!r}")
                )
                well_typed = False
        if not well_typed:
            continue
        problem = _degeneracy(f.predicate, f.args)
        if problem is not None:
            out.append(Violation(f.text, problem))
        if normalize_fact(f) != f:
            out.append(Violation(f.text, "arguments not in canonical order"))
    return out
