"""Forward-chaining closure of a construction's fact set under Horn rules.

Rule format, one rule per line (blank lines and ``#`` lines are ignored):

    R1: incident(?p, ?l) :- line_through(?l, ?p, ?q).
    R4: parallel(?a, ?c) :- parallel(?a, ?b), parallel(?b, ?c), ?a != ?c.

Variables are ``?`` followed by an identifier; every template argument must
be a variable.  Each head variable must occur in the body, so the closure
never invents objects, and with a finite predicate vocabulary the fact
universe is finite and the fixpoint computation terminates.  Trailing
``?x != ?y`` constraints require the two variables to be bound to distinct
names (distinct names denote distinct objects).

Body atoms match stored facts modulo each predicate's argument symmetry,
which is what makes canonical storage of symmetric predicates sound: the
rule file needs no symmetry variants of its rules.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterator

from .errors import ConstructionError, RuleError
from .model import PREDICATES, Construction, Fact, argument_variants, normalize_fact

FactSet = frozenset[Fact]

_VAR_RE = re.compile(r"\?([A-Za-z][A-Za-z0-9_]*)\Z")
_ATOM_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*\(\s*(.*?)\s*\)\Z")
_SIDE_RE = re.compile(r"(\?[A-Za-z][A-Za-z0-9_]*)\s*!=\s*(\?[A-Za-z][A-Za-z0-9_]*)\Z")


@dataclass(frozen=True)
class Atom:
    """A fact template: predicate plus variable names (without the '?')."""

    predicate: str
    args: tuple[str, ...]

    @property
    def text(self) -> str:
        return f"{self.predicate}({', '.join('?' + a for a in self.args)})"


@dataclass(frozen=True)
class Rule:
    name: str
    head: Atom
    body: tuple[Atom, ...]
    distinct: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]

    def __len__(self) -> int:
        return len(self.rules)


def _split_top_level(text: str, lineno: int) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise RuleError("unbalanced parentheses", line=lineno)
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise RuleError("unbalanced parentheses", line=lineno)
    parts.append("".join(current))
    return [p.strip() for p in parts]


def _parse_atom(text: str, lineno: int, var_kinds: dict[str, str]) -> Atom:
    m = _ATOM_RE.match(text)
    if m is None:
        raise RuleError(f"expected 'predicate(?x, ...)', got {text!r}", line=lineno)
    predicate, argtext = m.group(1), m.group(2)
    spec = PREDICATES.get(predicate)
    if spec is None:
        raise RuleError(f"unknown predicate {predicate!r}", line=lineno)
    raw_args = [t.strip() for t in argtext.split(",")] if argtext.strip() else []
    if len(raw_args) != len(spec):
        raise RuleError(
            f"{predicate} expects {len(spec)} arguments, got {len(raw_args)}", line=lineno
        )
    names = []
    for raw, kind in zip(raw_args, spec):
        vm = _VAR_RE.match(raw)
        if vm is None:
            raise RuleError(f"arguments must be variables, got {raw!r}", line=lineno)
        var = vm.group(1)
        known = var_kinds.get(var)
        if known is not None and known != kind:
            raise RuleError(
                f"variable ?{var} used both as {known} and as {kind}", line=lineno
            )
        var_kinds[var] = kind
        names.append(var)
    return Atom(predicate, tuple(names))


def load_rules(text: str) -> RuleSet:
    """Parse rule-format text into a :class:`RuleSet`.

    Raises :class:`RuleError` for syntax errors, unknown predicates, arity
    mismatches, inconsistent variable kinds, heads with variables missing
    from the body, unbound side-condition variables and duplicate names.
    """
    rules: list[Rule] = []
    seen_names: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not line.endswith("."):
            raise RuleError("rule must end with '.'", line=lineno)
        line = line[:-1].strip()
        colon = line.find(":")
        if colon <= 0 or line[colon : colon + 2] == ":-":
            raise RuleError("expected '<name>: <head> :- <body>.'", line=lineno)
        name, rest = line[:colon].strip(), line[colon + 1 :]
        if name in seen_names:
            raise RuleError(f"duplicate rule name {name!r}", line=lineno)
        head_text, sep, body_text = rest.partition(":-")
        if not sep:
            raise RuleError("missing ':-' between head and body", line=lineno)
        if not body_text.strip():
            raise RuleError("rule body must contain at least one atom", line=lineno)
        var_kinds: dict[str, str] = {}
        head = _parse_atom(head_text.strip(), lineno, var_kinds)
        body: list[Atom] = []
        distinct: list[tuple[str, str]] = []
        for part in _split_top_level(body_text.strip(), lineno):
            sm = _SIDE_RE.match(part)
            if sm is not None:
                distinct.append((sm.group(1)[1:], sm.group(2)[1:]))
            else:
                body.append(_parse_atom(part, lineno, var_kinds))
        if not body:
            raise RuleError("rule body must contain at least one atom", line=lineno)
        body_vars = {v for atom in body for v in atom.args}
        for v in head.args:
            if v not in body_vars:
                raise RuleError(f"head variable ?{v} does not occur in the body", line=lineno)
        for x, y in distinct:
            for v in (x, y):
                if v not in body_vars:
                    raise RuleError(
                        f"side-condition variable ?{v} does not occur in the body", line=lineno
                    )
        seen_names.add(name)
        rules.append(Rule(name, head, tuple(body), tuple(distinct)))
    return RuleSet(tuple(rules))


@lru_cache(maxsize=1)
def default_rules() -> RuleSet:
    """The rule set shipped with the package (``geokb/data/default.rules``)."""
    text = resources.files("geokb").joinpath("data/default.rules").read_text("utf-8")
    return load_rules(text)


def _bindings(
    atoms: tuple[Atom, ...],
    idx: int,
    binding: dict[str, str],
    delta_pos: int,
    by_pred: dict[str, list[Fact]],
    delta_by_pred: dict[str, list[Fact]],
) -> Iterator[dict[str, str]]:
    if idx == len(atoms):
        yield binding
        return
    atom = atoms[idx]
    source = delta_by_pred if idx == delta_pos else by_pred
    for f in source.get(atom.predicate, ()):
        for variant in argument_variants(f.predicate, f.args):
            extended = dict(binding)
            ok = True
            for var, name in zip(atom.args, variant):
                bound = extended.get(var)
                if bound is None:
                    extended[var] = name
                elif bound != name:
                    ok = False
                    break
            if ok:
                yield from _bindings(atoms, idx + 1, extended, delta_pos, by_pred, delta_by_pred)


def closure(construction: Construction, ruleset: RuleSet) -> FactSet:
    """Least fact set containing the construction's facts and closed under
    the rules.

    Semi-naive evaluation: each round joins rule bodies with at least one
    atom matched against the facts derived in the previous round.  The
    result is independent of rule order and fact iteration order, and every
    returned fact is canonical.
    """
    facts: set[Fact] = {normalize_fact(f) for f in construction.facts}
    by_pred: dict[str, list[Fact]] = defaultdict(list)
    for f in facts:
        by_pred[f.predicate].append(f)
    delta = set(facts)
    while delta:
        delta_by_pred: dict[str, list[Fact]] = defaultdict(list)
        for f in delta:
            delta_by_pred[f.predicate].append(f)
        fresh: set[Fact] = set()
        for rule in ruleset.rules:
            for delta_pos in range(len(rule.body)):
                if rule.body[delta_pos].predicate not in delta_by_pred:
                    continue
                for binding in _bindings(rule.body, 0, {}, delta_pos, by_pred, delta_by_pred):
                    if any(binding[x] == binding[y] for x, y in rule.distinct):
                        continue
                    derived = normalize_fact(
                        Fact(rule.head.predicate, tuple(binding[v] for v in rule.head.args))
                    )
                    if derived not in facts:
                        fresh.add(derived)
        for f in fresh:
            facts.add(f)
            by_pred[f.predicate].append(f)
        delta = fresh
    return frozenset(facts)


def entails(construction: Construction, ruleset: RuleSet, f: Fact) -> bool:
    """True iff the canonical form of ``f`` is in the closure."""
    for arg in f.args:
        if arg not in construction.kinds:
            raise ConstructionError(f"fact references undeclared object {arg!r}")
    return normalize_fact(f) in closure(construction, ruleset)
