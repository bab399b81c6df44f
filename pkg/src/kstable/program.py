"""Ground normal logic programs: parsing, reduct, least model, stability.

Atoms are interned to dense integer ids in first-occurrence order and every
set of atoms handled by the library is a ``frozenset`` of those ids.  Programs
derived from one another (reduct, filters, transforms) share the atom table of
the program they came from, so ids stay comparable across them.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import ProgramSyntaxError, ReservedNameError

AtomSet = frozenset  # frozenset[int] of atom ids

RESERVED_PREFIXES = ("c__", "cm__", "d__", "__f")
ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Rule:
    """``head :- pos, not neg``; bodies are sets, so repeated atoms collapse."""

    head: int
    pos: frozenset = frozenset()
    neg: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.pos, frozenset):
            object.__setattr__(self, "pos", frozenset(self.pos))
        if not isinstance(self.neg, frozenset):
            object.__setattr__(self, "neg", frozenset(self.neg))

    @property
    def is_horn(self) -> bool:
        return not self.neg

    @property
    def is_proper(self) -> bool:
        return self.head not in self.pos and not (self.pos & self.neg)

    def horn(self) -> Rule:
        """The rule with its negated body atoms dropped."""
        return Rule(self.head, self.pos)

    def size(self) -> int:
        return 1 + len(self.pos) + len(self.neg)

    def sort_key(self):
        return (self.head, sorted(self.pos), sorted(self.neg))


@dataclass(frozen=True)
class Program:
    """An ordered collection of rules over a shared atom table.

    ``names[i]`` is the name of atom ``i``.  The table may hold atoms that no
    longer occur in ``rules`` (e.g. after a filter); ``atoms`` reports only
    those that do.
    """

    rules: tuple
    names: tuple = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "names", tuple(self.names))

    @classmethod
    def from_rules(cls, rules: Iterable, names: Sequence[str] = (), dedup: bool = True):
        """Build a program from ``(head, pos_names, neg_names)`` triples.

        ``names`` optionally pre-seeds the atom table (fixing id order); other
        atoms are interned as they are first met.
        """
        table = list(names)
        index = {name: i for i, name in enumerate(table)}

        def intern(name):
            _check_name(name)
            if name not in index:
                index[name] = len(table)
                table.append(name)
            return index[name]

        built = []
        for head, pos, neg in rules:
            h = intern(head)
            built.append(Rule(h, [intern(a) for a in pos], [intern(a) for a in neg]))
        if dedup:
            built = list(dict.fromkeys(built))
        return cls(built, table)

    def with_rules(self, rules: Iterable[Rule]) -> Program:
        return Program(tuple(rules), self.names)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    @cached_property
    def index(self) -> dict:
        return {name: i for i, name in enumerate(self.names)}

    @cached_property
    def atoms(self) -> AtomSet:
        out = set()
        for r in self.rules:
            out.add(r.head)
            out.update(r.pos)
            out.update(r.neg)
        return frozenset(out)

    @cached_property
    def heads(self) -> AtomSet:
        return frozenset(r.head for r in self.rules)

    @cached_property
    def neg_atoms(self) -> AtomSet:
        out = set()
        for r in self.rules:
            out.update(r.neg)
        return frozenset(out)

    @property
    def size(self) -> int:
        """Total number of atom occurrences (``m``)."""
        return sum(r.size() for r in self.rules)

    def atom_id(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise ValueError(f"unknown atom {name!r}") from None

    def atoms_of(self, names: Iterable[str]) -> AtomSet:
        """Resolve names to an AtomSet; names outside At(P) are an error."""
        out = set()
        for name in names:
            i = self.index.get(name)
            if i is None or i not in self.atoms:
                raise ValueError(f"atom {name!r} does not occur in the program")
            out.add(i)
        return frozenset(out)

    def names_of(self, atoms: Iterable[int]) -> list:
        return [self.names[i] for i in sorted(atoms)]

    def rule_text(self, rule: Rule) -> str:
        body = [self.names[a] for a in sorted(rule.pos)]
        body += ["not " + self.names[a] for a in sorted(rule.neg)]
        head = self.names[rule.head]
        return f"{head} :- {', '.join(body)}." if body else f"{head}."

    def __str__(self) -> str:
        return "\n".join(self.rule_text(r) for r in self.rules)


class HornProgram(Program):
    """A program whose rules have empty negative bodies."""

    def __post_init__(self):
        super().__post_init__()
        for r in self.rules:
            if r.neg:
                raise ValueError("Horn program rule has a negative body")


def _check_name(name: str, allow_reserved: bool = True) -> None:
    if not ATOM_RE.match(name) or name == "not":
        raise ValueError(f"invalid atom name {name!r}")
    if not allow_reserved and name.startswith(RESERVED_PREFIXES):
        raise ReservedNameError(f"atom name {name!r} uses a reserved prefix")


# --------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>%[^\n]*)|(?P<if>:-)|(?P<comma>,)"
    r"|(?P<dot>\.)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>.)"
)


def _tokens(text: str):
    line, line_start = 1, 0
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        col = m.start() - line_start + 1
        if kind == "bad":
            raise ProgramSyntaxError(f"unexpected character {m.group()!r}", line, col)
        if kind not in ("ws", "comment"):
            yield kind, m.group(), line, col
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rindex("\n") + 1
    yield "eof", "", line, len(text) - line_start + 1


def parse_program(text: str, *, allow_reserved: bool = False) -> Program:
    """Parse program text into a :class:`Program`.

    Grammar: ``head.`` or ``head :- lit, ..., lit.`` with ``lit := atom |
    not atom`` and ``%`` comments.  Duplicate body atoms and duplicate rules
    are removed; rule order is kept.  Names with the encoder prefixes
    ``c__ cm__ d__ __f`` are rejected unless ``allow_reserved`` is set.
    """
    toks = _tokens(text)
    tok = next(toks)
    raw = []
    order = {}

    def expect_atom(what):
        nonlocal tok
        kind, value, line, col = tok
        if kind != "ident" or value == "not":
            raise ProgramSyntaxError(f"expected {what}, got {value or 'end of input'!r}", line, col)
        try:
            _check_name(value, allow_reserved)
        except ReservedNameError as exc:
            raise ReservedNameError(f"line {line}, column {col}: {exc}") from None
        order.setdefault(value, None)
        tok = next(toks)
        return value

    while tok[0] != "eof":
        if tok[0] in ("if", "comma", "dot"):
            raise ProgramSyntaxError("rule with empty head", tok[2], tok[3])
        head = expect_atom("rule head")
        pos, neg = [], []
        if tok[0] == "if":
            tok = next(toks)
            while True:
                if tok[0] == "ident" and tok[1] == "not":
                    tok = next(toks)
                    neg.append(expect_atom("atom after 'not'"))
                else:
                    pos.append(expect_atom("body literal"))
                if tok[0] == "comma":
                    tok = next(toks)
                    continue
                break
        if tok[0] != "dot":
            raise ProgramSyntaxError(f"expected '.', got {tok[1] or 'end of input'!r}", tok[2], tok[3])
        tok = next(toks)
        raw.append((head, pos, neg))

    return Program.from_rules(raw, names=list(order))


def format_program(program: Program) -> str:
    return str(program) + ("\n" if program.rules else "")


# --------------------------------------------------------------------------
# semantics


def reduct(program: Program, model: AtomSet) -> HornProgram:
    """Gelfond-Lifschitz reduct: drop rules blocked by ``model``, strip ``not``."""
    model = frozenset(model)
    kept = dict.fromkeys(r.horn() for r in program.rules if not (r.neg & model))
    return HornProgram(tuple(kept), program.names)


def _least_model(rules: Iterable[Rule]) -> AtomSet:
    # counter per rule of positive-body atoms not yet derived; queue of new atoms
    rules = list(rules)
    missing = [len(r.pos) for r in rules]
    watchers = {}
    for idx, r in enumerate(rules):
        for b in r.pos:
            watchers.setdefault(b, []).append(idx)
    model = set()
    queue = deque()
    for idx, r in enumerate(rules):
        if not missing[idx] and r.head not in model:
            model.add(r.head)
            queue.append(r.head)
    while queue:
        atom = queue.popleft()
        for idx in watchers.get(atom, ()):
            missing[idx] -= 1
            if not missing[idx]:
                head = rules[idx].head
                if head not in model:
                    model.add(head)
                    queue.append(head)
    return frozenset(model)


def least_model(horn: Program) -> AtomSet:
    """Least model of a Horn program, in time linear in its size."""
    if any(r.neg for r in horn.rules):
        raise ValueError("least_model expects a Horn program")
    return _least_model(horn.rules)


def derivation_stages(horn: Program) -> dict:
    """Map each atom of LM(H) to the least ``s`` with the atom in T_H^s(empty)."""
    if any(r.neg for r in horn.rules):
        raise ValueError("derivation_stages expects a Horn program")
    rules = horn.rules
    missing = [len(r.pos) for r in rules]
    watchers = {}
    for idx, r in enumerate(rules):
        for b in r.pos:
            watchers.setdefault(b, []).append(idx)
    stage = {}
    queue = deque()
    for r in rules:
        if not r.pos and r.head not in stage:
            stage[r.head] = 1
            queue.append(r.head)
    # FIFO keeps stages non-decreasing, so the last body atom to arrive has the max stage
    while queue:
        atom = queue.popleft()
        for idx in watchers.get(atom, ()):
            missing[idx] -= 1
            if not missing[idx]:
                head = rules[idx].head
                if head not in stage:
                    stage[head] = stage[atom] + 1
                    queue.append(head)
    return stage


def is_stable(program: Program, model: AtomSet) -> bool:
    model = frozenset(model)
    if not model <= program.atoms:
        return False
    return _least_model(r for r in program.rules if not (r.neg & model)) == model


def neg_candidate(program: Program, true_neg: AtomSet):
    """Stable model determined by the negated atoms assumed true, or None.

    With ``B = true_neg`` a subset of Neg(P): ``M = LM(P^B)`` is stable iff
    ``B`` is inside ``M`` and no other atom of Neg(P) is.
    """
    true_neg = frozenset(true_neg)
    m = _least_model(r for r in program.rules if not (r.neg & true_neg))
    if true_neg <= m and not ((program.neg_atoms - true_neg) & m):
        return m
    return None


def generating_rules(program: Program, model: AtomSet) -> list:
    model = frozenset(model)
    return [r for r in program.rules if r.pos <= model and not (r.neg & model)]


def proper_filter(program: Program) -> Program:
    return program.with_rules(r for r in program.rules if r.is_proper)


def star_transform(program: Program) -> Program:
    """Delete ``not a`` wherever ``a`` heads no rule.  Keeps the rule count,
    so the result may contain repeated rules."""
    heads = program.heads
    return program.with_rules(
        r if r.neg <= heads else Rule(r.head, r.pos, r.neg & heads) for r in program.rules
    )


def bounded_neg_subprogram(program: Program, k: int) -> Program:
    if k < 0:
        raise ValueError("k must be non-negative")
    return program.with_rules(r for r in program.rules if len(r.neg) <= k)
