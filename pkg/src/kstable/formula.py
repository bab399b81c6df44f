"""Boolean formulas over named atoms and a brute-force bounded-weight
satisfiability oracle.

Negation appears only on literals.  ``And(())`` is true and ``Or(())`` is
false.  The weighted search enumerates assignments by increasing weight and
lexicographically within a weight, evaluating a chunk of candidates at a time
as a boolean matrix.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded

DEFAULT_ORACLE_CAP = 24
_CHUNK = 1 << 14


@dataclass(frozen=True)
class Lit:
    atom: str
    neg: bool = False

    def __invert__(self) -> Lit:
        return Lit(self.atom, not self.neg)


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class And:
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Or:
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


TRUE = Const(True)
FALSE = Const(False)


def negate(f):
    """Push a negation down to the literals (De Morgan)."""
    if isinstance(f, Lit):
        return ~f
    if isinstance(f, Const):
        return Const(not f.value)
    if isinstance(f, And):
        return Or(tuple(negate(g) for g in f.args))
    if isinstance(f, Or):
        return And(tuple(negate(g) for g in f.args))
    raise TypeError(f"not a formula node: {f!r}")


def iff(left, right) -> And:
    """``left <=> right`` as the pair of implications, both as disjunctions."""
    return And((Or((negate(left), right)), Or((left, negate(right)))))


def atoms_in_order(f) -> list:
    """Atom names in order of first occurrence (depth-first, left to right)."""
    seen = {}
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Lit):
            seen.setdefault(node.atom, None)
        elif isinstance(node, (And, Or)):
            stack.extend(reversed(node.args))
    return list(seen)


def evaluate(f, assignment: Iterable[str]) -> bool:
    """Truth value of ``f`` when exactly the atoms in ``assignment`` are true."""
    true = assignment if isinstance(assignment, (set, frozenset)) else set(assignment)
    return _eval(f, true)


def _eval(f, true) -> bool:
    if isinstance(f, Lit):
        return (f.atom in true) != f.neg
    if isinstance(f, And):
        return all(_eval(g, true) for g in f.args)
    if isinstance(f, Or):
        return any(_eval(g, true) for g in f.args)
    if isinstance(f, Const):
        return f.value
    raise TypeError(f"not a formula node: {f!r}")


def evaluate_many(f, atoms: Sequence[str], rows: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on every row of a boolean matrix.

    ``rows[j, i]`` is the value of ``atoms[i]`` in assignment ``j``; atoms of
    ``f`` missing from ``atoms`` are false.
    """
    column = {a: i for i, a in enumerate(atoms)}
    n = rows.shape[0]

    def ev(node):
        if isinstance(node, Lit):
            i = column.get(node.atom)
            v = rows[:, i] if i is not None else np.zeros(n, dtype=bool)
            return ~v if node.neg else v
        if isinstance(node, And):
            out = np.ones(n, dtype=bool)
            for g in node.args:
                out &= ev(g)
            return out
        if isinstance(node, Or):
            out = np.zeros(n, dtype=bool)
            for g in node.args:
                out |= ev(g)
            return out
        if isinstance(node, Const):
            return np.full(n, node.value, dtype=bool)
        raise TypeError(f"not a formula node: {node!r}")

    return ev(f)


def all_assignments(n: int) -> np.ndarray:
    """All ``2**n`` rows, row ``j`` holding the bits of ``j`` (atom 0 = bit 0)."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(bool)


def fold_constants(f):
    """Equivalent formula with ``Const`` nodes folded away where possible."""
    if isinstance(f, (Lit, Const)):
        return f
    is_and = isinstance(f, And)
    absorbing, neutral = (False, True) if is_and else (True, False)
    kept = []
    for g in f.args:
        g = fold_constants(g)
        if isinstance(g, Const):
            if g.value == absorbing:
                return Const(absorbing)
            continue
        kept.append(g)
    if not kept:
        return Const(neutral)
    if len(kept) == 1:
        return kept[0]
    return And(tuple(kept)) if is_and else Or(tuple(kept))


def normalization_depth(f) -> int:
    """``t`` such that ``f`` is t-normalized (a CNF gives 2).

    ``f`` must be a conjunction whose nesting strictly alternates between
    ``And`` and ``Or``; literals and constants may sit at any level.
    """
    if not isinstance(f, And):
        raise ValueError("a t-normalized formula is a conjunction at the top")

    def depth(node, parent):
        if isinstance(node, (Lit, Const)):
            return 0
        if type(node) is parent:
            raise ValueError(f"{parent.__name__} nested directly in {parent.__name__}")
        if not isinstance(node, (And, Or)):
            raise TypeError(f"not a formula node: {node!r}")
        return 1 + max((depth(g, type(node)) for g in node.args), default=0)

    return depth(f, None)


def _rows_for(chunk, n):
    rows = np.zeros((len(chunk), n), dtype=bool)
    for j, combo in enumerate(chunk):
        rows[j, list(combo)] = True
    return rows


@functools.lru_cache(maxsize=64)
def _small_block(n, weights):
    chunk = [c for w in weights for c in itertools.combinations(range(n), w)]
    rows = _rows_for(chunk, n)
    rows.flags.writeable = False  # shared between calls
    return chunk, rows


def _blocks(n, weights):
    """(combos, rows) chunks in (weight, lexicographic) order."""
    total = sum(math.comb(n, w) for w in weights)
    if total <= _CHUNK:
        if total:
            yield _small_block(n, weights)
        return
    combos = itertools.chain.from_iterable(itertools.combinations(range(n), w) for w in weights)
    while chunk := list(itertools.islice(combos, _CHUNK)):
        yield chunk, _rows_for(chunk, n)


def ws_exists(
    f,
    k: int,
    mode: str = "at_most",
    atoms: Sequence[str] | None = None,
    cap: int = DEFAULT_ORACLE_CAP,
    min_weight: int = 0,
):
    """Satisfying assignment of weight ``k`` (``exact``) or at most ``k``.

    Returns the set of true atom names of the first witness in (weight,
    lexicographic over ``atoms``) order, or None.  ``atoms`` defaults to
    first-occurrence order in ``f``.  ``min_weight`` skips lighter
    assignments in ``at_most`` mode.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if mode not in ("exact", "at_most"):
        raise ValueError(f"unknown mode {mode!r}")
    atoms = list(atoms) if atoms is not None else atoms_in_order(f)
    missing = set(atoms_in_order(f)) - set(atoms)
    if missing:
        raise ValueError(f"atom order is missing {sorted(missing)}")
    n = len(atoms)
    if n > cap:
        raise CapExceeded(f"{n} atoms exceed the oracle cap of {cap}")
    weights = [k] if mode == "exact" else range(min_weight, k + 1)
    weights = tuple(w for w in weights if w <= n)
    for chunk, rows in _blocks(n, weights):
        hits = np.flatnonzero(evaluate_many(f, atoms, rows))
        if hits.size:
            return frozenset(atoms[i] for i in chunk[hits[0]])
    return None


# --------------------------------------------------------------------------
# JSON


def to_json(f):
    if isinstance(f, Lit):
        return {"lit": f.atom, "neg": f.neg}
    if isinstance(f, Const):
        return {"const": f.value}
    if isinstance(f, And):
        return {"op": "and", "args": [to_json(g) for g in f.args]}
    if isinstance(f, Or):
        return {"op": "or", "args": [to_json(g) for g in f.args]}
    raise TypeError(f"not a formula node: {f!r}")


def from_json(obj):
    if "lit" in obj:
        return Lit(obj["lit"], bool(obj.get("neg", False)))
    if "const" in obj:
        return Const(bool(obj["const"]))
    op = obj.get("op")
    if op == "and":
        return And(tuple(from_json(g) for g in obj["args"]))
    if op == "or":
        return Or(tuple(from_json(g) for g in obj["args"]))
    raise ValueError(f"malformed formula object: {obj!r}")


def assignment_to_json(assignment) -> list:
    return sorted(assignment)
