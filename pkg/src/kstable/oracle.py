"""Exhaustive stable-model enumeration for small programs.

Deliberately naive: it re-derives stability with its own bitmask fixpoint
rather than calling into :mod:`kstable.program`, so it can serve as an
independent reference for the solvers.
"""

from __future__ import annotations

import itertools

from .errors import CapExceeded
from .program import Program

DEFAULT_CAP = 20


def _masks(program: Program):
    return [
        (1 << r.head, sum(1 << a for a in r.pos), sum(1 << a for a in r.neg))
        for r in program.rules
    ]


def _stable_mask(rules, m: int) -> bool:
    # naive T_P iteration on the reduct until nothing changes
    reduct = [(h, pos) for h, pos, neg in rules if not neg & m]
    lm = 0
    changed = True
    while changed:
        changed = False
        for h, pos in reduct:
            if pos & lm == pos and not h & lm:
                lm |= h
                changed = True
        if lm & ~m:
            return False
    return lm == m


def enumerate_stable_models(program: Program, cap: int = DEFAULT_CAP, space: str = "heads") -> list:
    """All stable models, sorted by size then lexicographically by atom ids.

    ``space`` picks the candidate family: subsets of h(P) (``heads``, the
    default and complete since stable models consist of heads), subsets of
    At(P) (``atoms``), or the models determined by subsets of Neg(P)
    (``neg``).
    """
    rules = _masks(program)
    if space == "neg":
        return _enumerate_by_neg(program, rules, cap)
    pool = sorted(program.heads if space == "heads" else program.atoms)
    if space not in ("heads", "atoms"):
        raise ValueError(f"unknown search space {space!r}")
    if len(pool) > cap:
        raise CapExceeded(f"search space of {len(pool)} atoms exceeds cap {cap}")
    found = []
    for size in range(len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            if _stable_mask(rules, sum(1 << a for a in combo)):
                found.append(frozenset(combo))
    return found


def _enumerate_by_neg(program, rules, cap):
    neg = sorted(program.neg_atoms)
    if len(neg) > cap:
        raise CapExceeded(f"search space of {len(neg)} atoms exceeds cap {cap}")
    neg_mask = sum(1 << a for a in neg)
    found = set()
    for size in range(len(neg) + 1):
        for combo in itertools.combinations(neg, size):
            b = sum(1 << a for a in combo)
            lm = 0
            changed = True
            while changed:
                changed = False
                for h, pos, nb in rules:
                    if not nb & b and pos & lm == pos and not h & lm:
                        lm |= h
                        changed = True
            if lm & neg_mask == b:
                found.add(frozenset(i for i in range(lm.bit_length()) if lm >> i & 1))
    return sorted(found, key=lambda m: (len(m), sorted(m)))


def min_stable_size(program: Program, cap: int = DEFAULT_CAP):
    models = enumerate_stable_models(program, cap)
    return min((len(m) for m in models), default=None)


def max_stable_size(program: Program, cap: int = DEFAULT_CAP):
    models = enumerate_stable_models(program, cap)
    return max((len(m) for m in models), default=None)
