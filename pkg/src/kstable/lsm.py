"""Large stable models: is there a stable model with at least |P| - k atoms?

For fixed ``k`` this runs in time linear in the program size.  After dropping
``not a`` for atoms that head no rule and discarding rules with more than
``k`` negated atoms, a large stable model can only exist if at most
``k + k*k`` atoms remain negated; every subset of them is then tried as the
set of negated atoms that are true.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .program import Program, bounded_neg_subprogram, is_stable, neg_candidate, star_transform


@dataclass(frozen=True)
class LsmAnswer:
    answer: bool
    witness: frozenset | None
    rules: int
    neg_size: int
    subsets_tried: int
    early_exit: bool = False


def solve_lsm(program: Program, k: int) -> LsmAnswer:
    if k < 0:
        raise ValueError("k must be non-negative")
    threshold = max(0, len(program) - k)
    q = star_transform(program)
    qk = bounded_neg_subprogram(q, k)
    neg = sorted(qk.neg_atoms)
    if len(neg) > k + k * k:
        return LsmAnswer(False, None, len(program), len(neg), 0, early_exit=True)

    tried = 0
    for size in range(len(neg) + 1):
        for true_neg in itertools.combinations(neg, size):
            tried += 1
            m = neg_candidate(qk, true_neg)
            if m is None or len(m) < threshold:
                continue
            if not is_stable(program, m):
                raise AssertionError(f"LSM witness {sorted(m)} is not stable in the input program")
            return LsmAnswer(True, m, len(program), len(neg), tried)
    return LsmAnswer(False, None, len(program), len(neg), tried)
