"""Small stable models: is there a stable model with at most k atoms?

A stable model ``M = A + {a}`` of a proper program is found through its base
``A`` (``|A| = |M| - 1``): restrict the program to the rules that ``A``
neither blocks nor leaves with an underived positive atom, tabulate three
per-atom quantities over that restriction, and read off every ``a`` that
completes ``A``.  The outer loop runs over all bases with fewer than ``k``
atoms, giving ``O(f(k) * m * n**(k-1))`` for fixed ``k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded
from .program import Program, Rule, _least_model, is_stable, proper_filter

HORN_RULES_CAP = 4
BASE_PROGRAMS_CAP = 3
MODES = ("optimized", "literal")


@dataclass(frozen=True)
class SsmAnswer:
    answer: bool
    witness: frozenset | None
    bases_examined: int


@dataclass(frozen=True, eq=False)
class FGHTables:
    """F, G and H for a base ``A`` over the atoms ``domain = At(PA) - A``.

    H is stored sparsely: ``blockers[r]`` is the intersection of the negative
    bodies of the rules ``s`` with ``horn(s) == r``, so ``H(r, a) == 1``
    exactly when ``r`` has such rules and ``a`` is not in ``blockers[r]``.
    """

    base: frozenset
    domain: frozenset
    F: dict
    G: dict
    blockers: dict

    def H(self, rule: Rule, atom: int) -> int:
        block = self.blockers.get(rule)
        return int(block is not None and atom not in block)

    def h_table(self, rules) -> dict:
        return {(r, a): self.H(r, a) for r in rules for a in self.domain}

    def supporting_rules(self, atom: int) -> list:
        """Rules r of R(A) with H(r, atom) = 1."""
        return [r for r, block in self.blockers.items() if atom not in block]


def restrict_to_base(program: Program, base) -> Program:
    """P(A): rules not blocked by ``base`` whose positive body lies inside it."""
    base = frozenset(base)
    return program.with_rules(r for r in program.rules if r.pos <= base and not (r.neg & base))


def one_step_rules(program: Program, base):
    """P'(A) and the forbidden atoms B = {a_r}: rules one positive atom short of A."""
    base = frozenset(base)
    kept, forbidden = [], set()
    for r in program.rules:
        if r.neg & base or r.head in base:
            continue
        outside = r.pos - base
        if len(outside) == 1:
            kept.append(r)
            forbidden |= outside
    return program.with_rules(kept), frozenset(forbidden)


def horn_rules_over(base, cap: int = HORN_RULES_CAP) -> list:
    """R(A): every proper Horn rule with head and body inside ``base``.

    Canonical order: by head id, then body by size and lexicographically.
    The list index is the rule id.  ``|R(A)| = |A| * 2**(|A|-1)``.
    """
    return list(_horn_rules_over(tuple(sorted(base)), cap))


@lru_cache(maxsize=4096)
def _horn_rules_over(atoms: tuple, cap: int) -> tuple:
    if len(atoms) > cap:
        raise CapExceeded(f"|A| = {len(atoms)} exceeds the R(A) cap of {cap}")
    out = []
    for head in atoms:
        rest = [a for a in atoms if a != head]
        for size in range(len(rest) + 1):
            for body in itertools.combinations(rest, size):
                out.append(Rule(head, body))
    return tuple(out)


def base_programs(base, cap: int = BASE_PROGRAMS_CAP) -> list:
    """The family of Horn programs Q within R(A) with LM(Q) = A.

    Doubly exponential in ``|A|``; only meant for ``|A| <= 3``.  The empty
    base yields the single empty program.
    """
    return list(_base_programs(tuple(sorted(base)), cap))


@lru_cache(maxsize=4096)
def _base_programs(atoms: tuple, cap: int) -> tuple:
    if len(atoms) > cap:
        raise CapExceeded(f"|A| = {len(atoms)} exceeds the base-program cap of {cap}")
    rules = _horn_rules_over(atoms, max(cap, HORN_RULES_CAP))
    target = frozenset(atoms)
    out = []
    for size in range(len(rules) + 1):
        for q in itertools.combinations(rules, size):
            if _least_model(q) == target:
                out.append(frozenset(q))
    return tuple(out)


def compute_tables(pa: Program, base) -> FGHTables:
    """F, G, H for an A-program in one pass each.

    F(a) = 0 exactly when ``a`` lies in every set ``{h(s)} | b-(s)`` with
    ``h(s)`` outside A; that intersection is found by counting memberships.
    H groups the rules by ``horn(s)`` and intersects negative bodies per group
    the same way.
    """
    base = frozenset(base)
    domain = pa.atoms - base

    family = 0
    counts = {}
    g = dict.fromkeys(domain, 0)
    groups = {}
    for s in pa.rules:
        if s.head not in base:
            family += 1
            for x in s.neg | {s.head}:
                counts[x] = counts.get(x, 0) + 1
        if s.head not in s.neg and s.head in g:
            g[s.head] += 1
        if s.head in base and s.head not in s.pos and s.pos <= base:
            groups.setdefault(s.horn(), []).append(s.neg)

    f = {a: int(counts.get(a, 0) != family) for a in domain}

    blockers = {}
    for r, negs in groups.items():
        member = {}
        for neg in negs:
            for x in neg:
                member[x] = member.get(x, 0) + 1
        blockers[r] = frozenset(x for x, c in member.items() if c == len(negs))
    return FGHTables(base, domain, f, g, blockers)


def a_based_exists(pa: Program, base, atom: int, tables: FGHTables, mode: str = "optimized") -> bool:
    """Whether ``base + {atom}`` is an A-based stable model of the A-program ``pa``.

    ``literal`` scans every Q with LM(Q) = A for one whose rules all have
    H(r, atom) = 1.  ``optimized`` instead takes all such rules at once and
    checks that their least model is A: least models grow with the rule set
    and stay inside A, so some subset reaches A iff the whole set does.
    """
    base = frozenset(base)
    if atom in base or atom not in pa.atoms:
        raise ValueError("atom must belong to At(PA) minus the base")
    if tables.F[atom] != 0 or tables.G[atom] <= 0:
        return False
    if mode == "literal":
        return any(all(tables.H(r, atom) for r in q) for q in base_programs(base))
    if mode == "optimized":
        return _least_model(tables.supporting_rules(atom)) == base
    raise ValueError(f"unknown mode {mode!r}")


def solve_ssm(program: Program, k: int, mode: str = "optimized", prune: bool = True) -> SsmAnswer:
    """Decide SSM(k), returning the first witness in (base size, base ids, atom id) order.

    With ``prune`` the bases are drawn from h(P) rather than At(P); stable
    models consist of head atoms, so nothing is lost.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if is_stable(program, frozenset()):
        return SsmAnswer(True, frozenset(), 0)

    proper = proper_filter(program)
    pool = sorted(proper.heads if prune else proper.atoms)
    examined = 0
    for size in range(min(k, len(pool) + 1)):
        for combo in itertools.combinations(pool, size):
            base = frozenset(combo)
            examined += 1
            pa = restrict_to_base(proper, base)
            _, forbidden = one_step_rules(proper, base)
            tables = compute_tables(pa, base)
            for atom in sorted(tables.domain - forbidden):
                if a_based_exists(pa, base, atom, tables, mode):
                    witness = base | {atom}
                    if not is_stable(program, witness) or len(witness) > k:
                        raise AssertionError(f"SSM witness {sorted(witness)} failed verification")
                    return SsmAnswer(True, witness, examined)
    return SsmAnswer(False, None, examined)
