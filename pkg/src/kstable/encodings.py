"""Executable versions of the two reductions between small stable models and
bounded-weight satisfiability.

``encode_T`` / ``encode_Tc`` turn a program into a formula whose models of
weight at most ``(k+1)(k^2+2k)`` correspond to stable models of size at most
``k``.  For each source atom ``q`` the formula uses

* ``c__q``        q is derived within k+1 rounds of T_P,
* ``c__q__i``     q is first derived in round i (1 <= i <= k+1),
* ``cm__q__i``    q is derived before round i (2 <= i <= k+1),
* ``d__q__i``     copies of ``c__q`` that make each model atom cost k^2+2k.

``encode_PC`` goes the other way, from a clause set to a program whose
stable models of size at most ``2k`` match the clause set's non-empty models
of size at most ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ProgramSyntaxError, ReservedNameError
from .formula import And, Lit, Or, iff
from .program import Program, _check_name, derivation_stages, is_stable, reduct

F_ATOM = "__f"


def c_name(q: str) -> str:
    return f"c__{q}"


def ci_name(q: str, i: int) -> str:
    return f"c__{q}__{i}"


def cm_name(q: str, i: int) -> str:
    return f"cm__{q}__{i}"


def d_name(q: str, i: int) -> str:
    return f"d__{q}__{i}"


def weight_bound(k: int) -> int:
    return (k + 1) * (k * k + 2 * k)


def atom_count(n: int, k: int) -> int:
    return n * (k * k + 4 * k + 2)


def encoding_atoms(program: Program, k: int) -> list:
    """Encoding atom names in canonical order (source atoms by id).

    Raises ReservedNameError if two source atoms mangle to the same name
    (possible when source names themselves contain ``__``).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    out = []
    for q in program.names_of(program.atoms):
        out.append(c_name(q))
        out += [ci_name(q, i) for i in range(1, k + 2)]
        out += [cm_name(q, i) for i in range(2, k + 2)]
        out += [d_name(q, i) for i in range(1, k * k + 2 * k + 1)]
    if len(set(out)) != len(out):
        raise ReservedNameError("source atom names collide after mangling")
    return out


def _round_literals(program: Program, rule, i: int):
    """Literals of F3(rule, i), or None when F3(rule, 1) is false."""
    name = program.names
    if i == 1:
        if rule.pos:
            return None
        return [Lit(c_name(name[b]), True) for b in sorted(rule.neg)]
    lits = [Lit(cm_name(name[a], i)) for a in sorted(rule.pos)]
    lits += [Lit(c_name(name[b]), True) for b in sorted(rule.neg)]
    lits.append(Lit(cm_name(name[rule.head], i), True))
    return lits


def _rules_by_head(program: Program) -> dict:
    by_head = {}
    for r in program.rules:
        by_head.setdefault(r.head, []).append(r)
    return by_head


def encode_T(program: Program, k: int) -> And:
    """The theory T(P) as one conjunction of biconditional blocks."""
    encoding_atoms(program, k)
    by_head = _rules_by_head(program)
    blocks = []
    for qid in sorted(program.atoms):
        q = program.names[qid]
        for i in range(2, k + 2):
            blocks.append(iff(Lit(cm_name(q, i)), Or(tuple(Lit(ci_name(q, j)) for j in range(1, i)))))
        blocks.append(iff(Lit(c_name(q)), Or(tuple(Lit(ci_name(q, j)) for j in range(1, k + 2)))))
        for i in range(1, k + 2):
            disjuncts = []
            for r in by_head.get(qid, ()):
                lits = _round_literals(program, r, i)
                disjuncts.append(Or(()) if lits is None else And(tuple(lits)))
            blocks.append(iff(Lit(ci_name(q, i)), Or(tuple(disjuncts))))
        for i in range(1, k * k + 2 * k + 1):
            blocks.append(iff(Lit(c_name(q)), Lit(d_name(q, i))))
    return And(tuple(blocks))


def _sum(*summands) -> Or:
    # every summand is a product, single literals included
    return Or(tuple(s if isinstance(s, And) else And((s,)) for s in summands))


def encode_Tc(program: Program, k: int) -> And:
    """T^c(P): the same theory written as a product of sums of products."""
    encoding_atoms(program, k)
    by_head = _rules_by_head(program)
    clauses = []
    for qid in sorted(program.atoms):
        q = program.names[qid]
        c = Lit(c_name(q))
        for i in range(1, k * k + 2 * k + 1):
            d = Lit(d_name(q, i))
            clauses += [_sum(~c, d), _sum(c, ~d)]
        for i in range(2, k + 2):
            cm = Lit(cm_name(q, i))
            clauses.append(_sum(~cm, *(Lit(ci_name(q, j)) for j in range(1, i))))
            clauses += [_sum(Lit(ci_name(q, j), True), cm) for j in range(1, i)]
        clauses.append(_sum(~c, *(Lit(ci_name(q, j)) for j in range(1, k + 2))))
        clauses += [_sum(Lit(ci_name(q, j), True), c) for j in range(1, k + 2)]
        for i in range(1, k + 2):
            ci = Lit(ci_name(q, i))
            products = []
            for r in by_head.get(qid, ()):
                lits = _round_literals(program, r, i)
                if lits is None:
                    continue  # F3 false: drops out of the sum, its converse clause holds
                products.append(And(tuple(lits)))
                clauses.append(_sum(*(~lit for lit in lits), ci))
            clauses.append(_sum(~ci, *products))
    return And(tuple(clauses))


def build_witness(program: Program, model, k: int) -> frozenset:
    """The satisfying assignment of T(P) induced by a stable model of size <= k."""
    model = frozenset(model)
    if len(model) > k or not is_stable(program, model):
        raise ValueError("build_witness needs a stable model with at most k atoms")
    stages = derivation_stages(reduct(program, model))
    core = set()
    for qid in model:
        q, s = program.names[qid], stages[qid]
        core.add(c_name(q))
        core.add(ci_name(q, s))
        core.update(cm_name(q, i) for i in range(s + 1, k + 2))
    if len(core) > 2 * k + k * k:
        raise AssertionError(f"|U_M| = {len(core)} exceeds 2k + k^2")
    full = core | {d_name(program.names[qid], i) for qid in model for i in range(1, k * k + 2 * k + 1)}
    if len(full) > weight_bound(k):
        raise AssertionError(f"witness weight {len(full)} exceeds {weight_bound(k)}")
    return frozenset(full)


def decode_witness(program: Program, assignment, k: int) -> frozenset:
    """M(U): the source atoms whose ``c__q`` is true in ``assignment``."""
    known = set(encoding_atoms(program, k))
    unknown = set(assignment) - known
    if unknown:
        raise ValueError(f"not encoding atoms: {sorted(unknown)}")
    by_c = {c_name(program.names[q]): q for q in program.atoms}
    return frozenset(by_c[a] for a in assignment if a in by_c)


# --------------------------------------------------------------------------
# clause sets and the reverse reduction


@dataclass(frozen=True)
class ClauseSet:
    """CNF as a tuple of clauses, each a tuple of :class:`Lit`."""

    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(dict.fromkeys(c)) for c in self.clauses)
        for c in clauses:
            if not c:
                raise ValueError("clause with no literals")
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def from_ints(cls, clauses, prefix: str = "x"):
        return cls(tuple(tuple(Lit(f"{prefix}{abs(v)}", v < 0) for v in c) for c in clauses))

    @property
    def atoms(self) -> list:
        seen = {}
        for c in self.clauses:
            for lit in c:
                seen.setdefault(lit.atom, None)
        return list(seen)

    def to_formula(self) -> And:
        return And(tuple(Or(c) for c in self.clauses))


def parse_dimacs(text: str) -> ClauseSet:
    clauses, current = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped[0] in "c%":
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ProgramSyntaxError("malformed problem line", lineno, 1)
            continue
        for tok in stripped.split():
            try:
                v = int(tok)
            except ValueError:
                raise ProgramSyntaxError(f"not an integer literal: {tok!r}", lineno, line.find(tok) + 1) from None
            if v == 0:
                if not current:
                    raise ValueError(f"line {lineno}: clause with no literals")
                clauses.append(current)
                current = []
            else:
                current.append(v)
    if current:
        clauses.append(current)
    return ClauseSet.from_ints(clauses)


def encode_PC(clauses: ClauseSet, k: int) -> Program:
    """P^C = S + P1 + P2 for the clause set and bound ``k >= 1``.

    S holds ``k`` copies of a choice of exactly one atom (copy ``i`` uses
    atoms ``x__i``), P1 projects every copy back to its atom, and P2 has one
    rule per clause deriving the fresh atom ``__f`` from a violated clause
    together with ``not __f``, which kills the candidate.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    xs = clauses.atoms
    for x in xs:
        _check_name(x, allow_reserved=False)
    copies = {(x, i): f"{x}__{i}" for x in xs for i in range(1, k + 1)}
    generated = set(copies.values()) | {F_ATOM}
    if generated & set(xs) or len(set(copies.values())) != len(copies):
        raise ReservedNameError("clause atom names collide with generated copy names")

    rules = []
    for i in range(1, k + 1):
        for x in xs:
            rules.append((copies[x, i], (), [copies[y, i] for y in xs if y != x]))
    for x in xs:
        for i in range(1, k + 1):
            rules.append((x, [copies[x, i]], ()))
    for clause in clauses.clauses:
        pos = [lit.atom for lit in clause if lit.neg]
        neg = [lit.atom for lit in clause if not lit.neg]
        rules.append((F_ATOM, pos, neg + [F_ATOM]))
    return Program.from_rules(rules, dedup=False)

