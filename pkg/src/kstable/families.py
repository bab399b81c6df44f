"""Generated benchmark programs."""

from .program import Program


def chain(n: int) -> Program:
    """``a1.  a{i+1} :- a{i}.  x :- not a1.`` with unique stable model a1..an."""
    if n < 1:
        raise ValueError("chain needs n >= 1")
    rules = [("a1", (), ())]
    rules += [(f"a{i + 1}", [f"a{i}"], ()) for i in range(1, n)]
    rules.append(("x", (), ["a1"]))
    return Program.from_rules(rules)


def negclique(n: int) -> Program:
    """``a{j} :- not a{l} (all l != j)``: exactly one atom is chosen."""
    if n < 1:
        raise ValueError("negclique needs n >= 1")
    atoms = [f"a{j}" for j in range(1, n + 1)]
    return Program.from_rules((a, (), [b for b in atoms if b != a]) for a in atoms)


FAMILIES = {"chain": chain, "negclique": negclique}
