import itertools
import random

import pytest
from hypothesis import given, settings

import brute
from gen import random_a_program, random_program
from kstable.errors import CapExceeded
from kstable.oracle import enumerate_stable_models, min_stable_size
from kstable.program import Rule, is_stable, least_model, parse_program, proper_filter, reduct
from kstable.ssm import (
    a_based_exists,
    base_programs,
    compute_tables,
    horn_rules_over,
    one_step_rules,
    restrict_to_base,
    solve_ssm,
)
from strategies import programs


def ids(p, names):
    return frozenset(p.index[n] for n in names)


def texts(p):
    return [p.rule_text(r) for r in p.rules]


# -- P(A), P'(A) -------------------------------------------------------------


def test_restrict_to_base():
    p = parse_program("a :- b, not c. b.")
    assert len(restrict_to_base(p, ids(p, "b"))) == 2
    p = parse_program("a :- b, not c.")
    assert len(restrict_to_base(p, ids(p, "c"))) == 0
    p = parse_program("a :- b, d.")
    assert len(restrict_to_base(p, ids(p, "b"))) == 0


def test_restricted_program_is_an_a_program():
    p = parse_program("a :- b, not c. b. c :- a. d :- b, not a.")
    base = ids(p, "b")
    pa = restrict_to_base(p, base)
    assert restrict_to_base(pa, base).rules == pa.rules


def test_one_step_rules():
    p = parse_program("a :- b, c, not d.")
    rules, forbidden = one_step_rules(p, ids(p, "b"))
    assert len(rules) == 1 and p.names_of(forbidden) == ["c"]
    p = parse_program("a :- b.")
    assert one_step_rules(p, ids(p, "b"))[1] == frozenset()
    assert len(one_step_rules(p, ids(p, "b"))[0]) == 0
    p = parse_program("b :- c.")
    rules, forbidden = one_step_rules(p, ids(p, "b"))
    assert len(rules) == 0 and forbidden == frozenset()


# -- R(A) and the family of base programs -------------------------------------


def test_horn_rules_over():
    assert horn_rules_over(frozenset()) == []
    assert horn_rules_over(frozenset({5})) == [Rule(5)]
    x, y = 0, 1
    assert horn_rules_over(frozenset({x, y})) == [Rule(x), Rule(x, {y}), Rule(y), Rule(y, {x})]


@pytest.mark.parametrize("size", range(5))
def test_horn_rules_count(size):
    rules = horn_rules_over(frozenset(range(size)))
    assert len(rules) == size * 2 ** (size - 1) if size else len(rules) == 0
    assert len(set(rules)) == len(rules)
    assert all(r.is_proper and r.is_horn for r in rules)
    assert set(rules) == set(brute.horn_rules(range(size)))


def test_horn_rules_cap():
    with pytest.raises(CapExceeded):
        horn_rules_over(frozenset(range(5)))
    assert len(horn_rules_over(frozenset(range(5)), cap=5)) == 80


def test_base_programs_small():
    assert base_programs(frozenset()) == [frozenset()]
    assert base_programs(frozenset({0})) == [frozenset({Rule(0)})]
    x, y = 0, 1
    fams = base_programs(frozenset({x, y}))
    assert frozenset({Rule(x), Rule(y)}) in fams
    assert frozenset({Rule(x), Rule(y, {x})}) in fams
    assert frozenset({Rule(x, {y}), Rule(y, {x})}) not in fams
    # all 16 subsets of the four rules, filtered by a naive least model
    expected = [
        frozenset(q)
        for r in range(5)
        for q in itertools.combinations(horn_rules_over(frozenset({x, y})), r)
        if brute.lm(q) == {x, y}
    ]
    assert fams == expected
    assert len(fams) == 8  # 6 with the fact x., 2 more with y. and x :- y


def test_base_programs_cap():
    with pytest.raises(CapExceeded):
        base_programs(frozenset(range(4)))


# -- F, G, H --------------------------------------------------------------


def test_tables_two_loop():
    p = parse_program("a :- not b. b :- not a.")
    t = compute_tables(p, frozenset())
    a = p.index["a"]
    assert t.F[a] == 0 and t.G[a] == 1
    assert t.blockers == {}


def test_tables_blocked_atom():
    p = parse_program("c :- x, not d.")
    t = compute_tables(p, ids(p, "x"))
    assert t.F[p.index["d"]] == 0


def test_tables_unmentioned_atom():
    # z only occurs in a second rule so that it is in At(PA)
    p = parse_program("c :- x. z :- x, not z.")
    base = ids(p, "x")
    t = compute_tables(p, base)
    f, _, _ = brute.tables(p, base)
    assert t.F[p.index["z"]] == f[p.index["z"]] == 1


def test_tables_h_grouping():
    p = parse_program("x. y :- x, not a. y :- x, not a, not b. a :- x, y.")
    base = ids(p, "xy")
    pa = restrict_to_base(p, base)
    t = compute_tables(pa, base)
    r = Rule(p.index["y"], {p.index["x"]})
    assert t.H(r, p.index["a"]) == 0
    assert t.H(r, p.index["b"]) == 1
    assert t.H(Rule(p.index["x"]), p.index["a"]) == 1
    assert t.H(Rule(p.index["x"], {p.index["y"]}), p.index["b"]) == 0


@settings(max_examples=150, deadline=None)
@given(programs(max_rules=8))
def test_tables_match_definitions(p):
    p = proper_filter(p)
    for size in range(3):
        for combo in itertools.combinations(sorted(p.atoms), size):
            base = frozenset(combo)
            pa = restrict_to_base(p, base)
            t = compute_tables(pa, base)
            f, g, h = brute.tables(pa, base)
            assert t.F == f and t.G == g
            assert t.h_table(brute.horn_rules(base)) == h


# -- A-based stable models ----------------------------------------------------


def test_a_based_examples():
    p = parse_program("a :- not b. b :- not a.")
    t = compute_tables(p, frozenset())
    assert a_based_exists(p, frozenset(), p.index["a"], t)

    p = parse_program("p :- not p.")
    t = compute_tables(p, frozenset())
    assert t.G[p.index["p"]] == 0
    assert not a_based_exists(p, frozenset(), p.index["p"], t)

    p = parse_program("x. a :- x.")
    base = ids(p, "x")
    t = compute_tables(p, base)
    a = p.index["a"]
    assert (t.F[a], t.G[a]) == (0, 1)
    for mode in ("literal", "optimized"):
        assert a_based_exists(p, base, a, t, mode)


def test_a_based_errors():
    p = parse_program("x. a :- x.")
    base = ids(p, "x")
    t = compute_tables(p, base)
    with pytest.raises(ValueError):
        a_based_exists(p, base, p.index["x"], t)
    with pytest.raises(ValueError):
        a_based_exists(p, base, p.index["a"], t, mode="fast")


def test_modes_agree_and_match_definition():
    rng = random.Random(11)
    for _ in range(300):
        pa, base = random_a_program(rng)
        t = compute_tables(pa, base)
        for a in sorted(pa.atoms - base):
            lit = a_based_exists(pa, base, a, t, "literal")
            assert lit == a_based_exists(pa, base, a, t, "optimized")
            assert lit == brute.literal_a_based(pa, base, a)
            # equivalent to A + {a} being an A-based stable model of pa
            m = base | {a}
            a_based = is_stable(pa, m) and m <= least_model(reduct(restrict_to_base(pa, base), m))
            assert lit == a_based


# -- the solver ---------------------------------------------------------------


def test_solve_examples():
    p = parse_program("a :- not b. b :- not a.")
    ans = solve_ssm(p, 1)
    assert ans.answer and p.names_of(ans.witness) == ["a"]
    assert not solve_ssm(parse_program("a."), 0).answer
    p = parse_program("a. b :- a.")
    assert not solve_ssm(p, 1).answer
    ans = solve_ssm(p, 2)
    assert ans.answer and p.names_of(ans.witness) == ["a", "b"]


def test_empty_model_shortcut():
    ans = solve_ssm(parse_program("a :- b."), 0)
    assert ans.answer and ans.witness == frozenset() and ans.bases_examined == 0


def test_solve_rejects_bad_arguments():
    p = parse_program("a.")
    with pytest.raises(ValueError):
        solve_ssm(p, -1)
    with pytest.raises(ValueError):
        solve_ssm(p, 1, mode="fast")


def test_literal_mode_cap():
    text = " ".join(f"a{i}." for i in range(6))
    with pytest.raises(CapExceeded):
        solve_ssm(parse_program(text), 6, mode="literal")
    assert solve_ssm(parse_program(text), 6).answer


def _check(p, k):
    ans = solve_ssm(p, k)
    best = min_stable_size(p)
    assert ans.answer == (best is not None and best <= k)
    if ans.answer:
        assert is_stable(p, ans.witness) and len(ans.witness) <= k
    assert solve_ssm(p, k, prune=False).answer == ans.answer
    if k <= 4:
        assert solve_ssm(p, k, mode="literal").answer == ans.answer


@settings(max_examples=250, deadline=None)
@given(programs(atoms="abcdef", max_rules=8))
def test_matches_oracle(p):
    for k in range(4):
        _check(p, k)


def test_matches_oracle_random_corpus():
    rng = random.Random(5)
    for _ in range(200):
        p = random_program(rng, min_rules=1)
        for k in range(5):
            _check(p, k)


@settings(max_examples=200, deadline=None)
@given(programs(atoms="abcde", max_rules=8))
def test_base_decomposition(p):
    # every stable model of size j >= 1 has a base A of size j - 1 inside it
    p = proper_filter(p)
    for m in enumerate_stable_models(p):
        if not m:
            continue
        assert any(
            m <= least_model(reduct(restrict_to_base(p, frozenset(a)), m))
            for a in itertools.combinations(sorted(m), len(m) - 1)
        )
