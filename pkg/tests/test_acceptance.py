"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line in ``conftest.ACCEPTANCE`` before
asserting, so the summary lists all ten even when some fail.  Reference
values come from the brute-force code in ``oracles.py``.
"""

import functools
import random
import time

import numpy as np

from bridgebound import (
    FALSE,
    And,
    Atom,
    DefinitionSet,
    Equiv,
    Implies,
    Not,
    Or,
    Polarity,
    Theory,
    ackermann,
    compose,
    equivalent,
    find_proper_cover,
    is_exact,
    parse,
    polarity,
    shannon_exists,
    snc,
    tightest,
    verify,
    vocabulary,
    wsc,
)
from bridgebound.abstraction import AlphaAbstraction
from bridgebound.formula import conjoin, disjoin
from conftest import ACCEPTANCE
from instances import random_formula, random_instance
from oracles import (
    all_functions,
    cofactor_projection,
    necessary,
    projection,
    sufficient,
    table,
)

P = parse

PLAYER = ["mood -> (g1 | g2)", "(g1 | g2) -> (play & enjoy)"]
PLAYER_KEEP = {"mood", "game", "play", "enjoy"}


def report(number, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title} ({detail})"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def same_table(f, g, names):
    return np.array_equal(table(f, names), table(g, names))


def oracle_equivalent(f, g):
    return same_table(f, g, sorted(vocabulary(f) | vocabulary(g)))


# -- worked examples ---------------------------------------------------------


def test_criterion_1_player_bounds():
    start = time.perf_counter()
    ab = tightest(PLAYER, ["(g1 | g2) -> game"], PLAYER_KEEP)
    elapsed = time.perf_counter() - start
    ok = (
        oracle_equivalent(ab.lower_formula, P("~mood & (~game | (play & enjoy))"))
        and oracle_equivalent(ab.upper_formula, P("(mood -> (play & enjoy)) & (mood -> game)"))
        and elapsed < 1.0
    )
    report(1, "player tightest abstraction", ok, f"{elapsed:.3f} s")


def test_criterion_2_engine_exact():
    start = time.perf_counter()
    ab = tightest(["(bc | ef) -> ecs"], ["sp <-> (bc | ef)"], {"sp", "ecs"})
    exact = is_exact(ab, ["sp <-> (bc | ef)"])
    elapsed = time.perf_counter() - start
    target = P("sp -> ecs")
    ok = (
        oracle_equivalent(ab.lower_formula, target)
        and oracle_equivalent(ab.upper_formula, target)
        and exact
        and elapsed < 1.0
    )
    report(2, "engine exactness", ok, f"exact={exact}, {elapsed:.3f} s")


def test_criterion_3_definitional_player():
    bridge = ["game <-> (g1 | g2)"]
    start = time.perf_counter()
    ab = tightest(PLAYER, bridge, PLAYER_KEEP)
    exact = is_exact(ab, bridge)
    elapsed = time.perf_counter() - start
    target = P("(mood -> game) & (game -> (play & enjoy))")
    ok = (
        oracle_equivalent(ab.lower_formula, target)
        and oracle_equivalent(ab.upper_formula, target)
        and exact
        and elapsed < 1.0
    )
    report(3, "definitional player bridge", ok, f"exact={exact}, {elapsed:.3f} s")


# -- random instances --------------------------------------------------------


@functools.lru_cache(maxsize=None)
def criterion_4_instances():
    rng = random.Random(20240401)
    return tuple(random_instance(rng, max_atoms=10, max_depth=6) for _ in range(500))


@functools.lru_cache(maxsize=None)
def criterion_4_results():
    out = []
    for inst in criterion_4_instances():
        out.append((wsc(inst.source, inst.bridge, inst.keep), snc(inst.source, inst.bridge, inst.keep)))
    return tuple(out)


def test_criterion_4_cofactor_oracle():
    start = time.perf_counter()
    failures = 0
    for inst, (lo, up) in zip(criterion_4_instances(), criterion_4_results()):
        s, b = inst.source.conjunction(), inst.bridge.conjunction()
        voc = vocabulary([s, b])
        drop = voc - inst.keep
        keep = sorted(inst.keep)
        exp_up = cofactor_projection(And(b, s), drop, inst.keep, "exists")
        exp_lo = cofactor_projection(Implies(b, s), drop, inst.keep, "forall")
        if not (
            np.array_equal(table(up, keep), exp_up)
            and np.array_equal(table(lo, keep), exp_lo)
        ):
            failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 60
    report(4, "snc/wsc match cofactor enumeration", ok, f"500 instances, {failures} failures, {elapsed:.1f} s")


def test_criterion_5_tightest_brute_force():
    rng = random.Random(5)
    funcs = all_functions(4)
    assert funcs.shape == (65536, 16)
    start = time.perf_counter()
    failures = 0
    for _ in range(200):
        inst = random_instance(rng, max_atoms=9, max_depth=5, keep_size=4)
        lo = wsc(inst.source, inst.bridge, inst.keep)
        up = snc(inst.source, inst.bridge, inst.keep)
        keep = sorted(inst.keep)
        names = keep + sorted(vocabulary([*inst.source, *inst.bridge]) - inst.keep)
        proj = projection(names, keep)
        t = table(inst.source.conjunction(), names)
        b = table(inst.bridge.conjunction(), names)
        suff = sufficient(funcs, b, t, proj, 4)
        nec = necessary(funcs, b, t, proj, 4)
        lo_t, up_t = table(lo, keep), table(up, keep)
        # every sufficient C entails wsc; snc entails every necessary D
        weakest = not (funcs[suff] & ~lo_t).any()
        strongest = not (~funcs[nec] & up_t).any()
        # and the bounds are themselves sufficient / necessary
        code = lambda row: int(np.dot(row, 1 << np.arange(16)))  # noqa: E731
        members = suff[code(lo_t)] and nec[code(up_t)]
        if not (weakest and strongest and members):
            failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 120
    report(5, "tightestness against all 65536 candidates", ok, f"200 instances, {failures} failures, {elapsed:.1f} s")


def test_criterion_6_approximation():
    failures = 0
    for inst, (lo, up) in zip(criterion_4_instances(), criterion_4_results()):
        b = inst.bridge.conjunction()
        names = sorted(vocabulary([b, lo, up]))
        bt, lt, ut = table(b, names), table(lo, names), table(up, names)
        if (bt & lt & ~ut).any():
            failures += 1
    report(6, "bridge entails wsc -> snc", failures == 0, f"500 instances, {failures} failures")


def _pivot_body(rng):
    """A conjunction with an Ackermann pivot for p and a matching remainder."""
    others = ["a", "b", "c", "d"]
    definiens = random_formula(rng, others, rng.randint(0, 3))
    if rng.random() < 0.5:
        pivot, wanted = Implies(Atom("p"), definiens), Polarity.POSITIVE
    else:
        pivot, wanted = Implies(definiens, Atom("p")), Polarity.NEGATIVE
    while True:
        rest = [random_formula(rng, others + ["p"], rng.randint(1, 4)) for _ in range(rng.randint(1, 3))]
        if polarity(conjoin(rest), "p") is wanted:
            break
    parts = rest + [pivot]
    rng.shuffle(parts)
    return conjoin(parts)


def test_criterion_7_ackermann_agreement():
    rng = random.Random(7)
    start = time.perf_counter()
    failures = 0
    for _ in range(200):
        body = _pivot_body(rng)
        result = ackermann(body, "p")
        if result is None or "p" in vocabulary(result):
            failures += 1
            continue
        if not oracle_equivalent(result, shannon_exists(body, {"p"})):
            failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 30
    report(7, "ackermann agrees with shannon", ok, f"200 bodies, {failures} failures, {elapsed:.1f} s")


def _variant(rng, d):
    """``d`` or an equivalent rewriting of it."""
    choice = rng.randrange(5)
    if choice == 0:
        return Not(Not(d))
    if choice == 1:
        return Or(d, FALSE)
    if choice == 2 and isinstance(d, (And, Or, Equiv)):
        return type(d)(d.right, d.left)
    if choice == 3:
        return And(d, d)
    return d


def _fill(rng, f, holes):
    if isinstance(f, Atom):
        return _variant(rng, holes[f.name]) if f.name in holes else f
    if isinstance(f, Not):
        return Not(_fill(rng, f.child, holes))
    if isinstance(f, (And, Or, Implies, Equiv)):
        return type(f)(_fill(rng, f.left, holes), _fill(rng, f.right, holes))
    return f


def _definitional_instance(rng):
    kept = [f"k{i}" for i in range(rng.randint(1, 3))]
    dropped = [f"d{i}" for i in range(rng.randint(1, 4))]
    heads = [f"h{i}" for i in range(rng.randint(1, 2))]
    defs = {}
    for h in heads:
        while True:
            d = random_formula(rng, dropped, rng.randint(1, 3))
            if vocabulary(d):
                defs[h] = d
                break
    holes = {f"hole{i}": defs[h] for i, h in enumerate(heads)}
    source = []
    for _ in range(rng.randint(1, 2)):
        while True:
            skeleton = random_formula(rng, kept + list(holes), rng.randint(1, 4))
            if vocabulary(skeleton) & set(holes):
                break
        source.append(_fill(rng, skeleton, holes))
    return Theory(tuple(source)), DefinitionSet.from_mapping(defs), frozenset(kept) | set(heads)


def test_criterion_8_cover_implies_exact():
    rng = random.Random(8)
    found = failures = attempts = 0
    while found < 100 and attempts < 1000:
        attempts += 1
        source, defs, keep = _definitional_instance(rng)
        drop = source.vocabulary() - keep
        cover = find_proper_cover(source, defs, drop)
        if cover is None:
            continue
        found += 1
        bridge = defs.as_theory()
        if not is_exact(tightest(source, bridge, keep), bridge):
            failures += 1
    ok = found == 100 and failures == 0
    report(8, "proper cover implies exactness", ok, f"{found} covered of {attempts} generated, {failures} failures")


def _two_stage(rng):
    pool = [f"s{i}" for i in range(rng.randint(2, 4))]
    source = Theory(tuple(random_formula(rng, pool, rng.randint(1, 4)) for _ in range(rng.randint(1, 2))))
    vs = sorted(source.vocabulary())
    fresh_a = [f"a{i}" for i in range(rng.randint(1, 2))]
    va1 = rng.sample(vs, rng.randint(0, len(vs))) + fresh_a
    fresh_b = [f"b{i}" for i in range(rng.randint(0, 2))]
    carried = rng.sample(fresh_a, rng.randint(0, len(fresh_a)))
    va2 = carried + fresh_b or [fresh_a[0]]
    b1 = Theory(tuple(random_formula(rng, vs + fresh_a, rng.randint(1, 4)) for _ in range(rng.randint(1, 2))))
    b2 = Theory(tuple(random_formula(rng, va1 + fresh_b, rng.randint(1, 4)) for _ in range(rng.randint(0, 2))))
    return source, (b1, frozenset(va1)), (b2, frozenset(va2))


def test_criterion_9_layered_composition():
    rng = random.Random(9)
    start = time.perf_counter()
    failures = 0
    for _ in range(200):
        source, (b1, va1), (b2, va2) = _two_stage(rng)
        assert not (source.vocabulary() & va2)
        assert b1.vocabulary() <= source.vocabulary() | va1
        assert b2.vocabulary() <= va1 | va2
        layered = compose(source, [(b1, va1), (b2, va2)])
        oneshot = tightest(source, b1 + b2, va2)
        if not (
            oracle_equivalent(layered.lower_formula, oneshot.lower_formula)
            and oracle_equivalent(layered.upper_formula, oneshot.upper_formula)
        ):
            failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 120
    report(9, "layered composition equals one-shot", ok, f"200 instances, {failures} failures, {elapsed:.1f} s")


def _from_row(row, names):
    """Disjunctive normal form of a truth-table row over ``names``."""
    terms = []
    for k, value in enumerate(row):
        if value:
            lits = [
                Atom(a) if (k >> (len(names) - 1 - j)) & 1 else Not(Atom(a))
                for j, a in enumerate(names)
            ]
            terms.append(conjoin(lits))
    return disjoin(terms)


def test_criterion_10_q1_reduction():
    rng = random.Random(10)
    funcs = all_functions(3)
    failures = 0
    verdicts = {True: 0, False: 0}
    for _ in range(100):
        inst = random_instance(rng, max_atoms=7, max_depth=4, keep_size=3)
        keep = sorted(inst.keep)
        names = keep + sorted(vocabulary([*inst.source, *inst.bridge]) - inst.keep)
        proj = projection(names, keep)
        t = table(inst.source.conjunction(), names)
        b = table(inst.bridge.conjunction(), names)
        suff = sufficient(funcs, b, t, proj, 3)
        nec = necessary(funcs, b, t, proj, 3)
        for i, row in enumerate(funcs):
            f = _from_row(row, keep)
            rep = verify(inst.source, inst.bridge, AlphaAbstraction([f], [f], inst.keep))
            if rep.lower_ok != bool(suff[i]) or rep.upper_ok != bool(nec[i]):
                failures += 1
            verdicts[rep.lower_ok] += 1
            verdicts[rep.upper_ok] += 1
    ok = failures == 0 and verdicts[True] > 0 and verdicts[False] > 0
    detail = f"100 instances x 256 candidates, {failures} mismatches, {verdicts[True]} ok / {verdicts[False]} not ok"
    report(10, "verify matches the definition exhaustively", ok, detail)


def test_examples_agree_with_library_equivalence():
    # sanity link between the oracle tables and the library's own checker
    f, g = P("sp -> ecs"), P("~sp | ecs")
    assert oracle_equivalent(f, g) and equivalent(f, g)
