"""Acceptance gate: one test per shipping criterion.

Three criteria are currently red; each failure message names the exact
divergences, and the README's "Known failing checks" section explains
why the behaviour is kept rather than patched around.
"""

import itertools
import random
import time

from hypothesis import given, settings, strategies as st

from knowpool.formula import (And, Atom, Bot, D, Iff, Imp, K, Not, Or,
                              Share, Top, parse, print_formula)
from knowpool.kripke import Model, dep_closure, dep_partition, \
    fingerprint, pointed
from knowpool.lab import (DEFAULT_CONFIG, GOLDEN_FACTS, REQUIRED_INVALID,
                          REQUIRED_VALID, GenConfig, check_fact, check_schema,
                          enumerate_models, gen_model)
from knowpool.norms import plan
from knowpool.presets import service_desk_deontic
from knowpool.semantics import EvalContext, extension
from knowpool.update import share_update

from oracles import equiv_classes


def test_criterion_1_reference_facts():
    """Every recorded fact reproduces exactly, in under five seconds."""
    start = time.perf_counter()
    ctx = EvalContext()
    bad = [r.fact.label for r in (check_fact(f, ctx) for f in GOLDEN_FACTS)
           if not r.ok]
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, "fact table took %.2fs" % elapsed
    assert not bad, "%d/%d recorded verdicts not reproduced: %s" % (
        len(bad), len(GOLDEN_FACTS), ", ".join(bad))


def test_criterion_2_share_update_laws():
    """1,000 random draws: update validates, keeps links shared with the
    sender, and leaves the group meets of sender/receiver groups alone."""
    cfg = GenConfig(max_states=6, agents=3, atoms=3, samples=1000)
    rng = random.Random(cfg.seed)
    not_model = kept = meets = 0
    first = None
    for i in range(cfg.samples):
        m = gen_model(cfg, i)
        w = rng.choice(m.states)
        a = rng.choice(m.agents)
        b = rng.choice(m.agents)
        nxt = share_update(m, w, a, b)
        try:
            Model(nxt.states, nxt.agents, nxt.atoms, nxt.rel, nxt.val,
                  ideal=nxt.ideal, point=nxt.point)
        except Exception:
            not_model += 1
        if any(not (m.cell(a, s) & m.cell(b, s)) <= nxt.cell(b, s)
               for s in m.states):
            kept += 1
            if first is None:
                first = (i, w, a, b)
        for n in range(2, len(m.agents) + 1):
            for grp in itertools.combinations(m.agents, n):
                if a not in grp or b not in grp:
                    continue
                if any(set.intersection(*[set(m.cell(g, s)) for g in grp])
                       != set.intersection(*[set(nxt.cell(g, s))
                                             for g in grp])
                       for s in m.states):
                    meets += 1
                    break
            else:
                continue
            break
    assert not_model == 0, "%d updates failed model validation" % not_model
    assert kept == 0 and meets == 0, (
        "sender-link containment failed on %d/1000 draws, group meets "
        "changed on %d/1000 (first at draw %s); links inside the shared "
        "cell but outside the sender's closure are severed even when the "
        "sender holds them" % (kept, meets, first))


def test_criterion_3_closure_oracle_equivalence():
    """Closed-form dependence classes equal the quantified construction on
    every small model plus 500 random ones.  Zero mismatches."""
    mismatches = 0
    checked = 0
    models = itertools.chain(
        enumerate_models(5, 2, 2),
        (gen_model(DEFAULT_CONFIG, i) for i in range(500)))
    for m in models:
        for agent in m.agents:
            for w in m.states:
                checked += 1
                want = set(equiv_classes(m, agent, w))
                if set(dep_partition(m, agent, w)) != want:
                    mismatches += 1
                    continue
                home = next(c for c in want if w in c)
                if dep_closure(m, agent, w) != home:
                    mismatches += 1
    assert checked > 100000
    assert mismatches == 0, "%d/%d class mismatches" % (mismatches, checked)


def test_criterion_4_valid_schema_suite():
    """Every schema expected to hold survives the default-config search."""
    refuted = []
    for name in REQUIRED_VALID:
        report = check_schema(name, DEFAULT_CONFIG)
        if not report.as_expected:
            refuted.append(name)
    extra = check_schema("rep", DEFAULT_CONFIG)
    if extra.countermodel is not None:
        print("open question: rep refuted at default config")
    assert not refuted, (
        "expected-valid schemas refuted at default config: %s"
        % ", ".join(sorted(refuted)))


def test_criterion_5_invalidity_suite():
    """All four expected failures produce countermodels, under a minute."""
    start = time.perf_counter()
    missing = []
    for name in REQUIRED_INVALID:
        report = check_schema(name, DEFAULT_CONFIG)
        if report.countermodel is None:
            missing.append(name)
    elapsed = time.perf_counter() - start
    assert not missing, "no countermodel for: %s" % ", ".join(missing)
    assert elapsed < 60.0, "invalidity suite took %.1fs" % elapsed


def test_criterion_6_planner():
    """Shortest permissible plan, impossibility proof, and free search."""
    pm = pointed(service_desk_deontic())
    short = plan(pm, parse("K{c}(p->q)"))
    assert short is not None and short.steps == (("a", "c"),)
    assert short.verdicts == (True,) and short.achieved

    assert plan(pm, parse("K{c}(p->r)"), max_len=4) is None

    free = plan(pm, parse("K{c}(p->r)"), max_len=4,
                require_permissible=False)
    assert free is not None and len(free) == 2 and free.achieved

    again = (plan(pm, parse("K{c}(p->q)")),
             plan(pm, parse("K{c}(p->r)"), max_len=4),
             plan(pm, parse("K{c}(p->r)"), max_len=4,
                  require_permissible=False))
    assert again == (short, None, free)


# -- criterion 7: five generative properties, 200 cases each ---------------

_AGENTS = ("a", "b", "c")


def _formula_strategy():
    leaves = st.sampled_from(
        [Atom("p"), Atom("q"), Atom("r"), Top(), Bot()])

    def wrap(children):
        return st.one_of(
            children.map(Not),
            children.map(lambda f: K("a", f)),
            children.map(lambda f: K("b", f, ("a",))),
            children.map(lambda f: D(("a", "b"), f)),
            children.map(lambda f: Share("c", "a", f)),
            st.tuples(children, children).map(lambda t: And(*t)),
            st.tuples(children, children).map(lambda t: Or(*t)),
            st.tuples(children, children).map(lambda t: Imp(*t)),
            st.tuples(children, children).map(lambda t: Iff(*t)))

    return st.recursive(leaves, wrap, max_leaves=10)


def _booleans():
    leaves = st.sampled_from([Atom("p"), Atom("q"), Atom("r")])

    def wrap(children):
        return st.one_of(
            children.map(Not),
            st.tuples(children, children).map(lambda t: And(*t)),
            st.tuples(children, children).map(lambda t: Or(*t)),
            st.tuples(children, children).map(lambda t: Imp(*t)))

    return st.recursive(leaves, wrap, max_leaves=8)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(_formula_strategy())
def _round_trip(f):
    assert parse(print_formula(f)) == f


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(0, 10 ** 6), st.sampled_from(_AGENTS), _booleans())
def _s5_instances(index, agent, body):
    m = gen_model(DEFAULT_CONFIG, index)
    ctx = EvalContext()
    know = K(agent, body)
    box = extension(m, know, ctx)
    # T, 4, 5: truth, positive and negative introspection
    assert box <= extension(m, body, ctx)
    assert box == extension(m, K(agent, know), ctx)
    assert frozenset(m.states) - box == \
        extension(m, K(agent, Not(know)), ctx)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(0, 10 ** 6), st.data())
def _boolean_invariance(index, data):
    m = gen_model(DEFAULT_CONFIG, index)
    f = data.draw(_booleans())
    w = data.draw(st.sampled_from(m.states))
    x = data.draw(st.sampled_from(m.agents))
    y = data.draw(st.sampled_from(m.agents))
    assert extension(share_update(m, w, x, y), f) == extension(m, f)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(0, 10 ** 6), _booleans())
def _memo_consistency(index, body):
    m = gen_model(DEFAULT_CONFIG, index)
    probes = (K("a", body), D(("a", "b"), body), Share("a", "b", K("b", body)))
    shared = EvalContext()
    debug = EvalContext(debug=True)
    for f in probes:
        fresh = extension(m, f)
        assert extension(m, f, shared) == fresh
        assert extension(m, f, debug) == fresh
        assert extension(m, f, shared) == fresh


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(0, 10 ** 6), st.randoms(use_true_random=False))
def _fingerprint_invariance(index, rng):
    m = gen_model(DEFAULT_CONFIG, index)
    names = list(m.states)
    shuffled = list(names)
    rng.shuffle(shuffled)
    ren = dict(zip(names, shuffled))
    twin = Model(
        tuple(sorted(shuffled)), m.agents, m.atoms,
        {a: tuple(frozenset(ren[s] for s in c) for c in m.cells(a))
         for a in m.agents},
        {ren[s]: set(m.val[s]) for s in m.states},
        ideal=None,
        point=ren[m.point])
    base = Model(m.states, m.agents, m.atoms, m.rel, m.val,
                 ideal=None, point=m.point)
    assert fingerprint(pointed(base)) == fingerprint(pointed(twin))


def test_criterion_7_property_suites():
    """Parser round-trip, S5 laws, Boolean invariance, memo consistency,
    and fingerprint invariance all hold on 200 generated cases each."""
    _round_trip()
    _s5_instances()
    _boolean_invariance()
    _memo_consistency()
    _fingerprint_invariance()
