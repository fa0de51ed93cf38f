"""Schema laboratory: stress-test logical laws over generated model banks.

Every schema in the registry is instantiated over small formula pools and
evaluated on two tiers of models: an exhaustive tier of all small models
(every state count up to three, two agents, two atoms, valuations taken in
a sorted normal form so every isomorphism class appears) and a seeded
random tier.  Axioms claimed valid must survive the whole bank; axioms
claimed invalid must exhibit a countermodel, searched for over a dedicated
exhaustive deontic tier of up to four states.  Inference rules are checked
in their per-model form (premises globally true here imply the conclusion
globally true here), which is stronger than rule admissibility; their
failures are reported but tolerated.

The module also carries the golden fact table for the built-in example
models and a comparison of the two candidate readings of the permission
operator's second conjunct.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace

from .formula import (And, Atom, Bot, Formula, IdealAtom, Iff, Imp, K, Not,
                      OkAtom, Or, Permitted, PermittedShare, Schema, Share,
                      instantiate, is_boolean_positive, meta_agents_of,
                      meta_formulas_of, parse, print_formula, substitute)
from .kripke import Model, atoms_partition, dep_closure
from .presets import PRESETS
from .semantics import EvalContext, extension

AGENT_NAMES = ("a", "b", "c")
ATOM_NAMES = ("p", "q", "r")

# fixed exhaustive tier for validity claims
EXHAUSTIVE = (3, 2, 2)
# larger deontic tier searched for countermodels of invalidity claims
INVALIDITY_TIER = (4, 2, 2)


@dataclass(frozen=True)
class GenConfig:
    """Shape of the random model tier; the seed pins every draw."""

    max_states: int = 5
    agents: int = 3
    atoms: int = 3
    deontic: bool = False
    samples: int = 500
    seed: int = 1729


DEFAULT_CONFIG = GenConfig()


# ---------------------------------------------------------------------------
# model generation


def gen_model(cfg: GenConfig, index: int) -> Model:
    """Deterministically generate the index-th random model for a config."""
    rng = random.Random(cfg.seed * 1_000_003 + index)
    n = rng.randint(1, cfg.max_states)
    states = tuple("w%d" % i for i in range(n))
    agents = AGENT_NAMES[:cfg.agents]
    atoms = ATOM_NAMES[:cfg.atoms]
    val = {s: {x for x in atoms if rng.random() < 0.5} for s in states}
    rel = {}
    for ag in agents:
        buckets = {}
        for s in states:
            buckets.setdefault(rng.randrange(n), set()).add(s)
        rel[ag] = tuple(frozenset(c) for c in buckets.values())
    ideal = None
    if cfg.deontic:
        cand = _ideal_candidates(agents, rel)
        picked = tuple(pair for pair in cand if rng.random() < 0.3)
        if not picked:
            picked = (cand[rng.randrange(len(cand))],)
        ideal = picked
    point = rng.choice(states)
    return Model(states, agents, atoms, rel, val, ideal=ideal, point=point)


def _ideal_candidates(agents, rel):
    # undirected pairs lying inside some agent's cell, self-loops included
    cand = set()
    for ag in agents:
        for cell in rel[ag]:
            for u in cell:
                for v in cell:
                    cand.add((u, v) if u <= v else (v, u))
    return sorted(cand)


def set_partitions(items):
    """Yield every partition of `items` into nonempty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | {first}] + part[i + 1:]
        yield [{first}] + part


def enumerate_models(max_states: int, n_agents: int, n_atoms: int,
                     deontic: bool = False):
    """All models up to the given size, valuations in sorted normal form.

    State relabelling can sort the valuation codes without loss, so every
    isomorphism class of models has at least one representative here.
    """
    agents = AGENT_NAMES[:n_agents]
    atoms = ATOM_NAMES[:n_atoms]
    for n in range(1, max_states + 1):
        states = tuple("w%d" % i for i in range(n))
        parts = [tuple(frozenset(b) for b in p)
                 for p in set_partitions(states)]
        codeseqs = itertools.combinations_with_replacement(
            range(2 ** n_atoms), n)
        for codes in codeseqs:
            val = {s: {atoms[i] for i in range(n_atoms) if code >> i & 1}
                   for s, code in zip(states, codes)}
            for rels in itertools.product(parts, repeat=n_agents):
                rel = dict(zip(agents, rels))
                m = Model(states, agents, atoms, rel, val,
                          point="w0", validate=False)
                if deontic:
                    yield from _deontic_variants(m)
                else:
                    yield m


def _deontic_variants(m: Model):
    # one variant per single ideal pair, plus the full attainable ideal
    cand = _ideal_candidates(m.agents, m.rel)
    for pair in cand:
        yield Model(m.states, m.agents, m.atoms, m.rel, m.val,
                    ideal=(pair,), point=m.point, validate=False)
    if len(cand) > 1:
        yield Model(m.states, m.agents, m.atoms, m.rel, m.val,
                    ideal=tuple(cand), point=m.point, validate=False)


# ---------------------------------------------------------------------------
# schema registry


@dataclass(frozen=True)
class SchemaSpec:
    name: str
    kind: str                     # "axiom" | "rule" | "custom"
    expect: str                   # "valid" | "invalid" | "report" | "rule"
    template: str | None = None
    premises: tuple = ()
    conclusion: str | None = None
    guard: str | None = None      # None | "boolean" | "atom"
    deontic: bool = False
    relax: str | None = None      # None | "receiver"
    checker: str | None = None    # key into the custom checker table


def _axiom(name, template, expect="valid", guard=None, deontic=False,
           relax=None):
    return SchemaSpec(name, "axiom", expect, template=template, guard=guard,
                      deontic=deontic, relax=relax)


def _rule(name, premises, conclusion, deontic=False):
    return SchemaSpec(name, "rule", "rule", premises=tuple(premises),
                      conclusion=conclusion, deontic=deontic)


_SPECS = (
    # S5 for plain knowledge
    _axiom("kt", "K{A}PHI -> PHI"),
    _axiom("k4", "K{A}PHI -> K{A}K{A}PHI"),
    _axiom("k5", "~K{A}PHI -> K{A}~K{A}PHI"),
    # S5 for dependent knowledge
    _axiom("akt", "K{A|B}PHI -> PHI"),
    _axiom("ak4", "K{A|B}PHI -> K{A|B}K{A|B}PHI"),
    _axiom("ak5", "~K{A|B}PHI -> K{A|B}~K{A|B}PHI"),
    # S5 for distributed knowledge
    _axiom("dt", "D{A,B}PHI -> PHI"),
    _axiom("d4", "D{A,B}PHI -> D{A,B}D{A,B}PHI"),
    _axiom("d5", "~D{A,B}PHI -> D{A,B}~D{A,B}PHI"),
    # dependence sits between individual and distributed knowledge
    _axiom("int", "K{A}PHI -> K{A|B}PHI"),
    _axiom("chain_dep", "K{B}PHI -> K{B|A}PHI"),
    _axiom("chain_dist", "K{B|A}PHI -> D{A,B}PHI"),
    SchemaSpec("cl", "custom", "valid", checker="cl"),
    # the share box is a functional update
    _axiom("inv", "(PHI -> [A>B]PHI) & (~PHI -> [A>B]~PHI)", guard="atom"),
    _axiom("rev", "~[A>B]PHI -> [A>B]~PHI"),
    _axiom("d_share", "[A>B]~PHI -> ~[A>B]PHI"),
    _axiom("k_share", "[A>B](PHI -> PSI) -> ([A>B]PHI -> [A>B]PSI)"),
    _axiom("c_share", "[A>B]PHI & [A>B]PSI -> [A>B](PHI & PSI)"),
    _axiom("rep", "[A>B]PHI <-> [A>B][A>B]PHI", expect="report"),
    # interaction of sharing with knowledge
    SchemaSpec("int_plus", "custom", "valid", checker="int_plus"),
    _axiom("int_lower", "K{B}[A>B]PHI -> [A>B]K{B}PHI"),
    _axiom("int_minus", "[A>B]K{C}PHI <-> K{C}[A>B]PHI"),
    _axiom("dist", "[A>B]K{B}PHI -> D{A,B}[A>B]PHI"),
    _axiom("boolean", "PHI <-> [A>B]PHI", guard="boolean"),
    _axiom("remain", "K{C}PHI -> [A>B]K{C}PHI", guard="boolean"),
    _axiom("sharing", "K{A}PHI -> [A>B]K{B}PHI", guard="boolean"),
    _axiom("step", "[A>B]K{B}PHI -> [A>B][B>C]K{C}PHI", guard="boolean"),
    _axiom("int_r", "Rk{A,B}K{A}PHI -> Ri{A,B}K{A}PHI", guard="boolean"),
    # the pooling chain for guarded formulas
    _axiom("pool_everybody_elim", "E{A,B}PHI -> K{A}PHI", guard="boolean"),
    _axiom("pool_know_first", "K{A}PHI -> Rk{A;A,B}E{A,B}PHI",
           guard="boolean"),
    _axiom("pool_forward_to_round", "Rk{A;A,B}E{A,B}PHI -> Rk{A,B}E{A,B}PHI",
           guard="boolean"),
    _axiom("pool_everybody_to_round", "E{A,B}PHI -> Rk{A,B}E{A,B}PHI",
           guard="boolean"),
    _axiom("pool_round_to_resolve", "Rk{A,B}E{A,B}PHI -> Ri{A,B}E{A,B}PHI",
           guard="boolean"),
    # static permission
    SchemaSpec("o_poss", "custom", "valid", deontic=True, checker="o_poss"),
    _axiom("p_rfc", "P{A}PHI & P{A}PSI -> P{A}(PHI | PSI)", deontic=True),
    _axiom("p_mc", "P{A}(PHI & PSI) <-> P{A}PHI & P{A}PSI", deontic=True),
    _axiom("p_k", "P{A}(PHI -> PSI) -> (P{A}PHI -> P{A}PSI)", deontic=True),
    _axiom("p_d", "~P{A}false", deontic=True),
    _axiom("p_t", "P{A}PHI -> PHI", deontic=True),
    _axiom("p_4", "P{A}PHI -> P{A}P{A}PHI", deontic=True),
    _axiom("p_5", "~P{A}~PHI -> P{A}~P{A}~PHI", expect="invalid",
           deontic=True),
    _axiom("fcp1", "P{A}(PHI | PSI) -> P{A}PHI & P{A}PSI", expect="invalid",
           deontic=True),
    _axiom("fcp2", "P{A}PHI -> P{A}(PHI & PSI)", expect="invalid",
           deontic=True),
    # dynamic permission
    _axiom("perm_transfer", "[A>B]Perm(B>C) -> Perm(A>C)", deontic=True),
    SchemaSpec("perm_sender_swap", "custom", "valid", deontic=True,
               checker="perm_sender_swap"),
    _axiom("perm_receiver_swap",
           "(K{B}PHI <-> K{C}PHI) -> (Perm(A>B) <-> Perm(A>C))",
           expect="invalid", deontic=True, relax="receiver"),
    # inference rules, per-model form
    _rule("ns", ("PHI",), "[A>B]PHI"),
    _rule("nec_a", ("PHI",), "K{A|B}PHI"),
    _rule("inc_share", ("PHI -> [A>B]PSI",), "K{A}PHI -> [A>B]K{B}PSI"),
    _rule("rk", ("PHI & PSI -> CHI",), "[A>B]PHI & [A>B]PSI -> [A>B]CHI"),
    _rule("rm_share", ("PHI & PSI -> [A>B]CHI",),
          "K{C}PHI & K{C}PSI -> [A>B]K{C}CHI"),
    _rule("p_nec", ("PHI",), "P{A}PHI", deontic=True),
    _rule("p_re", ("PHI -> PSI",), "P{A}PHI -> P{A}PSI", deontic=True),
)

SCHEMAS = {spec.name: spec for spec in _SPECS}

REQUIRED_VALID = tuple(s.name for s in _SPECS if s.expect == "valid")
REQUIRED_INVALID = tuple(s.name for s in _SPECS if s.expect == "invalid")
RULES = tuple(s.name for s in _SPECS if s.expect == "rule")
REPORT_ONLY = tuple(s.name for s in _SPECS if s.expect == "report")


@dataclass(frozen=True)
class LabReport:
    """Outcome of one schema check over a model bank."""

    name: str
    expect: str
    models: int
    instances: int
    verdict: str                  # "valid-on-sample" | "countermodel"
    countermodel: tuple | None    # (model, instance, state)
    note: str | None = None

    @property
    def as_expected(self) -> bool:
        if self.expect == "valid":
            return self.verdict == "valid-on-sample"
        if self.expect == "invalid":
            return self.verdict == "countermodel"
        return True


# ---------------------------------------------------------------------------
# formula pools


def _pools(m: Model):
    p = Atom(m.atoms[0])
    q = Atom(m.atoms[1]) if len(m.atoms) > 1 else Not(p)
    bools = (p, q, Not(p), Not(q), And(p, q), And(p, Not(q)))
    extras = (Or(p, Not(q)), Imp(p, q))
    probes = tuple(K(x, p) for x in m.agents)
    probes += tuple(Not(K(x, p)) for x in m.agents)
    return bools, bools + extras + probes


def _pool_for(spec: SchemaSpec, m: Model, nvars: int):
    bools, general = _pools(m)
    if spec.guard == "atom":
        return tuple(Atom(x) for x in m.atoms)
    if spec.guard == "boolean":
        return bools
    if nvars >= 2:
        # instance counts grow as pool**nvars; keep multi-slot pools tiny
        return (Atom(m.atoms[0]), Not(Atom(m.atoms[0])),
                bools[1], And(Atom(m.atoms[0]), bools[1]))
    return general


# ---------------------------------------------------------------------------
# instantiation helpers


def _parsed(spec: SchemaSpec):
    tpl = parse(spec.template) if spec.template else None
    prems = tuple(parse(t) for t in spec.premises)
    conc = parse(spec.conclusion) if spec.conclusion else None
    return tpl, prems, conc


def _agent_arity(spec: SchemaSpec) -> int:
    tpl, prems, conc = _parsed(spec)
    vars_ = set()
    for f in (tpl, conc, *prems):
        if f is not None:
            vars_ |= meta_agents_of(f)
    return len(vars_)


def _relaxed_instances(template: Formula, pool, agents):
    # receiver relaxation: B and C distinct, A unrestricted
    fvars = sorted(meta_formulas_of(template))
    seen = set()
    for x in agents:
        for y, z in itertools.permutations(agents, 2):
            amap = {"A": x, "B": y, "C": z}
            for fs in itertools.product(pool, repeat=len(fvars)):
                inst = substitute(template, dict(zip(fvars, fs)), amap)
                if inst not in seen:
                    seen.add(inst)
                    yield inst


def _joint_instances(parts, pool, agents):
    """Instantiate several templates under one shared assignment."""
    fvars, avars = set(), set()
    for f in parts:
        fvars |= meta_formulas_of(f)
        avars |= meta_agents_of(f)
    fvars, avars = sorted(fvars), sorted(avars)
    for combo in itertools.permutations(agents, len(avars)):
        amap = dict(zip(avars, combo))
        for fs in itertools.product(pool, repeat=len(fvars)):
            fmap = dict(zip(fvars, fs))
            yield tuple(substitute(f, fmap, amap) for f in parts)


# ---------------------------------------------------------------------------
# checking


def _globally(m: Model, f: Formula, ctx: EvalContext) -> bool:
    return len(extension(m, f, ctx)) == len(m.states)


def _falsifying_state(m: Model, f: Formula, ctx: EvalContext):
    ext = extension(m, f, ctx)
    for s in m.states:
        if s not in ext:
            return s
    return None


class Lab:
    """Model banks shared across schema checks, one eval context per model."""

    def __init__(self, cfg: GenConfig = DEFAULT_CONFIG):
        self.cfg = cfg
        self._banks = {}
        # instances only depend on the agent and atom inventories
        self._instances = {}

    def bank(self, deontic: bool):
        key = bool(deontic)
        if key not in self._banks:
            n, na, nk = EXHAUSTIVE
            models = list(enumerate_models(n, na, nk, deontic=key))
            cfg = replace(self.cfg, deontic=key)
            models += [gen_model(cfg, i) for i in range(cfg.samples)]
            self._banks[key] = [(m, EvalContext()) for m in models]
        return self._banks[key]

    def invalidity_bank(self):
        # lazy: callers stop at the first countermodel
        n, na, nk = INVALIDITY_TIER
        for m in enumerate_models(n, na, nk, deontic=True):
            yield m, EvalContext()

    def check(self, name: str) -> LabReport:
        spec = SCHEMAS[name]
        if spec.kind == "custom":
            return _CHECKERS[spec.checker](self, spec)
        if spec.kind == "rule":
            return self._check_rule(spec)
        return self._check_axiom(spec)

    def run_all(self):
        return [self.check(name) for name in SCHEMAS]

    # -- kinds ------------------------------------------------------------

    def _models_for(self, spec: SchemaSpec):
        if spec.expect == "invalid":
            return self.invalidity_bank()
        return iter(self.bank(spec.deontic))

    def _axiom_instances(self, spec, template, m, nvars):
        key = (spec.name, m.agents, m.atoms)
        try:
            return self._instances[key]
        except KeyError:
            pass
        pool = _pool_for(spec, m, nvars)
        if spec.relax == "receiver":
            insts = list(_relaxed_instances(template, pool, m.agents))
        else:
            insts = list(instantiate(Schema(spec.name, template),
                                     pool, m.agents))
        self._instances[key] = insts
        return insts

    def _check_axiom(self, spec: SchemaSpec) -> LabReport:
        template, _, _ = _parsed(spec)
        arity = _agent_arity(spec)
        nvars = len(meta_formulas_of(template))
        models = instances = 0
        found = None
        for m, ctx in self._models_for(spec):
            if len(m.agents) < (2 if spec.relax == "receiver" else arity):
                continue
            models += 1
            for inst in self._axiom_instances(spec, template, m, nvars):
                instances += 1
                bad = _falsifying_state(m, inst, ctx)
                if bad is not None:
                    found = (m, inst, bad)
                    break
            if found:
                break
        return self._report(spec, models, instances, found)

    def _rule_instances(self, spec, prems, conc, m, nvars):
        key = (spec.name, m.agents, m.atoms)
        try:
            return self._instances[key]
        except KeyError:
            pass
        pool = _pool_for(spec, m, nvars)
        insts = list(_joint_instances(prems + (conc,), pool, m.agents))
        self._instances[key] = insts
        return insts

    def _check_rule(self, spec: SchemaSpec) -> LabReport:
        _, prems, conc = _parsed(spec)
        arity = _agent_arity(spec)
        nvars = len({v for f in prems + (conc,)
                     for v in meta_formulas_of(f)})
        models = instances = 0
        found = None
        for m, ctx in self._models_for(spec):
            if len(m.agents) < arity:
                continue
            models += 1
            for parts in self._rule_instances(spec, prems, conc, m, nvars):
                heads, tail = parts[:-1], parts[-1]
                if not all(_globally(m, f, ctx) for f in heads):
                    continue
                instances += 1
                bad = _falsifying_state(m, tail, ctx)
                if bad is not None:
                    found = (m, tail, bad)
                    break
            if found:
                break
        note = "rule-form failure (per-model)" if found else None
        return self._report(spec, models, instances, found, note)

    def _report(self, spec, models, instances, found, note=None):
        verdict = "countermodel" if found else "valid-on-sample"
        return LabReport(spec.name, spec.expect, models, instances,
                         verdict, found, note)


# -- custom checkers ------------------------------------------------------


def _check_cl(lab: Lab, spec: SchemaSpec) -> LabReport:
    """Dependent knowledge always has a definable witness.

    Whenever A knows PHI dependent on B at w, the dependence closure of B
    at w is a union of blocks covering B's cell whose meet with A's cell
    sits inside PHI; it realises the existential witness in one shot.
    """
    models = instances = 0
    found = None
    for m, ctx in lab.bank(False):
        if len(m.agents) < 2:
            continue
        models += 1
        _, general = _pools(m)
        blocks = atoms_partition(m)
        for x, y in itertools.permutations(m.agents, 2):
            for w in m.states:
                cl = dep_closure(m, y, w)
                reach = m.cell(x, w) & cl
                for phi in general:
                    instances += 1
                    ext = extension(m, phi, ctx)
                    if not reach <= ext:
                        continue
                    witness_ok = (
                        m.cell(y, w) <= cl
                        and all(blocks.block_of(s) <= cl for s in cl)
                        and (m.cell(x, w) & cl) <= ext)
                    if not witness_ok:
                        found = (m, K(x, phi, (y,)), w)
                        break
                if found:
                    break
            if found:
                break
        if found:
            break
    return LabReport(spec.name, spec.expect, models, instances,
                     "countermodel" if found else "valid-on-sample", found)


def _check_int_plus(lab: Lab, spec: SchemaSpec) -> LabReport:
    """Post-share receiver knowledge is grounded before the share.

    If sharing from A makes B know PHI, then B's old cell meets the
    dependence closure of A inside the updated extension of PHI, which is
    the definable witness behind the receiver's new knowledge.
    """
    models = instances = 0
    found = None
    for m, ctx in lab.bank(False):
        if len(m.agents) < 2:
            continue
        models += 1
        _, general = _pools(m)
        for x, y in itertools.permutations(m.agents, 2):
            for w in m.states:
                after = ctx.updated(m, w, x, y)
                for phi in general:
                    instances += 1
                    ext = extension(after, phi, ctx)
                    if not after.cell(y, w) <= ext:
                        continue
                    grounded = (m.cell(y, w) & dep_closure(m, x, w)) <= ext
                    if not grounded:
                        found = (m, Share(x, y, K(y, phi)), w)
                        break
                if found:
                    break
            if found:
                break
        if found:
            break
    return LabReport(spec.name, spec.expect, models, instances,
                     "countermodel" if found else "valid-on-sample", found)


def _check_o_poss(lab: Lab, spec: SchemaSpec) -> LabReport:
    """An ideal transition somewhere implies some agent can access one."""
    models = instances = 0
    found = None
    for m, ctx in lab.bank(True):
        models += 1
        instances += 1
        hat = Not(K(m.agents[0], Not(IdealAtom())))
        for ag in m.agents[1:]:
            hat = Or(hat, Not(K(ag, Not(IdealAtom()))))
        inst = Imp(IdealAtom(), hat)
        bad = _falsifying_state(m, inst, ctx)
        if bad is not None:
            found = (m, inst, bad)
            break
    return LabReport(spec.name, spec.expect, models, instances,
                     "countermodel" if found else "valid-on-sample", found)


def _check_perm_sender_swap(lab: Lab, spec: SchemaSpec) -> LabReport:
    """Senders with identical relations grant the same share permissions."""
    models = instances = 0
    found = None
    for m, ctx in lab.bank(True):
        if len(m.agents) < 2:
            continue
        models += 1
        for x, y in itertools.permutations(m.agents, 2):
            if m.rel[x] != m.rel[y]:
                continue
            for z in m.agents:
                inst = Iff(PermittedShare(x, z), PermittedShare(y, z))
                instances += 1
                bad = _falsifying_state(m, inst, ctx)
                if bad is not None:
                    found = (m, inst, bad)
                    break
            if found:
                break
        if found:
            break
    return LabReport(spec.name, spec.expect, models, instances,
                     "countermodel" if found else "valid-on-sample", found)


_CHECKERS = {
    "cl": _check_cl,
    "int_plus": _check_int_plus,
    "o_poss": _check_o_poss,
    "perm_sender_swap": _check_perm_sender_swap,
}


_LABS = {}


def check_schema(name: str, cfg: GenConfig = DEFAULT_CONFIG) -> LabReport:
    """Check one registered schema, reusing banks across calls."""
    if cfg not in _LABS:
        _LABS[cfg] = Lab(cfg)
    return _LABS[cfg].check(name)


def run_all(cfg: GenConfig = DEFAULT_CONFIG):
    """Check every registered schema at the given config."""
    if cfg not in _LABS:
        _LABS[cfg] = Lab(cfg)
    return _LABS[cfg].run_all()


# ---------------------------------------------------------------------------
# golden facts for the built-in models


@dataclass(frozen=True)
class GoldenFact:
    label: str
    model: str
    formula: str
    expected: bool


GOLDEN_FACTS = (
    # what each agent can classify on their own
    GoldenFact("know-01", "service_desk", "K{a}(p->q)", True),
    GoldenFact("know-02", "service_desk", "K{a}(q->r)", False),
    GoldenFact("know-03", "service_desk", "K{a}(p->r)", False),
    GoldenFact("know-04", "service_desk", "K{b}(p->q)", False),
    GoldenFact("know-05", "service_desk", "K{b}(q->r)", True),
    GoldenFact("know-06", "service_desk", "K{b}(p->r)", False),
    GoldenFact("know-07", "service_desk", "K{c}(p->q)", False),
    GoldenFact("know-08", "service_desk", "K{c}(q->r)", False),
    GoldenFact("know-09", "service_desk", "K{c}(p->r)", False),
    # knowledge dependent on one other agent
    GoldenFact("dep-01", "service_desk", "K{a|c}(p->q)", True),
    GoldenFact("dep-02", "service_desk", "K{a|c}(q->r)", False),
    GoldenFact("dep-03", "service_desk", "K{a|c}(p->r)", False),
    GoldenFact("dep-04", "service_desk", "K{c|a}(p->q)", True),
    GoldenFact("dep-05", "service_desk", "K{c|a}(q->r)", False),
    GoldenFact("dep-06", "service_desk", "K{c|a}(p->r)", False),
    # knowledge dependent on both servers at once
    GoldenFact("dep2-01", "service_desk", "K{c|a,b}(p->q)", True),
    GoldenFact("dep2-02", "service_desk", "K{c|a,b}(q->r)", True),
    GoldenFact("dep2-03", "service_desk", "K{c|a,b}(p->r)", True),
    GoldenFact("dep2-04", "service_desk", "K{c|a,b}p", False),
    # distributed knowledge of the whole group
    GoldenFact("dist-01", "service_desk", "D{a,b,c}(p->q)", True),
    GoldenFact("dist-02", "service_desk", "D{a,b,c}(q->r)", True),
    GoldenFact("dist-03", "service_desk", "D{a,b,c}(p->r)", True),
    GoldenFact("dist-04", "service_desk", "D{a,b,c}p", True),
    GoldenFact("dist-05", "service_desk", "D{a,b,c}q", True),
    GoldenFact("dist-06", "service_desk", "D{a,b,c}r", True),
    # self-defeating reports before and after sharing
    GoldenFact("moore-01", "service_desk",
               "K{c|a}((p->q) & ~K{c}(p->q))", True),
    GoldenFact("moore-02", "service_desk",
               "[a>c]K{c|a}((p->q) & ~K{c}(p->q))", False),
    GoldenFact("moore-03", "service_desk",
               "[a>c]K{c|a}((p->q) & K{c}(p->q))", True),
    # single shares towards the customer
    GoldenFact("share-01", "service_desk", "[a>c]K{c}(p->q)", True),
    GoldenFact("share-02", "service_desk", "[b>c]K{c}(q->r)", True),
    # resolutions led by one agent, and a full round trip
    GoldenFact("leader-01", "service_desk",
               "Rk{a;a,b,c}E{a,b,c}(p->q)", True),
    GoldenFact("leader-02", "service_desk",
               "Rk{a;a,b,c}E{a,b,c}(q->r)", False),
    GoldenFact("leader-03", "service_desk",
               "Rk{b;b,a,c}E{a,b,c}(q->r)", True),
    GoldenFact("leader-04", "service_desk",
               "Rk{b;b,a,c}E{a,b,c}(p->q)", False),
    GoldenFact("round-01", "service_desk",
               "Rk{a,b,c}(E{a,b,c}(p->q) & E{a,b,c}(q->r)"
               " & E{a,b,c}(p->r))", True),
    # resolving information versus sharing knowledge
    GoldenFact("resolve-01", "overlap", "Ri{a,b}E{a,b}(p & q & r)", True),
    GoldenFact("resolve-02", "overlap", "Rk{a,b}E{a,b}p", True),
    GoldenFact("resolve-03", "overlap", "Rk{a,b}E{a,b}q", False),
    GoldenFact("resolve-04", "overlap", "Rk{a,b}E{a,b}r", False),
    # permission to know and to share
    GoldenFact("perm-01", "service_desk_deontic", "[a>c]P{c}(p->q)", True),
    GoldenFact("perm-02", "service_desk_deontic", "[b>c]P{c}(q->r)", True),
    GoldenFact("perm-03", "service_desk_deontic",
               "[a>c][b>c]P{c}(p->r)", False),
    GoldenFact("perm-04", "service_desk_deontic", "[a>c][b>c]Ok{c}", False),
    GoldenFact("perm-05", "service_desk_deontic", "[a>c]Perm(b>c)", False),
)


@dataclass(frozen=True)
class FactResult:
    fact: GoldenFact
    got: bool

    @property
    def ok(self) -> bool:
        return self.got == self.fact.expected


@dataclass(frozen=True)
class ReadingResult:
    """One permission fact under the two readings of the Ok conjunct."""

    label: str
    formula: str
    transition: bool      # receiver keeps an ideal transition at the point
    possibility: bool     # receiver considers some ideal state possible


@dataclass(frozen=True)
class ReferenceReport:
    facts: tuple
    readings: tuple
    schemas: tuple

    @property
    def ok(self) -> bool:
        facts_ok = all(r.ok for r in self.facts)
        schemas_ok = all(r.as_expected for r in self.schemas
                         if r.expect == "valid")
        return facts_ok and schemas_ok


def check_fact(fact: GoldenFact, ctx: EvalContext | None = None) -> FactResult:
    m = PRESETS[fact.model]()
    got = m.point in extension(m, parse(fact.formula), ctx)
    return FactResult(fact, got)


def _possibility_reading(f: Formula) -> Formula:
    """Replace every Ok-style conjunct by 'does not know there is no ideal'."""
    def hat(agent):
        return Not(K(agent, Not(IdealAtom())))

    def go(g):
        if isinstance(g, OkAtom):
            return hat(g.agent)
        if isinstance(g, Permitted):
            return And(K(g.agent, go(g.body)), hat(g.agent))
        if isinstance(g, PermittedShare):
            return Share(g.sender, g.receiver, hat(g.receiver))
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, And):
            return And(go(g.left), go(g.right))
        if isinstance(g, Or):
            return Or(go(g.left), go(g.right))
        if isinstance(g, Imp):
            return Imp(go(g.left), go(g.right))
        if isinstance(g, Iff):
            return Iff(go(g.left), go(g.right))
        if isinstance(g, K):
            return K(g.agent, go(g.body), g.deps)
        if isinstance(g, Share):
            return Share(g.sender, g.receiver, go(g.body))
        return g

    return go(f)


def compare_readings(ctx: EvalContext | None = None):
    """Evaluate the permission facts under both Ok readings."""
    if ctx is None:
        ctx = EvalContext()
    out = []
    for fact in GOLDEN_FACTS:
        if fact.model != "service_desk_deontic":
            continue
        m = PRESETS[fact.model]()
        f = parse(fact.formula)
        got = m.point in extension(m, f, ctx)
        alt = m.point in extension(m, _possibility_reading(f), ctx)
        out.append(ReadingResult(fact.label, fact.formula, got, alt))
    return tuple(out)


def run_reference_suite(cfg: GenConfig = DEFAULT_CONFIG,
                        include_schemas: bool = True) -> ReferenceReport:
    """Evaluate every golden fact, both Ok readings, and the schema library."""
    ctx = EvalContext()
    facts = tuple(check_fact(fact, ctx) for fact in GOLDEN_FACTS)
    readings = compare_readings(ctx)
    schemas = tuple(run_all(cfg)) if include_schemas else ()
    return ReferenceReport(facts, readings, schemas)
