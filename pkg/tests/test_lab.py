"""Schema library, model generators, and the reference fact suite."""

from knowpool.formula import parse
from knowpool.kripke import Model, PointedModel
from knowpool.lab import (DEFAULT_CONFIG, GOLDEN_FACTS, REQUIRED_INVALID,
                          REQUIRED_VALID, REPORT_ONLY, RULES, SCHEMAS,
                          GenConfig, check_fact, check_schema,
                          compare_readings, enumerate_models, gen_model,
                          run_reference_suite)
from knowpool.presets import PRESETS
from knowpool.semantics import extension

CFG = GenConfig(samples=12)


class TestRegistry:
    def test_partition_of_schema_names(self):
        groups = (REQUIRED_VALID, REQUIRED_INVALID, RULES, REPORT_ONLY)
        assert sum(len(g) for g in groups) == len(SCHEMAS)
        assert set().union(*groups) == set(SCHEMAS)

    def test_core_names_present(self):
        assert {"kt", "cl", "dist", "int_r", "boolean"} <= set(REQUIRED_VALID)
        assert set(REQUIRED_INVALID) == {"fcp1", "fcp2", "p_5",
                                         "perm_receiver_swap"}
        assert {"ns", "nec_a", "rk", "p_nec"} <= set(RULES)
        assert set(REPORT_ONLY) == {"rep"}


class TestSchemaChecks:
    def test_reflection_axiom_holds(self):
        rep = check_schema("kt", CFG)
        assert rep.as_expected and rep.verdict == "valid-on-sample"
        assert rep.countermodel is None and rep.instances > 0

    def test_definable_collapse_holds(self):
        assert check_schema("cl", CFG).as_expected

    def test_update_commutation_fails(self):
        # pushing a share through an outside knower breaks on re-anchoring
        rep = check_schema("int_minus", CFG)
        assert rep.expect == "valid" and not rep.as_expected
        model, instance, state = rep.countermodel
        assert state not in extension(model, instance)

    def test_permission_introspection_fails(self):
        rep = check_schema("p_4", CFG)
        assert rep.expect == "valid" and not rep.as_expected

    def test_countermodels_for_the_invalid_family(self):
        for name in sorted(REQUIRED_INVALID):
            rep = check_schema(name, CFG)
            assert rep.as_expected, name
            model, instance, state = rep.countermodel
            Model(model.states, model.agents, model.atoms, model.rel,
                  model.val, ideal=model.ideal, point=model.point)
            assert model.ideal is not None
            assert state not in extension(model, instance)

    def test_deontic_axioms_that_hold(self):
        for name in ("o_poss", "p_d", "perm_sender_swap"):
            assert check_schema(name, CFG).as_expected, name

    def test_rule_transfer(self):
        assert check_schema("nec_a", CFG).verdict == "valid-on-sample"
        rep = check_schema("ns", CFG)
        assert rep.verdict == "countermodel"
        assert "rule-form" in rep.note
        assert check_schema("p_nec", CFG).verdict == "countermodel"


class TestGenerators:
    def test_gen_model_is_deterministic_and_valid(self):
        for i in range(30):
            m = gen_model(CFG, i)
            assert m == gen_model(CFG, i)
            Model(m.states, m.agents, m.atoms, m.rel, m.val,
                  ideal=m.ideal, point=m.point)
            assert m.point in m.states
        deontic = GenConfig(samples=6, deontic=True)
        assert all(gen_model(deontic, i).ideal is not None
                   for i in range(10))

    def test_enumeration_is_deterministic(self):
        a = list(enumerate_models(2, 2, 1))
        b = list(enumerate_models(2, 2, 1))
        assert a == b
        assert len(set(a)) == len(a)
        for m in a:
            Model(m.states, m.agents, m.atoms, m.rel, m.val, point=m.point)

    def test_enumeration_size_regression(self):
        assert len(list(enumerate_models(3, 2, 2))) == 544


class TestReferenceSuite:
    def test_table_shape(self):
        assert len(GOLDEN_FACTS) == 44
        labels = [f.label for f in GOLDEN_FACTS]
        assert len(set(labels)) == len(labels)
        assert {f.model for f in GOLDEN_FACTS} <= set(PRESETS)

    def test_check_fact(self):
        assert check_fact(GOLDEN_FACTS[0]).ok

    def test_known_open_mismatches(self):
        bad = {r.fact.label for r in map(check_fact, GOLDEN_FACTS)
               if not r.ok}
        assert bad == {"dep2-04", "resolve-03", "resolve-04"}

    def test_readings_diverge_on_the_stacked_shares(self):
        rows = compare_readings()
        assert [r.label for r in rows] == \
            ["perm-01", "perm-02", "perm-03", "perm-04", "perm-05"]
        differing = {r.label for r in rows if r.transition != r.possibility}
        assert differing == {"perm-03", "perm-04", "perm-05"}
        for r in rows:
            if r.label in differing:
                assert not r.transition and r.possibility

    def test_report_without_schemas(self):
        report = run_reference_suite(CFG, include_schemas=False)
        assert len(report.facts) == 44 and report.schemas == ()
        assert not report.ok
        assert len(report.readings) == 5

    def test_default_config_shape(self):
        assert DEFAULT_CONFIG.samples == 500
        assert DEFAULT_CONFIG.max_states == 5
