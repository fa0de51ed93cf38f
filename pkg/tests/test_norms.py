"""Permissible sharing and the breadth-first sharing planner."""

import pytest

from knowpool.formula import parse
from knowpool.kripke import pointed
from knowpool.norms import Plan, permissible_share, plan
from knowpool.presets import service_desk, service_desk_deontic
from knowpool.semantics import EvalError


class TestPermissibleShare:
    def test_single_shares_to_the_customer_are_fine(self):
        pm = pointed(service_desk_deontic())
        assert permissible_share(pm, "a", "c")
        assert permissible_share(pm, "b", "c")

    def test_needs_an_ideal_relation(self):
        with pytest.raises(EvalError):
            permissible_share(pointed(service_desk()), "a", "c")


class TestPlan:
    def test_short_goal_one_permissible_step(self):
        pm = pointed(service_desk_deontic())
        out = plan(pm, parse("K{c}(p->q)"))
        assert out is not None and out.achieved
        assert out.steps == (("a", "c"),)
        assert out.verdicts == (True,)
        assert len(out) == 1

    def test_full_pooling_has_no_permissible_route(self):
        pm = pointed(service_desk_deontic())
        assert plan(pm, parse("K{c}(p->r)"), max_len=4) is None

    def test_free_search_reaches_the_same_goal_in_two_steps(self):
        pm = pointed(service_desk_deontic())
        out = plan(pm, parse("K{c}(p->r)"), max_len=4,
                   require_permissible=False)
        assert out is not None and out.achieved
        assert out.steps == (("a", "b"), ("b", "c"))
        assert out.verdicts == (False, False)

    def test_deterministic(self):
        pm = pointed(service_desk_deontic())
        runs = [plan(pm, parse("K{c}(p->r)"), max_len=4,
                     require_permissible=False) for _ in range(3)]
        assert runs[0] == runs[1] == runs[2]

    def test_goal_already_true_gives_empty_plan(self):
        pm = pointed(service_desk_deontic())
        out = plan(pm, parse("K{a}(p->q)"))
        assert isinstance(out, Plan)
        assert out.steps == () and out.verdicts == () and out.achieved

    def test_zero_budget(self):
        pm = pointed(service_desk_deontic())
        assert plan(pm, parse("p"), max_len=0) is not None
        assert plan(pm, parse("K{c}(p->q)"), max_len=0) is None

    def test_unreachable_goal_exhausts_the_space(self):
        pm = pointed(service_desk_deontic())
        assert plan(pm, parse("K{a}~q"), require_permissible=False) is None

    def test_planning_without_an_ideal(self):
        pm = pointed(service_desk())
        with pytest.raises(EvalError):
            plan(pm, parse("K{c}(p->q)"))
        out = plan(pm, parse("K{c}(p->q)"), require_permissible=False)
        assert out is not None
        assert out.steps == (("a", "c"),)
        assert out.verdicts == (None,)
