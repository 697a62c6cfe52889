import math

import pytest

from intersel.adversarial import gen_alpha_lb, gen_theorem2, gen_theorem4
from intersel.offline import opt_weighted
from intersel.policies import Algorithm, PHI, PolicyConfig, run_policy
from intersel.predictions import ErrorModel


def replay(fixture, algo, **kwargs):
    cfg = PolicyConfig(algo, **kwargs)
    return run_policy(fixture.instance, fixture.arrival_order, fixture.preds, cfg)


class TestTheorem2:
    @pytest.mark.parametrize("m", [1, 5])
    def test_accept_branch_equalities(self, m):
        fx = gen_theorem2(m)
        opt = opt_weighted(fx.instance)
        assert opt.value == fx.expected["opt"] == 2.0 * m
        report = ErrorModel(fx.instance, opt).report(fx.preds)
        assert report.total == fx.expected["eta"] == 1.0 * m
        r = replay(fx, Algorithm.GRNR)
        assert r.final_value == fx.expected["alg:grnr"] == 1.0 * m
        assert r.final_value == opt.value - report.total

    def test_reject_branch(self):
        fx = gen_theorem2(1, branch="reject")
        opt = opt_weighted(fx.instance)
        assert opt.value == 1.0
        assert ErrorModel(fx.instance, opt).report(fx.preds).total == 1.0
        assert replay(fx, Algorithm.NAIVE).final_value == 0.0

    def test_invalid_copies(self):
        with pytest.raises(ValueError):
            gen_theorem2(0)


class TestTheorem4:
    @pytest.mark.parametrize("m,w", [(1, 1.0), (3, 2.0)])
    def test_accept_branch_equalities(self, m, w):
        fx = gen_theorem4(m, w)
        opt = opt_weighted(fx.instance)
        assert opt.value == fx.expected["opt"] == 3.0 * m * w
        report = ErrorModel(fx.instance, opt).report(fx.preds)
        assert report.total == fx.expected["eta"] == 2.0 * m * w
        assert replay(fx, Algorithm.GRNR).final_value == m * w

    def test_reject_branch(self):
        fx = gen_theorem4(1, 1.0, branch="reject")
        opt = opt_weighted(fx.instance)
        assert opt.value == 1.0
        assert ErrorModel(fx.instance, opt).report(fx.preds).total == 1.0
        assert replay(fx, Algorithm.NAIVE).final_value == 0.0

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            gen_theorem4(1, 0.0)
        with pytest.raises(ValueError):
            gen_theorem4(0, 1.0)


class TestAlphaLowerBound:
    def test_closed_form_phi(self):
        fx = gen_alpha_lb(PHI, 0.1)
        opt = opt_weighted(fx.instance)
        assert math.isclose(opt.value, fx.expected["opt"], rel_tol=1e-12)
        assert math.isclose(opt.value, 20 * PHI + 10 - 0.4, rel_tol=1e-12)
        r = replay(fx, Algorithm.LR)
        assert r.final_members == (0,)
        assert r.final_value == 10.0

    def test_alpha_one(self):
        fx = gen_alpha_lb(1.0, 0.1)
        opt = opt_weighted(fx.instance)
        assert math.isclose(opt.value, 29.6, rel_tol=1e-12)
        r = replay(fx, Algorithm.LR, beta=1.0)
        assert r.final_members == (0,)
        assert r.final_value == 10.0

    def test_ratio_strictly_below_limit(self):
        for eps in (0.1, 0.01, 0.001):
            fx = gen_alpha_lb(PHI, eps)
            assert fx.expected["ratio:lr"] < 2 * PHI + 1
            opt = opt_weighted(fx.instance)
            r = replay(fx, Algorithm.LR)
            assert math.isclose(
                opt.value / r.final_value, fx.expected["ratio:lr"], rel_tol=1e-12
            )

    def test_parameter_constraints(self):
        with pytest.raises(ValueError):
            gen_alpha_lb(PHI, 0.0)
        with pytest.raises(ValueError):
            gen_alpha_lb(0.5, 0.1)
        with pytest.raises(ValueError):
            gen_alpha_lb(1.0, 6.0)  # nested interval weight would go negative


class TestCopyGeometry:
    def test_copies_disjoint_with_gap(self):
        for fx in (gen_theorem2(4), gen_theorem4(4, 2.0)):
            ivs = sorted(fx.instance.intervals, key=lambda i: i.start)
            per_copy = len(ivs) // 4
            for c in range(3):
                left = max(i.finish for i in ivs[c * per_copy : (c + 1) * per_copy])
                right = min(i.start for i in ivs[(c + 1) * per_copy :])
                assert right - left >= 1.0
