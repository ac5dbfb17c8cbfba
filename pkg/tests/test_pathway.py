"""
Tests for decarbonization pathways

Verifies the quasi-stationary solution and its multiplier solver, constant
rate pathways, the Euler-Lagrange RK4 integrator and the small-sigma
expansion.
"""

import logging
import math

import numpy as np
import pytest
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from model.economy import (
    EconomyParams,
    TimeGrid,
    bau_emissions,
    constant_rate_cumulative,
    cumulative_emissions,
    integrated_ggdp,
)
from model.errors import DomainError, GridError, InfeasibleGoalError
from model.mac import MacCurve
from model.pathway import (
    PathwayKind,
    appendix2_expansion,
    constant_rate_pathway,
    custom_pathway,
    decreasing_threshold,
    integrate_el_ode,
    quasi_stationary_pathway,
    solve_constant_rate,
    solve_multiplier,
)
from model.units import convert_pgc_gtco2

GOAL_300 = convert_pgc_gtco2(300.0)


@pytest.fixture
def grid():
    return TimeGrid(horizon=100.0, step=0.05)


@pytest.fixture
def static_intensity():
    """No exogenous decarbonization and no discounting."""
    return EconomyParams(theta=1.0, r=0.024, delta=0.0)


class TestQuasiStationaryPathway:
    """Test cases for quasi_stationary_pathway."""
    
    def test_initial_condition_and_kind(self, grid):
        """Test the initial condition and kind of a pathway."""
        pathway = quasi_stationary_pathway(0.002, grid, EconomyParams())
        assert pathway.K[0] == 0.0
        assert pathway.kind == PathwayKind.QUASI_STATIONARY
        assert pathway.heuristic_sigma is True
    
    def test_vanishing_multiplier_is_bau(self, grid):
        """Test that a vanishing multiplier gives BAU."""
        economy = EconomyParams()
        pathway = quasi_stationary_pathway(1e-15, grid, economy)
        assert np.max(pathway.K) < 1e-9
        assert np.allclose(pathway.m, bau_emissions(grid.nodes, economy), rtol=1e-9)
    
    def test_closed_form(self, grid, static_intensity):
        """Test K against its closed form."""
        c = 0.002
        pathway = quasi_stationary_pathway(c, grid, static_intensity)
        G = integrated_ggdp(grid.nodes, static_intensity)
        assert np.allclose(pathway.K, np.log1p(c * G), rtol=1e-14)
        assert pathway.heuristic_sigma is False
    
    def test_rate_integrates_to_K(self, grid):
        """Test that k integrates to K."""
        economy = EconomyParams()
        solution = solve_multiplier(GOAL_300, grid, economy)
        pathway = quasi_stationary_pathway(solution.c, grid, economy)
        assert pathway.integration_residual() < 1e-8
    
    def test_non_positive_multiplier_rejected(self, grid):
        """Test that a non-positive multiplier is rejected."""
        with pytest.raises(DomainError):
            quasi_stationary_pathway(0.0, grid, EconomyParams())


class TestProportionality:
    """Decarbonization rate proportional to emissions without exogenous decline."""
    
    @pytest.fixture
    def solved(self, grid, static_intensity):
        solution = solve_multiplier(GOAL_300, grid, static_intensity)
        return solution, quasi_stationary_pathway(solution.c, grid, static_intensity)
    
    def test_rate_over_emissions_constant(self, solved, static_intensity):
        """Test that k / m is constant without exogenous decline."""
        solution, pathway = solved
        ratio = pathway.k / pathway.m
        assert (ratio.max() - ratio.min()) / ratio.mean() < 1e-10
        assert ratio.mean() == pytest.approx(solution.c / static_intensity.mu0, rel=1e-10)
        assert solution.lambda_ratio == pytest.approx(ratio.mean(), rel=1e-10)
    
    def test_cumulative_proportional_to_K(self, solved, static_intensity):
        """Test that cumulative emissions are proportional to K."""
        solution, pathway = solved
        expected = static_intensity.mu0 / solution.c * pathway.K
        assert np.allclose(pathway.M_cum, expected, rtol=1e-8, atol=1e-6)
    
    def test_emissions_roughly_invariant_of_growth(self, grid):
        """Test that emissions depend only weakly on growth."""
        paths = []
        for r in (0.012, 0.024, 0.036):
            economy = EconomyParams(theta=1.0, r=r)
            paths.append(quasi_stationary_pathway(solve_multiplier(GOAL_300, grid, economy).c, grid, economy))
        m = np.array([p.m for p in paths])
        M = np.array([p.M_cum for p in paths])
        first_half = grid.nodes <= 50.0
        m_spread = (m.max(axis=0) - m.min(axis=0)) / m.max(axis=0)
        M_spread = (M.max(axis=0)[1:] - M.min(axis=0)[1:]) / M.max(axis=0)[1:]
        assert np.all(m_spread[first_half] < 0.15)
        assert np.all(M_spread < 0.15)


class TestSolveMultiplier:
    """Test cases for solve_multiplier."""
    
    @pytest.mark.parametrize("goal_pgc", [300.0, 600.0, 900.0, 1200.0])
    @pytest.mark.parametrize("r", [0.012, 0.024, 0.036])
    def test_constraint_satisfied(self, goal_pgc, r, grid):
        """Test that the solved pathway meets the goal."""
        economy = EconomyParams(r=r)
        goal = convert_pgc_gtco2(goal_pgc)
        solution = solve_multiplier(goal, grid, economy)
        pathway = quasi_stationary_pathway(solution.c, grid, economy)
        tolerance = max(1e-9 * goal, 1e-6)
        assert abs(cumulative_emissions(pathway, 100.0) - goal) <= tolerance
        assert abs(solution.residual) <= tolerance
        assert solution.c > 0
    
    def test_analytic_round_trip(self, static_intensity):
        """Test recovering a known multiplier."""
        grid = TimeGrid(horizon=100.0, step=0.01)
        c_star = 0.01
        goal = static_intensity.mu0 / c_star * math.log1p(c_star * integrated_ggdp(100.0, static_intensity))
        solution = solve_multiplier(goal, grid, static_intensity)
        assert solution.c == pytest.approx(c_star, rel=1e-8)
    
    def test_goal_just_below_bau(self, grid):
        """Test a goal just below BAU."""
        economy = EconomyParams()
        bau = cumulative_emissions(constant_rate_pathway(0.0, grid, economy), 100.0)
        solution = solve_multiplier(bau * (1.0 - 1e-9), grid, economy)
        assert 0 < solution.c < 1e-9
    
    def test_goal_at_bau_infeasible(self, grid):
        """Test that a goal at BAU is infeasible."""
        economy = EconomyParams()
        bau = cumulative_emissions(constant_rate_pathway(0.0, grid, economy), 100.0)
        with pytest.raises(InfeasibleGoalError):
            solve_multiplier(bau, grid, economy)
    
    def test_goal_beyond_multiplier_cap_infeasible(self, grid):
        """Test that a goal needing c above the cap is infeasible."""
        with pytest.raises(InfeasibleGoalError):
            solve_multiplier(GOAL_300, grid, EconomyParams(), c_max=1e-3)
    
    def test_non_positive_goal_rejected(self, grid):
        """Test that a non-positive goal is rejected."""
        with pytest.raises(DomainError):
            solve_multiplier(0.0, grid, EconomyParams())
    
    def test_front_loading(self, grid):
        """Test that mitigation is front-loaded."""
        for r in (0.012, 0.024, 0.036):
            economy = EconomyParams(theta=1.0, r=r, delta=0.0)
            pathway = quasi_stationary_pathway(solve_multiplier(GOAL_300, grid, economy).c, grid, economy)
            assert pathway.k[0] > (0.10 if r >= 0.024 else 0.09)
            assert np.all(np.diff(pathway.k) < 0)


class TestConstantRate:
    """Test cases for constant-rate pathways and their solver."""
    
    def test_zero_rate_is_bau(self, grid):
        """Test that k = 0 is BAU."""
        economy = EconomyParams()
        pathway = constant_rate_pathway(0.0, grid, economy)
        assert np.allclose(pathway.m, bau_emissions(grid.nodes, economy))
        assert pathway.kind == PathwayKind.CONSTANT_RATE
    
    def test_cumulative_closed_form(self, grid):
        """Test constant-rate cumulative emissions."""
        economy = EconomyParams()
        pathway = constant_rate_pathway(0.03, grid, economy)
        assert pathway.cumulative == pytest.approx(constant_rate_cumulative(0.03, 100.0, economy), rel=1e-8)
    
    def test_static_economy_constant_emissions(self, grid):
        """Test constant emissions in a static economy."""
        economy = EconomyParams(r=0.0)
        pathway = constant_rate_pathway(0.0, grid, economy)
        assert np.allclose(pathway.m, economy.m0)
        assert pathway.cumulative == pytest.approx(economy.m0 * 100.0)
    
    def test_round_trip(self, grid):
        """Test recovering a known constant rate."""
        economy = EconomyParams()
        goal = constant_rate_cumulative(0.03, 100.0, economy)
        assert solve_constant_rate(goal, grid, economy) == pytest.approx(0.03, rel=1e-8)
    
    def test_goal_at_bau_gives_zero(self, grid):
        """Test that a goal at BAU gives k = 0."""
        economy = EconomyParams(theta=0.0, r=0.02)
        assert solve_constant_rate(economy.m0 * 100.0, grid, economy) == 0.0
    
    def test_goal_above_bau_infeasible(self, grid):
        """Test that a goal above BAU is infeasible."""
        economy = EconomyParams()
        with pytest.raises(InfeasibleGoalError):
            solve_constant_rate(1.5 * constant_rate_cumulative(0.0, 100.0, economy), grid, economy)
    
    def test_residual(self, grid):
        """Test the residual of a solved rate."""
        economy = EconomyParams()
        k = solve_constant_rate(GOAL_300, grid, economy)
        assert constant_rate_cumulative(k, 100.0, economy) == pytest.approx(GOAL_300, abs=1e-6)


class TestCustomPathway:
    """Test cases for custom_pathway."""
    
    def test_constant_series(self, grid):
        """Test a custom constant-rate series."""
        economy = EconomyParams()
        pathway = custom_pathway(np.full(len(grid.nodes), 0.02), grid, economy)
        assert np.allclose(pathway.K, 0.02 * grid.nodes, rtol=1e-12, atol=1e-14)
        assert pathway.kind == PathwayKind.CUSTOM
    
    def test_wrong_length(self, grid):
        """Test that a series of the wrong length is rejected."""
        with pytest.raises(GridError):
            custom_pathway([0.01, 0.02], grid, EconomyParams())
    
    def test_negative_rate(self, grid):
        """Test that a negative rate is rejected."""
        values = np.full(len(grid.nodes), 0.01)
        values[5] = -0.1
        with pytest.raises(DomainError):
            custom_pathway(values, grid, EconomyParams())


class TestElOde:
    """Test cases for integrate_el_ode."""
    
    @pytest.fixture
    def curve(self):
        return MacCurve()
    
    def test_matches_quasi_stationary_solution(self, grid, static_intensity, curve):
        """Test the ODE solution against the quasi-stationary pathway."""
        lambda2 = 100.0
        c = 0.0017
        lambda1 = c * lambda2 / static_intensity.mu0
        solution = integrate_el_ode(lambda1, lambda2, 1.0, static_intensity, curve, grid)
        assert not solution.stopped
        expected = 1.0 + c * integrated_ggdp(grid.nodes, static_intensity)
        assert np.max(np.abs(solution.x / expected - 1.0)) < 1e-6
        assert np.allclose(solution.K, np.log(expected), atol=1e-6)
    
    def test_fourth_order_convergence(self, curve):
        """Test fourth-order convergence of the integrator."""
        economy = EconomyParams(theta=1.0, r=0.036)
        lambda2, c = 100.0, 0.01
        lambda1 = c * lambda2 / economy.mu0
        errors = []
        for step in (5.0, 2.5):
            grid = TimeGrid(horizon=100.0, step=step)
            solution = integrate_el_ode(lambda1, lambda2, 1.0, economy, curve, grid)
            exact = 1.0 + c * integrated_ggdp(grid.nodes, economy)
            errors.append(np.max(np.abs(solution.x / exact - 1.0)))
        assert 14.0 <= errors[0] / errors[1] <= 18.0
    
    def test_no_mitigation_stays_put(self, grid, static_intensity, curve):
        """Test that lambda1 = 0 keeps x at one."""
        solution = integrate_el_ode(0.0, 100.0, 1.0, static_intensity, curve, grid)
        assert np.all(solution.x == 1.0)
    
    def test_decreasing_below_threshold(self, grid, curve):
        """Test that x decreases below the threshold."""
        economy = EconomyParams(theta=0.75, r=0.04, delta=0.0)
        assert economy.sigma == pytest.approx(0.01)
        lambda1 = 0.5 * decreasing_threshold(economy, curve)
        solution = integrate_el_ode(lambda1, 100.0, 1.0, economy, curve, grid)
        assert not solution.stopped
        assert np.all(np.diff(solution.x) < 0)
    
    def test_stops_when_x_leaves_positive_region(self, curve):
        """Test that integration stops when x leaves the positive region."""
        economy = EconomyParams(delta=0.5)
        grid = TimeGrid(horizon=10.0, step=1.0)
        solution = integrate_el_ode(0.0, 1e-6, 1.0, economy, curve, grid)
        assert solution.stopped
        assert solution.stop_time == 1.0
        assert len(solution.x) == 1
    
    @pytest.mark.parametrize("lambda2, gamma", [(0.0, 1.0), (100.0, 0.0)])
    def test_invalid_parameters(self, grid, static_intensity, curve, lambda2, gamma):
        """Test that invalid parameters are rejected."""
        with pytest.raises(DomainError):
            integrate_el_ode(0.1, lambda2, gamma, static_intensity, curve, grid)


class TestSmallSigmaExpansion:
    """Test cases for appendix2_expansion."""
    
    @pytest.fixture
    def curve(self):
        return MacCurve()
    
    def test_no_exogenous_decline_is_exact(self, grid, static_intensity, curve):
        """Test that the expansion is exact at sigma = 0."""
        lambda1, lambda2 = 0.5, 100.0
        series = appendix2_expansion(lambda1, lambda2, static_intensity, curve, grid)
        assert np.array_equal(series.x_approx, series.x0)
        ode = integrate_el_ode(lambda1, lambda2, 1.0, static_intensity, curve, grid)
        assert np.allclose(series.x_approx, ode.x, rtol=1e-8)
    
    def test_error_shrinks_quadratically(self, grid, curve):
        """Test that the expansion error shrinks quadratically."""
        lambda1, lambda2 = 1e-4, 100.0
        errors = []
        # r - sigma held at 0.02 so N(t) is the same in both runs
        for r, theta in ((0.04, 0.5), (0.03, 2.0 / 3.0)):
            economy = EconomyParams(r=r, theta=theta, delta=0.0)
            series = appendix2_expansion(lambda1, lambda2, economy, curve, grid)
            ode = integrate_el_ode(lambda1, lambda2, 1.0, economy, curve, grid)
            errors.append(np.max(np.abs(series.x_approx - ode.x)))
        assert errors[0] / errors[1] >= 3.5
    
    def test_zero_lambda1_limit(self, grid, curve):
        """Test the lambda1 -> 0 limit."""
        economy = EconomyParams(theta=0.75, r=0.04)
        exact = appendix2_expansion(0.0, 100.0, economy, curve, grid)
        near = appendix2_expansion(1e-12, 100.0, economy, curve, grid)
        assert np.allclose(near.x1, exact.x1, rtol=1e-6)
    
    def test_slope_sign_below_threshold(self, grid, curve):
        """Test the slope sign below the threshold."""
        economy = EconomyParams(theta=0.75, r=0.04)
        threshold = decreasing_threshold(economy, curve)
        below = appendix2_expansion(0.5 * threshold, 100.0, economy, curve, grid)
        above = appendix2_expansion(2.0 * threshold, 100.0, economy, curve, grid)
        assert below.x_approx[1] < below.x_approx[0]
        assert np.all(np.diff(below.x_simplified) < 0)
        assert above.x_approx[1] > above.x_approx[0]
    
    def test_discounting_rejected(self, grid, curve):
        """Test that discounting is rejected."""
        with pytest.raises(DomainError):
            appendix2_expansion(0.1, 100.0, EconomyParams(delta=0.03), curve, grid)
    
    def test_large_sigma_warns(self, grid, curve, caplog):
        """Test the warning for large sigma."""
        economy = EconomyParams(theta=0.0, r=0.06)
        with caplog.at_level(logging.WARNING, logger="model.pathway"):
            appendix2_expansion(0.1, 100.0, economy, curve, grid)
        assert any("large for a first-order expansion" in r.message for r in caplog.records)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
