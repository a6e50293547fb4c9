"""Branch-and-bound solver against the exhaustive enumeration oracle."""

import numpy as np
import pytest

from csrap import (
    CameraNode,
    FrameGrid,
    Omnidirectional,
    Scenario,
    SearchBudgetExceeded,
    SolveStatus,
    TargetObject,
    exact_solve,
    verify_schedule,
)
from support import all_subsets_cover_optimum, exhaustive_optimum, random_instance


def cam(cam_id, rates, requirement, coverage):
    return CameraNode(
        id=cam_id,
        position=(float(cam_id), 0.0),
        geometry=Omnidirectional(1.0),
        rate_requirement=requirement,
        per_subchannel_rate=tuple(float(r) for r in rates),
        coverage_set=frozenset(coverage),
    )


def test_single_camera_minimum_run_of_two():
    grid = FrameGrid(2, 1)
    scn = Scenario(grid, (cam(1, [4, 4], 8.0, {1}),), (TargetObject(1, (0, 0)),))
    result = exact_solve(scn)
    assert result.status is SolveStatus.FEASIBLE
    assert result.schedule.total_rbs == 2


def test_prefers_cheap_cover_over_wide_one():
    grid = FrameGrid(3, 1)
    cameras = (
        cam(1, [2, 2, 2], 6.0, {1, 2}),  # needs 3 RBs for both targets
        cam(2, [8, 8, 8], 8.0, {1}),
        cam(3, [8, 8, 8], 8.0, {2}),
    )
    scn = Scenario(grid, cameras, (TargetObject(1, (0, 0)), TargetObject(2, (1, 0))))
    result = exact_solve(scn)
    assert result.schedule.total_rbs == 2
    assert {a.camera_id for a in result.schedule.assignments} == {2, 3}


def test_uncoverable_target_reports_coverage_infeasibility():
    grid = FrameGrid(2, 1)
    scn = Scenario(grid, (cam(1, [8, 8], 8.0, {1}),), (TargetObject(1, (0, 0)), TargetObject(2, (1, 0))))
    result = exact_solve(scn)
    assert result.status is SolveStatus.INFEASIBLE_COVERAGE


def test_capacity_infeasibility_when_rbs_run_out():
    grid = FrameGrid(1, 1)
    cameras = (cam(1, [8], 8.0, {1}), cam(2, [8], 8.0, {2}))
    scn = Scenario(grid, cameras, (TargetObject(1, (0, 0)), TargetObject(2, (1, 0))))
    result = exact_solve(scn)
    assert result.status is SolveStatus.INFEASIBLE_CAPACITY


def test_budget_exhaustion_raises_instead_of_guessing():
    rng = np.random.default_rng(0)
    scn = random_instance(rng)
    with pytest.raises(SearchBudgetExceeded):
        exact_solve(scn, node_budget=1)


def test_relaxed_mode_never_costs_more():
    rng = np.random.default_rng(3)
    for _ in range(150):
        scn = random_instance(rng)
        strict = exact_solve(scn)
        relaxed = exact_solve(scn, "without_exclusivity")
        assert relaxed.relaxed
        if strict.status is SolveStatus.FEASIBLE:
            assert relaxed.status is SolveStatus.FEASIBLE
            assert relaxed.schedule.total_rbs <= strict.schedule.total_rbs


def test_matches_exhaustive_enumeration():
    rng = np.random.default_rng(8)
    agreements = 0
    for _ in range(150):
        scn = random_instance(rng)
        expected = exhaustive_optimum(scn, with_exclusivity=True)
        result = exact_solve(scn)
        if expected is None:
            assert result.status is not SolveStatus.FEASIBLE
        else:
            assert result.status is SolveStatus.FEASIBLE
            assert result.schedule.total_rbs == expected
            assert verify_schedule(result.schedule, scn).feasible
            agreements += 1
    assert agreements > 60


def test_relaxed_matches_subset_enumeration():
    rng = np.random.default_rng(9)
    for _ in range(150):
        scn = random_instance(rng)
        expected = all_subsets_cover_optimum(scn)
        result = exact_solve(scn, "without_exclusivity")
        if expected is None:
            assert result.status is not SolveStatus.FEASIBLE
        else:
            assert result.status is SolveStatus.FEASIBLE
            assert result.schedule.total_rbs == expected


def test_deterministic_results():
    rng = np.random.default_rng(10)
    for _ in range(20):
        scn = random_instance(rng)
        assert exact_solve(scn) == exact_solve(scn)


def test_rejects_unknown_mode():
    rng = np.random.default_rng(1)
    scn = random_instance(rng)
    with pytest.raises(ValueError):
        exact_solve(scn, "something_else")
