"""Sweep runner, the channel-quality reference scheduler and CSV output."""

from dataclasses import replace

import numpy as np
import pytest

from csrap import (
    CameraNode,
    FrameGrid,
    GeometrySpec,
    Omnidirectional,
    Scenario,
    ScenarioConfig,
    SolveStatus,
    SweepSpec,
    TargetObject,
    baseline_schedule,
    greedy_based_reference,
    run_sweep,
    schedule_from_document,
    schedule_to_document,
    sweep_spec_from_document,
    verify_schedule,
)
from csrap.harness import CSV_HEADER
from csrap.scenario import ScenarioFormatError
from support import random_instance


def cam(cam_id, rates, requirement, coverage):
    return CameraNode(
        id=cam_id,
        position=(float(cam_id), 0.0),
        geometry=Omnidirectional(1.0),
        rate_requirement=requirement,
        per_subchannel_rate=tuple(float(r) for r in rates),
        coverage_set=frozenset(coverage),
    )


SMALL_CONFIG = ScenarioConfig(
    area_side=120.0,
    deployment="partial_random",
    num_cameras=12,
    num_targets=8,
    geometry=GeometrySpec(view_distance=(30.0, 60.0)),
    frame=FrameGrid(8, 2),
)


class TestGreedyBasedReference:
    def test_single_camera_matches_baseline(self):
        grid = FrameGrid(3, 1)
        scn = Scenario(grid, (cam(1, [8, 4, 7], 9.0, {1}),), (TargetObject(1, (0, 0)),))
        assert greedy_based_reference(scn).schedule == baseline_schedule(scn).schedule

    def test_prefers_highest_robust_rate_camera(self):
        # Camera 2 owns the best single-RB candidate even though camera 1 has
        # the higher rate on the first subchannel.
        grid = FrameGrid(2, 1)
        cameras = (cam(1, [6, 6], 6.0, {1}), cam(2, [4, 8], 8.0, {2}))
        scn = Scenario(grid, cameras, (TargetObject(1, (0, 0)), TargetObject(2, (1, 0))))
        result = greedy_based_reference(scn)
        assert result.diagnostics.greedy[0].camera_id == 2

    def test_feasible_outputs_verify(self):
        rng = np.random.default_rng(19)
        seen = 0
        for _ in range(120):
            scn = random_instance(rng)
            result = greedy_based_reference(scn)
            if result.status is SolveStatus.FEASIBLE:
                assert verify_schedule(result.schedule, scn).feasible
                seen += 1
        assert seen > 40


class TestRunSweep:
    def test_trivial_point_mean_is_min_candidate_size(self):
        config = ScenarioConfig(
            area_side=50.0,
            deployment="partial_random",
            num_cameras=1,
            num_targets=1,
            geometry=GeometrySpec(view_distance=(30.0, 40.0)),
            rate_requirement_range=(4.0, 4.0),
            frame=FrameGrid(4, 1),
            channel=replace(
                ScenarioConfig().channel, shadowing_sigma_db=0.0, mcs_table=((-1e9, 4.0),)
            ),
        )
        spec = SweepSpec(
            config=config,
            axis="num_targets",
            values=(1,),
            trials=1,
            algorithms=("baseline", "mramc", "greedy_based", "exact"),
        )
        result = run_sweep(spec)
        for algo in spec.algorithms:
            assert result.cell(1, algo).mean_rbs == 1.0

    def test_identical_spec_reruns_identically(self):
        spec = SweepSpec(config=SMALL_CONFIG, values=(4, 8), trials=5, base_seed=3)
        a = run_sweep(spec)
        b = run_sweep(spec)
        assert [(c.axis, c.value, c.algorithm, c.totals) for c in a.cells] == [
            (c.axis, c.value, c.algorithm, c.totals) for c in b.cells
        ]
        assert a.to_csv() == b.to_csv()

    def test_csv_header_contract(self):
        spec = SweepSpec(config=SMALL_CONFIG, values=(4,), trials=2)
        csv = run_sweep(spec).to_csv()
        assert csv.splitlines()[0] == CSV_HEADER
        assert CSV_HEADER == "axis,value,algorithm,mean_rbs,std_rbs,infeasible,trials"

    def test_timestamp_comment_is_optional(self):
        spec = SweepSpec(config=SMALL_CONFIG, values=(4,), trials=1)
        result = run_sweep(spec)
        assert result.to_csv(timestamp=True).startswith("# generated ")
        assert result.to_csv(timestamp=False).startswith("axis,")

    def test_freeze_placement_varies_only_the_channel(self):
        spec = SweepSpec(
            config=SMALL_CONFIG, values=(8,), trials=4, freeze_placement=True, base_seed=2
        )
        result = run_sweep(spec)
        assert result.cell(8, "mramc").trials == 4

    def test_m_mramc_and_exact_entries(self):
        config = replace(SMALL_CONFIG, num_cameras=6, num_targets=3, frame=FrameGrid(5, 2))
        spec = SweepSpec(
            config=config,
            values=(3,),
            trials=3,
            algorithms=("mramc", "m_mramc", "exact"),
            multiplicity=2,
        )
        result = run_sweep(spec)
        m = result.cell(3, "mramc")
        mm = result.cell(3, "m_mramc")
        ex = result.cell(3, "exact")
        for trial in range(3):
            if m.totals[trial] is not None:
                assert ex.totals[trial] is not None
                assert ex.totals[trial] <= m.totals[trial]
                assert mm.totals[trial] >= m.totals[trial]

    def test_rejects_unknown_algorithm_or_axis(self):
        with pytest.raises(ValueError):
            SweepSpec(algorithms=("quantum",))
        with pytest.raises(ValueError):
            SweepSpec(axis="humidity")

    def test_spec_from_document(self):
        doc = {
            "axis": "view_distance",
            "values": [30, 40],
            "trials": 2,
            "algorithms": ["mramc"],
            "base_seed": 9,
            "freeze_placement": True,
            "config": {"deployment": "partial_random", "num_cameras": 12, "num_targets": 8},
        }
        spec = sweep_spec_from_document(doc)
        assert spec.axis == "view_distance"
        assert spec.values == (30, 40)
        assert spec.config.deployment == "partial_random"
        with pytest.raises(ScenarioFormatError):
            sweep_spec_from_document({"axis": "nope"})


class TestPerformance:
    def test_default_scenario_solves_promptly(self):
        # Soft budget: candidate enumeration is O(K M^2 T) and the greedy
        # loop O(K^2); the default 81-camera frame should be far under this.
        import time

        from csrap import ScenarioConfig, generate_scenario, mramc
        from csrap.solvers import CandidateTable

        scn = generate_scenario(ScenarioConfig(rng_seed=2))
        start = time.perf_counter()
        table = CandidateTable(scn.cameras, scn.grid)
        for solver in (mramc, baseline_schedule, greedy_based_reference):
            assert solver(scn, table).status is SolveStatus.FEASIBLE
        assert time.perf_counter() - start < 5.0


class TestScheduleDocuments:
    def test_round_trip_against_scenario(self):
        rng = np.random.default_rng(2)
        scn = random_instance(rng)
        result = baseline_schedule(scn)
        doc = schedule_to_document(result)
        rebuilt = schedule_from_document(doc, scn)
        assert rebuilt.assignments == result.schedule.assignments
        assert rebuilt.total_rbs == result.schedule.total_rbs

    def test_missing_fields_are_named(self):
        rng = np.random.default_rng(2)
        scn = random_instance(rng)
        with pytest.raises(ScenarioFormatError, match="assignments"):
            schedule_from_document({"total_rbs": 0}, scn)
        with pytest.raises(ScenarioFormatError, match="slot"):
            schedule_from_document(
                {"assignments": [{"camera_id": 1, "start": 1, "length": 1, "robust_rate": 8.0}], "total_rbs": 1},
                scn,
            )
