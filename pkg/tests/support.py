"""Shared test helpers: random instances and independent brute-force oracles.

The oracles here deliberately re-derive results from first principles (plain
loops over all possibilities) so library code is never checked against
itself.
"""

from __future__ import annotations

import math

import numpy as np

from csrap import (
    CameraNode,
    CandidateAllocation,
    FrameGrid,
    Omnidirectional,
    Scenario,
    TargetObject,
)

RATE_TIERS = (2.0, 4.0, 6.0, 8.0)


def random_instance(
    rng: np.random.Generator,
    max_cameras: int = 6,
    max_targets: int = 8,
    max_subchannels: int = 6,
    max_slots: int = 2,
    zero_rate_prob: float = 0.12,
    cover_all: bool = True,
) -> Scenario:
    """Small random instance with tier-quantized rates and random coverage.

    With ``cover_all`` every target is covered by at least one camera, though
    that camera may still be unable to transmit (all-zero rates), so solvers
    can legitimately report infeasibility.
    """
    k = int(rng.integers(2, max_cameras + 1))
    y = int(rng.integers(2, max_targets + 1))
    m = int(rng.integers(2, max_subchannels + 1))
    t = int(rng.integers(1, max_slots + 1))
    targets = tuple(TargetObject(i + 1, (float(i), 0.0)) for i in range(y))

    coverage: list[set[int]] = [set() for _ in range(k)]
    for cam_idx in range(k):
        size = int(rng.integers(1, min(y, 4) + 1))
        coverage[cam_idx] = set(int(v) + 1 for v in rng.choice(y, size=size, replace=False))
    if cover_all:
        for target_id in range(1, y + 1):
            if not any(target_id in cov for cov in coverage):
                coverage[int(rng.integers(0, k))].add(target_id)

    cameras = []
    for cam_idx in range(k):
        rates = []
        for _ in range(m):
            if rng.random() < zero_rate_prob:
                rates.append(0.0)
            else:
                rates.append(float(RATE_TIERS[int(rng.integers(0, len(RATE_TIERS)))]))
        requirement = float(rng.integers(3, 17))
        cameras.append(
            CameraNode(
                id=cam_idx + 1,
                position=(float(cam_idx), 1.0),
                geometry=Omnidirectional(1.0),
                rate_requirement=requirement,
                per_subchannel_rate=tuple(rates),
                coverage_set=frozenset(coverage[cam_idx]),
            )
        )
    grid = FrameGrid(m, t)
    return Scenario(grid=grid, cameras=tuple(cameras), targets=targets)


def brute_force_runs(rates, requirement):
    """Every (start, length, min-rate) window satisfying the just-achieves
    inequality, checked directly over all windows."""
    out = []
    m = len(rates)
    for start in range(1, m + 1):
        for length in range(1, m - start + 2):
            window = rates[start - 1 : start - 1 + length]
            rate = min(window)
            if rate > 0 and rate * (length - 1) < requirement <= rate * length:
                out.append((start, length, rate))
    return out


def brute_force_coverage(camera: CameraNode, targets) -> set[int]:
    """Direct geometric re-check of a camera's coverage set."""
    covered = set()
    for tgt in targets:
        dx = tgt.position[0] - camera.position[0]
        dy = tgt.position[1] - camera.position[1]
        dist = math.hypot(dx, dy)
        geom = camera.geometry
        if dist > geom.view_distance:
            continue
        if hasattr(geom, "fov_deg") and dist > 0:
            bearing = math.degrees(math.atan2(dy, dx)) % 360
            delta = abs((bearing - geom.orientation_deg + 180) % 360 - 180)
            if delta > geom.fov_deg / 2:
                continue
        covered.add(tgt.id)
    return covered


def _camera_candidates(camera: CameraNode, grid: FrameGrid):
    """All candidate allocations of one camera via the brute-force window scan."""
    out = []
    for slot in range(1, grid.num_slots + 1):
        for start, length, rate in brute_force_runs(camera.rates_in_slot(slot), camera.rate_requirement):
            out.append(CandidateAllocation(camera.id, slot, start, length, rate))
    return out


def exhaustive_optimum(scenario: Scenario, with_exclusivity: bool = True) -> int | None:
    """Minimum total RBs by enumerating camera subsets and, when exclusivity
    is on, every conflict-free candidate assignment within each subset.

    Returns None when no subset admits a feasible schedule.  Partial sums are
    pruned against the best total found so far, which never affects the
    minimum.
    """
    cameras = list(scenario.cameras)
    target_ids = set(scenario.target_ids)
    grid = scenario.grid
    candidates = {cam.id: _camera_candidates(cam, grid) for cam in cameras}
    min_len = {
        cam.id: min((c.length for c in candidates[cam.id]), default=None) for cam in cameras
    }

    best: int | None = None
    for subset_bits in range(1, 2 ** len(cameras)):
        subset = [cameras[i] for i in range(len(cameras)) if subset_bits >> i & 1]
        covered = set()
        for cam in subset:
            covered |= cam.coverage_set
        if not target_ids <= covered:
            continue
        if any(min_len[cam.id] is None for cam in subset):
            continue
        floor = sum(min_len[cam.id] for cam in subset)
        if best is not None and floor >= best:
            continue
        if not with_exclusivity:
            best = floor if best is None else min(best, floor)
            continue

        order = [cam.id for cam in subset]

        def assign(idx: int, used_cells: set, loads: dict, cost: int) -> None:
            nonlocal best
            if best is not None and cost + sum(min_len[c] for c in order[idx:]) >= best:
                return
            if idx == len(order):
                best = cost
                return
            for cand in candidates[order[idx]]:
                cells = set(cand.cells())
                if cells & used_cells:
                    continue
                if loads.get(cand.slot, 0) + cand.length > grid.capacity(cand.slot):
                    continue
                loads2 = dict(loads)
                loads2[cand.slot] = loads2.get(cand.slot, 0) + cand.length
                assign(idx + 1, used_cells | cells, loads2, cost + cand.length)

        assign(0, set(), {}, 0)
    return best


def all_subsets_cover_optimum(scenario: Scenario) -> int | None:
    """Reference for the relaxed mode: min over covering subsets of the sum
    of per-camera minimum run lengths, by plain subset enumeration."""
    return exhaustive_optimum(scenario, with_exclusivity=False)


def feasible_via_exhaustion(scenario: Scenario) -> bool:
    return exhaustive_optimum(scenario, with_exclusivity=True) is not None


def ilp_constraints_hold(schedule, scenario) -> dict[str, bool]:
    """Direct re-implementation of the four feasibility rules, independent of
    the library verifier."""
    cams = {c.id: c for c in scenario.cameras}
    covered = set()
    for alloc in schedule.assignments:
        covered |= cams[alloc.camera_id].coverage_set
    coverage_ok = set(t.id for t in scenario.targets) <= covered

    used = {}
    exclusivity_ok = True
    for alloc in schedule.assignments:
        for cell in alloc.cells():
            if cell in used:
                exclusivity_ok = False
            used[cell] = alloc.camera_id

    loads: dict[int, int] = {}
    for alloc in schedule.assignments:
        loads[alloc.slot] = loads.get(alloc.slot, 0) + alloc.length
    capacity_ok = all(n <= scenario.grid.capacity(slot) for slot, n in loads.items())

    seen = [a.camera_id for a in schedule.assignments]
    single_ok = len(seen) == len(set(seen))

    return {
        "coverage": coverage_ok,
        "slot_capacity": capacity_ok,
        "rb_exclusivity": exclusivity_ok,
        "single_allocation": single_ok,
    }
