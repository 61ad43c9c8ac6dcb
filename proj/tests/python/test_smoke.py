import math
import os
from pathlib import Path

import numpy as np
import pytest

import heronwaist as hw

DATA = Path(os.environ.get("HERONWAIST_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def example1():
    return hw.load_problem(str(DATA / "example1.json"))


def test_projection_and_distance():
    disc = hw.ConvexSet.ball([0.0, 0.0], 1.0)
    np.testing.assert_allclose(disc.project([2.0, 0.0]), [1.0, 0.0])
    assert disc.distance([2.0, 0.0]) == pytest.approx(1.0)
    box = hw.ConvexSet.box([1.0, -1.0], [1.0, 1.0])
    np.testing.assert_array_equal(box.project([3.0, 0.0]), [2.0, 0.0])
    assert box.kind == "box"
    assert not hw.ConvexSet.halfspace([0.0, 1.0], 0.0).is_bounded()


def test_errors_are_typed():
    with pytest.raises(hw.InvalidInput):
        hw.ConvexSet.ball([0.0, 0.0], -1.0)
    with pytest.raises(hw.ParseError):
        hw.parse_problem("{")
    with pytest.raises(hw.IoError):
        hw.load_problem("/nonexistent/heronwaist.json")
    assert issubclass(hw.StructuralError, hw.Error)


def test_objective_and_subgradient_at_start():
    spec = example1()
    u = spec.init
    assert hw.objective(spec.problem, u) == pytest.approx(111.3315383531, abs=1e-9)
    g = hw.hub_subgradient(spec.problem, u)
    np.testing.assert_allclose(g, [0.6269761003749816, -0.2406146632642963], atol=1e-14)
    assert hw.subgradient_bound(spec.problem) == pytest.approx(math.sqrt(180.0))
    assert hw.full_subgradient(spec.problem, u).shape == (10,)


def test_solve_and_verify():
    spec = example1()
    cfg = hw.SolverConfig()
    cfg.tolerance = 1e-6
    result = hw.solve(spec.problem, spec.init, cfg)
    assert result.stop_reason == hw.StopReason.objective_stagnation
    assert result.checkpoints[1e-4] == 96
    assert result.best_objective == pytest.approx(85.2772730788, abs=1e-3)
    assert hw.is_feasible(spec.problem, result.best_config)
    anchors = hw.initialize_anchors(spec.problem)
    assert hw.verify(spec.problem, anchors, 1e-4).verdict == hw.Verdict.not_optimal


def test_build_problem_and_render():
    sets = [hw.ConvexSet.ball([0.0, 0.0], 1.0), hw.ConvexSet.ball([5.0, 0.0], 1.0), hw.ConvexSet.ball([0.0, 5.0], 1.0)]
    p = hw.Problem(sets, hw.ConvexSet.singleton([2.0, 2.0]), [1.0, 1.0, 1.0], [1.0, 1.0, 1.0])
    assert hw.check_nondegeneracy(p) == []
    assert hw.connected_components(p) == [([0, 1, 2], True)]
    u = hw.initialize_anchors(p)
    svg = hw.render_svg(p, u)
    assert svg.count('class="hub-ray"') == 3
    text = hw.serialize_problem(hw.parse_problem(hw.serialize_problem(example1())))
    assert hw.parse_problem(text).problem == example1().problem
