import math

import numpy as np
import pytest

from batbench.bat import (
    Bat,
    BatParams,
    BatState,
    accept_and_update,
    average_loudness,
    bat_step,
    frequency_and_global_move,
    init_bats,
    local_walk,
    run_bat,
)
from batbench.benchmarks import benchmark_spec
from batbench.core import Bounds, EvalBudget, Objective, RandomStream
from oracles import CallCounter

WIDE = Bounds.cube(-1e6, 1e6, 1)
SPHERE2 = benchmark_spec("dejong_sphere", 2).objective


class StubStream:
    def __init__(self, uniforms=(), vectors=()):
        self._uniforms = list(uniforms)
        self._vectors = [np.asarray(v, dtype=float) for v in vectors]
        self.uniform_calls = 0

    def uniform(self):
        self.uniform_calls += 1
        return self._uniforms.pop(0)

    def uniform_vector(self, d):
        v = self._vectors.pop(0)
        assert v.size == d
        return v

    def symmetric_vector(self, d):
        return 2.0 * self.uniform_vector(d) - 1.0


class CountingStream(RandomStream):
    def __init__(self, seed):
        super().__init__(seed)
        self.uniform_calls = 0
        self.vector_draws = 0

    def uniform(self):
        self.uniform_calls += 1
        return super().uniform()

    def uniform_vector(self, d):
        self.vector_draws += d
        return super().uniform_vector(d)


def _bat(position, velocity=None, loudness=1.0, pulse=0.5, dim=None):
    position = np.asarray(position, dtype=float)
    d = position.size if dim is None else dim
    return Bat(
        position=position,
        velocity=np.zeros(d) if velocity is None else np.asarray(velocity, dtype=float),
        frequency=0.0,
        loudness=loudness,
        initial_loudness=loudness,
        pulse_rate=pulse,
        initial_pulse_rate=pulse,
    )


def _state(bats, best_position, best_value, iteration=0, budget=10_000):
    return BatState(
        bats=bats,
        best_position=np.asarray(best_position, dtype=float),
        best_value=best_value,
        iteration=iteration,
        rng=RandomStream(0),
        budget=EvalBudget(budget),
    )


def test_params_validation():
    with pytest.raises(ValueError):
        BatParams(alpha=1.0)
    with pytest.raises(ValueError):
        BatParams(f_min=5.0, f_max=4.0)
    with pytest.raises(ValueError):
        BatParams(f_min=-1.0, f_max=4.0)
    BatParams(f_min=0.0, f_max=0.0)  # degenerate range is allowed
    with pytest.raises(ValueError):
        BatParams(gamma=0.0)
    with pytest.raises(ValueError):
        BatParams(pulse_range=(0.0, 1.5))
    with pytest.raises(ValueError):
        BatParams(loudness_range=(0.0, 1.0))


def test_init_bats_counting_and_best():
    params = BatParams(n=25)
    budget = EvalBudget(10_000)
    state = init_bats(params, SPHERE2, RandomStream(3), budget)
    assert len(state.bats) == 25
    assert budget.used == 25
    values = [SPHERE2(b.position) for b in state.bats]
    assert state.best_value == min(values)
    assert SPHERE2(state.best_position) == state.best_value
    assert all(np.array_equal(b.velocity, np.zeros(2)) for b in state.bats)
    assert all(BatParams().f_min <= b.frequency <= BatParams().f_max for b in state.bats)


def test_init_bats_degenerate_pulse_range():
    params = BatParams(n=10, pulse_range=(0.0, 0.0))
    state = init_bats(params, SPHERE2, RandomStream(1), EvalBudget(100))
    assert all(b.pulse_rate == 0.0 for b in state.bats)


def test_init_bats_deterministic():
    params = BatParams(n=8)
    s1 = init_bats(params, SPHERE2, RandomStream(11), EvalBudget(100))
    s2 = init_bats(params, SPHERE2, RandomStream(11), EvalBudget(100))
    for a, b in zip(s1.bats, s2.bats):
        assert np.array_equal(a.position, b.position)
        assert (a.frequency, a.loudness, a.pulse_rate) == (b.frequency, b.loudness, b.pulse_rate)
    assert s1.best_value == s2.best_value


def test_global_move_at_best_keeps_velocity():
    bat = _bat([1.5], velocity=[0.25])
    v, x, f = frequency_and_global_move(bat, np.array([1.5]), BatParams(), WIDE, StubStream([0.37]))
    assert v[0] == 0.25
    assert x[0] == 1.75


def test_global_move_zero_beta():
    bat = _bat([2.0], velocity=[0.5])
    v, x, f = frequency_and_global_move(bat, np.array([0.0]), BatParams(), WIDE, StubStream([0.0]))
    assert f == 0.0
    assert v[0] == 0.5


def test_global_move_full_beta_hits_f_max():
    bat = _bat([2.0])
    _, _, f = frequency_and_global_move(bat, np.array([0.0]), BatParams(), WIDE, StubStream([1.0]))
    assert f == 100.0


def test_global_move_hand_example():
    # x=2, best=0, v=0, f=1  ->  v'=2, x'=4 (moves away from the best)
    bat = _bat([2.0])
    params = BatParams(f_min=0.0, f_max=1.0)
    v, x, f = frequency_and_global_move(bat, np.array([0.0]), params, WIDE, StubStream([1.0]))
    assert f == 1.0
    assert v[0] == 2.0
    assert x[0] == 4.0


def test_global_move_reversed_sign_flag():
    bat = _bat([2.0])
    params = BatParams(f_min=0.0, f_max=1.0, velocity_toward_best=True)
    v, x, _ = frequency_and_global_move(bat, np.array([0.0]), params, WIDE, StubStream([1.0]))
    assert v[0] == -2.0
    assert x[0] == 0.0


def test_local_walk_zero_loudness_and_zero_draws():
    base = np.array([0.3, -0.4])
    b = Bounds.cube(-10.0, 10.0, 2)
    assert np.array_equal(local_walk(base, 0.0, b, StubStream(vectors=[[0.9, 0.1]])), base)
    # epsilon = 0 comes from raw draws of 0.5
    assert np.array_equal(local_walk(base, 3.0, b, StubStream(vectors=[[0.5, 0.5]])), base)


def test_local_walk_hand_example():
    # base=1, eps=0.5, loudness=2 -> 2.0 ; raw draw 0.75 maps to eps 0.5
    out = local_walk(np.array([1.0]), 2.0, WIDE, StubStream(vectors=[[0.75]]))
    assert out[0] == 2.0


def test_local_walk_consumes_d_draws_and_clamps():
    stub = StubStream(vectors=[[1.0, 1.0, 1.0]])
    b = Bounds.cube(-1.0, 1.0, 3)
    out = local_walk(np.array([0.9, 0.0, -0.9]), 5.0, b, stub)
    assert out.tolist() == [1.0, 1.0, 1.0]
    with pytest.raises(ValueError):
        local_walk(np.array([0.0]), -1.0, b, stub)


def test_average_loudness():
    s = _state([_bat([0.0], loudness=1.0), _bat([0.0], loudness=1.0)], [0.0], 0.0)
    assert average_loudness(s) == 1.0
    s2 = _state([_bat([0.0], loudness=1.0), _bat([0.0], loudness=2.0)], [0.0], 0.0)
    assert average_loudness(s2) == 1.5


def test_average_loudness_after_universal_acceptance():
    params = BatParams(loudness_range=(1.0, 1.0))
    bats = [_bat([5.0], loudness=1.0) for _ in range(4)]
    state = _state(bats, [5.0], 25.0)
    for i, bat in enumerate(bats):
        accepted = accept_and_update(
            bat, np.array([1.0 + i * 1e-3]), 1.0 - i * 0.1, state, params, StubStream([0.0])
        )
        assert accepted
    assert average_loudness(state) == pytest.approx(0.9)


def test_accept_rejects_worse_candidate_regardless_of_draw():
    params = BatParams()
    bat = _bat([1.0], loudness=1.0)
    state = _state([bat], [0.5], 0.25)
    assert not accept_and_update(bat, np.array([2.0]), 4.0, state, params, StubStream([0.0]))
    assert bat.position[0] == 1.0
    assert state.best_value == 0.25


def test_accept_decays_loudness_and_sets_pulse():
    params = BatParams()
    bat = _bat([1.0], loudness=1.0, pulse=1.0)
    state = _state([bat], [1.0], 1.0, iteration=0)
    assert accept_and_update(bat, np.array([0.5]), 0.25, state, params, StubStream([0.0]))
    assert bat.loudness == 0.9
    assert bat.pulse_rate == 0.0  # t=0 -> r0 * (1 - exp(0)) = 0
    assert state.best_value == 0.25

    state.iteration = 1
    assert accept_and_update(bat, np.array([0.25]), 0.0625, state, params, StubStream([0.0]))
    assert bat.pulse_rate == pytest.approx(1.0 - math.exp(-0.9), abs=1e-15)
    assert bat.loudness == pytest.approx(0.81)


def test_accept_consumes_one_draw_both_ways():
    params = BatParams()
    bat = _bat([1.0], loudness=1.0)
    state = _state([bat], [0.5], 0.25)
    stub = StubStream([0.1, 0.1])
    accept_and_update(bat, np.array([2.0]), 4.0, state, params, stub)
    accept_and_update(bat, np.array([0.1]), 0.01, state, params, stub)
    assert stub.uniform_calls == 2


def test_loudness_closed_form_and_pulse_monotonicity():
    params = BatParams()
    bat = _bat([5.0], loudness=1.7, pulse=0.8)
    state = _state([bat], [5.0], 100.0)
    pulses = []
    value = 50.0
    for t in range(0, 40, 3):
        state.iteration = t
        assert accept_and_update(bat, np.array([value]), value, state, params, StubStream([0.0]))
        pulses.append(bat.pulse_rate)
        k = len(bat.acceptance_log)
        assert bat.loudness == 1.7 * 0.9**k  # exact closed form
        assert 0.0 <= bat.pulse_rate <= bat.initial_pulse_rate
        value /= 2.0
    assert pulses == sorted(pulses)


def test_bat_step_uses_exactly_n_evaluations():
    params = BatParams(n=25)
    budget = EvalBudget(10_000)
    state = init_bats(params, SPHERE2, RandomStream(4), budget)
    before_best = state.best_value
    bat_step(state, params, SPHERE2)
    assert budget.used == 50
    assert state.iteration == 1
    assert state.best_value <= before_best


def test_bat_step_pulse_one_never_walks_locally():
    # rand in [0,1) is never > 1, so candidates always come from the global
    # move: draws per bat are exactly beta + branch + acceptance.
    params = BatParams(n=6, pulse_range=(1.0, 1.0))
    rng = CountingStream(8)
    budget = EvalBudget(1_000)
    state = init_bats(params, SPHERE2, rng, budget)
    rng.uniform_calls = 0
    rng.vector_draws = 0
    bat_step(state, params, SPHERE2)
    assert rng.uniform_calls == 3 * params.n
    assert rng.vector_draws == 0


def test_bat_step_pulse_zero_walks_locally():
    params = BatParams(n=6, pulse_range=(0.0, 0.0))
    rng = CountingStream(8)
    budget = EvalBudget(1_000)
    state = init_bats(params, SPHERE2, rng, budget)
    rng.uniform_calls = 0
    rng.vector_draws = 0
    bat_step(state, params, SPHERE2)
    assert rng.uniform_calls == 3 * params.n
    assert rng.vector_draws == 2 * params.n  # one epsilon vector per bat


def test_run_accounting_and_bounds_sweep():
    params = BatParams(n=10, max_iterations=30)
    counter = CallCounter(SPHERE2.fn)
    obj = Objective("sphere", 2, SPHERE2.bounds, counter, 0.0, np.zeros(2))
    budget = EvalBudget(10 * 31)
    records = []
    state, result = run_bat(params, obj, 21, budget, recorder=records.append)
    assert result.evaluations_used == counter.calls
    assert result.evaluations_used == 10 + 10 * result.iterations
    assert result.iterations == 30
    assert len(records) == 30
    for rec in records:
        assert rec.positions.shape == (10, 2)
        assert ((rec.positions >= -10.0) & (rec.positions <= 10.0)).all()
    best_values = [rec.best_value for rec in records]
    assert best_values == sorted(best_values, reverse=True)


def test_run_bat_monotone_best_and_loudness_histories():
    params = BatParams(n=12, max_iterations=60)
    budget = EvalBudget(12 * 61)
    state, result = run_bat(params, SPHERE2, 33, budget)
    for bat in state.bats:
        k = len(bat.acceptance_log)
        assert bat.loudness == bat.initial_loudness * 0.9**k
        assert 0.0 <= bat.pulse_rate <= bat.initial_pulse_rate
        assert bat.acceptance_log == sorted(bat.acceptance_log)
        assert SPHERE2.bounds.contains(bat.position)


def test_zero_frequency_zero_velocity_improves_only_via_local_walk():
    # f_min=f_max=0 with zero initial velocities makes the global move an
    # identity, so any improvement is the local walk's doing.
    params = BatParams(n=10, f_min=0.0, f_max=0.0, max_iterations=50)
    budget = EvalBudget(10 * 51)
    state, result = run_bat(params, SPHERE2, 5, budget)
    for bat in state.bats:
        assert np.array_equal(bat.velocity, np.zeros(2))
    records = []
    budget2 = EvalBudget(10 * 51)
    state2, _ = run_bat(params, SPHERE2, 5, budget2, recorder=records.append)
    assert records[-1].best_value < records[0].best_value


def test_run_bat_deterministic_trials_and_trajectories():
    params = BatParams(n=9, max_iterations=25)
    rec1, rec2 = [], []
    _, r1 = run_bat(params, SPHERE2, 77, EvalBudget(9 * 26), recorder=rec1.append)
    _, r2 = run_bat(params, SPHERE2, 77, EvalBudget(9 * 26), recorder=rec2.append)
    assert r1 == r2  # wall_time excluded from comparison
    assert len(rec1) == len(rec2)
    for a, b in zip(rec1, rec2):
        assert a.iteration == b.iteration
        assert a.best_value == b.best_value
        assert np.array_equal(a.positions, b.positions)


def test_run_bat_stops_at_tolerance_with_iteration_granularity():
    params = BatParams(n=10, max_iterations=1_000)
    budget = EvalBudget(20_000)
    state, result = run_bat(params, SPHERE2, 3, budget, stop_at=1.0)
    assert result.success
    assert result.best_value <= 1.0
    assert result.evaluations_used == 10 + 10 * result.iterations
    assert result.evaluations_used < 20_000


def test_run_bat_budget_below_init_cost():
    params = BatParams(n=40)
    budget = EvalBudget(10)
    state, result = run_bat(params, SPHERE2, 1, budget, stop_at=1e-5)
    assert state.budget_terminated
    assert not result.success
    assert result.evaluations_used == 0
    assert result.iterations == 0


def test_run_bat_partial_iteration_on_odd_budget():
    params = BatParams(n=40, max_iterations=1_000)
    budget = EvalBudget(40 + 2 * 40 + 15)
    state, result = run_bat(params, SPHERE2, 13, budget)
    assert state.budget_terminated
    assert result.iterations == 2
    assert result.evaluations_used == budget.max_evaluations
