"""Closed-loop population simulation and policy cost evaluation.

Randomness contract: all draws come from counter-based Philox streams
derived from (seed, run, noise-kind), with a fixed in-stream layout of
(step, agent, component). The scheme is named and versioned in RNG_SCHEME.
Initial states, process noise, and observation noise live in separate
substreams, so full- and noisy-observation simulations of the same model
and seed share identical state noise (common random numbers), and traces
are bit-reproducible regardless of scheduling or concurrency.

Cost evaluation: `simulate` records realized costs; `exact_policy_cost`
propagates means and covariances of the pair (per-agent deviation from the
mean-field, mean-field) through the closed loop, which has fixed dimension
2*d_x regardless of the population size; `monte_carlo_cost` estimates the
same objective by sampling, with the runs split into fixed-size chunks so
the result is independent of the worker count.
"""
from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .control import GainSchedule
from .errors import IncompatibleStrategy, ValidationError
from .linalg import psd_factor, symmetrize
from .model import LqMeanFieldModel, validate_model
from .riccati import solve_control_riccati

RNG_SCHEME = "philox4x64-runkind-v1"
_KEY_SALT = 0x9E3779B97F4A7C15
_KIND_INIT = 0
_KIND_PROCESS = 1
_KIND_OBS = 2
_MC_CHUNK = 4096


def _substream(seed: int, run: int, kind: int) -> np.random.Generator:
    """Philox stream for one (run, kind); the low counter word is left free
    for in-stream consumption, so substreams can never overlap."""
    bits = np.random.Philox(key=[seed, _KEY_SALT], counter=[0, 0, run, kind])
    return np.random.Generator(bits)


def _noise_factors(model: LqMeanFieldModel):
    """Square factors of the three noise covariances (observation last, or None)."""
    Lv = None
    if model.observation_mode == "noisy":
        Lv = psd_factor(model.Sigma_V, "Sigma_V")
    return (
        psd_factor(model.Sigma_X, "Sigma_X"),
        psd_factor(model.Sigma_W, "Sigma_W"),
        Lv,
    )


def _draw_run_noise(model: LqMeanFieldModel, seed: int, run: int, factors=None):
    """All randomness for one run, in the fixed (step, agent, component) layout."""
    T, n = model.horizon, model.n_agents
    Lx, Lw, Lv = _noise_factors(model) if factors is None else factors
    init = _substream(seed, run, _KIND_INIT).standard_normal((n, model.d_x))
    x1 = model.mu_X + init @ Lx.T
    proc = _substream(seed, run, _KIND_PROCESS).standard_normal((T - 1, n, model.d_x))
    w = proc @ Lw.T
    v = None
    if model.observation_mode == "noisy":
        obs = _substream(seed, run, _KIND_OBS).standard_normal((T, n, model.d_y))
        v = obs @ Lv.T
    return x1, w, v


def mean_over_agents(values: np.ndarray) -> np.ndarray:
    """Population average with a fixed summation order (ascending agent index)."""
    return np.add.reduce(values, axis=0) / values.shape[0]


def step_cost(
    states: np.ndarray,
    actions: np.ndarray,
    meanfield: np.ndarray,
    Q: np.ndarray,
    R: np.ndarray,
    P: np.ndarray,
) -> float:
    """Per-step population cost on a snapshot: agent-average quadratics plus
    the mean-field penalty."""
    quad = np.einsum("id,de,ie->i", states, Q, states)
    quad = quad + np.einsum("id,de,ie->i", actions, R, actions)
    agent_avg = np.add.reduce(quad) / states.shape[0]
    return float(agent_avg + meanfield @ P @ meanfield)


# ---------------------------------------------------------------------------
# strategies

@dataclass(frozen=True, eq=False)
class LinearStrategy:
    """Full-observation control law u^i = Fx_t x^i + Fz_t z.

    The optimal law is the special case Fx = Kx, Fz = Kz - Kx; arbitrary
    values support perturbation testing.
    """

    horizon: int
    d_x: int
    d_u: int
    Fx: np.ndarray  # (T, d_u, d_x)
    Fz: np.ndarray  # (T, d_u, d_x)

    def __post_init__(self):
        shape = (self.horizon, self.d_u, self.d_x)
        if self.Fx.shape != shape or self.Fz.shape != shape:
            raise IncompatibleStrategy(
                f"strategy stacks have shapes {self.Fx.shape}, {self.Fz.shape}, "
                f"expected {shape}"
            )

    @classmethod
    def from_gains(cls, gains: GainSchedule) -> "LinearStrategy":
        return cls(
            horizon=gains.horizon, d_x=gains.d_x, d_u=gains.d_u,
            Fx=gains.Kx.copy(), Fz=gains.Kz - gains.Kx,
        )

    @classmethod
    def zero(cls, horizon: int, d_x: int, d_u: int) -> "LinearStrategy":
        stack = np.zeros((horizon, d_u, d_x))
        return cls(horizon=horizon, d_x=d_x, d_u=d_u, Fx=stack, Fz=stack.copy())


def optimal_strategy(model: LqMeanFieldModel) -> LinearStrategy:
    """Solve the control recursions and package the optimal linear law."""
    return LinearStrategy.from_gains(solve_control_riccati(model).gain_schedule())


def _check_linear_strategy(model: LqMeanFieldModel, strategy) -> LinearStrategy:
    if not isinstance(strategy, LinearStrategy):
        raise IncompatibleStrategy(
            f"full observation requires a LinearStrategy, got {type(strategy).__name__}"
        )
    if (strategy.horizon, strategy.d_x, strategy.d_u) != (model.horizon, model.d_x, model.d_u):
        raise IncompatibleStrategy(
            f"strategy (T={strategy.horizon}, d_x={strategy.d_x}, d_u={strategy.d_u}) does not "
            f"match model (T={model.horizon}, d_x={model.d_x}, d_u={model.d_u})"
        )
    return strategy


def _check_gain_schedule(model: LqMeanFieldModel, strategy) -> GainSchedule:
    if not isinstance(strategy, GainSchedule):
        raise IncompatibleStrategy(
            f"noisy observation requires a GainSchedule, got {type(strategy).__name__}"
        )
    if (strategy.horizon, strategy.d_x, strategy.d_u) != (model.horizon, model.d_x, model.d_u):
        raise IncompatibleStrategy(
            f"schedule (T={strategy.horizon}, d_x={strategy.d_x}, d_u={strategy.d_u}) does not "
            f"match model (T={model.horizon}, d_x={model.d_x}, d_u={model.d_u})"
        )
    if strategy.Kf is None:
        raise IncompatibleStrategy("noisy observation requires filter gains in the schedule")
    if strategy.d_y != model.d_y:
        raise IncompatibleStrategy(
            f"schedule d_y={strategy.d_y} does not match model d_y={model.d_y}"
        )
    return strategy


# ---------------------------------------------------------------------------
# simulation

@dataclass(frozen=True, eq=False)
class SimulationTrace:
    """Everything recorded from one closed-loop run (step t at index t-1)."""

    model: LqMeanFieldModel
    seed: int
    run: int
    rng_scheme: str
    model_fingerprint: str
    states: np.ndarray                 # (T, n, d_x)
    actions: np.ndarray                # (T, n, d_u)
    observations: np.ndarray | None    # (T, n, d_y), noisy mode
    estimates: np.ndarray | None       # (T, n, d_x), noisy mode
    meanfield: np.ndarray              # (T, d_x)
    mean_control: np.ndarray           # (T, d_u)
    step_costs: np.ndarray             # (T,)
    total_cost: float
    process_noise: np.ndarray          # (T-1, n, d_x)
    obs_noise: np.ndarray | None       # (T, n, d_y), noisy mode


def simulate(model: LqMeanFieldModel, strategy, seed: int, run: int = 0) -> SimulationTrace:
    """Run the n-subsystem closed loop once and record everything.

    Under full observation `strategy` is a LinearStrategy; under noisy
    observation it is a GainSchedule carrying filter gains, and each
    subsystem runs its own estimator. Bit-reproducible for fixed
    (model, strategy, seed, run).
    """
    model = validate_model(model)
    T, n, d_x, d_u = model.horizon, model.n_agents, model.d_x, model.d_u
    noisy = model.observation_mode == "noisy"
    if noisy:
        gains = _check_gain_schedule(model, strategy)
        Fx, Fz = gains.Kx, gains.Kz - gains.Kx
    else:
        lin = _check_linear_strategy(model, strategy)
        Fx, Fz = lin.Fx, lin.Fz

    x1, w, v = _draw_run_noise(model, seed, run)

    states = np.zeros((T, n, d_x))
    actions = np.zeros((T, n, d_u))
    meanfield = np.zeros((T, d_x))
    mean_control = np.zeros((T, d_u))
    step_costs = np.zeros(T)
    observations = np.zeros((T, n, model.d_y)) if noisy else None
    estimates = np.zeros((T, n, d_x)) if noisy else None

    states[0] = x1
    if noisy:
        estimates[0] = np.broadcast_to(model.mu_X, (n, d_x))

    for k in range(T):
        x = states[k]
        z = mean_over_agents(x)
        meanfield[k] = z
        if noisy:
            y = x @ model.Cx[k].T + z @ model.Cz[k].T + v[k]
            observations[k] = y
            basis = estimates[k]
        else:
            basis = x
        u = basis @ Fx[k].T + z @ Fz[k].T
        actions[k] = u
        mean_control[k] = mean_over_agents(u)
        step_costs[k] = step_cost(x, u, z, model.Q[k], model.R[k], model.P[k])
        if k + 1 < T:
            if noisy:
                innovation = y - estimates[k] @ model.Cx[k].T - z @ model.Cz[k].T
                estimates[k + 1] = (
                    estimates[k] @ model.A[k].T + u @ model.B[k].T + innovation @ gains.Kf[k].T
                )
            states[k + 1] = x @ model.A[k].T + u @ model.B[k].T + model.D[k] @ z + w[k]

    return SimulationTrace(
        model=model,
        seed=int(seed),
        run=int(run),
        rng_scheme=RNG_SCHEME,
        model_fingerprint=model.fingerprint(),
        states=states,
        actions=actions,
        observations=observations,
        estimates=estimates,
        meanfield=meanfield,
        mean_control=mean_control,
        step_costs=step_costs,
        total_cost=float(np.add.reduce(step_costs)),
        process_noise=w,
        obs_noise=v,
    )


# ---------------------------------------------------------------------------
# auxiliary coordinates

@dataclass(frozen=True, eq=False)
class AuxiliaryTrace:
    """A trace re-expressed as per-agent deviations plus the mean-field path.

    The residual fields report how exactly the recorded trajectory
    satisfies the decoupled deviation and mean-field dynamics when the
    recorded noise is substituted back in.
    """

    deviations: np.ndarray          # (T, n, d_x), x^i - z
    deviation_controls: np.ndarray  # (T, n, d_u), u^i - u^z
    meanfield: np.ndarray           # (T, d_x)
    mean_control: np.ndarray        # (T, d_u)
    max_sum_residual_state: float
    max_sum_residual_control: float
    max_deviation_residual: float
    max_meanfield_residual: float


def decompose_auxiliary(trace: SimulationTrace) -> AuxiliaryTrace:
    """Split a trace into deviation and mean-field coordinates and verify
    both closed-form dynamics against the recorded noise."""
    model = trace.model
    T = model.horizon
    xbar = trace.states - trace.meanfield[:, np.newaxis, :]
    ubar = trace.actions - trace.mean_control[:, np.newaxis, :]

    sum_state = float(np.max(np.abs(np.add.reduce(xbar, axis=1)))) if xbar.size else 0.0
    sum_control = float(np.max(np.abs(np.add.reduce(ubar, axis=1)))) if ubar.size else 0.0

    dev_res = 0.0
    mf_res = 0.0
    for k in range(T - 1):
        w_mean = mean_over_agents(trace.process_noise[k])
        w_dev = trace.process_noise[k] - w_mean
        pred_dev = xbar[k] @ model.A[k].T + ubar[k] @ model.B[k].T + w_dev
        dev_res = max(dev_res, float(np.max(np.abs(xbar[k + 1] - pred_dev))))
        abar = model.A[k] + model.D[k]
        pred_mf = abar @ trace.meanfield[k] + model.B[k] @ trace.mean_control[k] + w_mean
        mf_res = max(mf_res, float(np.max(np.abs(trace.meanfield[k + 1] - pred_mf))))

    return AuxiliaryTrace(
        deviations=xbar,
        deviation_controls=ubar,
        meanfield=trace.meanfield.copy(),
        mean_control=trace.mean_control.copy(),
        max_sum_residual_state=sum_state,
        max_sum_residual_control=sum_control,
        max_deviation_residual=dev_res,
        max_meanfield_residual=mf_res,
    )


def cost_identity_check(
    states: np.ndarray,
    actions: np.ndarray,
    Q: np.ndarray,
    R: np.ndarray,
    P: np.ndarray,
) -> tuple[float, float]:
    """Evaluate one population snapshot's cost two ways.

    Returns (direct, decomposed): the agent-average quadratic plus
    mean-field penalty, and the same cost written in deviation coordinates
    plus mean-field terms. The two agree up to rounding for any snapshot.
    """
    x = np.asarray(states, dtype=float)
    u = np.asarray(actions, dtype=float)
    z = mean_over_agents(x)
    uz = mean_over_agents(u)
    lhs = step_cost(x, u, z, Q, R, P)
    xbar = x - z
    ubar = u - uz
    quad = np.einsum("id,de,ie->i", xbar, Q, xbar)
    quad = quad + np.einsum("id,de,ie->i", ubar, R, ubar)
    rhs = float(
        np.add.reduce(quad) / x.shape[0]
        + z @ (Q + P) @ z
        + uz @ R @ uz
    )
    return lhs, rhs


# ---------------------------------------------------------------------------
# exact evaluation

@dataclass(frozen=True, eq=False)
class PolicyEvaluation:
    """Exact expected cost of a linear strategy, with its per-step split
    into deviation and mean-field parts (the latter split again into the
    deterministic mean part and the noise part)."""

    total: float
    step_costs: np.ndarray            # (T,)
    deviation_costs: np.ndarray       # (T,)
    meanfield_costs: np.ndarray       # (T,)
    meanfield_mean_costs: np.ndarray  # (T,)
    meanfield_noise_costs: np.ndarray # (T,)
    deviation_cov: np.ndarray         # (T, d_x, d_x), per-agent deviation covariance
    meanfield_mean: np.ndarray        # (T, d_x)
    meanfield_cov: np.ndarray         # (T, d_x, d_x)


def exact_policy_cost(model: LqMeanFieldModel, strategy: LinearStrategy) -> PolicyEvaluation:
    """Expected cost of a full-observation linear strategy, exactly.

    Propagates the per-agent deviation covariance and the mean-field
    mean/covariance through the closed loop. By exchangeability every agent
    has the same deviation covariance, and the deviation/mean-field
    cross-covariance is identically zero, so the propagation is exact in
    dimension 2*d_x. The deviation noise covariance is (1 - 1/n) Sigma_W
    and the mean-field noise covariance is Sigma_W / n, from splitting
    i.i.d. noise into per-agent deviation and population average.
    """
    model = validate_model(model)
    if model.observation_mode != "full":
        raise IncompatibleStrategy("exact evaluation supports full observation only")
    strategy = _check_linear_strategy(model, strategy)
    T, n, d_x = model.horizon, model.n_agents, model.d_x

    dev_frac = 1.0 - 1.0 / n
    cov_dev = np.zeros((T, d_x, d_x))
    mf_mean = np.zeros((T, d_x))
    mf_cov = np.zeros((T, d_x, d_x))
    cov_dev[0] = dev_frac * model.Sigma_X
    mf_mean[0] = model.mu_X
    mf_cov[0] = model.Sigma_X / n

    for k in range(T - 1):
        closed_dev = model.A[k] + model.B[k] @ strategy.Fx[k]
        closed_mf = model.A[k] + model.D[k] + model.B[k] @ (strategy.Fx[k] + strategy.Fz[k])
        cov_dev[k + 1] = symmetrize(
            closed_dev @ cov_dev[k] @ closed_dev.T + dev_frac * model.Sigma_W,
            "deviation covariance",
        )
        mf_mean[k + 1] = closed_mf @ mf_mean[k]
        mf_cov[k + 1] = symmetrize(
            closed_mf @ mf_cov[k] @ closed_mf.T + model.Sigma_W / n,
            "mean-field covariance",
        )

    dev_costs = np.zeros(T)
    mf_mean_costs = np.zeros(T)
    mf_noise_costs = np.zeros(T)
    for k in range(T):
        G = strategy.Fx[k] + strategy.Fz[k]
        w_dev = model.Q[k] + strategy.Fx[k].T @ model.R[k] @ strategy.Fx[k]
        w_mf = model.Q[k] + model.P[k] + G.T @ model.R[k] @ G
        dev_costs[k] = float(np.trace(w_dev @ cov_dev[k]))
        mf_mean_costs[k] = float(mf_mean[k] @ w_mf @ mf_mean[k])
        mf_noise_costs[k] = float(np.trace(w_mf @ mf_cov[k]))

    mf_costs = mf_mean_costs + mf_noise_costs
    step_costs = dev_costs + mf_costs
    return PolicyEvaluation(
        total=float(np.add.reduce(step_costs)),
        step_costs=step_costs,
        deviation_costs=dev_costs,
        meanfield_costs=mf_costs,
        meanfield_mean_costs=mf_mean_costs,
        meanfield_noise_costs=mf_noise_costs,
        deviation_cov=cov_dev,
        meanfield_mean=mf_mean,
        meanfield_cov=mf_cov,
    )


# ---------------------------------------------------------------------------
# Monte Carlo evaluation

@dataclass(frozen=True)
class MonteCarloCost:
    mean: float
    stderr: float
    runs: int


def monte_carlo_cost(
    model: LqMeanFieldModel, strategy, runs: int, seed: int, workers: int = 1
) -> MonteCarloCost:
    """Sample mean and standard error of the realized cost over `runs`
    independent closed-loop runs (run indices 0..runs-1, so run r uses the
    same noise as simulate(model, strategy, seed, run=r)).

    Runs are processed in fixed-size chunks; the chunking, and therefore
    every reported digit, is independent of `workers`.
    """
    model = validate_model(model)
    if model.observation_mode == "noisy":
        strategy = _check_gain_schedule(model, strategy)
    else:
        strategy = _check_linear_strategy(model, strategy)
    runs = int(runs)
    if runs < 2:
        raise ValidationError(f"monte_carlo_cost needs at least 2 runs, got {runs}")

    starts = list(range(0, runs, _MC_CHUNK))
    costs = np.empty(runs)

    def fill(start: int) -> None:
        count = min(_MC_CHUNK, runs - start)
        costs[start:start + count] = _chunk_costs(model, strategy, seed, start, count)

    if workers <= 1:
        for start in starts:
            fill(start)
    else:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            list(pool.map(fill, starts))

    mean = float(np.add.reduce(costs) / runs)
    var = float(np.add.reduce((costs - mean) ** 2) / (runs - 1))
    return MonteCarloCost(mean=mean, stderr=float(np.sqrt(var / runs)), runs=runs)


def _chunk_costs(
    model: LqMeanFieldModel, strategy, seed: int, start: int, count: int
) -> np.ndarray:
    """Total realized cost for runs start..start+count-1, stepped together.

    Uses the same substreams and draw layout as `simulate`, vectorized over
    the run axis.
    """
    T, n, d_x, d_y = model.horizon, model.n_agents, model.d_x, model.d_y
    noisy = model.observation_mode == "noisy"
    if noisy:
        Fx, Fz, Kf = strategy.Kx, strategy.Kz - strategy.Kx, strategy.Kf
    else:
        Fx, Fz, Kf = strategy.Fx, strategy.Fz, None

    factors = _noise_factors(model)
    x1 = np.empty((count, n, d_x))
    w = np.empty((count, T - 1, n, d_x))
    v = np.empty((count, T, n, d_y)) if noisy else None
    for i in range(count):
        xi, wi, vi = _draw_run_noise(model, seed, start + i, factors)
        x1[i], w[i] = xi, wi
        if noisy:
            v[i] = vi

    x = x1
    xhat = np.broadcast_to(model.mu_X, (count, n, d_x)).copy() if noisy else None
    per_step = np.zeros((T, count))
    for k in range(T):
        z = np.add.reduce(x, axis=1) / n
        basis = xhat if noisy else x
        u = basis @ Fx[k].T + (z @ Fz[k].T)[:, np.newaxis, :]
        quad = np.einsum("rid,de,rie->ri", x, model.Q[k], x)
        quad = quad + np.einsum("rid,de,rie->ri", u, model.R[k], u)
        per_step[k] = np.add.reduce(quad, axis=1) / n
        per_step[k] += np.einsum("rd,de,re->r", z, model.P[k], z)
        if k + 1 < T:
            if noisy:
                y = x @ model.Cx[k].T + (z @ model.Cz[k].T)[:, np.newaxis, :] + v[:, k]
                innovation = y - xhat @ model.Cx[k].T - (z @ model.Cz[k].T)[:, np.newaxis, :]
                xhat = xhat @ model.A[k].T + u @ model.B[k].T + innovation @ Kf[k].T
            x = x @ model.A[k].T + u @ model.B[k].T + (z @ model.D[k].T)[:, np.newaxis, :] + w[:, k]

    return np.add.reduce(per_step, axis=0)


# ---------------------------------------------------------------------------
# export

def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def export_trace_csv(trace: SimulationTrace, out_dir) -> tuple[Path, Path]:
    """Write the per-agent and mean-field CSV files; returns their paths.

    State and mean-field columns are shifted by the model's reporting
    offset; actions and observations are written as recorded.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model = trace.model
    offset = model.state_offset if model.state_offset is not None else np.zeros(model.d_x)
    noisy = trace.observations is not None

    agents_path = out_dir / "trace_agents.csv"
    header = (
        ["t", "agent"]
        + [f"x_{j}" for j in range(model.d_x)]
        + [f"u_{j}" for j in range(model.d_u)]
        + ([f"y_{j}" for j in range(model.d_y)] if noisy else [])
    )
    with open(agents_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for k in range(model.horizon):
            for i in range(model.n_agents):
                row = [str(k + 1), str(i)]
                row += [_fmt(val) for val in trace.states[k, i] + offset]
                row += [_fmt(val) for val in trace.actions[k, i]]
                if noisy:
                    row += [_fmt(val) for val in trace.observations[k, i]]
                writer.writerow(row)

    meanfield_path = out_dir / "trace_meanfield.csv"
    header = (
        ["t"]
        + [f"z_{j}" for j in range(model.d_x)]
        + [f"uz_{j}" for j in range(model.d_u)]
        + ["step_cost"]
    )
    with open(meanfield_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for k in range(model.horizon):
            row = [str(k + 1)]
            row += [_fmt(val) for val in trace.meanfield[k] + offset]
            row += [_fmt(val) for val in trace.mean_control[k]]
            row.append(_fmt(trace.step_costs[k]))
            writer.writerow(row)

    return agents_path, meanfield_path


def trace_summary(trace: SimulationTrace) -> dict:
    return {
        "total_cost": trace.total_cost,
        "seed": trace.seed,
        "run": trace.run,
        "model_fingerprint": trace.model_fingerprint,
        "rng_scheme": trace.rng_scheme,
        "observation_mode": trace.model.observation_mode,
        "horizon": trace.model.horizon,
        "n_agents": trace.model.n_agents,
        "step_costs": [float(c) for c in trace.step_costs],
    }


def export_summary_json(trace: SimulationTrace, out_dir) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "summary.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(trace_summary(trace), fh, indent=2)
        fh.write("\n")
    return path


__all__ = [
    "RNG_SCHEME",
    "AuxiliaryTrace",
    "LinearStrategy",
    "MonteCarloCost",
    "PolicyEvaluation",
    "SimulationTrace",
    "cost_identity_check",
    "decompose_auxiliary",
    "exact_policy_cost",
    "export_summary_json",
    "export_trace_csv",
    "mean_over_agents",
    "monte_carlo_cost",
    "optimal_strategy",
    "simulate",
    "step_cost",
    "trace_summary",
]
