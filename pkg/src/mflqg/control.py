"""Per-subsystem control laws for both observation models.

Every subsystem applies the same time-varying law: under full observation
the control is a fixed linear function of the local state and the
mean-field; under noisy observation the local state is replaced by a local
conditional-mean estimate maintained by a Kalman update. The controller
keeps no other history.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ModelFormatError, OutOfOrderUpdate, ValidationError
from .model import LqMeanFieldModel


@dataclass(frozen=True, eq=False)
class GainSchedule:
    """Control gains for t = 1..T plus optional filter gains for t = 1..T-1.

    The control at step t is Kx_t x + (Kz_t - Kx_t) z. Terminal gains are
    zero: there is no state left to influence at t = T.
    """

    horizon: int
    d_x: int
    d_u: int
    d_y: int | None
    Kx: np.ndarray            # (T, d_u, d_x)
    Kz: np.ndarray            # (T, d_u, d_x)
    Kf: np.ndarray | None = None  # (T-1, d_x, d_y)

    def __post_init__(self):
        T, d_x, d_u = self.horizon, self.d_x, self.d_u
        if self.Kx.shape != (T, d_u, d_x) or self.Kz.shape != (T, d_u, d_x):
            raise DimensionMismatch(
                f"gain stacks have shapes {self.Kx.shape}, {self.Kz.shape}, "
                f"expected ({T}, {d_u}, {d_x})"
            )
        if np.any(self.Kx[T - 1]) or np.any(self.Kz[T - 1]):
            raise ValidationError("terminal control gains must be zero")
        if self.Kf is not None:
            if self.d_y is None:
                raise DimensionMismatch("filter gains present but d_y is not set")
            if self.Kf.shape != (T - 1, d_x, self.d_y):
                raise DimensionMismatch(
                    f"filter gain stack has shape {self.Kf.shape}, "
                    f"expected ({T - 1}, {d_x}, {self.d_y})"
                )

    @property
    def has_filter(self) -> bool:
        return self.Kf is not None

    def to_dict(self) -> dict:
        gains: dict[str, dict] = {}
        for t in range(1, self.horizon + 1):
            entry = {"Kx": self.Kx[t - 1].tolist(), "Kz": self.Kz[t - 1].tolist()}
            if self.Kf is not None and t < self.horizon:
                entry["Kf"] = self.Kf[t - 1].tolist()
            gains[str(t)] = entry
        out = {
            "horizon": self.horizon,
            "d_x": self.d_x,
            "d_u": self.d_u,
            "gains": gains,
        }
        if self.d_y is not None:
            out["d_y"] = self.d_y
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GainSchedule":
        try:
            T = int(data["horizon"])
            d_x = int(data["d_x"])
            d_u = int(data["d_u"])
            d_y = data.get("d_y")
            entries = data["gains"]
            Kx = np.zeros((T, d_u, d_x))
            Kz = np.zeros((T, d_u, d_x))
            has_filter = any("Kf" in entries[str(t)] for t in range(1, T + 1))
            Kf = np.zeros((max(T - 1, 0), d_x, int(d_y))) if has_filter else None
            for t in range(1, T + 1):
                entry = entries[str(t)]
                Kx[t - 1] = np.asarray(entry["Kx"], dtype=float)
                Kz[t - 1] = np.asarray(entry["Kz"], dtype=float)
                if Kf is not None and t < T:
                    Kf[t - 1] = np.asarray(entry["Kf"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"gain document is malformed: {exc!r}") from None
        return cls(
            horizon=T, d_x=d_x, d_u=d_u,
            d_y=None if d_y is None else int(d_y),
            Kx=Kx, Kz=Kz, Kf=Kf,
        )


@dataclass(frozen=True, eq=False)
class LocalFilterState:
    """One subsystem's running estimate; time is the step the estimate is for."""

    x_hat: np.ndarray
    time: int


def init_filter_state(model: LqMeanFieldModel) -> LocalFilterState:
    """Initial estimate: the population's initial mean."""
    return LocalFilterState(x_hat=np.asarray(model.mu_X, dtype=float).copy(), time=1)


def _check_step(gains: GainSchedule, t: int) -> None:
    if not 1 <= t <= gains.horizon:
        raise ValidationError(f"step {t} outside 1..{gains.horizon}")


def full_obs_action(gains: GainSchedule, x: np.ndarray, z: np.ndarray, t: int) -> np.ndarray:
    """Control under full observation: Kx_t x + (Kz_t - Kx_t) z."""
    _check_step(gains, t)
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if x.shape != (gains.d_x,) or z.shape != (gains.d_x,):
        raise DimensionMismatch(
            f"state/mean-field have shapes {x.shape}, {z.shape}, expected ({gains.d_x},)"
        )
    k = t - 1
    return gains.Kx[k] @ x + (gains.Kz[k] - gains.Kx[k]) @ z


def filter_update(
    model: LqMeanFieldModel,
    state: LocalFilterState,
    gains: GainSchedule,
    y: np.ndarray,
    z: np.ndarray,
    u_prev: np.ndarray,
    t: int,
) -> LocalFilterState:
    """Advance one subsystem's estimate from step t to t+1.

    Applies x' = A_t x_hat + B_t u + Kf_t (y - Cx_t x_hat - Cz_t z), where
    u is the control applied at step t. Deterministic given its inputs.
    """
    if model.observation_mode != "noisy":
        raise ValidationError("filter updates require observation_mode = noisy")
    if gains.Kf is None:
        raise ValidationError("gain schedule has no filter gains")
    if not 1 <= t <= gains.horizon - 1:
        raise ValidationError(f"filter update defined for steps 1..{gains.horizon - 1}, got {t}")
    if state.time != t:
        raise OutOfOrderUpdate(f"filter state is at step {state.time}, update requested for {t}")
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    u_prev = np.asarray(u_prev, dtype=float)
    if y.shape != (model.d_y,):
        raise DimensionMismatch(f"observation has shape {y.shape}, expected ({model.d_y},)")
    if z.shape != (model.d_x,):
        raise DimensionMismatch(f"mean-field has shape {z.shape}, expected ({model.d_x},)")
    if u_prev.shape != (model.d_u,):
        raise DimensionMismatch(f"control has shape {u_prev.shape}, expected ({model.d_u},)")
    k = t - 1
    innovation = y - model.Cx[k] @ state.x_hat - model.Cz[k] @ z
    x_next = model.A[k] @ state.x_hat + model.B[k] @ u_prev + gains.Kf[k] @ innovation
    return LocalFilterState(x_hat=x_next, time=t + 1)


def noisy_obs_action(
    gains: GainSchedule, state: LocalFilterState, z: np.ndarray, t: int
) -> np.ndarray:
    """Control under noisy observation: the full-observation law on the estimate."""
    if state.time != t:
        raise OutOfOrderUpdate(f"filter state is at step {state.time}, action requested for {t}")
    return full_obs_action(gains, state.x_hat, z, t)
