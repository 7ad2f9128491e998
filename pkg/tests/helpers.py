"""Shared builders for randomized test models."""
from __future__ import annotations

import numpy as np

from mflqg import LqMeanFieldModel, build_model


def rand_psd(rng: np.random.Generator, d: int, scale: float = 1.0) -> np.ndarray:
    G = rng.uniform(-1.0, 1.0, (d, d))
    return scale * (G @ G.T)


def rand_pd(rng: np.random.Generator, d: int, floor: float = 0.3) -> np.ndarray:
    return rand_psd(rng, d) + floor * np.eye(d)


def random_model(
    rng: np.random.Generator,
    *,
    horizon: int = 6,
    n_agents: int = 3,
    d_x: int = 2,
    d_u: int = 2,
    d_y: int | None = None,
    mode: str = "full",
    coupled: bool = True,
    noise_scale: float = 0.5,
) -> LqMeanFieldModel:
    """A well-conditioned random instance: PD R and noise, PSD weights,
    mildly contractive dynamics."""
    T = horizon
    d_y = d_x if d_y is None else d_y
    kwargs = {}
    if mode == "noisy":
        kwargs = {
            "Cx": rng.uniform(-1.0, 1.0, (T, d_y, d_x)),
            "Cz": rng.uniform(-0.5, 0.5, (T, d_y, d_x)),
            "Sigma_V": rand_pd(rng, d_y, floor=0.2),
        }
    return build_model(
        horizon=T,
        n_agents=n_agents,
        A=rng.uniform(-1.0, 1.0, (T, d_x, d_x)),
        B=rng.uniform(-1.0, 1.0, (T, d_x, d_u)),
        D=rng.uniform(-0.5, 0.5, (T, d_x, d_x)) if coupled else None,
        Q=np.stack([rand_psd(rng, d_x) for _ in range(T)]),
        R=np.stack([rand_pd(rng, d_u) for _ in range(T)]),
        P=np.stack([rand_psd(rng, d_x) for _ in range(T)]),
        Sigma_X=rand_pd(rng, d_x, floor=0.2),
        Sigma_W=rand_pd(rng, d_x, floor=0.1) * noise_scale,
        initial_mean=rng.uniform(-1.0, 1.0, d_x),
        observation_mode=mode,
        **kwargs,
    )


def rel_err(value: float, reference: float) -> float:
    denom = abs(reference)
    return abs(value - reference) / denom if denom > 0 else abs(value - reference)
