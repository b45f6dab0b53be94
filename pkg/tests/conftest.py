"""Shared helpers: random state and configuration factories used across
the module tests and the acceptance suite."""

import numpy as np

from commonbath import BathConfig, SystemParams


def random_x_state(rng: np.random.Generator, complex_phase: bool = True) -> np.ndarray:
    """Random density matrix whose only coherence sits between |10> and |01>.

    Positivity needs |rho_23| <= sqrt(rho_22 rho_33); the magnitude is drawn
    inside that disc."""
    pops = rng.random(4) + 1e-3
    pops = pops / pops.sum()
    mag = rng.random() * np.sqrt(pops[1] * pops[2])
    phase = np.exp(2j * np.pi * rng.random()) if complex_phase else 1.0
    rho = np.diag(pops).astype(complex)
    rho[1, 2] = mag * phase
    rho[2, 1] = np.conj(rho[1, 2])
    return rho


def random_system(rng: np.random.Generator) -> SystemParams:
    """Random parameters inside the validity domain (omega1 > 0)."""
    while True:
        eps_m = rng.uniform(10.0, 30.0)
        delta = rng.uniform(-5.0, 5.0)
        omega = rng.uniform(2.0, 10.0)
        if eps_m - np.hypot(0.5 * delta, omega) > 0.5:
            return SystemParams(eps_m + 0.5 * delta, eps_m - 0.5 * delta, omega)


def random_bath(
    rng: np.random.Generator,
    common: bool = True,
    dephasing: bool = False,
) -> BathConfig:
    return BathConfig(
        t_a=rng.uniform(0.5, 15.0),
        t_b=rng.uniform(0.5, 15.0),
        t_c=rng.uniform(0.5, 15.0),
        gamma_a=rng.uniform(0.1, 2.0),
        gamma_b=rng.uniform(0.1, 2.0),
        gamma_ca=rng.uniform(0.1, 2.0) if common else 0.0,
        gamma_cb=rng.uniform(0.1, 2.0) if common else 0.0,
        dephasing_gamma=rng.uniform(0.01, 0.1) if dephasing else 0.0,
        common_enabled=common,
        collective_enabled=common,
        dephasing_enabled=dephasing,
    )
