"""Physical quantities extracted from steady states: basis rotation back to
the product basis, concurrence, reservoir heat currents, per-transition
effective temperatures and the detuning that equalizes them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import NonXStateError, SolverError, ValidationError
from .lindblad import BathConfig, Liouvillian, build_liouvillian, steady_state
from .model import SystemParams, bose_occupation, diagonalize

__all__ = [
    "SteadyReport",
    "to_free_basis",
    "concurrence_x",
    "concurrence_wootters",
    "heat_current",
    "effective_temperatures",
    "find_thermalization_detuning",
    "steady_report",
    "enhancement_threshold",
]

# free-basis entries allowed to be nonzero for the X structure used here:
# the four populations plus the inner coherence between |10> and |01>
_X_MASK = np.array(
    [
        [True, False, False, False],
        [False, True, True, False],
        [False, True, True, False],
        [False, False, False, True],
    ]
)

X_STRUCTURE_TOL = 1e-8

# imaginary part of a heat current above this is treated as a numerical
# inconsistency rather than noise
HEAT_IMAG_TOL = 1e-10

# spin flip sigma_y x sigma_y in the basis (|11>,|10>,|01>,|00>)
_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


def to_free_basis(rho_eigen: np.ndarray, eig) -> np.ndarray:
    """Rotate an eigenbasis density matrix back to the free product basis:
    rho_free = basis.T @ rho_eigen @ basis."""
    return eig.basis.T @ rho_eigen @ eig.basis


def concurrence_x(rho_free: np.ndarray, tol: float = X_STRUCTURE_TOL) -> float:
    """Concurrence of an X-structured state in the free basis:

        C = 2 max(0, |rho_23| - sqrt(rho_11 rho_44))

    with indices in the order (|11>,|10>,|01>,|00>).

    Raises:
        NonXStateError: when any entry outside the X pattern exceeds tol;
            use concurrence_wootters for general states.
    """
    rho_free = np.asarray(rho_free)
    off = np.max(np.abs(rho_free[~_X_MASK])) if np.any(~_X_MASK) else 0.0
    if off > tol:
        raise NonXStateError(
            f"state is not X-structured (off-pattern entry {off:.3e} > {tol:.0e}); "
            "use concurrence_wootters"
        )
    inner = abs(rho_free[1, 2])
    outer = math.sqrt(max(float(rho_free[0, 0].real * rho_free[3, 3].real), 0.0))
    return min(max(2.0 * (inner - outer), 0.0), 1.0)


def concurrence_wootters(rho_free: np.ndarray) -> float:
    """General two-qubit concurrence max(0, sqrt(m1)-sqrt(m2)-sqrt(m3)-sqrt(m4))
    with m_i the descending eigenvalues of rho (sy x sy) rho* (sy x sy)."""
    rho_free = np.asarray(rho_free, dtype=complex)
    rho_tilde = _YY @ rho_free.conj() @ _YY
    mu = np.linalg.eigvals(rho_free @ rho_tilde)
    # the product is similar to a PSD matrix, so the eigenvalues are real
    # and nonnegative up to roundoff
    roots = np.sqrt(np.clip(mu.real, 0.0, None))
    roots[::-1].sort()
    return min(max(float(roots[0] - roots[1] - roots[2] - roots[3]), 0.0), 1.0)


def heat_current(part: np.ndarray, rho: np.ndarray, hamiltonian: np.ndarray) -> float:
    """Heat current Tr{ L_part(rho) H } of one dissipator piece; positive
    means the reservoir releases heat into the system.

    Raises:
        SolverError: when the imaginary part exceeds HEAT_IMAG_TOL.
    """
    flow = (part @ np.asarray(rho, dtype=complex).reshape(16, order="F")).reshape(
        (4, 4), order="F"
    )
    q = complex(np.trace(flow @ hamiltonian))
    if abs(q.imag) > HEAT_IMAG_TOL:
        raise SolverError(
            f"heat current has imaginary part {q.imag:.3e}; "
            "generator or state is inconsistent"
        )
    return q.real


def _effective_rates(
    params: SystemParams, cfg: BathConfig
) -> tuple[tuple[float, float], tuple[float, float]]:
    """((G1_down, G1_up), (G2_down, G2_up)) of the two independent baths."""
    eig = diagonalize(params)
    s2 = math.sin(0.5 * eig.theta) ** 2
    c2 = math.cos(0.5 * eig.theta) ** 2
    na1 = bose_occupation(eig.omega1, cfg.t_a)
    nb1 = bose_occupation(eig.omega1, cfg.t_b)
    na2 = bose_occupation(eig.omega2, cfg.t_a)
    nb2 = bose_occupation(eig.omega2, cfg.t_b)
    g1_down = s2 * cfg.gamma_a * (na1 + 1.0) + c2 * cfg.gamma_b * (nb1 + 1.0)
    g1_up = s2 * cfg.gamma_a * na1 + c2 * cfg.gamma_b * nb1
    g2_down = c2 * cfg.gamma_a * (na2 + 1.0) + s2 * cfg.gamma_b * (nb2 + 1.0)
    g2_up = c2 * cfg.gamma_a * na2 + s2 * cfg.gamma_b * nb2
    return (g1_down, g1_up), (g2_down, g2_up)


def effective_temperatures(params: SystemParams, cfg: BathConfig) -> tuple[float, float]:
    """Temperatures the two transitions individually equilibrate to under the
    independent reservoirs alone:

        T_eff(omega_j) = omega_j / ln(Gamma_j_down / Gamma_j_up)

    Returns 0.0 for a transition whose upward rate vanishes (both reservoirs
    at zero temperature)."""
    eig = diagonalize(params)
    (g1d, g1u), (g2d, g2u) = _effective_rates(params, cfg)
    out = []
    for omega, down, up in ((eig.omega1, g1d, g1u), (eig.omega2, g2d, g2u)):
        out.append(0.0 if up == 0.0 else omega / math.log(down / up))
    return (out[0], out[1])


def find_thermalization_detuning(
    t_a: float,
    t_b: float,
    omega: float,
    eps_m: float,
    gamma_a: float = 1.0,
    gamma_b: float = 1.0,
    tol: float = 1e-6,
    scan_points: int = 256,
) -> tuple[float, float]:
    """Detuning delta_eps in (0, delta_max] at which both transitions see the
    same effective temperature, found by a bracketing root solve on
    T_eff(omega1) - T_eff(omega2) to absolute tolerance tol.

    Returns (delta_eps, common effective temperature).

    Raises:
        ValidationError: if t_a == t_b (already thermal at every detuning)
            or eps_m <= omega (no detuning keeps omega1 positive).
        SolverError: when no sign change is found on the scanned interval.
    """
    if t_a == t_b:
        raise ValidationError(
            "t_a == t_b is thermal for every detuning; nothing to solve"
        )
    if eps_m <= omega:
        raise ValidationError(
            f"eps_m={eps_m} must exceed omega={omega} for a positive omega1"
        )
    delta_max = 2.0 * math.sqrt(eps_m**2 - omega**2) * (1.0 - 1e-9)

    def gap(delta: float) -> float:
        params = SystemParams(eps_m + 0.5 * delta, eps_m - 0.5 * delta, omega)
        cfg = BathConfig(
            t_a=t_a, t_b=t_b, gamma_a=gamma_a, gamma_b=gamma_b,
            common_enabled=False, collective_enabled=False,
        )
        t1, t2 = effective_temperatures(params, cfg)
        return t1 - t2

    grid = np.linspace(delta_max / scan_points, delta_max, scan_points)
    values = [gap(d) for d in grid]
    for i in range(len(grid) - 1):
        if values[i] == 0.0:
            root = float(grid[i])
            break
        if values[i] * values[i + 1] < 0.0:
            root = float(brentq(gap, grid[i], grid[i + 1], xtol=tol))
            break
    else:
        raise SolverError(
            "no sign change of T_eff(omega1) - T_eff(omega2) on "
            f"(0, {delta_max:.6g}] with {scan_points} scan points"
        )
    params = SystemParams(eps_m + 0.5 * root, eps_m - 0.5 * root, omega)
    cfg = BathConfig(
        t_a=t_a, t_b=t_b, gamma_a=gamma_a, gamma_b=gamma_b,
        common_enabled=False, collective_enabled=False,
    )
    t1, t2 = effective_temperatures(params, cfg)
    return root, 0.5 * (t1 + t2)


@dataclass(frozen=True)
class SteadyReport:
    """Everything computed from one steady-state solve."""

    rho_eigen: np.ndarray
    rho_free: np.ndarray
    concurrence: float
    q_a: float
    q_b: float
    q_c: float
    q_dep: float
    t_eff_1: float
    t_eff_2: float
    residual: float


def steady_report(params: SystemParams, cfg: BathConfig) -> SteadyReport:
    """Solve the steady state for (params, cfg) and package the observables.

    Heat currents of absent dissipators are reported as 0.0. The concurrence
    uses the X fast path; engine steady states carry the X structure by
    construction, so a violation there signals a real inconsistency and is
    allowed to propagate."""
    lv = build_liouvillian(params, cfg)
    rho, residual = steady_state(lv)
    rho_free = to_free_basis(rho, lv.eig)
    h = lv.hamiltonian()
    currents = {}
    for name in ("bath_a", "bath_b", "bath_c", "dephasing"):
        part = lv.parts.get(name)
        currents[name] = 0.0 if part is None else heat_current(part, rho, h)
    t1, t2 = effective_temperatures(params, cfg)
    return SteadyReport(
        rho_eigen=rho,
        rho_free=rho_free,
        concurrence=concurrence_x(rho_free),
        q_a=currents["bath_a"],
        q_b=currents["bath_b"],
        q_c=currents["bath_c"],
        q_dep=currents["dephasing"],
        t_eff_1=t1,
        t_eff_2=t2,
        residual=residual,
    )


def enhancement_threshold(
    params: SystemParams, cfg: BathConfig, t_c_values
) -> float:
    """Largest scanned common-reservoir temperature at which attaching the
    common reservoir still increases the concurrence (delta C > 0).

    The reference solve without the common reservoir is independent of t_c
    and done once.

    Raises:
        SolverError: if delta C <= 0 at every scanned temperature.
    """
    import dataclasses

    base = steady_report(
        params, dataclasses.replace(cfg, common_enabled=False, collective_enabled=False)
    )
    best = None
    for t_c in t_c_values:
        on = steady_report(params, dataclasses.replace(cfg, t_c=float(t_c)))
        if on.concurrence - base.concurrence > 0.0:
            best = float(t_c) if best is None else max(best, float(t_c))
    if best is None:
        raise SolverError("no scanned t_c gives a concurrence enhancement")
    return best
