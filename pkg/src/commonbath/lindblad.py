"""Assembly of the global-master-equation Liouvillian and steady-state solvers.

The generator acts on column-stacked density matrices: vec(rho) stacks the
columns of rho, so vec(A X B) = kron(B.T, A) vec(X) and the Hamiltonian part
is -i (kron(I, H) - kron(H.T, I)).

Every dissipator keeps the explicit factor-2 convention

    Gamma [ (nbar+1) (2 V rho V+ - {V+V, rho}) + nbar (2 V+ rho V - {V V+, rho}) ]

so the rates gamma_* below are the Gamma of that expression, not the halved
textbook variant.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import SecularApproximationWarning, SolverError, ValidationError
from .model import (
    Eigensystem,
    JumpOperatorSet,
    SystemParams,
    bose_occupation,
    diagonalize,
    jump_operators,
)

__all__ = [
    "BathConfig",
    "Liouvillian",
    "validate_density_matrix",
    "dissipator_independent",
    "dissipator_common",
    "dissipator_dephasing",
    "build_liouvillian",
    "steady_state",
    "propagate",
]

_I4 = np.eye(4)
_I16 = np.eye(16)

# rho is accepted as a density matrix when its Hermitian defect and trace
# defect are below 1e-10 and its smallest eigenvalue is >= -1e-9.
HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-9

# second-smallest singular value must exceed this times the largest for the
# steady state to count as unique
UNIQUENESS_RTOL = 1e-8

# warn when the doublet splitting omega2 - omega1 is not at least this many
# times the largest coupling rate
SECULAR_MARGIN = 10.0


@dataclass(frozen=True)
class BathConfig:
    """Reservoir temperatures, coupling rates and the dissipator switches.

    gamma_ca / gamma_cb are the common-reservoir couplings of qubit A and B;
    the collective cross rate is fixed to sqrt(gamma_ca * gamma_cb), which
    keeps the per-mode rate matrix positive semidefinite.

    collective_enabled only makes sense with common_enabled; the combination
    collective without common is rejected.
    """

    t_a: float
    t_b: float
    t_c: float = 0.0
    gamma_a: float = 1.0
    gamma_b: float = 1.0
    gamma_ca: float = 0.0
    gamma_cb: float = 0.0
    dephasing_gamma: float = 0.0
    common_enabled: bool = True
    collective_enabled: bool = True
    dephasing_enabled: bool = False

    def __post_init__(self) -> None:
        for name in ("t_a", "t_b", "t_c"):
            if getattr(self, name) < 0.0:
                raise ValidationError(f"{name} must be >= 0, got {getattr(self, name)}")
        for name in ("gamma_a", "gamma_b", "gamma_ca", "gamma_cb", "dephasing_gamma"):
            if getattr(self, name) < 0.0:
                raise ValidationError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.collective_enabled and not self.common_enabled:
            raise ValidationError(
                "collective_enabled requires common_enabled: the collective "
                "term is part of the common-reservoir dissipator"
            )

    @property
    def gamma_cab(self) -> float:
        """Collective cross rate sqrt(gamma_ca * gamma_cb)."""
        return math.sqrt(self.gamma_ca * self.gamma_cb)


@dataclass(frozen=True)
class Liouvillian:
    """16x16 generator acting on column-stacked 4x4 density matrices.

    parts maps each included piece ("hamiltonian", "bath_a", "bath_b",
    "bath_c", "dephasing") to its own 16x16 matrix; matrix is their sum.
    All matrices are expressed in the eigenbasis of the system Hamiltonian.
    """

    matrix: np.ndarray
    parts: Mapping[str, np.ndarray]
    params: SystemParams
    bath: BathConfig
    eig: Eigensystem

    @property
    def included(self) -> tuple[str, ...]:
        return tuple(self.parts.keys())

    def hamiltonian(self) -> np.ndarray:
        """Diagonal eigenbasis Hamiltonian the generator was built around."""
        return np.diag(self.eig.energies)


def validate_density_matrix(rho: np.ndarray, name: str = "rho") -> None:
    """Check shape, Hermiticity, unit trace and positivity (up to tolerance).

    Raises:
        ValidationError: on any violated invariant, naming the offender.
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValidationError(f"{name} must be 4x4, got shape {rho.shape}")
    herm_defect = np.max(np.abs(rho - rho.conj().T))
    if herm_defect > HERMITICITY_TOL:
        raise ValidationError(f"{name} is not Hermitian (defect {herm_defect:.3e})")
    trace_defect = abs(np.trace(rho) - 1.0)
    if trace_defect > TRACE_TOL:
        raise ValidationError(f"{name} trace differs from 1 by {trace_defect:.3e}")
    lowest = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if lowest < -POSITIVITY_TOL:
        raise ValidationError(f"{name} has negative eigenvalue {lowest:.3e}")


def _left(m: np.ndarray) -> np.ndarray:
    """Superoperator for rho -> m rho."""
    return np.kron(_I4, m)


def _right(m: np.ndarray) -> np.ndarray:
    """Superoperator for rho -> rho m."""
    return np.kron(m.T, _I4)


def _sandwich(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator for rho -> a rho b."""
    return np.kron(b.T, a)


def _thermal_pair(v: np.ndarray, nbar: float) -> np.ndarray:
    """(nbar+1)(2 V rho V+ - {V+V, rho}) + nbar (2 V+ rho V - {V V+, rho})."""
    vd = v.conj().T
    down = 2.0 * _sandwich(v, vd) - _left(vd @ v) - _right(vd @ v)
    up = 2.0 * _sandwich(vd, v) - _left(v @ vd) - _right(v @ vd)
    return (nbar + 1.0) * down + nbar * up


def _cross_pair(va: np.ndarray, vb: np.ndarray, nbar: float) -> np.ndarray:
    """Collective cross terms for one transition frequency, both orderings:

    (nbar+1)(2 Va rho Vb+ - {Vb+Va, rho}) + nbar (2 Va+ rho Vb - {Vb Va+, rho})
      + the same with A and B exchanged.
    """
    out = np.zeros((16, 16))
    for x, y in ((va, vb), (vb, va)):
        yd = y.conj().T
        xd = x.conj().T
        down = 2.0 * _sandwich(x, yd) - _left(yd @ x) - _right(yd @ x)
        up = 2.0 * _sandwich(xd, y) - _left(y @ xd) - _right(y @ xd)
        out = out + (nbar + 1.0) * down + nbar * up
    return out


def dissipator_independent(
    ops: JumpOperatorSet, qubit: str, rate: float, temperature: float
) -> np.ndarray:
    """Dissipator of one independent reservoir coupled to one qubit,
    summed over both transition frequencies."""
    if rate < 0.0:
        raise ValidationError(f"rate must be >= 0, got {rate}")
    if temperature < 0.0:
        raise ValidationError(f"temperature must be >= 0, got {temperature}")
    out = np.zeros((16, 16))
    for op in ops.pair(qubit):
        out = out + rate * _thermal_pair(op.matrix, bose_occupation(op.omega, temperature))
    return out


def dissipator_common(ops: JumpOperatorSet, cfg: BathConfig) -> np.ndarray:
    """Dissipator of the common reservoir: the two single-qubit pieces at
    rates gamma_ca, gamma_cb plus (if enabled) the collective cross piece at
    sqrt(gamma_ca * gamma_cb)."""
    if not cfg.common_enabled:
        raise ValidationError("dissipator_common called with common_enabled=False")
    out = dissipator_independent(ops, "A", cfg.gamma_ca, cfg.t_c)
    out = out + dissipator_independent(ops, "B", cfg.gamma_cb, cfg.t_c)
    if cfg.collective_enabled:
        cross = np.zeros((16, 16))
        for a_op, b_op in ((ops.va1, ops.vb1), (ops.va2, ops.vb2)):
            cross = cross + _cross_pair(
                a_op.matrix, b_op.matrix, bose_occupation(a_op.omega, cfg.t_c)
            )
        out = out + cfg.gamma_cab * cross
    return out


def dissipator_dephasing(gamma: float, basis: np.ndarray | None = None) -> np.ndarray:
    """Pure-dephasing generator gamma (Da rho Da + Db rho Db - 2 rho) with
    Da = sigma_z x I and Db = I x sigma_z written in the free basis
    (|11>,|10>,|01>,|00>) and, when a basis matrix is given, rotated into the
    eigenbasis first. sigma_z is +1 on the excited level; the generator is
    invariant under the opposite sign choice since D enters quadratically."""
    if gamma < 0.0:
        raise ValidationError(f"dephasing gamma must be >= 0, got {gamma}")
    da = np.diag([1.0, 1.0, -1.0, -1.0])
    db = np.diag([1.0, -1.0, 1.0, -1.0])
    if basis is not None:
        da = basis @ da @ basis.T
        db = basis @ db @ basis.T
    return gamma * (_sandwich(da, da) + _sandwich(db, db) - 2.0 * _I16)


def build_liouvillian(params: SystemParams, cfg: BathConfig) -> Liouvillian:
    """Assemble the full eigenbasis generator for the given system and baths.

    Emits a SecularApproximationWarning (non-fatal) when the doublet
    splitting omega2 - omega1 is below SECULAR_MARGIN times the largest
    enabled rate, since the secular form then mixes timescales it assumed
    were separated.
    """
    eig = diagonalize(params)
    ops = jump_operators(eig)

    rates = [cfg.gamma_a, cfg.gamma_b]
    if cfg.common_enabled:
        rates += [cfg.gamma_ca, cfg.gamma_cb]
    if cfg.dephasing_enabled:
        rates.append(cfg.dephasing_gamma)
    splitting = eig.omega2 - eig.omega1
    if splitting < SECULAR_MARGIN * max(rates):
        warnings.warn(
            f"doublet splitting {splitting:.4g} is below {SECULAR_MARGIN} x "
            f"max rate {max(rates):.4g}; secular approximation dubious",
            SecularApproximationWarning,
            stacklevel=2,
        )

    h = np.diag(eig.energies)
    parts: dict[str, np.ndarray] = {}
    parts["hamiltonian"] = -1j * (_left(h) - _right(h))
    parts["bath_a"] = dissipator_independent(ops, "A", cfg.gamma_a, cfg.t_a)
    parts["bath_b"] = dissipator_independent(ops, "B", cfg.gamma_b, cfg.t_b)
    if cfg.dephasing_enabled:
        parts["dephasing"] = dissipator_dephasing(cfg.dephasing_gamma, eig.basis)
    # summed last so that "with common" equals "without common" + bath_c
    # entrywise, exactly
    matrix = parts["hamiltonian"] + parts["bath_a"] + parts["bath_b"]
    if "dephasing" in parts:
        matrix = matrix + parts["dephasing"]
    if cfg.common_enabled:
        parts["bath_c"] = dissipator_common(ops, cfg)
        matrix = matrix + parts["bath_c"]
    return Liouvillian(
        matrix=matrix,
        parts=MappingProxyType(parts),
        params=params,
        bath=cfg,
        eig=eig,
    )


def _has_dissipation(lv: Liouvillian) -> bool:
    return any(
        np.any(part != 0.0)
        for name, part in lv.parts.items()
        if name != "hamiltonian"
    )


def steady_state(lv: Liouvillian) -> tuple[np.ndarray, float]:
    """Unique steady state of the generator via the SVD null space.

    Returns (rho, residual) where rho is the Hermitized, trace-normalized
    null vector reshaped to 4x4 and residual = ||L vec(rho)||_2.

    Raises:
        SolverError: when the generator has no dissipative part, the null
            space is not one-dimensional, the null vector is traceless, or
            the normalized state fails positivity.
    """
    if not _has_dissipation(lv):
        raise SolverError(
            "steady_state needs at least one strictly positive dissipation "
            "rate; a purely Hamiltonian generator has a degenerate kernel"
        )
    _, s, vh = np.linalg.svd(lv.matrix)
    if s[-2] <= UNIQUENESS_RTOL * s[0]:
        raise SolverError(
            "steady state is not unique: second singular value "
            f"{s[-2]:.3e} vs largest {s[0]:.3e}"
        )
    vec = vh[-1].conj()
    rho = vec.reshape((4, 4), order="F")
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho)
    if abs(tr) < 1e-12:
        raise SolverError("null vector of the generator is traceless")
    rho = rho / tr
    lowest = float(np.linalg.eigvalsh(rho).min())
    if lowest < -POSITIVITY_TOL:
        raise SolverError(f"steady state has negative eigenvalue {lowest:.3e}")
    residual = float(np.linalg.norm(lv.matrix @ rho.reshape(16, order="F")))
    return rho, residual


def propagate(
    lv: Liouvillian, rho0: np.ndarray, t_final: float, dt: float
) -> np.ndarray:
    """Evolve rho0 for time t_final with a fixed-step classical RK4 on
    d vec(rho)/dt = L vec(rho).

    Step criterion: RK4 is stable for dt * ||L||_2 up to about 2.8 on the
    negative real axis and 2*sqrt(2) on the imaginary axis; dt * ||L||_2
    <= 0.5 is the recommended operating point. Instability is detected at
    run time through the trace, which the exact flow conserves.

    Raises:
        ValidationError: on invalid rho0, dt <= 0 or t_final < 0.
        SolverError: when |tr rho - 1| exceeds 1e-6 during the run
            (advises a smaller dt).
    """
    validate_density_matrix(rho0, "rho0")
    if dt <= 0.0:
        raise ValidationError(f"dt must be > 0, got {dt}")
    if t_final < 0.0:
        raise ValidationError(f"t_final must be >= 0, got {t_final}")

    mat = lv.matrix
    vec = np.asarray(rho0, dtype=complex).reshape(16, order="F").copy()
    remaining = t_final
    while remaining > 0.0:
        step = dt if remaining >= dt else remaining
        k1 = mat @ vec
        k2 = mat @ (vec + 0.5 * step * k1)
        k3 = mat @ (vec + 0.5 * step * k2)
        k4 = mat @ (vec + step * k3)
        vec = vec + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        remaining -= step
        drift = abs(vec.reshape((4, 4), order="F").trace() - 1.0)
        if drift > 1e-6:
            raise SolverError(
                f"trace drifted by {drift:.3e} during propagation; "
                "reduce dt (recommended dt * ||L||_2 <= 0.5)"
            )
    return vec.reshape((4, 4), order="F")
