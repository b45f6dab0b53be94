"""Two coupled qubits: Hamiltonian, closed-form eigensystem, thermal occupations
and the transition (jump) operators of the global master equation.

Conventions (hbar = k_B = 1 throughout):

* Free product basis, in this fixed order::

      |eta1> = |11>,  |eta2> = |10>,  |eta3> = |01>,  |eta4> = |00>

  where the first slot is qubit A and the second is qubit B, and |1> is the
  excited single-qubit level.
* System Hamiltonian in that basis::

      H = diag(eps_a + eps_b, eps_a, eps_b, 0) + Omega (|eta2><eta3| + h.c.)

* Mixing angle theta = atan2(2 Omega, eps_a - eps_b), taken in (0, pi) whenever
  Omega > 0, so the eigenvector formulas below hold on both signs of the
  detuning without branch surgery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = [
    "FREE_BASIS_LABELS",
    "SystemParams",
    "Eigensystem",
    "JumpOperator",
    "JumpOperatorSet",
    "build_hamiltonian",
    "diagonalize",
    "jump_operators",
    "bose_occupation",
]

FREE_BASIS_LABELS = ("11", "10", "01", "00")

# exp(x) overflows float64 near x = 709; beyond this the occupation underflows
# to zero anyway.
_EXP_OVERFLOW = 700.0


@dataclass(frozen=True)
class SystemParams:
    """Bare excitation energies of the two qubits and their exchange coupling.

    Validation enforces eps_a > 0, eps_b > 0, omega >= 0 and that the smaller
    transition frequency eps_m - sqrt(deps^2/4 + omega^2) stays positive, i.e.
    the singly-excited doublet never dips below the ground state.
    """

    eps_a: float
    eps_b: float
    omega: float

    def __post_init__(self) -> None:
        if not (self.eps_a > 0.0 and self.eps_b > 0.0):
            raise ValidationError(
                f"qubit energies must be positive, got eps_a={self.eps_a}, "
                f"eps_b={self.eps_b}"
            )
        if self.omega < 0.0:
            raise ValidationError(f"coupling omega must be >= 0, got {self.omega}")
        if self.eps_m - self.half_splitting <= 0.0:
            raise ValidationError(
                "negative transition frequency: eps_m must exceed "
                f"sqrt(deps^2/4 + omega^2) (eps_m={self.eps_m}, "
                f"splitting={self.half_splitting})"
            )

    @property
    def eps_m(self) -> float:
        """Mean qubit energy (eps_a + eps_b) / 2."""
        return 0.5 * (self.eps_a + self.eps_b)

    @property
    def delta_eps(self) -> float:
        """Detuning eps_a - eps_b."""
        return self.eps_a - self.eps_b

    @property
    def half_splitting(self) -> float:
        """Half the splitting of the singly-excited doublet,
        sqrt(delta_eps^2 / 4 + omega^2)."""
        return math.hypot(0.5 * self.delta_eps, self.omega)


@dataclass(frozen=True)
class Eigensystem:
    """Closed-form eigendecomposition of the two-qubit Hamiltonian.

    Attributes:
        theta: mixing angle in [0, pi]; in (0, pi) whenever omega > 0.
        energies: (E1, E2, E3, E4) in the fixed eigenvector order
            |lam1> = |11>, |lam2/3> = mixed single-excitation pair,
            |lam4> = |00>. Note E2 >= E3 while the list is not sorted.
        omega1: smaller transition frequency, E3 - E4 = E1 - E2.
        omega2: larger transition frequency, E1 - E3 = E2 - E4.
        basis: real orthogonal 4x4 matrix; row i holds the free-basis
            amplitudes of |lam_i>, so eigen amplitudes = basis @ free
            amplitudes and H_eigen = basis @ H_free @ basis.T is diagonal.
    """

    theta: float
    energies: np.ndarray
    omega1: float
    omega2: float
    basis: np.ndarray


@dataclass(frozen=True)
class JumpOperator:
    """One eigenbasis transition operator together with its frequency."""

    matrix: np.ndarray
    omega: float


@dataclass(frozen=True)
class JumpOperatorSet:
    """The four transition operators V_(mu,j), mu in {A, B}, j in {1, 2}.

    All matrices are real, expressed in the eigenbasis, and satisfy the
    eigenoperator property [H, V] = -omega_j V.
    """

    va1: JumpOperator
    va2: JumpOperator
    vb1: JumpOperator
    vb2: JumpOperator

    def pair(self, qubit: str) -> tuple[JumpOperator, JumpOperator]:
        """Return (V_mu1, V_mu2) for qubit label 'A' or 'B'."""
        if qubit == "A":
            return (self.va1, self.va2)
        if qubit == "B":
            return (self.vb1, self.vb2)
        raise ValidationError(f"qubit label must be 'A' or 'B', got {qubit!r}")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def build_hamiltonian(params: SystemParams) -> np.ndarray:
    """Free-basis Hamiltonian matrix (4x4, real symmetric)."""
    h = np.zeros((4, 4))
    h[0, 0] = params.eps_a + params.eps_b
    h[1, 1] = params.eps_a
    h[2, 2] = params.eps_b
    # exchange coupling lives in the single-excitation block
    h[1, 2] = params.omega
    h[2, 1] = params.omega
    return _frozen(h)


def diagonalize(params: SystemParams) -> Eigensystem:
    """Closed-form eigensystem of the coupled pair.

    Raises:
        ValidationError: for the degenerate input omega = 0 and
            delta_eps = 0, where the mixing angle is not defined.
    """
    if params.omega == 0.0 and params.delta_eps == 0.0:
        raise ValidationError(
            "degenerate spectrum: omega = 0 with delta_eps = 0 leaves the "
            "single-excitation doublet degenerate and theta undefined"
        )
    theta = math.atan2(2.0 * params.omega, params.delta_eps)
    r = params.half_splitting
    e1 = params.eps_a + params.eps_b
    e2 = params.eps_m + r
    e3 = params.eps_m - r
    energies = np.array([e1, e2, e3, 0.0])

    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    basis = np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, c, s, 0.0],
            [0.0, -s, c, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    )
    return Eigensystem(
        theta=theta,
        energies=_frozen(energies),
        omega1=e3,          # = E3 - E4 = E1 - E2
        omega2=e1 - e3,     # = E1 - E3 = E2 - E4
        basis=_frozen(basis),
    )


def _ketbra(i: int, j: int) -> np.ndarray:
    m = np.zeros((4, 4))
    m[i, j] = 1.0
    return m


def jump_operators(eig: Eigensystem) -> JumpOperatorSet:
    """Eigenbasis transition operators obtained by decomposing the local
    lowering operators sigma-_A, sigma-_B into eigenoperators of H.

    V_A1 = sin(theta/2) (|lam2><lam1| - |lam4><lam3|)   at omega1
    V_A2 = cos(theta/2) (|lam3><lam1| + |lam4><lam2|)   at omega2
    V_B1 = cos(theta/2) (|lam2><lam1| + |lam4><lam3|)   at omega1
    V_B2 = sin(theta/2) (-|lam3><lam1| + |lam4><lam2|)  at omega2

    and sigma-_A = V_A1 + V_A2, sigma-_B = V_B1 + V_B2.
    """
    c = math.cos(0.5 * eig.theta)
    s = math.sin(0.5 * eig.theta)
    t21, t43 = _ketbra(1, 0), _ketbra(3, 2)
    t31, t42 = _ketbra(2, 0), _ketbra(3, 1)
    va1 = s * (t21 - t43)
    va2 = c * (t31 + t42)
    vb1 = c * (t21 + t43)
    vb2 = s * (-t31 + t42)
    return JumpOperatorSet(
        va1=JumpOperator(_frozen(va1), eig.omega1),
        va2=JumpOperator(_frozen(va2), eig.omega2),
        vb1=JumpOperator(_frozen(vb1), eig.omega1),
        vb2=JumpOperator(_frozen(vb2), eig.omega2),
    )


def bose_occupation(omega: float, temperature: float) -> float:
    """Bose-Einstein occupation 1 / (exp(omega/T) - 1).

    Exactly 0.0 at T = 0, and overflow-safe for omega/T beyond the float64
    exponential range (returns 0.0 there).

    Raises:
        ValidationError: if omega <= 0 or temperature < 0.
    """
    if omega <= 0.0:
        raise ValidationError(f"occupation needs omega > 0, got {omega}")
    if temperature < 0.0:
        raise ValidationError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 0.0
    x = omega / temperature
    if x > _EXP_OVERFLOW:
        return 0.0
    return 1.0 / math.expm1(x)
