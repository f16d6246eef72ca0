"""Phase-weighted line lattice: windowed Hamiltonian and closed-form modes.

A finite window [left, right] stands in for the infinite line. The state
lives on the interior nodes left+1..right-1; the border nodes act as hard
walls. The window Hamiltonian is tridiagonal Toeplitz with unit-modulus
couplings e^{i*alpha} above the diagonal, so its eigensystem is known in
closed form and never needs a dense eigensolver.
"""

from __future__ import annotations

import cmath
import math
import operator
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_BUFFER",
    "PhasedLine",
    "HamiltonianMatrix",
    "EigenSystem",
    "build_hamiltonian",
    "closed_form_eigensystem",
    "window_for",
]

DEFAULT_BUFFER = 50


@dataclass(frozen=True)
class PhasedLine:
    """Finite window of the line with a common direction phase alpha."""

    alpha: float
    left: int
    right: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        if self.right - self.left < 2:
            raise ValueError("window needs at least one interior node")

    @property
    def dimension(self) -> int:
        """Number of interior nodes."""
        return self.right - self.left - 1

    @property
    def mode_count(self) -> int:
        """n = right - left; the eigensystem has n - 1 pairs."""
        return self.right - self.left

    @property
    def reduced_alpha(self) -> float:
        """alpha folded into [0, 2*pi), for reporting only."""
        return self.alpha % (2.0 * math.pi)

    def positions(self) -> np.ndarray:
        return np.arange(self.left + 1, self.right)


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Tridiagonal window Hamiltonian, stored as its two constant bands."""

    dimension: int
    alpha: float

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("Hamiltonian needs at least one interior node")

    @property
    def superdiagonal(self) -> complex:
        return cmath.exp(1j * self.alpha)

    @property
    def subdiagonal(self) -> complex:
        return cmath.exp(-1j * self.alpha)

    def matvec(self, vec) -> np.ndarray:
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (self.dimension,):
            raise ValueError("vector length does not match dimension")
        out = np.zeros_like(vec)
        out[:-1] += self.superdiagonal * vec[1:]
        out[1:] += self.subdiagonal * vec[:-1]
        return out

    def dense(self) -> np.ndarray:
        """Dense view for tests; production paths stay on the bands."""
        h = np.zeros((self.dimension, self.dimension), dtype=complex)
        idx = np.arange(self.dimension - 1)
        h[idx, idx + 1] = self.superdiagonal
        h[idx + 1, idx] = self.subdiagonal
        return h


def build_hamiltonian(line: PhasedLine) -> HamiltonianMatrix:
    """Window Hamiltonian over the interior nodes of `line`.

    With alpha = 0 this is the real symmetric undirected path.
    """
    return HamiltonianMatrix(dimension=line.dimension, alpha=line.alpha)


@dataclass(frozen=True)
class EigenSystem:
    """Closed-form spectrum of the window Hamiltonian.

    Eigenvalues 2*cos(k*pi/n), k = 1..n-1, are independent of alpha; the
    phase enters the eigenvectors only as the gauge factor e^{-i*alpha*x}
    on top of sine modes pinned to zero at the two border nodes.
    """

    line: PhasedLine

    @property
    def size(self) -> int:
        return self.line.mode_count

    def eigenvalues(self) -> np.ndarray:
        n = self.size
        return 2.0 * np.cos(np.arange(1, n) * (np.pi / n))

    def eigenvector(self, k: int) -> np.ndarray:
        n = self.size
        k = operator.index(k)
        if not 1 <= k <= n - 1:
            raise ValueError(f"mode index must be in 1..{n - 1}")
        x = self.line.positions()
        gauge = np.exp(-1j * self.line.alpha * x)
        return math.sqrt(2.0 / n) * gauge * np.sin((k * np.pi / n) * (x - self.line.left))

    def basis_matrix(self) -> np.ndarray:
        """Unitary with the eigenvectors as columns in k order."""
        n = self.size
        j = np.arange(1, n)
        modes = math.sqrt(2.0 / n) * np.sin(np.outer(j, j) * (np.pi / n))
        gauge = np.exp(-1j * self.line.alpha * self.line.positions())
        return gauge[:, None] * modes


def closed_form_eigensystem(line: PhasedLine) -> EigenSystem:
    return EigenSystem(line=line)


def window_for(t: float, sources, buffer: int = DEFAULT_BUFFER) -> tuple[int, int]:
    """Window bounds holding the light cone of `sources` up to time t.

    Amplitude beyond |x - source| ~ 2t dies off super-exponentially, so
    [min - ceil(2t) - buffer, max + ceil(2t) + buffer] keeps the truncation
    error far below the propagators' tolerances.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    buffer = operator.index(buffer)
    if buffer < 0:
        raise ValueError("buffer must be nonnegative")
    positions = [operator.index(s) for s in sources]
    if not positions:
        raise ValueError("at least one source position is required")
    reach = int(math.ceil(2.0 * t)) + buffer
    left = min(positions) - reach
    right = max(positions) + reach
    if right - left < 2:
        # degenerate only for buffer = 0 at t = 0; widen to a valid window
        left -= 1
        right += 1
    return left, right
