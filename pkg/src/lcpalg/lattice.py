"""Floating-point certificates for lattices in ``R ⋉_A R^{2k}``.

With ``A = diag(1, -1, ..., 1, -1)`` and ``t_m`` chosen so that
``e^{t_m} + e^{-t_m} = m``, the flow ``e^{t_m A}`` is conjugate to the
integer matrix ``diag(E_m, ..., E_m)``, ``E_m = [[0, -1], [1, m]]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag, expm

from .errors import DomainError

PARAM_TOL = 1e-12
CONJ_TOL = 1e-9


def _check_m(m):
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 3:
        raise DomainError(f"m must be an integer >= 3, got {m!r}")
    return int(m)


def bock_parameter(m: int) -> float:
    """``t_m = ln((m + sqrt(m^2 - 4)) / 2)``."""
    m = _check_m(m)
    t = math.log((m + math.sqrt(m * m - 4)) / 2)
    err = abs(math.exp(t) + math.exp(-t) - m)
    if err > PARAM_TOL:
        raise ArithmeticError(f"e^t + e^-t differs from {m} by {err:.3e}")
    return t


def companion(m: int) -> tuple:
    m = _check_m(m)
    return ((0, -1), (1, m))


@dataclass(frozen=True)
class LatticeCertificate:
    m: int
    t_m: float
    E: tuple  # integer 2x2
    C: np.ndarray  # E = C^{-1} diag(e^t, e^-t) C
    residual: float
    blocks: int
    block_residual: float
    tolerance: float = CONJ_TOL

    @property
    def det_E(self) -> int:
        (a, b), (c, d) = self.E
        return a * d - b * c

    @property
    def trace_E(self) -> int:
        return self.E[0][0] + self.E[1][1]

    @property
    def ok(self) -> bool:
        return (
            self.det_E == 1
            and abs(math.exp(self.t_m) + math.exp(-self.t_m) - self.m) <= PARAM_TOL
            and self.residual <= self.tolerance
            and self.block_residual <= self.tolerance
        )

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "t_m": self.t_m,
            "E": [list(r) for r in self.E],
            "det_E": self.det_E,
            "C": self.C.tolist(),
            "residual": self.residual,
            "blocks": self.blocks,
            "block_residual": self.block_residual,
            "tolerance": self.tolerance,
            "ok": self.ok,
        }


def companion_conjugacy(m: int, blocks: int = 1) -> LatticeCertificate:
    """Certificate that ``e^{t_m A}`` (``blocks`` copies of ``diag(1, -1)``)
    is conjugate to ``diag(E_m, ..., E_m)``.

    ``C`` is the inverse of the eigenvector matrix of ``E_m`` whose columns
    are ``(1, -mu_+)`` and ``(1, -mu_-)``, ``mu_± = (m ± sqrt(m^2-4))/2``.
    """
    m = _check_m(m)
    if not isinstance(blocks, (int, np.integer)) or blocks < 1:
        raise DomainError("blocks must be a positive integer")
    t = bock_parameter(m)
    E = companion(m)
    s = math.sqrt(m * m - 4)
    mu_p, mu_m = (m + s) / 2, (m - s) / 2
    V = np.array([[1.0, 1.0], [-mu_p, -mu_m]])
    C = np.linalg.inv(V)
    Ef = np.array(E, dtype=float)
    D = np.diag([math.exp(t), math.exp(-t)])
    residual = float(np.max(np.abs(C @ Ef @ np.linalg.inv(C) - D)))

    A = np.diag([1.0, -1.0] * blocks)
    flow = expm(t * A)
    Cb = block_diag(*([C] * blocks))
    Eb = block_diag(*([Ef] * blocks))
    block_residual = float(np.max(np.abs(Cb @ Eb @ np.linalg.inv(Cb) - flow)))
    return LatticeCertificate(m, t, E, C, residual, int(blocks), block_residual)
