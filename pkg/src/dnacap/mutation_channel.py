"""Kimura two-parameter substitution channel and its cascaded powers.

The single-stage 4x4 transition matrix (base order A, C, T, G) has
diagonal ``1 - q``, within-category entries ``(1 - 2*gamma/3)*q`` for the
purine pair A<->G and the pyrimidine pair C<->T, and cross-category
entries ``(gamma/3)*q``.  ``q`` is the per-stage substitution probability
and ``gamma`` in [0, 3/2] shapes the transition/transversion balance
(``gamma = 1`` makes all off-diagonal entries equal).

The matrix is symmetric, so its m-th power is available in closed form
through the two non-unit eigenvalues

    lam = 1 - (4*gamma/3)*q        mu = 1 - 2*(1 - gamma/3)*q

with diagonal entries ``(1 + 2*mu^m + lam^m)/4``, within-category entries
``(1 - 2*mu^m + lam^m)/4`` and all remaining entries ``(1 - lam^m)/4``.
Cascades of any depth therefore cost O(1); iterated multiplication exists
only as a test oracle.  Codons see the threefold Kronecker product of the
base matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .genetic_code import BASE_INDEX, BASES

_MAX_STAGES = 2**63 - 1


@dataclass(frozen=True)
class ChannelParams:
    """Substitution-channel parameters: per-stage rate q, shape gamma, depth m."""

    q: float
    gamma: float
    m: int = 1

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q must be in [0, 1], got {self.q}")
        if not 0.0 <= self.gamma <= 1.5:
            raise ValueError(f"gamma must be in [0, 3/2], got {self.gamma}")
        if isinstance(self.m, float) or not isinstance(self.m, (int, np.integer)):
            raise ValueError(f"m must be an integer (stages are discrete), got {self.m!r}")
        if not 0 <= self.m <= _MAX_STAGES:
            raise ValueError(f"m must be in [0, 2**63 - 1], got {self.m}")


class Eigenpair(NamedTuple):
    lam: float
    mu: float


def eigenvalues(params: ChannelParams) -> Eigenpair:
    """The two non-unit eigenvalues of the single-stage matrix."""
    return Eigenpair(
        lam=1.0 - (4.0 * params.gamma / 3.0) * params.q,
        mu=1.0 - 2.0 * (1.0 - params.gamma / 3.0) * params.q,
    )


def _signed_power(x: float, m: int) -> float:
    # x**m for possibly huge integer m: exp/log avoids libm pow quirks and
    # underflows cleanly; parity of m carries the sign when x < 0.
    if m == 0:
        return 1.0
    if x == 0.0:
        return 0.0
    ax = abs(x)
    value = math.exp(m * math.log(ax)) if ax != 1.0 else 1.0
    if x < 0.0 and m % 2 == 1:
        value = -value
    return value


def build_base_matrix(params: ChannelParams) -> np.ndarray:
    """Single-stage 4x4 transition matrix (the stage count m is ignored)."""
    q, gamma = params.q, params.gamma
    transversion = (gamma / 3.0) * q
    transition = (1.0 - 2.0 * gamma / 3.0) * q
    pi = np.full((4, 4), transversion)
    for i in range(4):
        pi[i, i] = 1.0 - q
        pi[i, 3 - i] = transition
    return np.clip(pi, 0.0, 1.0)


def base_matrix_power(params: ChannelParams) -> np.ndarray:
    """m-stage 4x4 transition matrix, evaluated in closed form."""
    lam, mu = eigenvalues(params)
    lam_m = _signed_power(lam, params.m)
    mu_m = _signed_power(mu, params.m)
    power = np.full((4, 4), 0.25 * (1.0 - lam_m))
    for i in range(4):
        power[i, i] = 0.25 * (1.0 + 2.0 * mu_m + lam_m)
        power[i, 3 - i] = 0.25 * (1.0 - 2.0 * mu_m + lam_m)
    return np.clip(power, 0.0, 1.0)


def accumulated_rate(params: ChannelParams) -> float:
    """Probability that a base differs from the original after m stages."""
    lam, mu = eigenvalues(params)
    lam_m = _signed_power(lam, params.m)
    mu_m = _signed_power(mu, params.m)
    return min(max(1.0 - 0.25 * (1.0 + 2.0 * mu_m + lam_m), 0.0), 1.0)


def codon_matrix(base: np.ndarray) -> np.ndarray:
    """64x64 codon transition matrix: threefold Kronecker product of `base`.

    Codon indexing follows :mod:`dnacap.genetic_code`, so entry
    ``[16*i1+4*i2+i3, 16*j1+4*j2+j3]`` is the product of the three
    per-position base transition probabilities.
    """
    base = np.asarray(base, dtype=float)
    if base.shape != (4, 4):
        raise ValueError(f"base matrix must be 4x4, got {base.shape}")
    return np.kron(np.kron(base, base), base)


def base_matrix_deviations(params: ChannelParams) -> np.ndarray:
    """4x4 matrix d with m-stage transition probabilities (1 + d)/4."""
    lam, mu = eigenvalues(params)
    lam_m = _signed_power(lam, params.m)
    mu_m = _signed_power(mu, params.m)
    dev = np.full((4, 4), -lam_m)
    for i in range(4):
        dev[i, i] = 2.0 * mu_m + lam_m
        dev[i, 3 - i] = -2.0 * mu_m + lam_m
    return dev


def codon_matrix_deviations(params: ChannelParams) -> np.ndarray:
    """64x64 matrix w with m-stage codon transition probabilities (1 + w)/64.

    The deviations are combined multiplicatively, (1+w) = (1+d1)(1+d2)(1+d3),
    without ever forming ``1 + d`` explicitly, so deviations far below
    machine epsilon relative to 1/64 survive.  The rate computations in
    :mod:`dnacap.cdna` rely on this once ``lam**m`` underflows toward zero.
    """
    dev = base_matrix_deviations(params)

    def combine(x, y):
        # (1+x)(1+y) - 1 for every outer pair, kept in deviation form
        ones_x = np.ones(x.shape)
        ones_y = np.ones(y.shape)
        return np.kron(x, ones_y) + np.kron(ones_x, y) + np.kron(x, y)

    return combine(combine(dev, dev), dev)


def gamma_from_ti_tv(epsilon: float) -> float:
    """Shape parameter gamma for a given transition/transversion ratio."""
    if epsilon <= 0.0:
        raise ValueError(f"transition/transversion ratio must be positive, got {epsilon}")
    return 3.0 / (2.0 * (epsilon + 1.0))


def simulate_chain(params: ChannelParams, bases, seed: int):
    """Push a base sequence through m independent single-stage substitutions.

    Monte Carlo companion to :func:`accumulated_rate`: with n bases the
    empirical mismatch fraction is Binomial(n, accumulated_rate)/n.
    Deterministic for a fixed seed.  Accepts a string or any sequence of
    base letters and returns the same kind.
    """
    was_str = isinstance(bases, str)
    idx = np.array([BASE_INDEX[b] for b in bases], dtype=np.intp)
    rng = np.random.default_rng(seed)
    cum = np.cumsum(build_base_matrix(params), axis=1)
    for _ in range(params.m):
        u = rng.random(idx.size)
        idx = np.clip((cum[idx] < u[:, None]).sum(axis=1), 0, 3)
    out = [BASES[i] for i in idx]
    return "".join(out) if was_str else out
