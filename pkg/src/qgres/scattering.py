"""Energy-dependent vertex scattering.

Leads are eliminated into an effective coupling Ueff(k); the effective
vertex-scattering matrix sigma(k) then maps incoming to outgoing wave
amplitudes on the internal edge ends.  All evaluators accept a scalar k or
a 1-D array of k values and are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EffectiveCouplingPoleError, SigmaPoleError

_COND_LIMIT = 1e12


@dataclass(frozen=True)
class VertexBlocks:
    """Internal/external block partition of a coupling matrix at a vertex
    with n internal edge ends and m leads."""

    u1: np.ndarray  # n x n
    u2: np.ndarray  # n x m
    u3: np.ndarray  # m x n
    u4: np.ndarray  # m x m

    @property
    def n(self) -> int:
        return self.u1.shape[0]

    @property
    def m(self) -> int:
        return self.u4.shape[0]

    def full(self) -> np.ndarray:
        return np.block([[self.u1, self.u2], [self.u3, self.u4]])


def split_blocks(u: np.ndarray, n: int, m: int) -> VertexBlocks:
    u = np.asarray(u, dtype=complex)
    if u.shape != (n + m, n + m):
        raise ValueError(f"matrix shape {u.shape} does not match n={n}, m={m}")
    return VertexBlocks(u[:n, :n], u[:n, n:], u[n:, :n], u[n:, n:])


def _as_karray(k):
    karr = np.atleast_1d(np.asarray(k, dtype=complex))
    return karr, np.isscalar(k) or np.asarray(k).ndim == 0


def _guard_singular(mat, k, exc, vertex=None):
    """Reject (near-)singular brackets instead of returning noise.

    Condition estimate relative to the bracket's natural scale: singular
    when the smallest singular value drops below 1/_COND_LIMIT of
    (largest singular value + |1-k| + |1+k|); the additive term keeps the
    test meaningful for 1x1 blocks, whose raw condition number is 1.
    """
    karr = np.atleast_1d(np.asarray(k, dtype=complex))
    try:
        sv = np.linalg.svd(mat, compute_uv=False)
    except np.linalg.LinAlgError:
        raise exc(complex(karr[0]), vertex) from None
    scale = sv[..., 0] + np.abs(1 - karr) + np.abs(1 + karr)
    bad = ~(sv[..., -1] > scale / _COND_LIMIT)
    if np.any(bad):
        kbad = karr[np.atleast_1d(bad)][0]
        raise exc(complex(kbad), vertex)


def effective_coupling(blocks: VertexBlocks, k, vertex=None) -> np.ndarray:
    """Ueff(k) = U1 - (1-k) U2 [(1-k) U4 - (k+1) I]^-1 U3.

    With no leads (m = 0) this is U1 for every k.  Shape (n, n) for scalar
    k, else (len(k), n, n).
    """
    karr, scalar = _as_karray(k)
    n, m = blocks.n, blocks.m
    if m == 0 or not np.any(np.abs(blocks.u2)):
        out = np.broadcast_to(blocks.u1, karr.shape + (n, n)).copy()
        return out[0] if scalar else out
    kc = karr[:, None, None]
    inner = (1 - kc) * blocks.u4 - (kc + 1) * np.eye(m)
    _guard_singular(inner, karr, EffectiveCouplingPoleError, vertex)
    x = np.linalg.solve(inner, np.broadcast_to(blocks.u3, inner.shape[:-2] + (m, n)))
    out = blocks.u1 - (1 - kc) * (blocks.u2 @ x)
    return out[0] if scalar else out


def effective_sigma(ueff: np.ndarray, k, vertex=None) -> np.ndarray:
    """sigma(k) = -[(1-k) Ueff - (1+k) I]^-1 [(1+k) Ueff - (1-k) I]."""
    karr, scalar = _as_karray(k)
    ueff = np.asarray(ueff, dtype=complex)
    n = ueff.shape[-1]
    if ueff.ndim == 2:
        ueff = np.broadcast_to(ueff, karr.shape + (n, n))
    kc = karr[:, None, None]
    eye = np.eye(n)
    bracket = (1 - kc) * ueff - (1 + kc) * eye
    rhs = (1 + kc) * ueff - (1 - kc) * eye
    _guard_singular(bracket, karr, SigmaPoleError, vertex)
    out = -np.linalg.solve(bracket, rhs)
    return out[0] if scalar else out


def vertex_sigma(u: np.ndarray, n: int, m: int, k, vertex=None) -> np.ndarray:
    """Effective vertex-scattering matrix straight from the full coupling matrix."""
    blocks = split_blocks(u, n, m)
    return effective_sigma(effective_coupling(blocks, k, vertex), k, vertex)


def sigma_bc(ueff: np.ndarray, k) -> tuple[np.ndarray, np.ndarray]:
    """The pair B = (1-k) Ueff - (1+k) I and C = (1+k) Ueff - (1-k) I
    with sigma = -B^-1 C.  B and C commute, so sigma B = -C; this lets the
    secular determinant be cleared of sigma poles without any inversion."""
    karr, scalar = _as_karray(k)
    ueff = np.asarray(ueff, dtype=complex)
    n = ueff.shape[-1]
    if ueff.ndim == 2:
        ueff = np.broadcast_to(ueff, karr.shape + (n, n))
    kc = karr[:, None, None]
    eye = np.eye(n)
    b = (1 - kc) * ueff - (1 + kc) * eye
    c = (1 + kc) * ueff - (1 - kc) * eye
    if scalar:
        return b[0], c[0]
    return b, c


# closed forms used as cross-checks and in the high-energy limits


def sigma_delta(n: int, m: int, alpha: float, k) -> np.ndarray:
    """n x n scattering block of a delta vertex: 2/(n+m - alpha/(ik)) J - I."""
    karr, scalar = _as_karray(k)
    coef = 2.0 / (n + m - alpha / (1j * karr))
    out = coef[:, None, None] * np.ones((n, n)) - np.eye(n)
    return out[0] if scalar else out


def sigma_delta_prime_s(n: int, m: int, beta: float, k) -> np.ndarray:
    """n x n scattering block of a delta'_s vertex: 2/(ik beta - n - m) J + I."""
    karr, scalar = _as_karray(k)
    coef = 2.0 / (1j * karr * beta - (n + m))
    out = coef[:, None, None] * np.ones((n, n)) + np.eye(n)
    return out[0] if scalar else out


def sigma_standard(n: int, m: int) -> np.ndarray:
    return 2.0 / (n + m) * np.ones((n, n)) - np.eye(n)
