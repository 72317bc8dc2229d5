"""Secular functions whose zeros are the resonances and eigenvalues.

Three interchangeable variants: the determinant form det(e^{ikL} Q Sigma(k)
- I), the pseudo-orbit sum, and a pole-cleared determinant that multiplies
in the per-vertex brackets so the result stays analytic across scattering
poles.  Closed-form conditions for the named example graphs are provided
for cross-validation; they agree with the library forms only through their
zero sets, overall factors differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bonds import BondSystem, assemble_blocks, build_bond_system
from .errors import UnknownFixtureError
from .graph import MetricGraph, coupling_matrix
from .orbits import graph_terms, secular_po
from .scattering import effective_coupling, effective_sigma, sigma_bc, split_blocks


class Evaluator:
    """Per-graph cache of the bond system and coupling blocks, with batched
    evaluation of Sigma(k), S(k) and the secular variants.

    Lengths may be overridden per call (an (N,) or (P, N) array, possibly
    complex) so length perturbations reuse all k-dependent structure.
    """

    def __init__(self, graph: MetricGraph):
        self.graph = graph
        self.bonds = build_bond_system(graph)
        self._blocks = {}
        for v in graph.vertices:
            n = len(graph.internal_ends(v.id))
            if n == 0:
                continue
            m = graph.lead_count(v.id)
            u = coupling_matrix(v.coupling, n + m)
            self._blocks[v.id] = split_blocks(u, n, m)

    # -- per-vertex pieces -------------------------------------------------

    def ueff_blocks(self, karr) -> dict:
        return {
            vid: effective_coupling(blk, karr, vertex=vid)
            for vid, blk in self._blocks.items()
        }

    def sigma_blocks(self, karr) -> dict:
        return {
            vid: effective_sigma(ueff, karr, vertex=vid)
            for vid, ueff in self.ueff_blocks(karr).items()
        }

    # -- assembled matrices --------------------------------------------------

    def big_sigma(self, karr) -> np.ndarray:
        return assemble_blocks(self.bonds, self.sigma_blocks(karr))

    def s_matrix(self, karr) -> np.ndarray:
        return self.big_sigma(karr)[..., self.bonds.rev_perm, :]

    def _phase(self, karr, lengths):
        lv = self.bonds.length_vector(lengths)
        return np.exp(1j * karr[..., None] * lv)

    # -- secular variants ----------------------------------------------------

    def det(self, k, lengths=None):
        karr, scalar = _karr(k)
        sig = self.big_sigma(karr)
        m = self._phase(karr, lengths)[..., :, None] * sig[..., self.bonds.rev_perm, :]
        m -= np.eye(self.bonds.n_bonds)
        out = np.linalg.det(m)
        return out[0] if scalar else out

    def cleared(self, k, lengths=None):
        """det form times the product of per-vertex brackets, computed with
        no inversions: det(-e^{ikL} Q C(k) - B(k))."""
        karr, scalar = _karr(k)
        bblocks, cblocks = {}, {}
        for vid, ueff in self.ueff_blocks(karr).items():
            b, c = sigma_bc(ueff, karr)
            bblocks[vid], cblocks[vid] = b, c
        bmat = assemble_blocks(self.bonds, bblocks)
        cmat = assemble_blocks(self.bonds, cblocks)
        m = -self._phase(karr, lengths)[..., :, None] * cmat[..., self.bonds.rev_perm, :]
        m -= bmat
        out = np.linalg.det(m)
        return out[0] if scalar else out

    def clearing_factor(self, k):
        """Product over vertices of det[(1-k) Ueff(k) - (1+k) I]."""
        karr, scalar = _karr(k)
        out = np.ones(karr.shape, dtype=complex)
        for vid, ueff in self.ueff_blocks(karr).items():
            b, _ = sigma_bc(ueff, karr)
            out = out * np.linalg.det(b)
        return out[0] if scalar else out


def _karr(k):
    scalar = np.isscalar(k) or np.asarray(k).ndim == 0
    return np.atleast_1d(np.asarray(k, dtype=complex)), scalar


def secular_det(g: MetricGraph, k):
    return Evaluator(g).det(k)


def secular_cleared(g: MetricGraph, k):
    return Evaluator(g).cleared(k)


@dataclass
class SecularFunction:
    """Callable k -> complex with a variant tag and optional clearing factor
    (used to flag roots introduced by pole clearing)."""

    fn: callable
    variant: str
    clearing: callable | None = None
    label: str = ""
    graph: MetricGraph | None = field(default=None, repr=False)

    def __call__(self, k):
        return self.fn(k)


def secular(g: MetricGraph, variant: str = "cleared") -> SecularFunction:
    ev = Evaluator(g)
    if variant == "det":
        return SecularFunction(ev.det, "det", ev.clearing_factor, "det", g)
    if variant == "cleared":
        return SecularFunction(ev.cleared, "det_cleared", ev.clearing_factor, "cleared", g)
    if variant == "po":
        terms = graph_terms(ev.bonds)
        lengths = g.lengths

        def fn(k):
            karr, scalar = _karr(k)
            out = secular_po(ev.bonds, ev.sigma_blocks(karr), terms, lengths, karr)
            return out[0] if scalar else out

        return SecularFunction(fn, "pseudo_orbit", ev.clearing_factor, "po", g)
    raise ValueError(f"unknown secular variant {variant!r}")


# ---------------------------------------------------------------------------
# closed-form conditions for the named example graphs


def cross_eigenvalue_length(n: int = 1, alpha: float = 3.0, l1: float = 1.0) -> float:
    """Length of the Robin edge that puts an embedded eigenvalue of the
    cross resonator at k = n pi / l1.

    Solves cot(k l2) = -alpha/k on the branch giving positive l2:
    l2 = (l1 / n pi) (pi - arctan(n pi / (alpha l1))).
    """
    npi = n * math.pi
    return (l1 / npi) * (math.pi - math.atan(npi / (alpha * l1)))


def _cf_loop_delta_sym(alpha=10.0, l1=1.0, l2=1.0):
    def fn(k):
        k = np.asarray(k, dtype=complex)
        return (
            (alpha - 3j * k) ** 2
            - (alpha - 1j * k) ** 2 * (np.exp(2j * k * l1) + np.exp(2j * k * l2))
            + 8 * k**2 * np.exp(1j * k * (l1 + l2))
            + (alpha + 1j * k) ** 2 * np.exp(2j * k * (l1 + l2))
        )

    return fn


def _cf_cross_robin(alpha=3.0, l1=1.0, l2=None):
    if l2 is None:
        l2 = cross_eigenvalue_length(1, alpha, l1)

    def fn(k):
        k = np.asarray(k, dtype=complex)
        s1, c1 = np.sin(k * l1), np.cos(k * l1)
        s2, c2 = np.sin(k * l2), np.cos(k * l2)
        return (
            k * c1 * c2
            + (alpha - 2j * k) * s1 * c2
            + alpha * c1 * s2
            - (2j * alpha + k) * s1 * s2
        )

    return fn


def _cf_loop_delta_2(alpha1=1.0, alpha2=1.0, l1=1.0, l2=1.0):
    def fn(k):
        k = np.asarray(k, dtype=complex)
        return (
            (alpha1 - 1j * k) * (alpha2 - 1j * k) * np.sin(k * l1) * np.sin(k * l2)
            - 4 * k**2 * np.sin(k * (l1 + l2) / 2) ** 2
            + k * (alpha1 + alpha2 - 2j * k) * np.sin(k * (l1 + l2))
        )

    return fn


def _cf_loop_deltaprime(beta1=1.0, beta2=1.0, l1=1.0, l2=1.0):
    def fn(k):
        k = np.asarray(k, dtype=complex)
        return (
            ((beta1 + beta2) * k + 2j) * np.sin(k * (l1 + l2))
            + 2 * (1 - np.cos(k * l1) * np.cos(k * l2))
            + (3 - beta1 * beta2 * k**2 - 1j * k * (beta1 + beta2))
            * np.sin(k * l1)
            * np.sin(k * l2)
        )

    return fn


def _cf_loop_mixed(alpha=1.0, beta=1.0, l1=1.0, l2=1.2137):
    def fn(k):
        k = np.asarray(k, dtype=complex)
        return (
            (beta * k**2 + 1j * k * alpha * beta + 3j * k - alpha)
            * np.cos(k * l1)
            * np.cos(k * l2)
            + (-1j * beta * k**2 + 1j * alpha + 2 * k) * np.sin(k * (l1 + l2))
            - 2j * k * np.sin(k * l1) * np.sin(k * l2)
            + 2j * k
        )

    return fn


_CLOSED_FORMS = {
    "loop_delta_sym": _cf_loop_delta_sym,
    "cross_robin": _cf_cross_robin,
    "loop_delta_2": _cf_loop_delta_2,
    "loop_deltaprime": _cf_loop_deltaprime,
    "loop_mixed": _cf_loop_mixed,
}


def closed_form_condition(name: str, **params) -> SecularFunction:
    """Closed-form resonance condition of a named example graph, with that
    graph's parameters bound unless overridden."""
    if name not in _CLOSED_FORMS:
        raise UnknownFixtureError(f"unknown fixture {name!r}")
    return SecularFunction(_CLOSED_FORMS[name](**params), f"closed_form({name})", None, name)
