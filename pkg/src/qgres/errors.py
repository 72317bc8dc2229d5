"""Exception types shared across the package."""


class QgresError(Exception):
    """Base class for all errors raised by qgres."""


class GraphSpecError(QgresError):
    """Invalid graph description (dangling reference, bad length, ...)."""


class CouplingError(QgresError):
    """Invalid vertex coupling (non-unitary matrix, Robin at degree > 1)."""


class EffectiveCouplingPoleError(QgresError):
    """Lead-elimination matrix is singular at this k."""

    def __init__(self, k, vertex=None):
        self.k = k
        self.vertex = vertex
        where = f" at vertex {vertex!r}" if vertex is not None else ""
        super().__init__(f"effective-coupling pole at k={k}{where}")


class SigmaPoleError(QgresError):
    """Vertex-scattering bracket is singular at this k."""

    def __init__(self, k, vertex=None):
        self.k = k
        self.vertex = vertex
        where = f" at vertex {vertex!r}" if vertex is not None else ""
        super().__init__(f"sigma pole at k={k}{where}")


class OrbitExplosionError(QgresError):
    """Cycle or pseudo-orbit enumeration exceeded the configured cap."""


class WindingError(QgresError):
    """Contour winding did not stabilize to an integer."""


class BoundaryZeroError(WindingError):
    """A zero sits on (or too close to) the contour after max nudges."""


class NewtonDivergenceError(QgresError):
    """Newton iteration left the basin or hit the iteration cap."""


class CountMismatchError(QgresError):
    """Refined roots do not account for the winding of the full region."""


class TrajectoryLostError(QgresError):
    """Continuation step underflowed without recovering the root."""


class DegenerateExpansionError(QgresError):
    """Taylor data of the pole trajectory is not defined here
    (k0 is not an embedded-eigenvalue root, or the leading coefficient
    of the derivative identity vanishes)."""


class CorollaryInapplicableError(QgresError):
    """Closed-form derivative formulas require real, k-independent
    orbit amplitudes."""


class FitDataError(QgresError):
    """Not enough usable windows for a decay fit."""


class UnknownFixtureError(QgresError):
    """No fixture registered under this name."""
