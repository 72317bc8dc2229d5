"""Resonances of quantum graphs with general self-adjoint vertex couplings.

The library builds metric graphs, evaluates secular functions whose zeros
are the resonances and embedded eigenvalues, locates those zeros in regions
of the complex plane, differentiates pole trajectories with respect to
edge-length perturbations, and checks the high-energy limits of delta and
delta'_s coupled leads.
"""

from .asymptotics import (
    DecayFit,
    WindowScan,
    default_windows,
    fit_decay,
    reference_spectrum,
    replace_couplings,
    run_asymptotics,
    scan_windows,
)
from .bonds import BondSystem, big_sigma, build_bond_system, s_matrix
from .errors import QgresError
from .fermi import (
    FermiExpansion,
    TrajectoryPoint,
    fermi_corollary,
    fermi_expansion,
    implicit_expansion,
    kddot,
    kdot,
    trace_trajectory,
)
from .fixtures import Fixture, fixture_names, load_fixture
from .graph import (
    Coupling,
    Delta,
    DeltaPrimeS,
    Dirichlet,
    Edge,
    EdgeLengthSchedule,
    General,
    MetricGraph,
    Neumann,
    Robin,
    Standard,
    Vertex,
    build_graph,
    coupling_matrix,
    graph_to_doc,
    load_graph,
    load_schedule,
    save_graph,
)
from .orbits import (
    PseudoOrbitTerm,
    enumerate_irreducible_pseudo_orbits,
    enumerate_simple_cycles,
    graph_terms,
    secular_po,
)
from .rootfind import (
    Resonance,
    SearchRegion,
    cauchy_derivatives,
    count_zeros,
    find_roots,
    newton_refine,
)
from .scattering import (
    VertexBlocks,
    effective_coupling,
    effective_sigma,
    sigma_delta,
    sigma_delta_prime_s,
    sigma_standard,
    split_blocks,
    vertex_sigma,
)
from .secular import (
    Evaluator,
    SecularFunction,
    closed_form_condition,
    cross_eigenvalue_length,
    secular,
    secular_cleared,
    secular_det,
)

__version__ = "0.1.0"
