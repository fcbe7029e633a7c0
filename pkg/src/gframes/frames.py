"""Finite frames generated by graph Laplacians.

A graph on n vertices with p components yields a frame of n vectors in
dimension k = n - p: scale the first k Laplacian eigenvector columns by
the square roots of the nonzero eigenvalues and read the vectors off the
columns of the resulting k-by-n synthesis matrix. The Gramian of that
frame reproduces the Laplacian exactly, the frame operator is the diagonal
of nonzero eigenvalues, and each component's vectors sum to zero.

The frame is determined only up to an orthogonal change of basis, so all
diagnostics exposed by this package are basis invariants;
:func:`unitary_equivalence_witness` recovers the basis change between two
realizations when one is needed explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional

import numpy as np

from .exceptions import ConvergenceError, EnumerationGuardError
from .graphs import Graph, degree_sequence, laplacian_matrix, relabel_by_component
from .linalg import SymmetricSpectrum, eigh_symmetric, numerical_rank

_GRAMIAN_TOL = 1e-8
_NORM_TOL = 1e-9
_DUALITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Frame:
    """A spanning sequence of ``count`` vectors in dimension ``dim``,
    stored as the columns of a ``dim x count`` synthesis matrix."""

    synthesis: np.ndarray

    def __post_init__(self):
        arr = np.array(self.synthesis, dtype=float)
        if arr.ndim != 2:
            raise ValueError(f"synthesis must be a matrix, got ndim {arr.ndim}")
        k, n = arr.shape
        if k < 1 or n < k:
            raise ValueError(f"need count >= dim >= 1, got dim {k}, count {n}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("synthesis entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "synthesis", arr)
        spectrum = eigh_symmetric(self.frame_operator)
        smallest = float(spectrum.eigenvalues[-1])
        if smallest <= 1e-12 * max(1.0, float(spectrum.eigenvalues[0])):
            raise ValueError("frame vectors do not span: frame operator is singular")

    @property
    def dim(self) -> int:
        return self.synthesis.shape[0]

    @property
    def count(self) -> int:
        return self.synthesis.shape[1]

    @cached_property
    def frame_operator(self) -> np.ndarray:
        s = self.synthesis @ self.synthesis.T
        s.setflags(write=False)
        return s

    @cached_property
    def gramian(self) -> np.ndarray:
        g = self.synthesis.T @ self.synthesis
        g.setflags(write=False)
        return g


@dataclass(frozen=True, eq=False)
class GraphFrameBundle:
    """A graph, its component-contiguous relabeling, and the frame built from it.

    ``relabeling[v]`` gives the frame column of original vertex ``v``;
    per-column quantities are mapped back to original vertex order with
    :meth:`in_vertex_order` so reports always speak the caller's labels.
    """

    original_graph: Graph
    graph: Graph
    relabeling: tuple
    frame: Frame
    spectrum: SymmetricSpectrum
    component_ranges: tuple

    @property
    def component_count(self) -> int:
        return len(self.component_ranges)

    @cached_property
    def column_to_vertex(self) -> tuple:
        inverse = [0] * len(self.relabeling)
        for vertex, column in enumerate(self.relabeling):
            inverse[column] = vertex
        return tuple(inverse)

    @cached_property
    def column_component(self) -> np.ndarray:
        comp = np.empty(self.graph.n, dtype=np.intp)
        for c, (start, stop) in enumerate(self.component_ranges):
            comp[start:stop] = c
        return comp

    def column_of(self, vertex: int) -> int:
        return self.relabeling[vertex]

    def in_vertex_order(self, column_values) -> np.ndarray:
        values = np.asarray(column_values)
        return values[np.asarray(self.relabeling, dtype=np.intp)]


@dataclass(frozen=True, eq=False)
class DualCandidate:
    """A dual frame expressed as the canonical dual plus one shift vector per
    component; ``realized`` holds the dual vectors as columns."""

    bundle: GraphFrameBundle
    shifts: np.ndarray
    realized: np.ndarray

    @property
    def residual(self) -> float:
        return verify_dual(self.bundle.frame, self.realized)


def _reject_isolated_vertices(g: Graph):
    for comp in g.components:
        if len(comp) == 1:
            raise ValueError(
                f"vertex {comp[0]} is isolated; a zero Gramian row leaves no frame vector, "
                "so graphs with isolated vertices (or no edges at all) are rejected"
            )


def build_lg_frame(g: Graph, zero_tol: Optional[float] = None) -> GraphFrameBundle:
    """Build the frame generated by ``g`` from its Laplacian eigendecomposition.

    The graph is relabeled component-contiguously first (dual-family
    bookkeeping needs contiguous blocks); every component must contain an
    edge. The returned bundle checks its own contract: Gramian equals the
    Laplacian, squared vector norms equal the degrees, and the frame
    operator is the diagonal of nonzero Laplacian eigenvalues.
    """
    _reject_isolated_vertices(g)
    relabeled, mapping = relabel_by_component(g)
    lap = laplacian_matrix(relabeled)
    spectrum = eigh_symmetric(lap, zero_tol)
    p = len(relabeled.components)
    k = relabeled.n - p
    zeros = relabeled.n - spectrum.nonzero_count
    if zeros != p:
        raise ConvergenceError(
            f"Laplacian has {zeros} numerically zero eigenvalues but the graph has {p} components"
        )
    synthesis = np.sqrt(spectrum.eigenvalues[:k])[:, None] * spectrum.eigenvectors[:, :k].T
    frame = Frame(synthesis)

    gram_err = float(np.abs(frame.gramian - lap).max())
    norm_err = float(np.abs(np.diag(frame.gramian) - degree_sequence(relabeled)).max())
    s = frame.frame_operator
    s_off = float(np.abs(s - np.diag(np.diag(s))).max())
    s_diag_err = float(np.abs(np.diag(s) - spectrum.eigenvalues[:k]).max())
    if gram_err > _GRAMIAN_TOL or norm_err > _NORM_TOL or s_off > _NORM_TOL or s_diag_err > _NORM_TOL:
        raise ConvergenceError(
            f"frame construction missed its tolerances (gramian {gram_err:.2e}, "
            f"norms {norm_err:.2e}, operator {max(s_off, s_diag_err):.2e})"
        )

    ranges = []
    start = 0
    for comp in relabeled.components:
        ranges.append((start, start + len(comp)))
        start += len(comp)
    return GraphFrameBundle(g, relabeled, mapping, frame, spectrum, tuple(ranges))


def canonical_dual(bundle: GraphFrameBundle) -> DualCandidate:
    """The canonical dual: columns ``S^-1 f_i``, i.e. zero shifts."""
    shifts = np.zeros((bundle.component_count, bundle.frame.dim))
    return dual_family_member(bundle, shifts)


def dual_family_member(bundle: GraphFrameBundle, shifts) -> DualCandidate:
    """The dual whose column for vertex ``i`` is ``S^-1 f_i`` plus the shift
    vector of that vertex's component.

    Every member of this family is a dual because each component's frame
    vectors sum to zero; the duality identity is still verified and a
    violation raises, since it can only mean an internal bug.
    """
    shifts = np.array(shifts, dtype=float)
    k = bundle.frame.dim
    expected = (bundle.component_count, k)
    if shifts.shape != expected:
        raise ValueError(f"expected shifts of shape {expected}, got {shifts.shape}")
    if not np.all(np.isfinite(shifts)):
        raise ValueError("shift entries must be finite")
    inv_eigs = 1.0 / bundle.spectrum.eigenvalues[:k]
    realized = inv_eigs[:, None] * bundle.frame.synthesis + shifts[bundle.column_component].T
    realized.setflags(write=False)
    shifts.setflags(write=False)
    candidate = DualCandidate(bundle, shifts, realized)
    residual = candidate.residual
    if residual > _DUALITY_TOL:
        raise RuntimeError(
            f"duality identity violated (residual {residual:.2e}); this is a bug"
        )
    return candidate


def verify_dual(frame: Frame, dual_matrix) -> float:
    """Max-entry residual of the duality identity: sum of h_i f_i^T minus I."""
    h = np.asarray(dual_matrix, dtype=float)
    if h.shape != frame.synthesis.shape:
        raise ValueError(f"expected dual of shape {frame.synthesis.shape}, got {h.shape}")
    k = frame.dim
    return float(np.abs(h @ frame.synthesis.T - np.eye(k)).max())


def unitary_equivalence_witness(f1: Frame, f2: Frame, gram_tol: float = 1e-8,
                                residual_tol: float = 1e-7):
    """Orthogonal ``U`` with ``U @ f2.synthesis == f1.synthesis``, or ``None``.

    Frames with equal Gramians differ by an orthogonal map; the witness is
    the polar factor of ``synthesis1 @ synthesis2^T`` (orthogonal
    Procrustes). A rank-deficient cross product leaves freedom on the
    orthogonal complement, which the SVD pairing fixes deterministically.
    """
    if f1.dim != f2.dim or f1.count != f2.count:
        raise ValueError("frames must share dim and count")
    if float(np.abs(f1.gramian - f2.gramian).max()) > gram_tol:
        return None
    u, _, vt = np.linalg.svd(f1.synthesis @ f2.synthesis.T)
    witness = u @ vt
    if float(np.abs(witness @ f2.synthesis - f1.synthesis).max()) > residual_tol:
        return None
    return witness


def _subset_budget(n: int, size_cap: int) -> int:
    return sum(math.comb(n, s) for s in range(1, size_cap + 1))


def spark(frame: Frame, rank_tol: float = 1e-8, guard: int = 2_000_000) -> int:
    """Size of the smallest linearly dependent column subset, by enumeration.

    Returns ``dim + 1`` when every subset of at most ``dim`` columns is
    independent (the full spark convention). Subset ranks use the same
    relative singular-value threshold as :func:`gframes.linalg.numerical_rank`.
    Raises :class:`EnumerationGuardError` when the subset count exceeds
    ``guard`` — for graph frames, use :func:`spark_via_components` instead.
    """
    k, n = frame.dim, frame.count
    budget = _subset_budget(n, min(n, k + 1))
    if budget > guard:
        raise EnumerationGuardError(
            f"spark enumeration needs {budget} subsets (guard {guard}); "
            "for a graph frame, spark_via_components gives the answer directly"
        )
    columns = frame.synthesis
    for s in range(1, min(n, k) + 1):
        for subset in combinations(range(n), s):
            if numerical_rank(columns[:, subset], rank_tol) < s:
                return s
    return k + 1


def spark_via_components(g: Graph) -> int:
    """Spark of the frame generated by ``g``: the smallest component order.

    Valid because each component contributes one dependence (its vectors
    sum to zero) while any fewer columns stay independent.
    """
    _reject_isolated_vertices(g)
    return min(len(comp) for comp in g.components)


def is_full_spark(frame: Frame, rank_tol: float = 1e-8, guard: int = 2_000_000) -> bool:
    """Whether every ``dim``-subset of frame vectors is a basis."""
    return spark(frame, rank_tol, guard) == frame.dim + 1
