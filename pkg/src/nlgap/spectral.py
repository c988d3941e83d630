"""Normalized-Laplacian spectrum and the classical facts the lab leans on.

Covers lambda_bar, the eigenvalue-based diameter bound, the discrepancy
(expander-mixing) audit and the Hilbert-space expander inequality.  Sum
conventions used throughout the package: edge sums range over DIRECTED
edges (each undirected edge twice), pair sums over ORDERED vertex pairs;
vol(X) is the degree sum over X, so vol(G) = n*d for d-regular graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph

__all__ = [
    "Spectrum",
    "normalized_laplacian",
    "eigenvalues",
    "eigensystem",
    "lambda_bar",
    "spectral_diameter_bound",
    "discrepancy_audit",
    "hilbert_expander_check",
]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sorted normalized-Laplacian eigenvalues plus the solver residual.

    ``residual`` is max_i ||L v_i - lambda_i v_i||_2 over the returned
    eigenpairs, guaranteed <= tol * ||L||_2 by :func:`eigenvalues`.
    """

    eigenvalues: np.ndarray  # float64, ascending
    residual: float

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @property
    def lambda1(self) -> float:
        if self.n < 2:
            raise ValueError("lambda1 needs at least two eigenvalues")
        return float(self.eigenvalues[1])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])


def normalized_laplacian(g: Graph) -> np.ndarray:
    """I - D^{-1/2} A D^{-1/2} as a dense symmetric matrix (I - A/d if regular)."""
    deg = g.degrees
    if np.any(deg == 0):
        raise ValueError("normalized Laplacian undefined with isolated vertices")
    scale = 1.0 / np.sqrt(deg.astype(np.float64))
    lap = np.eye(g.n)
    src = np.repeat(np.arange(g.n), deg)
    lap[src, g.indices] -= scale[src] * scale[g.indices]
    return lap


def eigensystem(matrix, tol=1e-9):
    """Full symmetric eigendecomposition returning (Spectrum, eigenvectors).

    Rejects inputs that are not symmetric to within tol, and verifies the
    residual ||Mv - lambda v|| <= tol * ||M|| for every returned pair.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    scale = max(1.0, float(np.abs(m).max()) if m.size else 1.0)
    if float(np.abs(m - m.T).max() if m.size else 0.0) > tol * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    vals, vecs = np.linalg.eigh(m)
    norm = max(abs(float(vals[0])), abs(float(vals[-1])), 1e-300)
    residual = float(np.linalg.norm(m @ vecs - vecs * vals, axis=0).max())
    if residual > tol * norm:
        raise ValueError(f"eigensolver residual {residual:.3e} exceeds "
                         f"tol*||M|| = {tol * norm:.3e}")
    return Spectrum(eigenvalues=vals, residual=residual), vecs


def eigenvalues(matrix, tol=1e-9) -> Spectrum:
    """Sorted spectrum of a symmetric matrix; see :func:`eigensystem`."""
    spec, _ = eigensystem(matrix, tol=tol)
    return spec


def lambda_bar(spectrum: Spectrum) -> float:
    """max(|1 - lambda_1|, |lambda_{n-1} - 1|), the two-sided spectral radius."""
    if spectrum.n < 2:
        raise ValueError("lambda_bar needs at least two eigenvalues")
    return max(abs(1.0 - spectrum.lambda1), abs(spectrum.lambda_max - 1.0))


def spectral_diameter_bound(spectrum: Spectrum, n: int, variant="two_sided"):
    """ceil(log(n-1) / log(1/lam)) with lam = lambda_bar (default).

    ``variant="lambda1"`` substitutes lam = 1 - lambda_1 instead (the
    one-sided reading of the same bound).  Returns None when lam >= 1 and
    the bound is vacuous (e.g. bipartite graphs under the two-sided form).
    """
    if n < 2:
        raise ValueError("bound needs n >= 2")
    if variant == "two_sided":
        lam = lambda_bar(spectrum)
    elif variant == "lambda1":
        lam = 1.0 - spectrum.lambda1
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if lam >= 1.0 - 1e-12:
        return None
    return math.ceil(math.log(n - 1) / math.log(1.0 / lam))


def discrepancy_audit(g: Graph, spectrum: Spectrum, pairs) -> float:
    """Max over (X, Y) of |e(X,Y) - vol(X)vol(Y)/vol(G)| - lam_bar*sqrt(vol(X)vol(Y)).

    The expander mixing lemma guarantees the result is <= 0 up to
    eigen-tolerance; a positive return indicates a bug.  Each pair must be
    disjoint.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one (X, Y) pair")
    deg = g.degrees
    vol_g = float(g.vol)
    lam = lambda_bar(spectrum)
    e = g.edges
    eu, ev = (e[:, 0], e[:, 1]) if e.size else (np.empty(0, int), np.empty(0, int))
    worst = -math.inf
    for xs, ys in pairs:
        x_mask = np.zeros(g.n, dtype=bool)
        y_mask = np.zeros(g.n, dtype=bool)
        x_idx = np.asarray(list(xs), dtype=np.int64)
        y_idx = np.asarray(list(ys), dtype=np.int64)
        if x_idx.size:
            x_mask[x_idx] = True
        if y_idx.size:
            y_mask[y_idx] = True
        if np.any(x_mask & y_mask):
            raise ValueError("X and Y must be disjoint")
        crossing = int(np.count_nonzero((x_mask[eu] & y_mask[ev])
                                        | (y_mask[eu] & x_mask[ev])))
        vol_x = float(deg[x_mask].sum())
        vol_y = float(deg[y_mask].sum())
        violation = abs(crossing - vol_x * vol_y / vol_g) - lam * math.sqrt(vol_x * vol_y)
        worst = max(worst, violation)
    return worst


def hilbert_expander_check(g: Graph, lambda1: float, values) -> float:
    """Slack of the vector-valued expander inequality; nonnegative by theorem.

    For f: V -> R^s returns
    (1/(nd)) * sum over directed edges ||f(u)-f(v)||^2
    - (lambda1/n^2) * sum over ordered pairs ||f(u)-f(v)||^2.
    """
    if g.d is None:
        raise ValueError("graph must be regular")
    f = np.asarray(values, dtype=np.float64)
    if f.dtype == object:
        raise ValueError("vector values must share one dimension")
    if f.ndim == 1:
        f = f[:, None]
    if f.ndim != 2 or f.shape[0] != g.n:
        raise ValueError("expected one s-vector per vertex")
    n, d = g.n, g.d
    e = g.edges
    diff = f[e[:, 0]] - f[e[:, 1]]
    edge_part = 2.0 * float(np.sum(diff * diff))
    centered = f - f.mean(axis=0)
    col_sums = centered.sum(axis=0)
    pair_part = 2.0 * n * float(np.sum(centered * centered)) - 2.0 * float(col_sums @ col_sums)
    return edge_part / (n * d) - lambda1 * pair_part / (n * n)
