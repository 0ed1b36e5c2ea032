"""Adjacency spectra, quotient matrices of vertex partitions, and interlacing."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graph import Graph, GraphError, component_masks, mask_of, members

INTERLACING_TOL = 1e-7


class EigenSolverError(RuntimeError):
    pass


class InvalidPartitionError(GraphError):
    pass


def jacobi_eigenvalues(
    matrix, tol: float = 1e-12, max_sweeps: int = 100
) -> tuple[np.ndarray, float]:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Returns the (unsorted) diagonal after convergence together with the
    remaining off-diagonal Frobenius norm, which bounds the absolute error
    of every eigenvalue.
    """
    a = np.array(matrix, dtype=float, copy=True)
    m = a.shape[0]
    if a.shape != (m, m):
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T, atol=1e-12):
        raise ValueError("matrix must be symmetric")
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    mask = ~np.eye(m, dtype=bool)

    def off_norm() -> float:
        return float(np.sqrt(np.sum(a[mask] ** 2)))

    for _ in range(max_sweeps):
        off = off_norm()
        if off <= threshold:
            return np.diag(a).copy(), off
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    off = off_norm()
    if off <= threshold:
        return np.diag(a).copy(), off
    raise EigenSolverError(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3e})")


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]  # descending
    tolerance: float

    @classmethod
    def from_symmetric(cls, matrix, tol: float = 1e-12) -> Spectrum:
        vals, off = jacobi_eigenvalues(matrix, tol=tol)
        order = sorted(range(len(vals)), key=lambda i: (-vals[i], i))
        return cls(tuple(float(vals[i]) for i in order), off)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def lambda1(self) -> float:
        return self.values[0]

    @property
    def lambda2(self) -> float:
        if len(self.values) < 2:
            raise ValueError("lambda2 needs at least two eigenvalues")
        return self.values[1]

    @property
    def lambda_min(self) -> float:
        return self.values[-1]

    @property
    def lambda_mix(self) -> float:
        """max(lambda_2, -lambda_n), the mixing eigenvalue of a regular graph."""
        return max(self.lambda2, -self.lambda_min)


def adjacency_spectrum(g: Graph, tol: float = 1e-12) -> Spectrum:
    return Spectrum.from_symmetric(g.adjacency_matrix(), tol=tol)


def lambda2(g: Graph) -> float:
    if g.n < 2:
        raise ValueError("lambda2 needs at least two vertices")
    return adjacency_spectrum(g).lambda2


def lambda_min(g: Graph) -> float:
    return adjacency_spectrum(g).lambda_min


# ---------------------------------------------------------------------------
# partitions and quotient matrices

@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, g: Graph, blocks: Iterable[Iterable[int]]) -> Partition:
        blocks = tuple(frozenset(b) for b in blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise InvalidPartitionError("partition has an empty block")
            if seen & b:
                raise InvalidPartitionError("partition blocks overlap")
            if min(b) < 0 or max(b) >= g.n:
                raise InvalidPartitionError("partition block has out-of-range vertices")
            seen |= b
        if len(seen) != g.n:
            raise InvalidPartitionError("partition does not cover every vertex")
        return cls(blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


@dataclass(frozen=True)
class QuotientMatrix:
    """Quotient matrix B = D^{-1} C with C the block edge-count matrix.

    ``counts[i][j]`` is e(V_i, V_j) off the diagonal and 2 e(G[V_i]) on it,
    so the entries are b_ij = counts[i][j] / |V_i|.
    """

    counts: tuple[tuple[int, ...], ...]
    block_sizes: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.block_sizes)

    @property
    def entries(self) -> np.ndarray:
        c = np.array(self.counts, dtype=float).reshape(self.m, self.m)
        return c / np.array(self.block_sizes, dtype=float)[:, None]

    def exact_entries(self) -> list[list[Fraction]]:
        return [
            [Fraction(cij, size) for cij in row]
            for row, size in zip(self.counts, self.block_sizes)
        ]

    def symmetric_conjugate(self) -> np.ndarray:
        """D^{1/2} B D^{-1/2}, symmetric and similar to B."""
        c = np.array(self.counts, dtype=float).reshape(self.m, self.m)
        r = 1.0 / np.sqrt(np.array(self.block_sizes, dtype=float))
        return c * r[:, None] * r[None, :]


def quotient_matrix(g: Graph, p: Partition) -> QuotientMatrix:
    if sum(p.sizes) != g.n or len(set().union(*p.blocks)) != g.n:
        raise InvalidPartitionError("partition does not match the graph")
    masks = [mask_of(b) for b in p.blocks]
    counts = []
    for i, x in enumerate(masks):
        row = []
        for j, y in enumerate(masks):
            row.append(2 * g.edges_within(x) if i == j else g.edges_between(x, y))
        counts.append(tuple(row))
    return QuotientMatrix(tuple(counts), p.sizes)


def quotient_spectrum(q: QuotientMatrix, tol: float = 1e-12) -> Spectrum:
    return Spectrum.from_symmetric(q.symmetric_conjugate(), tol=tol)


def charpoly_at(q: QuotientMatrix, x) -> Fraction:
    """det(xI - B) evaluated exactly over the rationals."""
    x = Fraction(x)
    b = q.exact_entries()
    m = q.m
    mat = [[(x if i == j else 0) - b[i][j] for j in range(m)] for i in range(m)]
    det = Fraction(1)
    for col in range(m):
        pivot = next((r for r in range(col, m) if mat[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        piv = mat[col][col]
        det *= piv
        for r in range(col + 1, m):
            factor = mat[r][col] / piv
            if factor:
                mat[r] = [vr - factor * vc for vr, vc in zip(mat[r], mat[col])]
    return det


@dataclass(frozen=True)
class InterlacingReport:
    graph_spectrum: Spectrum
    quotient_spectrum: Spectrum
    upper_margins: tuple[float, ...]  # lambda_i(G) - lambda_i(B)
    lower_margins: tuple[float, ...]  # lambda_i(B) - lambda_{i+n-m}(G)
    tolerance: float

    @property
    def passed(self) -> bool:
        worst = min(self.upper_margins + self.lower_margins, default=0.0)
        return worst >= -self.tolerance

    def to_dict(self) -> dict:
        return {
            "graph_spectrum": list(self.graph_spectrum.values),
            "quotient_spectrum": list(self.quotient_spectrum.values),
            "upper_margins": list(self.upper_margins),
            "lower_margins": list(self.lower_margins),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def check_interlacing(g: Graph, p: Partition, tol: float = INTERLACING_TOL) -> InterlacingReport:
    n, m = g.n, len(p)
    if m > n:
        raise InvalidPartitionError("more blocks than vertices")
    gs = adjacency_spectrum(g)
    qs = quotient_spectrum(quotient_matrix(g, p))
    upper = tuple(gs.values[i] - qs.values[i] for i in range(m))
    lower = tuple(qs.values[i] - gs.values[i + n - m] for i in range(m))
    return InterlacingReport(gs, qs, upper, lower, tol)


# ---------------------------------------------------------------------------
# the partition {S, V(Q_1), ..., V(Q_c)} induced by a vertex cut

@dataclass(frozen=True)
class CutPartition(Partition):
    cut_size: int
    component_sizes: tuple[int, ...]  # n_i = |V(Q_i)|
    cut_edges: tuple[int, ...]  # e_i = e(S, V(Q_i))

    @property
    def num_components(self) -> int:
        return len(self.component_sizes)


def cut_partition(g: Graph, s: Iterable[int]) -> CutPartition:
    s_mask = mask_of(s)
    if not s_mask:
        raise InvalidPartitionError("cut set is empty")
    if s_mask >> g.n:
        raise InvalidPartitionError("cut set has out-of-range vertices")
    comps = component_masks(g, ((1 << g.n) - 1) & ~s_mask)
    if len(comps) < 2:
        raise InvalidPartitionError("removing the set does not disconnect the graph")
    blocks = (members(s_mask),) + tuple(members(c) for c in comps)
    return CutPartition(
        blocks,
        cut_size=s_mask.bit_count(),
        component_sizes=tuple(c.bit_count() for c in comps),
        cut_edges=tuple(g.edges_between(s_mask, c) for c in comps),
    )


def random_partition(n: int, m: int, rng) -> list[list[int]]:
    """Random partition of ``range(n)`` into ``m`` nonempty blocks."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    order = list(range(n))
    rng.shuffle(order)
    blocks = [[v] for v in order[:m]]
    for v in order[m:]:
        blocks[rng.randrange(m)].append(v)
    return [sorted(b) for b in blocks]

