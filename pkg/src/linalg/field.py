"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy ``int64`` arrays whose entries are kept in ``[0, p)``.
Row reduction pivots on the first nonzero entry in column order, so every
basis returned here is a deterministic function of the input.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime

from src.utils.errors import ValidationError

MAX_PRIME = 1 << 20


class PrimeField:
    """Matrix arithmetic over F_p.

    Args:
        p: Prime modulus, below 2**20 so products of two entries summed over
            a few thousand terms stay inside int64
        logger: Optional logger instance
    """

    def __init__(self, p: int = 101, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)
        try:
            if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
                raise ValidationError(f"Field modulus must be an integer, got {p!r}")
            if not isprime(int(p)):
                raise ValidationError(f"Field modulus must be prime, got {p}")
            if p >= MAX_PRIME:
                raise ValidationError(f"Field modulus must be below {MAX_PRIME}, got {p}")
        except ValidationError as e:
            self.logger.error(f"Invalid field: {str(e)}")
            raise
        self.p = int(p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    # construction

    def array(self, data) -> np.ndarray:
        return np.asarray(data, dtype=np.int64) % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    # scalar and matrix arithmetic

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return pow(a, self.p - 2, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % self.p

    def chain(self, *mats: np.ndarray) -> np.ndarray:
        """Product of several matrices, reducing after every step."""
        out = mats[0] % self.p
        for m in mats[1:]:
            out = (out @ m) % self.p
        return out

    # elimination

    def rref(self, m: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        p = self.p
        a = np.array(m, dtype=np.int64) % p
        if a.ndim != 2:
            raise ValueError(f"Expected a matrix, got an array of shape {a.shape}")
        rows, cols = a.shape
        pivots: List[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = (a[r] * self.inv(a[r, c])) % p
            col = a[:, c].copy()
            col[r] = 0
            others = np.flatnonzero(col)
            if others.size:
                a[others] = (a[others] - np.outer(col[others], a[r])) % p
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, m: np.ndarray) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def nullspace(self, m: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        """Kernel basis as columns, together with the free columns.

        Column k of the basis has a 1 in free column ``free[k]`` and zeros in
        the other free columns.
        """
        m = np.asarray(m, dtype=np.int64)
        cols = m.shape[1]
        reduced, pivots = self.rref(m)
        pivot_set = set(pivots)
        free = [j for j in range(cols) if j not in pivot_set]
        basis = np.zeros((cols, len(free)), dtype=np.int64)
        for k, f in enumerate(free):
            basis[f, k] = 1
            for i, pc in enumerate(pivots):
                basis[pc, k] = (-reduced[i, f]) % self.p
        return basis, free

    def kernel_basis(self, m: np.ndarray) -> List[np.ndarray]:
        basis, _ = self.nullspace(m)
        return [basis[:, k] for k in range(basis.shape[1])]

    def solve_matrix(self, m: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """Some X with m X = b, or None when the system is inconsistent."""
        m = np.asarray(m, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        if m.shape[0] != b.shape[0]:
            raise ValueError(f"Row mismatch: {m.shape} vs {b.shape}")
        cols = m.shape[1]
        reduced, pivots = self.rref(np.hstack([m, b]))
        if pivots and pivots[-1] >= cols:
            return None
        x = np.zeros((cols, b.shape[1]), dtype=np.int64)
        for i, pc in enumerate(pivots):
            x[pc] = reduced[i, cols:]
        return x

    def solve(self, m: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """Some vector x with m x = b, or None."""
        x = self.solve_matrix(m, np.asarray(b).reshape(-1, 1))
        return None if x is None else x[:, 0]

    def column_basis(self, m: np.ndarray) -> np.ndarray:
        """The pivot columns of m, a basis of its column space."""
        m = np.asarray(m, dtype=np.int64) % self.p
        if m.size == 0:
            return np.zeros((m.shape[0], 0), dtype=np.int64)
        _, pivots = self.rref(m)
        return m[:, pivots]

    def complement(self, m: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Projection onto F^n / colspan(m) and a section of it.

        Returns:
            (projection, section) with projection @ m == 0 and
            projection @ section == I
        """
        m = np.asarray(m, dtype=np.int64)
        n = m.shape[0]
        if m.shape[1] == 0:
            return self.identity(n), self.identity(n)
        basis, free = self.nullspace(m.T)
        section = self.identity(n)[:, free]
        return basis.T.copy(), section

    def cokernel_projection(self, m: np.ndarray) -> Tuple[int, np.ndarray]:
        projection, _ = self.complement(m)
        return projection.shape[0], projection

    def left_inverse(self, m: np.ndarray) -> np.ndarray:
        """L with L @ m == I for a matrix of full column rank."""
        m = np.asarray(m, dtype=np.int64)
        k = m.shape[1]
        x = self.solve_matrix(m.T, self.identity(k))
        if x is None:
            raise ValueError("Matrix does not have full column rank")
        return x.T.copy()

    def inverse(self, m: np.ndarray) -> Optional[np.ndarray]:
        m = np.asarray(m, dtype=np.int64)
        if m.shape[0] != m.shape[1] or self.rank(m) != m.shape[0]:
            return None
        return self.solve_matrix(m, self.identity(m.shape[0]))

    def in_span(self, basis: np.ndarray, vectors: np.ndarray) -> bool:
        """True when every column of vectors lies in the column span of basis."""
        vectors = np.asarray(vectors, dtype=np.int64)
        if vectors.size == 0:
            return True
        base_rank = self.rank(basis)
        return self.rank(np.hstack([basis, vectors])) == base_rank

    def stack_columns(self, vectors: Sequence[np.ndarray], length: int) -> np.ndarray:
        if not vectors:
            return np.zeros((length, 0), dtype=np.int64)
        return np.column_stack([np.asarray(v, dtype=np.int64) for v in vectors]) % self.p
