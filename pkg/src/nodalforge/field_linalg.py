"""Exact arithmetic in F_p and dense linear algebra over it.

Matrices are stored as numpy int64 arrays of least nonnegative residues
and every product is reduced immediately (no lazy reduction).  All results
are exact; numpy is used only as a fast container for word-sized integers.

The modulus is carried by every element and matrix.  Mixing two moduli in
one operation is a programming error and raises ``ModulusMismatch``.
"""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 101


class ModulusMismatch(Exception):
    """Raised when operands from different prime fields are combined."""


def _check_prime(p):
    if p < 3 or p % 2 == 0:
        raise ValueError(f"modulus must be an odd prime, got {p}")
    # trial division is plenty for word-sized moduli
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"modulus must be an odd prime, got {p}")
        d += 2


class PrimeFieldElement:
    """An element of F_p, stored as the least nonnegative residue."""

    __slots__ = ("value", "p")

    def __init__(self, value, p=DEFAULT_PRIME):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        return int(other) % self.p

    def __add__(self, other):
        return PrimeFieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return PrimeFieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return PrimeFieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return PrimeFieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        if not isinstance(other, PrimeFieldElement):
            other = PrimeFieldElement(other, self.p)
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        return self.value == int(other) % self.p

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"PrimeFieldElement({self.value}, p={self.p})"


def inv_mod(a, p):
    """Inverse of a nonzero residue, as a plain int."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 in F_p")
    return pow(a, p - 2, p)


class ScalarMatrix:
    """Dense matrix over F_p backed by a numpy int64 array."""

    __slots__ = ("a", "p")

    def __init__(self, data, p=DEFAULT_PRIME):
        _check_prime(p)
        a = np.asarray(data, dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1)
        if a.ndim != 2:
            raise ValueError("ScalarMatrix needs a 2-d array")
        self.a = np.mod(a, p)
        self.p = p

    @classmethod
    def zeros(cls, rows, cols, p=DEFAULT_PRIME):
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n, p=DEFAULT_PRIME):
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    def _check(self, other):
        if self.p != other.p:
            raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")

    def __add__(self, other):
        self._check(other)
        return ScalarMatrix((self.a + other.a) % self.p, self.p)

    def __sub__(self, other):
        self._check(other)
        return ScalarMatrix((self.a - other.a) % self.p, self.p)

    def __matmul__(self, other):
        self._check(other)
        # entries < p <= 2^31 and inner dim < 2^20 keep the dot products
        # inside int64, so a single reduction afterwards is exact
        return ScalarMatrix((self.a @ other.a) % self.p, self.p)

    def __mul__(self, scalar):
        c = int(scalar) % self.p
        return ScalarMatrix((self.a * c) % self.p, self.p)

    def transpose(self):
        return ScalarMatrix(self.a.T.copy(), self.p)

    def __eq__(self, other):
        return (
            isinstance(other, ScalarMatrix)
            and self.p == other.p
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __repr__(self):
        return f"ScalarMatrix({self.a.tolist()}, p={self.p})"

    def tolist(self):
        return self.a.tolist()


def _rref_array(a, p):
    """Reduced row echelon form of an int64 array mod p.

    Deterministic: the pivot in each column is the first row (top to
    bottom) with a nonzero entry.  Returns (rref, pivot_columns).
    """
    m = a % p
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = m[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            m[other] = (m[other] - np.outer(m[other, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rref(M):
    """Reduced row echelon form and rank of a ScalarMatrix."""
    R, pivots = _rref_array(M.a.copy(), M.p)
    return ScalarMatrix(R, M.p), len(pivots)


def rank(M):
    return rref(M)[1]


def kernel_basis(M):
    """Basis of the right kernel {v : M v = 0}, as a list of 1-d arrays.

    The basis is the canonical rref kernel basis: one vector per free
    column (ascending), with a 1 in its free coordinate and 0 in every
    other free coordinate.  Deterministic pivoting makes the result
    reproducible.
    """
    R, pivots = _rref_array(M.a.copy(), M.p)
    p = M.p
    cols = M.cols
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-int(R[i, f])) % p
        basis.append(v)
    return basis


def kernel_matrix(M):
    """Kernel basis packed as the columns of a ScalarMatrix (cols may be 0)."""
    basis = kernel_basis(M)
    if not basis:
        return ScalarMatrix.zeros(M.cols, 0, M.p)
    return ScalarMatrix(np.stack(basis, axis=1), M.p)


def inverse(M):
    """Inverse of a square ScalarMatrix, or None if singular."""
    n = M.rows
    if n != M.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([M.a, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = _rref_array(aug, M.p)
    if pivots[:n] != list(range(n)):
        return None
    return ScalarMatrix(R[:, n:], M.p)


def solve_right(M, b):
    """One solution x of M x = b, or None if inconsistent."""
    aug = np.concatenate([M.a, np.asarray(b, dtype=np.int64).reshape(-1, 1) % M.p], axis=1)
    R, pivots = _rref_array(aug, M.p)
    n = M.cols
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, n]
    return x
