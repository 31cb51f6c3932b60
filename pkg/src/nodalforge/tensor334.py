"""The 3x3x4 tensor calculus: determinant cubics, the contraction matrix,
the cross-product involution, and Hilbert-Burch data.

A tensor lives in U^v (x) V^v (x) W with dim U = dim W = 3 and dim V = 4.
``entries[i][j][k]`` is indexed by a basis of U (i), of V (j), of W (k).
The same data is read three ways:

* as a bilinear map U (x) V -> W  (the module multiplication),
* as a 3x3 matrix of linear forms, entry (i, k) = sum_j entries[i][j][k] x_j,
* as the 4x3 matrix of linear forms on a plane used for Hilbert-Burch.

The involution follows the explicit kernel computation of the source
construction: the exterior-square basis is (e2^e3, -e1^e3, e1^e2), the
contraction is the 9x3 block matrix with blocks (0, N3, -N2; -N3, 0,
N1; N2, -N1, 0) built from the columns Nk of the linear matrix, and the
kernel of its 9x12 coefficient matrix is reassembled with kernel
vectors as the *columns* of the output linear matrix.  Coefficient
columns are ordered variable-major (dual-variable index outermost) so
the canonical rref kernel of the distinguished fixed-point tensor is
exactly the displayed one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .field_linalg import DEFAULT_PRIME, ScalarMatrix, kernel_basis, rank
from .polyring import MultiPoly, PolyMatrix, adjugate3, det

PRIMAL = "primal"
DUAL = "dual"


class MainAssumptionFailed(Exception):
    """The contraction matrix is not surjective: involution undefined here."""


class RankDegeneration(Exception):
    """The plane 4x3 matrix drops rank everywhere: no Hilbert-Burch data."""


class Tensor334:
    """Element of U^v (x) V^v (x) W over F_p, dims (3, 4, 3)."""

    __slots__ = ("entries", "p")

    def __init__(self, entries, p=DEFAULT_PRIME):
        e = [[[int(entries[i][j][k]) % p for k in range(3)] for j in range(4)] for i in range(3)]
        self.entries = e
        self.p = p

    @classmethod
    def zero(cls, p=DEFAULT_PRIME):
        return cls([[[0] * 3 for _ in range(4)] for _ in range(3)], p)

    @classmethod
    def from_linear_matrix(cls, rows, p=DEFAULT_PRIME):
        """Build from a 3x3 array of coefficient 4-vectors.

        ``rows[i][k]`` is the coefficient vector (over x0..x3) of the
        linear form in matrix position (i, k).
        """
        t = cls.zero(p)
        for i in range(3):
            for k in range(3):
                for j in range(4):
                    t.entries[i][j][k] = int(rows[i][k][j]) % p
        return t

    @classmethod
    def random(cls, rng, p=DEFAULT_PRIME):
        return cls(
            [[[rng.randrange(p) for _ in range(3)] for _ in range(4)] for _ in range(3)], p
        )

    def scale(self, c):
        c = int(c) % self.p
        return Tensor334(
            [[[(c * self.entries[i][j][k]) % self.p for k in range(3)] for j in range(4)]
             for i in range(3)],
            self.p,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Tensor334)
            and self.p == other.p
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Tensor334(p={self.p})"

    # -- serialization -----------------------------------------------------

    def to_json(self, side=PRIMAL):
        return json.dumps({"p": self.p, "entries": self.entries, "side": side})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        side = data.get("side", PRIMAL)
        if side not in (PRIMAL, DUAL):
            raise ValueError(f"bad side {side!r}")
        return cls(data["entries"], data["p"]), side


@dataclass
class FiveTuple:
    """A tensor together with which P^3 its linear forms live on."""

    tensor: Tensor334
    side: str = PRIMAL


def projectively_equal(s, t):
    """True when s = c * t for a nonzero scalar c."""
    if s.p != t.p:
        return False
    p = s.p
    c = None
    for i in range(3):
        for j in range(4):
            for k in range(3):
                a, b = s.entries[i][j][k], t.entries[i][j][k]
                if b == 0:
                    if a != 0:
                        return False
                    continue
                ratio = (a * pow(b, p - 2, p)) % p
                if c is None:
                    c = ratio
                elif ratio != c:
                    return False
    return c is not None and c != 0


# -- canonical tensors -------------------------------------------------------


def tensor_b0(p=DEFAULT_PRIME):
    """The distinguished tensor: skew(x1,x2,x3) + x0*I as a linear matrix."""
    rows = [
        [[1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        [[0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
        [[0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    ]
    return Tensor334.from_linear_matrix(rows, p)


def scroll_tensor_nonspecial(p=DEFAULT_PRIME):
    """Cubic-scroll projection, conic not split: matrix
    ((x0, 0, x1), (0, x1, -x0), (-x2, -x3, 0))."""
    rows = [
        [[1, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, 0, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
        [[0, 0, -1, 0], [0, 0, 0, -1], [0, 0, 0, 0]],
    ]
    return Tensor334.from_linear_matrix(rows, p)


def scroll_tensor_special(p=DEFAULT_PRIME):
    """Cubic-scroll projection, conic split into two lines: matrix
    ((x3, -x2, -x0), (-x1, 0, x3), (0, x3, -x1))."""
    rows = [
        [[0, 0, 0, 1], [0, 0, -1, 0], [-1, 0, 0, 0]],
        [[0, -1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]],
        [[0, 0, 0, 0], [0, 0, 0, 1], [0, -1, 0, 0]],
    ]
    return Tensor334.from_linear_matrix(rows, p)


def degenerate_involute_nonspecial(p=DEFAULT_PRIME):
    """Displayed involution image of the non-special scroll tensor:
    ((x2, x3, 0), (0, x2, x3), (0, 0, 0)) in dual coordinates."""
    rows = [
        [[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
        [[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    ]
    return Tensor334.from_linear_matrix(rows, p)


def degenerate_involute_special(p=DEFAULT_PRIME):
    """Involution image of the special scroll tensor:
    ((0, 0, 0), (x0, x2, 0), (x2, 0, x0)) in dual coordinates.

    The image spans only two independent linear forms, like its
    non-special counterpart (the two are equivalent); a variant with a
    third independent form on the diagonal cannot be reached, since the
    span dimension is invariant under every basis change.
    """
    rows = [
        [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
        [[0, 0, 1, 0], [0, 0, 0, 0], [1, 0, 0, 0]],
    ]
    return Tensor334.from_linear_matrix(rows, p)


# -- linear-matrix views -----------------------------------------------------


def as_linear_matrix(B, side=PRIMAL):
    """3x3 matrix of linear forms, entry (i, k) = sum_j entries[i][j][k] x_j.

    The variables are x0..x3 read as coordinates on P^3 (primal) or on
    its dual (dual); the polynomial ring is the same either way.
    """
    out = []
    for i in range(3):
        row = []
        for k in range(3):
            row.append(
                MultiPoly.linear_form([B.entries[i][j][k] for j in range(4)], B.p)
            )
        out.append(row)
    return PolyMatrix(out, 4, B.p)


def det_cubic(B, side=PRIMAL):
    """Determinant of the linear matrix: zero or a cubic form."""
    return det(as_linear_matrix(B, side))


_EPS = {
    (0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
    (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1,
}


def btilde(B):
    """The contraction as a 9x3 matrix of linear forms.

    Row 3*b + i is the (U' tensor W') basis vector f_i (x) e_b; column m
    runs over the exterior-square basis (e2^e3, -e1^e3, e1^e2).  Block
    (b, m) equals sum_k eps(b, m, k) * (column k of the linear matrix).
    """
    N = as_linear_matrix(B)
    zero = MultiPoly.zero(4, B.p)
    rows = []
    for b in range(3):
        for i in range(3):
            row = []
            for m in range(3):
                acc = zero
                for k in range(3):
                    sign = _EPS.get((b, m, k), 0)
                    if sign == 1:
                        acc = acc + N[i, k]
                    elif sign == -1:
                        acc = acc - N[i, k]
                row.append(acc)
            rows.append(row)
    return PolyMatrix(rows, 4, B.p)


def btilde_coefficient_matrix(B):
    """9x12 scalar matrix of the contraction.

    Rows follow :func:`btilde`.  Column 3*(3-j) + m pairs dual
    coordinate j with exterior-square index m; the dual coordinates are
    enumerated x3, x2, x1, x0 so that left-to-right rref pivoting
    reaches the x0 block last.  Wherever that block is pivot-free the
    canonical kernel basis has x0-coefficient slice equal to the
    identity, which is exactly the normalization of the displayed
    fixed-point kernel.
    """
    a = np.zeros((9, 12), dtype=np.int64)
    e = B.entries
    for b in range(3):
        for i in range(3):
            r = 3 * b + i
            for m in range(3):
                for k in range(3):
                    sign = _EPS.get((b, m, k), 0)
                    if sign:
                        for j in range(4):
                            a[r, 3 * (3 - j) + m] += sign * e[i][j][k]
    return ScalarMatrix(a, B.p)


def main_assumption_holds(B):
    """Surjectivity of the contraction: its 9x12 coefficient matrix has rank 9."""
    return rank(btilde_coefficient_matrix(B)) == 9


def cross_involution(five):
    """The cross-product involution on 5-tuples.

    The output tensor's linear matrix has the canonical rref kernel
    vectors of the contraction matrix as its columns, rows indexed by
    the exterior-square basis; the side flips (primal <-> dual).
    Raises MainAssumptionFailed when the contraction is not surjective.
    """
    B = five.tensor
    M = btilde_coefficient_matrix(B)
    if rank(M) != 9:
        raise MainAssumptionFailed("contraction matrix has rank < 9")
    basis = kernel_basis(M)
    # rank 9 on 12 columns leaves exactly a 3-dimensional kernel
    out = Tensor334.zero(B.p)
    for s, v in enumerate(basis):
        for j in range(4):
            for m in range(3):
                out.entries[m][j][s] = int(v[3 * (3 - j) + m]) % B.p
    return FiveTuple(out, DUAL if five.side == PRIMAL else PRIMAL)


def double_application_witness(B):
    """Certificate that the involution squares to the identity class map.

    The involution reads only the kernel of the contraction, so acting
    on the row slot of the input by any invertible matrix leaves the
    output unchanged: a double application can return the input only up
    to a change of the two 3-dimensional bases.  This computes the pair
    (g, h) with  cross(cross(B)) = g . B . h  (g on the row slot, h on
    the column slot), unique up to one scalar.  Returns (g, h) as
    ScalarMatrix objects, or None when no invertible pair exists.
    """
    one = cross_involution(FiveTuple(B, PRIMAL))
    two = cross_involution(one)
    C = two.tensor
    p = B.p
    # solve g . B = C . h^-1 for (g, h^-1), 36 equations, 18 unknowns
    rows = []
    for i in range(3):
        for m in range(3):
            for j in range(4):
                row = [0] * 18
                for l in range(3):
                    row[3 * i + l] = B.entries[l][j][m]
                for k in range(3):
                    row[9 + 3 * k + m] = (-C.entries[i][j][k]) % p
                rows.append(row)
    ker = kernel_basis(ScalarMatrix(np.array(rows, dtype=np.int64), p))
    if len(ker) != 1:
        return None
    v = ker[0]
    g = ScalarMatrix(np.array(v[:9]).reshape(3, 3), p)
    hinv = ScalarMatrix(np.array(v[9:]).reshape(3, 3), p)
    from .field_linalg import inverse

    h = inverse(hinv)
    if h is None or inverse(g) is None:
        return None
    # confirm the identity entry by entry
    for i in range(3):
        for j in range(4):
            for k in range(3):
                lhs = C.entries[i][j][k]
                rhs = 0
                for l in range(3):
                    for m in range(3):
                        rhs += int(g.a[i, l]) * B.entries[l][j][m] * int(h.a[m, k])
                if lhs != rhs % p:
                    return None
    return g, h


def match_up_to_permutation(s, t):
    """Search row/column basis permutations and a scalar with
    P_rho . s . P_tau = c * t; returns (rho, tau, c) or None."""
    from itertools import permutations

    p = s.p
    for rho in permutations(range(3)):
        for tau in permutations(range(3)):
            c = None
            ok = True
            for i in range(3):
                for j in range(4):
                    for k in range(3):
                        a = s.entries[rho[i]][j][tau[k]]
                        b = t.entries[i][j][k]
                        if b == 0:
                            if a != 0:
                                ok = False
                                break
                            continue
                        ratio = (a * pow(b, p - 2, p)) % p
                        if c is None:
                            c = ratio
                        elif ratio != c:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok and c:
                return rho, tau, c
    return None


# -- Hilbert-Burch ----------------------------------------------------------


def plane_matrix(B):
    """The 4x3 matrix of linear forms on P^2: entry (j, k) = sum_i e[i][j][k] u_i."""
    rows = []
    for j in range(4):
        row = []
        for k in range(3):
            row.append(
                MultiPoly.linear_form([B.entries[i][j][k] for i in range(3)], B.p)
            )
        rows.append(row)
    return PolyMatrix(rows, 3, B.p)


def hilbert_burch(B):
    """Signed maximal minors of the plane matrix and the length-6 ideal.

    gammas[k] = (-1)^k det(plane matrix with row k removed), which makes
    the syzygy sum_k gammas[k] * Bhat[k][j] = 0 hold exactly for every j.
    Raises RankDegeneration when all four minors vanish.
    """
    from .groebner import GradedIdeal

    Bhat = plane_matrix(B)
    gammas = []
    for k in range(4):
        rows = [Bhat.entries[r] for r in range(4) if r != k]
        minor = det(PolyMatrix(rows, 3, B.p))
        gammas.append(minor if k % 2 == 0 else -minor)
    if all(not g.terms for g in gammas):
        raise RankDegeneration("every maximal minor of the plane matrix vanishes")
    zeta = GradedIdeal([g for g in gammas if g.terms], 3, B.p)
    return gammas, zeta


def syzygy_residual(B, gammas):
    """The three forms sum_k gammas[k] * Bhat[k][j]; all zero when valid."""
    Bhat = plane_matrix(B)
    out = []
    for j in range(3):
        acc = MultiPoly.zero(3, B.p)
        for k in range(4):
            acc = acc + gammas[k] * Bhat.entries[k][j]
        out.append(acc)
    return out


# -- Chern polynomial --------------------------------------------------------


def _series_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _series_geom_inverse(c, n):
    """Coefficients of (1 + c t)^(-1) truncated to n terms."""
    return [(-c) ** k for k in range(n)]


def series_binomial_power(c, e, n=4):
    """(1 + c t)^e truncated mod t^n, integer exponent e of either sign."""
    out = [1] + [0] * (n - 1)
    base = [1, c] + [0] * (n - 2) if e >= 0 else _series_geom_inverse(c, n)
    for _ in range(abs(e)):
        out = _series_mul(out, base, n)
    return out


def chern_polynomial():
    """Total Chern class coefficients of the rank-6 kernel bundle.

    (1+t)^9 * (1+2t)^-3 truncated mod t^4 over the integers.
    """
    return _series_mul(series_binomial_power(1, 9), series_binomial_power(2, -3), 4)
