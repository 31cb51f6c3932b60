"""End-to-end construction of nodal sextic surfaces with an even set
of 56 nodes, plus the tangent-space dimension counts.

Stages: assemble the pair of presentation maps from a 3x3x4 tensor,
solve the linear system cutting out the symmetric quadratic morphisms,
extract the sextic as a gcd of two compressed 6x6 determinants, verify
the singular scheme (codimension, degree, radical), compare with the
ideal of compressed 5x5 minors, and compute tangent dimensions for the
full and the reduced pair varieties.

All coefficient bookkeeping uses one basis convention: the 12
coordinates of U (x) V are pairs (i, j), i in U (3), j in V (4),
ordered i-major with j fastest.  A symmetric 12x12 matrix of quadratic
forms is flattened to 78 entry slots (i <= j lexicographic) times the
10 degree-2 monomials, 780 coefficients in all.
"""

from __future__ import annotations

import numpy as np

from .field_linalg import ScalarMatrix, kernel_basis, rank
from .groebner import (
    GradedIdeal,
    GREVLEX,
    codim_degree,
    ideal_equals,
    is_radical_zero_dim,
    saturate_irrelevant,
)
from .polyring import (
    MultiPoly,
    PolyMatrix,
    det,
    gcd_multivar,
    graded_piece_basis,
)
from .tensor334 import Tensor334, tensor_b0

NV = 4  # coordinates on P^3

QUAD_BASIS = graded_piece_basis(NV, 2)  # 10 monomials
CUBIC_BASIS = graded_piece_basis(NV, 3)  # 20 monomials
QUAD_INDEX = {e: i for i, e in enumerate(QUAD_BASIS)}
CUBIC_INDEX = {e: i for i, e in enumerate(CUBIC_BASIS)}

# pair slots (i, j), i <= j, of a symmetric 12x12 matrix
PAIRS = [(i, j) for i in range(12) for j in range(i, 12)]
PAIR_INDEX = {ij: s for s, ij in enumerate(PAIRS)}

N_UNKNOWNS = len(PAIRS) * len(QUAD_BASIS)  # 780


class StageFailure(Exception):
    """A pipeline stage could not certify its expected outcome."""

    def __init__(self, stage, message):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


class BundlePresentation:
    """The stacked pair of maps presenting the rank-6 kernel bundle."""

    def __init__(self, tensor, bscalar, epsilon):
        self.tensor = tensor
        self.bscalar = bscalar  # 3x12 ScalarMatrix
        self.epsilon = epsilon  # 3x12 PolyMatrix of linear forms
        self.p = tensor.p


class SymmetricMorphism:
    """Symmetric 12x12 matrix of quadratic forms annihilated by the pair."""

    def __init__(self, matrix, coeffs):
        self.matrix = matrix  # PolyMatrix 12x12
        self.coeffs = coeffs  # length-780 int vector in the fixed layout
        self.p = matrix.p

    @classmethod
    def from_coeffs(cls, coeffs, p):
        entries = [
            [MultiPoly.zero(NV, p) for _ in range(12)] for _ in range(12)
        ]
        for s, (i, j) in enumerate(PAIRS):
            terms = {}
            for q, mono in enumerate(QUAD_BASIS):
                c = int(coeffs[s * 10 + q]) % p
                if c:
                    terms[mono] = c
            f = MultiPoly(NV, terms, p)
            entries[i][j] = f
            entries[j][i] = f
        return cls(PolyMatrix(entries, NV, p), np.asarray(coeffs, dtype=np.int64) % p)


def bscalar_matrix(B):
    """3x12 matrix of the bilinear map: row k, column 4*i + j."""
    a = np.zeros((3, 12), dtype=np.int64)
    for k in range(3):
        for i in range(3):
            for j in range(4):
                a[k, 4 * i + j] = B.entries[i][j][k]
    return ScalarMatrix(a, B.p)


def epsilon_matrix(p):
    """3x12 evaluation map: entry (i, 4*i + j) = x_j."""
    zero = MultiPoly.zero(NV, p)
    rows = []
    for i in range(3):
        row = [zero] * 12
        for j in range(4):
            row[4 * i + j] = MultiPoly.variable(j, NV, p)
        rows.append(row)
    return PolyMatrix(rows, NV, p)


def build_presentation(B):
    """Assemble the stacked 6x12 pair; requires the bilinear map onto."""
    bs = bscalar_matrix(B)
    if rank(bs) != 3:
        raise StageFailure(
            "build_presentation", "bilinear map has rank < 3: module not generated in degree -2"
        )
    return BundlePresentation(B, bs, epsilon_matrix(B.p))


def _solve_system_matrix(P):
    """The 1080x780 coefficient system for symmetric morphisms.

    Rows 0..359: coefficients of the 36 quadratic entries of B . A;
    rows 360..1079: coefficients of the 36 cubic entries of eps . A.
    """
    p = P.p
    b = P.bscalar.a
    sysm = np.zeros((1080, N_UNKNOWNS), dtype=np.int64)
    # quadratic block: entry (r, c) = sum_m b[r, m] A[m, c]
    for r in range(3):
        for c in range(12):
            base = (r * 12 + c) * 10
            for m in range(12):
                coef = int(b[r, m])
                if not coef:
                    continue
                s = PAIR_INDEX[(m, c) if m <= c else (c, m)]
                for q in range(10):
                    sysm[base + q, s * 10 + q] = (sysm[base + q, s * 10 + q] + coef) % p
    # cubic block: entry (r, c) = sum_j x_j A[4r+j, c]
    for r in range(3):
        for c in range(12):
            base = 360 + (r * 12 + c) * 20
            for j in range(4):
                m = 4 * r + j
                s = PAIR_INDEX[(m, c) if m <= c else (c, m)]
                for q, mono in enumerate(QUAD_BASIS):
                    lifted = list(mono)
                    lifted[j] += 1
                    nu = CUBIC_INDEX[tuple(lifted)]
                    sysm[base + nu, s * 10 + q] = (sysm[base + nu, s * 10 + q] + 1) % p
    return ScalarMatrix(sysm, p)


def solve_symmetric_space(P):
    """Basis of symmetric quadratic matrices A with (B, eps) . A = 0."""
    M = _solve_system_matrix(P)
    return [SymmetricMorphism.from_coeffs(v, P.p) for v in kernel_basis(M)]


def pair_annihilates(P, A):
    """Exact check that both stacked blocks kill the morphism."""
    b = P.bscalar.a
    p = P.p
    for r in range(3):
        for c in range(12):
            acc = MultiPoly.zero(NV, p)
            for m in range(12):
                if b[r, m]:
                    acc = acc + A.matrix.entries[m][c].scale(int(b[r, m]))
            if acc.terms:
                return False
    eps = epsilon_matrix(p)
    prod = eps @ A.matrix
    return prod.is_zero()


def random_combination(basis, rng):
    """Random field combination of a morphism basis."""
    p = basis[0].p
    coeffs = sum(
        (rng.randrange(p) * b.coeffs) % p for b in basis
    ) % p
    return SymmetricMorphism.from_coeffs(coeffs, p)


def _random_scalar_matrix(rows, cols, p, rng):
    return ScalarMatrix(
        np.array([[rng.randrange(p) for _ in range(cols)] for _ in range(rows)], dtype=np.int64),
        p,
    )


def _compress(A, left, right):
    """left (s x 12) . A . right (12 x s) as a PolyMatrix of quadratics."""
    p = A.p
    s = left.rows
    rows = []
    for r in range(s):
        row = []
        for c in range(s):
            terms = {}
            for m in range(12):
                lm = int(left.a[r, m])
                if not lm:
                    continue
                for n in range(12):
                    rn = int(right.a[n, c])
                    if not rn:
                        continue
                    f = A.matrix.entries[m][n]
                    if not f.terms:
                        continue
                    cc = (lm * rn) % p
                    for e, v in f.terms.items():
                        w = (terms.get(e, 0) + cc * v) % p
                        if w:
                            terms[e] = w
                        else:
                            terms.pop(e, None)
            row.append(MultiPoly(NV, terms, p))
        rows.append(row)
    return PolyMatrix(rows, NV, p)


def extract_sextic(basis, rng, attempts=10, return_morphism=False):
    """Sextic equation as the gcd of two compressed 6x6 determinants.

    Draws a random morphism from the span and two pairs of random
    compressions; retries with fresh randomness until the gcd has
    degree 6.  Failure reports whether determinants vanished or the
    degree stayed wrong (the reducible double-cubic behavior).
    """
    if not basis:
        raise StageFailure("extract_sextic", "empty morphism space")
    last = None
    for _ in range(attempts):
        A = random_combination(basis, rng)
        dets = []
        for _pair in range(2):
            left = _random_scalar_matrix(6, 12, A.p, rng)
            right = _random_scalar_matrix(12, 6, A.p, rng)
            dets.append(det(_compress(A, left, right)))
        if not dets[0].terms or not dets[1].terms:
            last = "a compressed determinant vanished"
            continue
        F = gcd_multivar(dets[0], dets[1])
        if F.degree() == 6:
            return (F, A) if return_morphism else F
        last = f"gcd degree {F.degree()} (double-cubic behavior when 3)"
    raise StageFailure("extract_sextic", f"retries exhausted: {last}")


def singular_ideal(F):
    """The four partials together with the surface equation."""
    gens = [F.partial(i) for i in range(NV)] + [F]
    return GradedIdeal([g for g in gens if g.terms], NV, F.p)


def verify_nodal(F, rng):
    """Codimension/degree of the singular scheme, saturation, radical test.

    Returns (sing, sing_sat, codim, degree, radical).
    """
    if F.degree() != 6 or not F.is_homogeneous():
        raise StageFailure("verify_nodal", "input is not a sextic form")
    sing = singular_ideal(F)
    cd = codim_degree(sing)
    sat = saturate_irrelevant(sing)
    radical = None
    if cd[0] == 3:
        radical = is_radical_zero_dim(sat, rng)
    return sing, sat, cd[0], cd[1], radical


def even_set_check(A, sing_sat, rng, minors=50):
    """Compare the ideal of compressed 5x5 minors with the singular ideal.

    Accumulates `minors` random 5x5 compressions of the morphism,
    saturates, and tests ideal equality.  Returns (equal, codim, degree)
    with the codimension and degree of the accumulated ideal before
    saturation.
    """
    gens = []
    for _ in range(minors):
        left = _random_scalar_matrix(5, 12, A.p, rng)
        right = _random_scalar_matrix(12, 5, A.p, rng)
        d = det(_compress(A, left, right))
        if d.terms:
            gens.append(d)
    ideal = GradedIdeal(gens, NV, A.p)
    cd = codim_degree(ideal)
    sat = saturate_irrelevant(ideal)
    return ideal_equals(sat, sing_sat), cd[0], cd[1]


# ---------------------------------------------------------------------------
# tangent spaces


def tangent_dimension_AB(B0, A0):
    """Kernel dimension of the linearized pair equations at (B0, A0).

    Unknowns: 36 entries of a perturbation of the bilinear map plus the
    780 coefficients of a perturbation of the morphism; equations are
    the 360 quadratic coefficients of  B . A0 + B0 . A  and the 720
    cubic coefficients of  eps . A.
    """
    p = B0.p
    P = build_presentation(B0)
    if not pair_annihilates(P, A0):
        raise StageFailure("tangent_AB", "(B0, A0) does not satisfy the pair equations")
    cols = 36 + N_UNKNOWNS
    sysm = np.zeros((1080, cols), dtype=np.int64)
    b0 = P.bscalar.a
    # quadratic block rows (r, c, q)
    for r in range(3):
        for c in range(12):
            base = (r * 12 + c) * 10
            # B-part: unknown b[r, m] multiplies A0[m, c]
            for m in range(12):
                f = A0.matrix.entries[m][c]
                for e, v in f.terms.items():
                    q = QUAD_INDEX[e]
                    col = 12 * r + m
                    sysm[base + q, col] = (sysm[base + q, col] + v) % p
            # A-part: B0 against unknown A
            for m in range(12):
                coef = int(b0[r, m])
                if not coef:
                    continue
                s = PAIR_INDEX[(m, c) if m <= c else (c, m)]
                for q in range(10):
                    col = 36 + s * 10 + q
                    sysm[base + q, col] = (sysm[base + q, col] + coef) % p
    # cubic block rows: eps . A only
    for r in range(3):
        for c in range(12):
            base = 360 + (r * 12 + c) * 20
            for j in range(4):
                m = 4 * r + j
                s = PAIR_INDEX[(m, c) if m <= c else (c, m)]
                for q, mono in enumerate(QUAD_BASIS):
                    lifted = list(mono)
                    lifted[j] += 1
                    nu = CUBIC_INDEX[tuple(lifted)]
                    col = 36 + s * 10 + q
                    sysm[base + nu, col] = (sysm[base + nu, col] + 1) % p
    return len(kernel_basis(ScalarMatrix(sysm, p)))


# reduced formulation: 3x9 linear b against 9x9 symmetric quadratic a

RPAIRS = [(i, j) for i in range(9) for j in range(i, 9)]
RPAIR_INDEX = {ij: s for s, ij in enumerate(RPAIRS)}


def module_presentation(B):
    """The 3x9 matrix of linear forms presenting the degree-shifted module.

    Columns are the canonical kernel basis vectors of the bilinear map,
    read as 3-vectors of linear forms via the (i, j) coordinate layout.
    """
    P = build_presentation(B)
    ker = kernel_basis(P.bscalar)
    if len(ker) != 9:
        raise StageFailure("module_presentation", "kernel of the bilinear map is not 9-dimensional")
    p = B.p
    cols = []
    for v in ker:
        col = []
        for i in range(3):
            col.append(MultiPoly.linear_form([int(v[4 * i + j]) for j in range(4)], p))
        cols.append(col)
    rows = [[cols[c][i] for c in range(9)] for i in range(3)]
    return PolyMatrix(rows, NV, p), ker


def reduce_morphism(B, A):
    """Restrict a 12x12 morphism to the 9-dimensional kernel coordinates.

    With the canonical rref kernel basis, selecting the free coordinates
    gives sigma with sigma . iota = id, and  a := sigma . A . sigma^T  is
    the symmetric 9x9 quadratic matrix with  b . a = 0.
    """
    P = build_presentation(B)
    ker = kernel_basis(P.bscalar)
    p = B.p
    # free coordinates are where the rref kernel basis carries its 1s
    free = []
    for v in ker:
        ones = [c for c in range(12) if v[c] == 1 and all(w[c] == (1 if w is v else 0) for w in ker)]
        free.append(ones[0])
    entries = [[A.matrix.entries[free[i]][free[j]] for j in range(9)] for i in range(9)]
    return PolyMatrix(entries, NV, p)


def reduced_ab_tangent(b0, a0):
    """Kernel dimension of the linearized equations b . a0 + b0 . a = 0.

    Unknowns: 108 linear coefficients of b (3x9 entries, 4 each) plus
    450 quadratic coefficients of symmetric a (45 entries, 10 each);
    equations: the 27 cubic entries, 20 coefficients each.
    """
    p = b0.p
    prod = b0 @ a0
    if not prod.is_zero():
        raise StageFailure("reduced_tangent", "b0 . a0 is not zero")
    if a0.transpose() != a0:
        raise StageFailure("reduced_tangent", "a0 is not symmetric")
    cols = 108 + 450
    sysm = np.zeros((540, cols), dtype=np.int64)
    for r in range(3):
        for c in range(9):
            base = (r * 9 + c) * 20
            # b-part: unknown b[r, m, j] against a0[m, c]
            for m in range(9):
                f = a0.entries[m][c]
                for e, v in f.terms.items():
                    for j in range(4):
                        lifted = list(e)
                        lifted[j] += 1
                        nu = CUBIC_INDEX[tuple(lifted)]
                        col = (r * 9 + m) * 4 + j
                        sysm[base + nu, col] = (sysm[base + nu, col] + v) % p
            # a-part: b0[r, m] (linear) against unknown a[m, c] (quadratic)
            for m in range(9):
                g = b0.entries[r][m]
                s = RPAIR_INDEX[(m, c) if m <= c else (c, m)]
                for e, v in g.terms.items():
                    j = e.index(1)
                    for q, mono in enumerate(QUAD_BASIS):
                        lifted = list(mono)
                        lifted[j] += 1
                        nu = CUBIC_INDEX[tuple(lifted)]
                        col = 108 + s * 10 + q
                        sysm[base + nu, col] = (sysm[base + nu, col] + v) % p
    return len(kernel_basis(ScalarMatrix(sysm, p)))


# ---------------------------------------------------------------------------
# the full pipeline


class NodalReport:
    """Results of one full verification run."""

    def __init__(self, seed, prime):
        self.seed = seed
        self.prime = prime
        self.solution_dimension = None
        self.sextic = None
        self.sextic_degree = None
        self.sing_codim = None
        self.sing_degree = None
        self.radical = None
        self.even_set_match = None
        self.minor_ideal_codim = None
        self.minor_ideal_degree = None
        self.tangent_dimension = None
        self.failed_stage = None
        self.failure = None

    def as_dict(self):
        return {
            "seed": self.seed,
            "prime": self.prime,
            "solution_dimension": self.solution_dimension,
            "sextic": self.sextic.text() if self.sextic is not None else None,
            "sextic_degree": self.sextic_degree,
            "sing_codim": self.sing_codim,
            "sing_degree": self.sing_degree,
            "radical": self.radical,
            "even_set_match": self.even_set_match,
            "minor_ideal_codim": self.minor_ideal_codim,
            "minor_ideal_degree": self.minor_ideal_degree,
            "tangent_dimension": self.tangent_dimension,
            "failed_stage": self.failed_stage,
            "failure": self.failure,
        }


def full_pipeline(seed, prime, tensor=None, rng_factory=None, with_tangent=True):
    """Run every verification stage at the distinguished (or given) tensor.

    The stages and their expected outcomes: solution space of dimension
    22, a degree-6 gcd sextic, singular scheme of codimension 3 and
    degree 56, radical singular ideal, matching 5x5-minor ideal, and
    tangent dimension 51.  Any stage failure is recorded in the report
    together with the stage name; the seed makes every run replayable.
    """
    from .cli_reports import SplitRng

    if prime <= 56:
        raise ValueError("prime must exceed 56 so distinct nodes stay distinct")
    if rng_factory is None:
        rng_factory = SplitRng(seed)
    report = NodalReport(seed, prime)
    B = tensor if tensor is not None else tensor_b0(prime)
    try:
        P = build_presentation(B)
        basis = solve_symmetric_space(P)
        report.solution_dimension = len(basis)
        F, A = extract_sextic(basis, rng_factory.stream("extract"), return_morphism=True)
        report.sextic = F
        report.sextic_degree = F.degree()
        sing, sat, codim, degree, radical = verify_nodal(F, rng_factory.stream("radical"))
        report.sing_codim = codim
        report.sing_degree = degree
        report.radical = radical
        match, mc, md = even_set_check(A, sat, rng_factory.stream("minors"))
        report.even_set_match = match
        report.minor_ideal_codim = mc
        report.minor_ideal_degree = md
        if with_tangent:
            report.tangent_dimension = tangent_dimension_AB(B, A)
    except StageFailure as exc:
        report.failed_stage = exc.stage
        report.failure = str(exc)
    return report
