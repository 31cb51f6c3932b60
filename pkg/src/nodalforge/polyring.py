"""Multivariate polynomials over F_p.

Terms are stored in a dict mapping exponent tuples to nonzero residues.
The ambient variable count is part of the polynomial; mixing different
variable counts or moduli raises.  The display / coefficient-extraction
order is degree-lexicographic with x0 > x1 > ... > x_{n-1}, fixed once
so that reports are reproducible bit for bit.

Variables are named x0, x1, ... regardless of whether they are read as
coordinates on P^3, on the dual P^3, or on a plane P^2.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .field_linalg import DEFAULT_PRIME, ModulusMismatch, ScalarMatrix, inv_mod


class MultiPoly:
    """Polynomial in ``nvars`` variables over F_p."""

    __slots__ = ("nvars", "p", "terms")

    def __init__(self, nvars, terms=None, p=DEFAULT_PRIME):
        self.nvars = nvars
        self.p = p
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars, p=DEFAULT_PRIME):
        return cls(nvars, {}, p)

    @classmethod
    def constant(cls, nvars, c, p=DEFAULT_PRIME):
        return cls(nvars, {(0,) * nvars: c}, p)

    @classmethod
    def variable(cls, i, nvars, p=DEFAULT_PRIME):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, p)

    @classmethod
    def monomial(cls, exps, c=1, p=DEFAULT_PRIME):
        return cls(len(exps), {tuple(exps): c}, p)

    @classmethod
    def linear_form(cls, coeffs, p=DEFAULT_PRIME):
        """sum_i coeffs[i] * x_i."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c % p:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c % p
        return cls(n, terms, p)

    # -- ring structure ------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.p != other.p:
            raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")

    def __add__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.nvars, other, self.p)
        self._check(other)
        terms = dict(self.terms)
        p = self.p
        for e, c in other.terms.items():
            v = (terms.get(e, 0) + c) % p
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        out = MultiPoly(self.nvars, None, p)
        out.terms = terms
        return out

    def __neg__(self):
        out = MultiPoly(self.nvars, None, self.p)
        out.terms = {e: self.p - c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.nvars, other, self.p)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.p
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        if len(a.terms) >= 12 and len(b.terms) >= 40:
            return _dense_mul(a, b)
        terms = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = (terms.get(e, 0) + ca * cb) % p
                if v:
                    terms[e] = v
                else:
                    terms.pop(e, None)
        out = MultiPoly(self.nvars, None, p)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def scale(self, c):
        c %= self.p
        out = MultiPoly(self.nvars, None, self.p)
        if c:
            out.terms = {e: (c * v) % self.p for e, v in self.terms.items()}
        return out

    def __pow__(self, n):
        result = MultiPoly.constant(self.nvars, 1, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.p == other.p
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.p, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries ---------------------------------------------------------

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def evaluate(self, point):
        """Evaluate at a tuple of residues."""
        p = self.p
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = (v * pow(int(x), k, p)) % p
            total = (total + v) % p
        return total

    def substitute(self, images):
        """Substitute x_i -> images[i] (MultiPoly values, any nvars)."""
        if not self.terms:
            return MultiPoly.zero(images[0].nvars if images else self.nvars, self.p)
        nv = images[0].nvars
        out = MultiPoly.zero(nv, self.p)
        for e, c in self.terms.items():
            term = MultiPoly.constant(nv, c, self.p)
            for i, k in enumerate(e):
                if k:
                    term = term * (images[i] ** k)
            out = out + term
        return out

    def linear_change(self, matrix):
        """Apply x_i -> sum_j matrix[i][j] x_j (matrix over F_p)."""
        images = [
            MultiPoly.linear_form([matrix[i][j] for j in range(self.nvars)], self.p)
            for i in range(self.nvars)
        ]
        return self.substitute(images)

    def partial(self, i):
        """Formal partial derivative with respect to x_i."""
        out = MultiPoly.zero(self.nvars, self.p)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                v = (c * e[i]) % self.p
                if v:
                    e2 = list(e)
                    e2[i] -= 1
                    terms[tuple(e2)] = v
        out.terms = terms
        return out

    def dehomogenize(self, i):
        """Set x_i = 1 and drop that variable."""
        out = MultiPoly.zero(self.nvars - 1, self.p)
        terms = {}
        for e, c in self.terms.items():
            e2 = e[:i] + e[i + 1:]
            v = (terms.get(e2, 0) + c) % self.p
            if v:
                terms[e2] = v
            else:
                terms.pop(e2, None)
        out.terms = terms
        return out

    def homogenize(self, i, degree=None):
        """Insert a variable at slot i filling each term up to ``degree``."""
        d = degree if degree is not None else self.degree()
        terms = {}
        for e, c in self.terms.items():
            k = d - sum(e)
            if k < 0:
                raise ValueError("degree lower than a term's total degree")
            e2 = e[:i] + (k,) + e[i:]
            terms[e2] = c
        out = MultiPoly.zero(self.nvars + 1, self.p)
        out.terms = terms
        return out

    # -- presentation ------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending degree-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def text(self):
        """Serialize as ``c*x0^a0*x1^a1*...`` terms joined by ``+``."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [str(c)]
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{i}")
                elif k > 1:
                    factors.append(f"x{i}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, s, nvars, p=DEFAULT_PRIME):
        """Inverse of :meth:`text` (whitespace-tolerant)."""
        s = s.strip()
        if s == "0":
            return cls.zero(nvars, p)
        poly = cls.zero(nvars, p)
        for chunk in s.split("+"):
            factors = chunk.strip().split("*")
            c = int(factors[0])
            e = [0] * nvars
            for f in factors[1:]:
                f = f.strip()
                if "^" in f:
                    name, k = f.split("^")
                else:
                    name, k = f, 1
                e[int(name[1:])] += int(k)
            poly = poly + cls.monomial(e, c, p)
        return poly

    def __repr__(self):
        return f"MultiPoly({self.text()!r}, nvars={self.nvars}, p={self.p})"


def _dense_mul(a, b):
    """Shift-and-add product on dense numpy arrays; exact mod p.

    Walks the nonzero terms of the smaller operand, adding shifted
    copies of the larger one; reduction happens once at the end (sums
    stay far below 2^63 for word-sized moduli and these sizes).
    """
    p = a.p
    nv = a.nvars
    da = [0] * nv
    db = [0] * nv
    for e in a.terms:
        for i, x in enumerate(e):
            if x > da[i]:
                da[i] = x
    for e in b.terms:
        for i, x in enumerate(e):
            if x > db[i]:
                db[i] = x
    shape = tuple(da[i] + db[i] + 1 for i in range(nv))
    big = np.zeros(tuple(x + 1 for x in db), dtype=np.int64)
    for e, c in b.terms.items():
        big[e] = c
    out = np.zeros(shape, dtype=np.int64)
    for e, c in a.terms.items():
        slices = tuple(slice(e[i], e[i] + db[i] + 1) for i in range(nv))
        out[slices] += c * big
    out %= p
    result = MultiPoly.zero(nv, p)
    nz = np.nonzero(out)
    result.terms = {
        tuple(int(idx[k]) for idx in nz): int(out[tuple(idx[k] for idx in nz)])
        for k in range(len(nz[0]))
    }
    return result


# -- graded pieces ----------------------------------------------------------


@lru_cache(maxsize=None)
def graded_piece_basis(nvars, d):
    """All monomials of total degree d, descending degree-lexicographic.

    Returned as a tuple of exponent tuples; the count is C(nvars-1+d, d).
    """
    if nvars == 1:
        return ((d,),)
    out = []
    for k in range(d, -1, -1):
        for rest in graded_piece_basis(nvars - 1, d - k):
            out.append((k,) + rest)
    return tuple(out)


def coefficient_matrix(polys, d, nvars=None, p=None):
    """Rows of coefficients of homogeneous degree-d polynomials.

    Row i lists the coefficients of polys[i] against
    graded_piece_basis(nvars, d).  Zero polynomials give zero rows;
    anything non-homogeneous or of the wrong degree raises ValueError.
    """
    if not polys and (nvars is None or p is None):
        raise ValueError("need nvars and p for an empty list")
    nvars = nvars if nvars is not None else polys[0].nvars
    p = p if p is not None else polys[0].p
    basis = graded_piece_basis(nvars, d)
    index = {e: i for i, e in enumerate(basis)}
    a = np.zeros((len(polys), len(basis)), dtype=np.int64)
    for i, f in enumerate(polys):
        if not f.terms:
            continue
        if not f.is_homogeneous() or f.degree() != d:
            raise ValueError(f"polynomial {i} is not homogeneous of degree {d}")
        for e, c in f.terms.items():
            a[i, index[e]] = c
    return ScalarMatrix(a, p)


def poly_from_coefficients(row, d, nvars, p=DEFAULT_PRIME):
    """Rebuild a degree-d form from its coefficient row."""
    basis = graded_piece_basis(nvars, d)
    return MultiPoly(nvars, {e: int(c) for e, c in zip(basis, row)}, p)


# -- polynomial matrices -----------------------------------------------------


class PolyMatrix:
    """Rectangular matrix with MultiPoly entries."""

    __slots__ = ("rows", "cols", "entries", "nvars", "p")

    def __init__(self, entries, nvars=None, p=None):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
        first = self.entries[0][0] if self.rows and self.cols else None
        self.nvars = nvars if nvars is not None else first.nvars
        self.p = p if p is not None else first.p
        for row in self.entries:
            for f in row:
                if f.nvars != self.nvars or f.p != self.p:
                    raise ValueError("inconsistent entries")

    @classmethod
    def zeros(cls, rows, cols, nvars, p=DEFAULT_PRIME):
        z = MultiPoly.zero(nvars, p)
        return cls([[z for _ in range(cols)] for _ in range(rows)], nvars, p)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = PolyMatrix.zeros(self.rows, other.cols, self.nvars, self.p)
        for i in range(self.rows):
            for j in range(other.cols):
                acc = MultiPoly.zero(self.nvars, self.p)
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                out.entries[i][j] = acc
        return out

    def __add__(self, other):
        return PolyMatrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
            self.nvars,
            self.p,
        )

    def scale(self, c):
        return PolyMatrix(
            [[f.scale(c) for f in row] for row in self.entries], self.nvars, self.p
        )

    def transpose(self):
        return PolyMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.nvars,
            self.p,
        )

    def stack(self, other):
        """Vertical concatenation."""
        return PolyMatrix(self.entries + other.entries, self.nvars, self.p)

    def evaluate(self, point):
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for i in range(self.rows):
            for j in range(self.cols):
                a[i, j] = self.entries[i][j].evaluate(point)
        return ScalarMatrix(a, self.p)

    def is_zero(self):
        return all(not f for row in self.entries for f in row)

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        body = "; ".join(
            ", ".join(f.text() for f in row) for row in self.entries
        )
        return f"PolyMatrix[{self.rows}x{self.cols}]({body})"


MAX_DET_SIZE = 6


def det(M):
    """Exact determinant by cofactor expansion, memoized on column subsets.

    Sizes above 6x6 are rejected; the pipeline never needs them.
    """
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return MultiPoly.constant(M.nvars, 1, M.p)
    if n > MAX_DET_SIZE:
        raise ValueError(f"determinant size {n} exceeds supported {MAX_DET_SIZE}")
    cache = {}

    def minor(row, colmask):
        # determinant of rows row..n-1 against the columns set in colmask
        if colmask == 0:
            return MultiPoly.constant(M.nvars, 1, M.p)
        key = (row, colmask)
        hit = cache.get(key)
        if hit is not None:
            return hit
        acc = MultiPoly.zero(M.nvars, M.p)
        sign = 1
        rest = colmask
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            entry = M.entries[row][j]
            if entry.terms:
                sub = minor(row + 1, colmask & ~low)
                term = entry * sub
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
            rest &= rest - 1
        cache[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def adjugate3(M):
    """Classical adjugate of a 3x3 matrix: M @ adjugate3(M) = det(M) I."""
    if M.rows != 3 or M.cols != 3:
        raise ValueError("adjugate3 needs a 3x3 matrix")
    e = M.entries

    def cof(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        m = e[r[0]][c[0]] * e[r[1]][c[1]] - e[r[0]][c[1]] * e[r[1]][c[0]]
        return m if (i + j) % 2 == 0 else -m

    # adjugate = transpose of the cofactor matrix
    return PolyMatrix(
        [[cof(j, i) for j in range(3)] for i in range(3)], M.nvars, M.p
    )


# -- division and gcd ----------------------------------------------------------


def _deglex_key(e):
    return (sum(e), e)


def divide_exact(f, g):
    """Quotient f/g when g divides f exactly, else None."""
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f.terms:
        return MultiPoly.zero(f.nvars, f.p)
    p = f.p
    lg = max(g.terms, key=_deglex_key)
    cg_inv = inv_mod(g.terms[lg], p)
    rem = MultiPoly(f.nvars, dict(f.terms), p)
    quo = MultiPoly.zero(f.nvars, p)
    while rem.terms:
        lr = max(rem.terms, key=_deglex_key)
        diff = tuple(a - b for a, b in zip(lr, lg))
        if any(d < 0 for d in diff):
            return None
        c = (rem.terms[lr] * cg_inv) % p
        t = MultiPoly.monomial(diff, c, p)
        quo = quo + t
        rem = rem - t * g
    return quo


def _to_univar(f, v):
    """View f as univariate in x_v: dict degree -> MultiPoly in nvars-1 vars."""
    out = {}
    for e, c in f.terms.items():
        k = e[v]
        e2 = e[:v] + e[v + 1:]
        coeff = out.setdefault(k, {})
        coeff[e2] = c
    return {
        k: MultiPoly(f.nvars - 1, terms, f.p) for k, terms in out.items()
    }


def _from_univar(coeffs, v, nvars, p):
    terms = {}
    for k, poly in coeffs.items():
        for e, c in poly.terms.items():
            terms[e[:v] + (k,) + e[v:]] = c
    return MultiPoly(nvars, terms, p)


def _univar_gcd_1var(f, g):
    """Monic gcd of univariate polynomials (nvars == 1) over F_p."""
    p = f.p

    def norm(h):
        if not h.terms:
            return h
        lead = max(e[0] for e in h.terms)
        c = inv_mod(h.terms[(lead,)], p)
        return h.scale(c)

    a, b = f, g
    while b.terms:
        # long division in one variable
        a = a - _univar_quo(a, b) * b
        a, b = b, a
    return norm(a)


def _univar_quo(f, g):
    """Quotient of univariate division (nvars == 1)."""
    p = f.p
    quo = MultiPoly.zero(1, p)
    rem = MultiPoly(1, dict(f.terms), p)
    dg = max(e[0] for e in g.terms)
    cg = inv_mod(g.terms[(dg,)], p)
    while rem.terms:
        dr = max(e[0] for e in rem.terms)
        if dr < dg:
            break
        c = (rem.terms[(dr,)] * cg) % p
        t = MultiPoly.monomial((dr - dg,), c, p)
        quo = quo + t
        rem = rem - t * g
    return quo


def content_and_primitive(f, v):
    """Content (gcd of x_v-coefficients) and primitive part of f along x_v."""
    coeffs = _to_univar(f, v)
    # any constant coefficient forces content 1
    if any(q.degree() == 0 for q in coeffs.values()):
        one = MultiPoly.constant(f.nvars - 1, 1, f.p)
        return one, MultiPoly(f.nvars, dict(f.terms), f.p)
    polys = sorted(coeffs.values(), key=lambda q: (q.degree(), len(q.terms)))
    cont = polys[0]
    for q in polys[1:]:
        cont = gcd_multivar(cont, q)
        if cont.degree() == 0:
            break
    cont = _normalize(cont)
    if cont.degree() == 0:
        return cont, MultiPoly(f.nvars, dict(f.terms), f.p)
    prim_coeffs = {}
    for k, q in coeffs.items():
        quo = divide_exact(q, cont)
        if quo is None:
            raise ArithmeticError("content failed to divide a coefficient")
        prim_coeffs[k] = quo
    return cont, _from_univar(prim_coeffs, v, f.nvars, f.p)


def _normalize(f):
    """Scale so the deglex-leading coefficient is 1."""
    if not f.terms:
        return f
    lead = max(f.terms, key=_deglex_key)
    return f.scale(inv_mod(f.terms[lead], f.p))


def _pseudo_rem(f, g, v):
    """Pseudo-remainder of f by g along x_v: lc(g)^(df-dg+1) f mod g."""
    p = f.p
    fc = _to_univar(f, v)
    gc = _to_univar(g, v)
    dg = max(gc)
    lg = gc[dg]
    lg_const = lg.degree() == 0
    lg_val = lg.terms.get((0,) * lg.nvars, 0) if lg_const else None
    rem = fc
    while rem and max(rem) >= dg:
        dr = max(rem)
        lr = rem[dr]
        # rem := lg * rem - lr * x^(dr-dg) * g
        new = {}
        if lg_const:
            for k, q in rem.items():
                new[k] = q.scale(lg_val)
        else:
            for k, q in rem.items():
                new[k] = lg * q
        lr_const = lr.degree() == 0
        lr_val = lr.terms.get((0,) * lr.nvars, 0) if lr_const else None
        for k, q in gc.items():
            kk = k + dr - dg
            t = q.scale(lr_val) if lr_const else lr * q
            if kk in new:
                new[kk] = new[kk] - t
            else:
                new[kk] = -t
        rem = {k: q for k, q in new.items() if q.terms}
        del new
    return _from_univar(rem, v, f.nvars, f.p) if rem else MultiPoly.zero(f.nvars, f.p)


def _monomial_content(f):
    """Per-variable minimum exponents across the terms of f."""
    mins = None
    for e in f.terms:
        if mins is None:
            mins = list(e)
        else:
            mins = [min(a, b) for a, b in zip(mins, e)]
    return tuple(mins)


def _strip_monomial(f):
    m = _monomial_content(f)
    if not any(m):
        return m, f
    out = MultiPoly.zero(f.nvars, f.p)
    out.terms = {tuple(a - b for a, b in zip(e, m)): c for e, c in f.terms.items()}
    return m, out


def gcd_multivar(f, g):
    """A gcd of f and g, primitive and monic in the elimination variable.

    Primitive-part subresultant remainder sequence with respect to the
    last variable, recursing on contents.  Monomial factors are split
    off first, and a homogeneous pair is dehomogenized before the
    remainder sequence runs (exact for forms with no monomial factor,
    and much smaller).  Deterministic and exact throughout.
    """
    if f.nvars != g.nvars or f.p != g.p:
        raise ValueError("gcd of incompatible polynomials")
    if not f.terms:
        return _normalize(g)
    if not g.terms:
        return _normalize(f)
    if f.nvars == 1:
        return _univar_gcd_1var(f, g)
    mf, fs = _strip_monomial(f)
    mg, gs = _strip_monomial(g)
    shared = tuple(min(a, b) for a, b in zip(mf, mg))
    if any(mf) or any(mg):
        core = gcd_multivar(fs, gs)
        return _normalize(core * MultiPoly.monomial(shared, 1, f.p))
    if f.is_homogeneous() and g.is_homogeneous() and (f.degree() or g.degree()):
        # no variable divides either form, so degree survives x_0 := 1
        fd = f.dehomogenize(0)
        gd = g.dehomogenize(0)
        core = gcd_multivar(fd, gd)
        return _normalize(core.homogenize(0, core.degree()))
    v = f.nvars - 1
    if f.degree_in(v) == 0 and g.degree_in(v) == 0:
        # both free of x_v: recurse in one variable fewer
        ff = _to_univar(f, v)[0]
        gg = _to_univar(g, v)[0]
        h = gcd_multivar(ff, gg)
        return _from_univar({0: h}, v, f.nvars, f.p)
    cf, pf = content_and_primitive(f, v)
    cg, pg = content_and_primitive(g, v)
    cont = gcd_multivar(cf, cg)
    cont_lifted = _from_univar({0: cont}, v, f.nvars, f.p)
    a, b = pf, pg
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    if b.degree_in(v) == 0:
        # one primitive part is free of x_v: only the contents survive
        return _normalize(cont_lifted)
    last = _subresultant_prs(a, b, v)
    if last.degree_in(v) == 0:
        return _normalize(cont_lifted)
    _, prim = content_and_primitive(last, v)
    return _normalize(cont_lifted * prim)


def _lc_along(f, v):
    """Leading x_v-coefficient of f, lifted back to the full ring."""
    coeffs = _to_univar(f, v)
    d = max(coeffs)
    return _from_univar({0: coeffs[d]}, v, f.nvars, f.p)


def _subresultant_prs(a, b, v):
    """Last nonzero element of the subresultant remainder sequence.

    Collins' divisor bookkeeping keeps intermediate coefficient growth
    polynomial; every interior division is exact by theory, and a
    failure would indicate a logic error, not bad input.
    """
    p = a.p
    one = MultiPoly.constant(a.nvars, 1, p)
    g = one
    h = one
    while True:
        delta = a.degree_in(v) - b.degree_in(v)
        r = _pseudo_rem(a, b, v)
        if not r.terms:
            return b
        divisor = g * (h ** delta)
        if divisor.degree() > 0 or divisor.terms != one.terms:
            rr = divide_exact(r, divisor)
            if rr is None:
                raise ArithmeticError("subresultant division was not exact")
            r = rr
        a, b = b, r
        g = _lc_along(a, v)
        if delta > 0:
            if delta == 1:
                h = g
            else:
                hh = divide_exact(g ** delta, h ** (delta - 1))
                if hh is None:
                    raise ArithmeticError("subresultant h-update was not exact")
                h = hh
        if b.degree_in(v) == 0:
            return b
