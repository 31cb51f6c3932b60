"""Groebner bases over F_p for the homogeneous ideals of this toolkit.

Buchberger with normal-pair selection, the Gebauer-Moeller criteria and
the sugar strategy.  Saturation by the irrelevant ideal goes through the
extended-ring colon trick; codimension and degree are read off the
Hilbert series of the initial ideal; the radical test for
zero-dimensional schemes is the shape-lemma route (generic coordinates,
dehomogenize, squarefree eliminant).

Polynomials enter and leave as :class:`~nodalforge.polyring.MultiPoly`;
internally everything is plain dicts ``{exponent tuple: residue}`` for
speed.
"""

from __future__ import annotations

import heapq

import numpy as np

from .field_linalg import ScalarMatrix, inv_mod, kernel_basis as _kernel_basis, rank
from .polyring import MultiPoly

# ---------------------------------------------------------------------------
# monomial orders


class GrevLex:
    """Graded reverse lexicographic order, x0 > x1 > ... > x_{n-1}."""

    name = "grevlex"

    @staticmethod
    def key(e):
        return (sum(e), tuple(-x for x in reversed(e)))


class Lex:
    """Lexicographic order, x0 > x1 > ... > x_{n-1}."""

    name = "lex"

    @staticmethod
    def key(e):
        return e


class ElimBlock:
    """Block order eliminating the first ``nelim`` variables.

    Compares grevlex on the leading block first, then grevlex on the
    remaining variables, so an element whose leading monomial is free of
    the block is entirely free of it.
    """

    def __init__(self, nelim):
        self.nelim = nelim
        self.name = f"elim{nelim}"

    def key(self, e):
        b = self.nelim
        head, tail = e[:b], e[b:]
        return (
            sum(head),
            tuple(-x for x in reversed(head)),
            sum(tail),
            tuple(-x for x in reversed(tail)),
        )


GREVLEX = GrevLex()
LEX = Lex()


def get_order(order):
    if isinstance(order, str):
        if order == "grevlex":
            return GREVLEX
        if order == "lex":
            return LEX
        raise ValueError(f"unknown order {order!r}")
    return order


# ---------------------------------------------------------------------------
# raw-dict polynomial helpers


class _Rev:
    """Wrapper reversing comparisons so heapq acts as a max-heap."""

    __slots__ = ("k", "e")

    def __init__(self, k, e):
        self.k = k
        self.e = e

    def __lt__(self, other):
        return self.k > other.k


class _GBElem:
    __slots__ = ("lm", "lc_inv", "tail", "sugar", "lm_deg")

    def __init__(self, terms, p, key, sugar=None):
        lm = max(terms, key=key)
        lc = terms[lm]
        inv = inv_mod(lc, p)
        self.lm = lm
        self.lm_deg = sum(lm)
        # store monic: scale everything by lc^-1
        self.lc_inv = 1
        self.tail = [(e, (c * inv) % p) for e, c in terms.items() if e != lm]
        self.sugar = sugar if sugar is not None else max(sum(e) for e in terms)

    def terms_dict(self, p):
        d = dict(self.tail)
        d[self.lm] = 1
        return d


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _normal_form_dict(terms, G, p, key, tail_of=None):
    """Full normal form of a term dict against a list of _GBElem."""
    if not terms:
        return {}
    work = dict(terms)
    heap = [_Rev(key(e), e) for e in work]
    heapq.heapify(heap)
    remainder = {}
    nG = len(G)
    while heap:
        e = heapq.heappop(heap).e
        c = work.get(e)
        if not c:
            continue
        deg_e = sum(e)
        reducer = None
        for g in G:
            if g is tail_of:
                continue
            if g.lm_deg <= deg_e and _divides(g.lm, e):
                reducer = g
                break
        if reducer is None:
            remainder[e] = c
            del work[e]
            continue
        shift = _sub_exp(e, reducer.lm)
        del work[e]
        for eg, cg in reducer.tail:
            ee = _add_exp(eg, shift)
            v = (work.get(ee, 0) - c * cg) % p
            if v:
                if ee not in work:
                    heapq.heappush(heap, _Rev(key(ee), ee))
                work[ee] = v
            else:
                work.pop(ee, None)
    return remainder


def _spoly_dict(f, g, p):
    """S-polynomial of two monic _GBElem, as a term dict."""
    lcm = _lcm(f.lm, g.lm)
    sf = _sub_exp(lcm, f.lm)
    sg = _sub_exp(lcm, g.lm)
    terms = {}
    for e, c in f.tail:
        terms[_add_exp(e, sf)] = c
    for e, c in g.tail:
        ee = _add_exp(e, sg)
        v = (terms.get(ee, 0) - c) % p
        if v:
            terms[ee] = v
        else:
            terms.pop(ee, None)
    return terms


def _update_pairs(G, pairs, h, hidx):
    """Gebauer-Moeller pair update for a new basis element h = G[hidx]."""
    new_pairs = []
    hlm = h.lm
    for i, g in enumerate(G[:hidx]):
        lcm = _lcm(g.lm, hlm)
        new_pairs.append([lcm, i, hidx])
    # criterion M: drop (i,h) whose lcm is a proper multiple of another lcm(j,h)
    keep = []
    for pr in new_pairs:
        lcm = pr[0]
        redundant = False
        for qr in new_pairs:
            if qr is pr:
                continue
            if qr[0] != lcm and _divides(qr[0], lcm):
                redundant = True
                break
        if not redundant:
            keep.append(pr)
    # criterion F: among equal lcms keep a single representative,
    # preferring one with coprime leading terms (then dropped below)
    by_lcm = {}
    for pr in keep:
        by_lcm.setdefault(pr[0], []).append(pr)
    kept = []
    for lcm, group in sorted(by_lcm.items()):
        chosen = group[0]
        for pr in group:
            i = pr[1]
            if _add_exp(G[i].lm, hlm) == lcm:  # coprime leads
                chosen = pr
                break
        kept.append(chosen)
    # Buchberger's coprimality criterion
    kept = [pr for pr in kept if _add_exp(G[pr[1]].lm, hlm) != pr[0]]
    # criterion B: prune old pairs strictly refined by h
    pruned = []
    for pr in pairs:
        lcm, i, j = pr
        if (
            _divides(hlm, lcm)
            and _lcm(G[i].lm, hlm) != lcm
            and _lcm(G[j].lm, hlm) != lcm
        ):
            continue
        pruned.append(pr)
    pruned.extend(kept)
    return pruned


def _buchberger_dicts(gen_dicts, p, order):
    """Reduced Groebner basis of term dicts; returns a list of _GBElem."""
    key = order.key
    G = []
    # seed with interreduced nonzero generators
    seeds = [d for d in gen_dicts if d]
    seeds.sort(key=lambda d: key(max(d, key=key)))
    pairs = []
    for d in seeds:
        nf = _normal_form_dict(d, G, p, key)
        if not nf:
            continue
        h = _GBElem(nf, p, key)
        G.append(h)
        pairs = _update_pairs(G, pairs, h, len(G) - 1)
    while pairs:
        # normal selection refined by sugar
        best = min(
            range(len(pairs)),
            key=lambda t: (
                max(
                    G[pairs[t][1]].sugar + sum(_sub_exp(pairs[t][0], G[pairs[t][1]].lm)),
                    G[pairs[t][2]].sugar + sum(_sub_exp(pairs[t][0], G[pairs[t][2]].lm)),
                ),
                key(pairs[t][0]),
            ),
        )
        lcm, i, j = pairs.pop(best)
        fi, fj = G[i], G[j]
        sugar = max(
            fi.sugar + sum(_sub_exp(lcm, fi.lm)),
            fj.sugar + sum(_sub_exp(lcm, fj.lm)),
        )
        s = _spoly_dict(fi, fj, p)
        nf = _normal_form_dict(s, G, p, key)
        if not nf:
            continue
        h = _GBElem(nf, p, key, sugar=sugar)
        G.append(h)
        pairs = _update_pairs(G, pairs, h, len(G) - 1)
    return _interreduce(G, p, key)


def _interreduce(G, p, key):
    """Turn a Groebner basis into the reduced one."""
    # drop elements whose lead is divisible by another lead
    G = sorted(G, key=lambda g: key(g.lm))
    minimal = []
    for g in G:
        if not any(_divides(m.lm, g.lm) for m in minimal):
            minimal = [m for m in minimal if not _divides(g.lm, m.lm)]
            minimal.append(g)
    reduced = []
    for g in minimal:
        others = [m for m in minimal if m is not g]
        d = g.terms_dict(p)
        nf = _normal_form_dict(d, others, p, key)
        if nf:
            reduced.append(_GBElem(nf, p, key, sugar=g.sugar))
    reduced.sort(key=lambda g: key(g.lm))
    return reduced


# ---------------------------------------------------------------------------
# public interface on MultiPoly


def buchberger(polys, order="grevlex"):
    """Reduced Groebner basis of a list of MultiPoly, monic, sorted by lead."""
    polys = [f for f in polys if f.terms]
    if not polys:
        return []
    nvars, p = polys[0].nvars, polys[0].p
    order = get_order(order)
    G = _buchberger_dicts([dict(f.terms) for f in polys], p, order)
    return [MultiPoly(nvars, g.terms_dict(p), p) for g in G]


def normal_form(f, gb, order="grevlex"):
    """Full normal form of f against a Groebner basis."""
    order = get_order(order)
    key = order.key
    if not gb:
        return f
    p = f.p
    G = [_GBElem(dict(g.terms), p, key) for g in gb]
    nf = _normal_form_dict(dict(f.terms), G, p, key)
    return MultiPoly(f.nvars, nf, p)


class GradedIdeal:
    """Homogeneous ideal with cached reduced Groebner bases per order."""

    def __init__(self, generators, nvars=None, p=None):
        gens = [g for g in generators if g.terms]
        if not gens and (nvars is None or p is None):
            raise ValueError("empty generating set needs nvars and p")
        self.nvars = nvars if nvars is not None else gens[0].nvars
        self.p = p if p is not None else gens[0].p
        for g in gens:
            if g.nvars != self.nvars or g.p != self.p:
                raise ValueError("inconsistent generators")
            if not g.is_homogeneous():
                raise ValueError("GradedIdeal needs homogeneous generators")
        self.generators = gens
        self._gb = {}

    def groebner(self, order="grevlex"):
        order = get_order(order)
        gb = self._gb.get(order.name)
        if gb is None:
            gb = buchberger(self.generators, order)
            self._gb[order.name] = gb
        return gb

    def contains(self, f, order="grevlex"):
        return not normal_form(f, self.groebner(order), order).terms

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].degree() == 0

    def __repr__(self):
        return f"GradedIdeal({len(self.generators)} gens, nvars={self.nvars}, p={self.p})"


def ideal_equals(I, J):
    """Mutual reduction to zero against each other's Groebner bases."""
    gbI = I.groebner()
    gbJ = J.groebner()
    return all(not normal_form(g, gbJ).terms for g in I.generators) and all(
        not normal_form(g, gbI).terms for g in J.generators
    )


# ---------------------------------------------------------------------------
# elimination, colon, saturation


def _shift_right(f, k):
    """Insert k new variables in front: F[x] -> F[t_0..t_{k-1}, x]."""
    out = MultiPoly.zero(f.nvars + k, f.p)
    out.terms = {(0,) * k + e: c for e, c in f.terms.items()}
    return out


def _drop_left(f, k):
    out = MultiPoly.zero(f.nvars - k, f.p)
    out.terms = {e[k:]: c for e, c in f.terms.items()}
    return out


def eliminate_first(gens, k, nvars, p):
    """Generators of the elimination ideal killing the first k variables."""
    order = ElimBlock(k)
    G = buchberger(gens, order)
    kept = []
    for g in G:
        if all(all(x == 0 for x in e[:k]) for e in g.terms):
            kept.append(_drop_left(g, k))
    return kept


def colon_infinity(I, f):
    """The saturation I : f^infinity via the extended-ring trick.

    Adjoins t, adds t*f - 1 and eliminates t with a block order.
    """
    p, n = I.p, I.nvars
    ext = [_shift_right(g, 1) for g in I.generators]
    tf = _shift_right(f, 1)
    t = MultiPoly.variable(0, n + 1, p)
    ext.append(t * tf - MultiPoly.constant(n + 1, 1, p))
    kept = eliminate_first(ext, 1, n + 1, p)
    return GradedIdeal(kept, n, p)


def intersect(I, J):
    """Ideal intersection via t*I + (1-t)*J and elimination of t."""
    p, n = I.p, I.nvars
    t = MultiPoly.variable(0, n + 1, p)
    one = MultiPoly.constant(n + 1, 1, p)
    ext = [t * _shift_right(g, 1) for g in I.generators]
    ext += [(one - t) * _shift_right(g, 1) for g in J.generators]
    kept = eliminate_first(ext, 1, n + 1, p)
    return GradedIdeal(kept, n, p)


def saturate_irrelevant(I):
    """I : (x_0,...,x_{n-1})^infinity as the intersection of the x_i-colons."""
    parts = [colon_infinity(I, MultiPoly.variable(i, I.nvars, I.p)) for i in range(I.nvars)]
    out = parts[0]
    for part in parts[1:]:
        out = intersect(out, part)
    return out


# ---------------------------------------------------------------------------
# Hilbert series, codimension, degree


def _minimalize(ms):
    ms = sorted(set(ms), key=lambda e: (sum(e), e))
    out = []
    for m in ms:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul_t(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_add_t(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(lms, nvars):
    """Numerator N(t) with HS(R/I) = N(t)/(1-t)^nvars, I = monomial ideal."""
    gens = _minimalize([tuple(m) for m in lms])
    if any(sum(m) == 0 for m in gens):
        return [0]

    def rec(gens):
        if not gens:
            return [1]
        if len(gens) == 1:
            d = sum(gens[0])
            out = [0] * (d + 1)
            out[0] = 1
            out[d] = -1
            return out
        # coprime splitting: if the supports are pairwise disjoint the
        # numerator is a product of the single-generator numerators
        support_sets = [frozenset(i for i, x in enumerate(m) if x) for m in gens]
        disjoint = True
        seen = set()
        for s in support_sets:
            if s & seen:
                disjoint = False
                break
            seen |= s
        if disjoint:
            out = [1]
            for m in gens:
                d = sum(m)
                f = [0] * (d + 1)
                f[0] = 1
                f[d] = -1
                out = _poly_mul_t(out, f)
            return out
        # pivot on the most frequent variable
        counts = [0] * nvars
        for m in gens:
            for i, x in enumerate(m):
                if x:
                    counts[i] += 1
        v = counts.index(max(counts))
        pivot = tuple(1 if i == v else 0 for i in range(nvars))
        # I + <x_v>
        plus = _minimalize([pivot] + [m for m in gens if m[v] == 0])
        # I : x_v
        colon = _minimalize(
            [tuple(x - 1 if i == v and x else x for i, x in enumerate(m)) for m in gens]
        )
        n_plus = rec(plus)
        n_colon = rec(colon)
        return _poly_add_t(n_plus, [0] + n_colon)

    return rec(gens)


def codim_degree(I):
    """(codimension, degree) of a homogeneous ideal from its Hilbert series.

    codim = multiplicity of the root t = 1 in the numerator; degree is
    the value of the cofactor at t = 1.  For a zero-dimensional
    subscheme of P^3 this is the pair (3, length); the unit ideal
    reports (nvars, 0).
    """
    gb = I.groebner()
    if not gb or (len(gb) == 1 and gb[0].degree() == 0):
        return (I.nvars, 0)
    key = GREVLEX.key
    lms = [max(g.terms, key=key) for g in gb]
    num = hilbert_numerator(lms, I.nvars)
    codim = 0
    cur = list(num)
    while codim <= I.nvars:
        if sum(cur) != 0:
            break
        # divide by (1 - t): synthetic division
        out = []
        acc = 0
        for c in cur[:-1]:
            acc += c
            out.append(acc)
        cur = out if out else [0]
        codim += 1
    degree = sum(cur)
    return (codim, degree)


# ---------------------------------------------------------------------------
# shape-lemma radical test


class RadicalTestInconclusive(Exception):
    """Shape position failed for every retry: non-generic randomness or a
    genuinely degenerate scheme.  Reported, never guessed."""


def _random_invertible(n, p, rng):
    while True:
        a = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64)
        if rank(ScalarMatrix(a, p)) == n:
            return a.tolist()


def _standard_monomials(gb_lms, nvars, cap=None):
    """All monomials outside the monomial ideal; None if infinite."""
    # finiteness: every variable needs a pure-power leading monomial
    for i in range(nvars):
        if not any(all(x == 0 for j, x in enumerate(m) if j != i) and m[i] > 0 for m in gb_lms):
            return None
    out = []
    stack = [(0,) * nvars]
    seen = {(0,) * nvars}
    while stack:
        m = stack.pop()
        if any(_divides(g, m) for g in gb_lms):
            continue
        out.append(m)
        if cap is not None and len(out) > cap:
            return out
        for i in range(nvars):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1:]
            if m2 not in seen:
                seen.add(m2)
                stack.append(m2)
    return sorted(out, key=lambda e: (sum(e), e))


def _univar_gcd_coeffs(a, b, p):
    """gcd of two coefficient lists (index = degree) over F_p, monic."""

    def deg(u):
        d = len(u) - 1
        while d >= 0 and u[d] == 0:
            d -= 1
        return d

    da, db = deg(a), deg(b)
    if da < db:
        a, b, da, db = b, a, db, da
    a = a[: da + 1] if da >= 0 else []
    b = b[: db + 1] if db >= 0 else []
    while b:
        da, db = len(a) - 1, len(b) - 1
        inv = inv_mod(b[db], p)
        r = list(a)
        for k in range(da, db - 1, -1):
            c = (r[k] * inv) % p
            if c:
                for i in range(db + 1):
                    r[k - db + i] = (r[k - db + i] - c * b[i]) % p
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r
    if not a:
        return []
    inv = inv_mod(a[-1], p)
    return [(c * inv) % p for c in a]


def is_radical_zero_dim(I, rng, retries=8):
    """Radical test for a zero-dimensional projective scheme in P^3.

    Random coordinate change, dehomogenization on a hyperplane missing
    all points, eliminant of the smallest affine variable in shape
    position, squarefree test gcd(h, h') = 1.  Retries with fresh
    randomness when shape position fails.
    """
    codim, N = codim_degree(I)
    if codim != I.nvars - 1:
        raise ValueError(f"not a zero-dimensional projective scheme: codim {codim}")
    p, n = I.p, I.nvars
    for _ in range(retries):
        A = _random_invertible(n, p, rng)
        moved = [g.linear_change(A) for g in I.generators]
        affine = [g.dehomogenize(0) for g in moved]
        gb = buchberger(affine, GREVLEX)
        if not gb:
            continue
        if len(gb) == 1 and gb[0].degree() == 0:
            continue  # hyperplane swallowed everything
        key = GREVLEX.key
        lms = [max(g.terms, key=key) for g in gb]
        std = _standard_monomials(lms, n - 1, cap=N + 1)
        if std is None or len(std) != N:
            continue  # the hyperplane hit a point (or dimension glitch)
        # multiplication by the last affine variable, Krylov eliminant
        index = {m: i for i, m in enumerate(std)}
        key = GREVLEX.key
        Gelems = [_GBElem(dict(g.terms), p, key) for g in gb]
        last = n - 2
        vecs = []
        cur = {(0,) * (n - 1): 1}
        shift_last = tuple(0 if i != last else 1 for i in range(n - 1))
        h = None
        for _step in range(N + 1):
            v = np.zeros(N, dtype=np.int64)
            for e, c in cur.items():
                v[index[e]] = c
            vecs.append(v)
            ker = _kernel_basis(ScalarMatrix(np.stack(vecs, axis=1), p))
            if ker:
                h = [int(c) for c in ker[0]]
                break
            shifted = {_add_exp(e, shift_last): c for e, c in cur.items()}
            cur = _normal_form_dict(shifted, Gelems, p, key)
        if h is None or (len(h) - 1) != N:
            continue  # eliminant degree below N: not in shape position
        dh = [(k * c) % p for k, c in enumerate(h)][1:]
        g = _univar_gcd_coeffs(h, dh, p)
        return len(g) == 1
    raise RadicalTestInconclusive(
        f"no shape position after {retries} coordinate changes (degree {N})"
    )
