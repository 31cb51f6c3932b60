"""Binary linear codes and congruence sieves for even node sets.

Codewords are bitmasks in Python ints (length <= 64), weights by
popcount.  The distinguished 9-dimensional code of length 56 with
weights {24, 32, 56} is built from a degree-8 idempotent factor of
x^51 - 1 over GF(2), zero-padded to length 56 and extended by the
all-ones vector.
"""

from __future__ import annotations


class EnumerationTooLarge(Exception):
    """Full codeword enumeration is capped at dimension 24."""


class BinaryCode:
    """Subspace of GF(2)^n spanned by independent generator rows."""

    def __init__(self, length, rows=()):
        if length > 64:
            raise ValueError("codeword length capped at 64 bits")
        self.length = length
        self.rows = []
        for r in rows:
            self.add_row(r)

    @property
    def dimension(self):
        return len(self.rows)

    def add_row(self, word):
        """Insert a word, keeping the stored rows independent (row echelon)."""
        word &= (1 << self.length) - 1
        for r in self.rows:
            word = min(word, word ^ r)
        if word:
            self.rows.append(word)
            self.rows.sort(reverse=True)

    def contains(self, word):
        for r in self.rows:
            word = min(word, word ^ r)
        return word == 0

    def codewords(self):
        if self.dimension > 24:
            raise EnumerationTooLarge(f"dimension {self.dimension} > 24")
        # Gray-code walk: flip one generator per step
        word = 0
        yield 0
        for i in range(1, 1 << self.dimension):
            word ^= self.rows[(i & -i).bit_length() - 1]
            yield word


def weight_distribution(code):
    """Exact map weight -> count over all codewords."""
    dist = {}
    for w in code.codewords():
        k = w.bit_count()
        dist[k] = dist.get(k, 0) + 1
    return dist


# ---------------------------------------------------------------------------
# GF(2)[x] arithmetic on int-encoded polynomials (bit i = coefficient of x^i)


def _deg(a):
    return a.bit_length() - 1


def _mul2(a, b):
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _divmod2(a, b):
    q = 0
    db = _deg(b)
    while _deg(a) >= db and a:
        shift = _deg(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _gcd2(a, b):
    while b:
        a, b = b, _divmod2(a, b)[1]
    return a

def _egcd2(a, b):
    """(g, s, t) with s*a + t*b = g over GF(2)[x]."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = _divmod2(a, b)
        a, b = b, r
        s0, s1 = s1, s0 ^ _mul2(q, s1)
        t0, t1 = t1, t0 ^ _mul2(q, t1)
    return a, s0, t0


def _is_irreducible2(f):
    d = _deg(f)
    if d <= 0:
        return False
    # x^(2^k) mod f computations via repeated squaring of x
    x = 0b10
    t = x
    for _ in range(d):
        t = _divmod2(_mul2(t, t), f)[1]
    if t != x:
        return False
    # no factor of degree dividing d properly
    for e in _prime_divisors(d):
        t = x
        for _ in range(d // e):
            t = _divmod2(_mul2(t, t), f)[1]
        if _gcd2(f, t ^ x) != 1:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


X51_MINUS_1 = (1 << 51) | 1  # x^51 + 1 over GF(2)


def degree8_divisors():
    """All irreducible degree-8 divisors of x^51 - 1, by brute trial."""
    out = []
    for tail in range(1 << 8):
        f = (1 << 8) | tail
        if _divmod2(X51_MINUS_1, f)[1] == 0 and _is_irreducible2(f):
            out.append(f)
    return out


def build_U51(factor=None):
    """The cyclic code of length 51 carried by a degree-8 idempotent.

    Forms the idempotent e with e = 1 mod P and e = 0 mod (x^51 - 1)/P
    for an irreducible degree-8 divisor P of x^51 - 1, and spans its
    cyclic shifts: an ideal of dimension 8.  The six divisors split into
    two classes by weight distribution; the default is the smallest one
    whose nonzero weights are exactly {24, 32} (four of the six qualify,
    the other two give weights {18, 24, 30, 36}).
    """
    if factor is None:
        for f in sorted(degree8_divisors()):
            candidate = build_U51(f)
            if set(weight_distribution(candidate)) - {0} == {24, 32}:
                return candidate
        raise RuntimeError("no degree-8 factor yields weights {24, 32}")
    q, r = _divmod2(X51_MINUS_1, factor)
    if r != 0:
        raise ValueError("supplied factor does not divide x^51 - 1")
    # e = q * (q^{-1} mod factor): 1 mod factor, 0 mod q
    g, s, _ = _egcd2(q, factor)
    if g != 1:
        raise ValueError("factor is not coprime to its cofactor")
    e = _mul2(q, s)
    e = _divmod2(e, X51_MINUS_1)[1]
    code = BinaryCode(51)
    word = e
    for _ in range(51):
        code.add_row(word)
        word = _divmod2(word << 1, X51_MINUS_1)[1]
    return code


def build_K56():
    """Length-56 code of dimension 9 with weight support {0, 24, 32, 56}.

    Zero-pads the length-51 idempotent code by five coordinates and
    adjoins the all-ones vector.
    """
    u = build_U51()
    code = BinaryCode(56, u.rows)
    code.add_row((1 << 56) - 1)
    return code


# ---------------------------------------------------------------------------
# congruence sieves


def admissible_even_weights(d, half_even=False):
    """Congruence predicate for the cardinality t of an even node set.

    Even sets: t = 0 mod 4, sharpened to t = 0 mod 8 when the surface
    degree d is even.  Half-even sets (d even only): t = d(2d-7)/2 mod 4.
    """
    if d < 3:
        raise ValueError("surface degree must be at least 3")
    if half_even:
        if d % 2:
            raise ValueError("half-even sets require even degree")
        residue = (d * (2 * d - 7) // 2) % 4

        def predicate(t):
            return t % 4 == residue

        return predicate
    modulus = 8 if d % 2 == 0 else 4

    def predicate(t):
        return t % modulus == 0

    return predicate
