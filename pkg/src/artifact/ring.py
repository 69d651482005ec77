"""Exact arithmetic in the real cyclotomic ring Z[2cos(pi/L)].

All frieze entries and matching weights of Type Lambda_{p_1,...,p_s} live in
the ring generated by the numbers lambda_p = 2cos(pi/p).  For a declared set
of subgon sizes we work in the single field Q(mu) with mu = 2cos(pi/L) and
L = lcm of the sizes; every lambda_p is an integer polynomial in mu, so one
reduction rule serves all mixed products.

Elements are stored as integer coefficient vectors in the power basis
1, mu, ..., mu^(d-1), reduced modulo the minimal polynomial of mu.  Equality
is coefficient equality, zero is the all-zero vector, and the sign of a
nonzero element is decided by evaluating the coefficients on a certified
rational interval enclosure of mu, bisecting until zero is excluded.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def _poly_mul(a, b):
    """Product of two integer coefficient lists (ascending degree)."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_exact(num, den):
    """Divide integer polynomials, requiring an exact division.

    Used for the recursive cyclotomic-polynomial computation where the
    quotient is known to have integer coefficients.
    """
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dden)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dden]
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // lead
        quot[k] = q
        if q:
            for j, dj in enumerate(den):
                num[k + j] -= q * dj
    if any(num):
        raise ArithmeticError("non-exact polynomial division (remainder)")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients of the n-th cyclotomic polynomial, ascending degree."""
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic_poly(d)))
    return tuple(_poly_divmod_exact(num, den))


def _totient(n):
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def _minpoly_from_cyclotomic(L):
    """Minimal polynomial Psi of 2cos(pi/L), via Phi_2L(z) = z^d Psi(z + 1/z).

    Phi_2L is palindromic of degree 2d, so z^(-d) Phi_2L(z) is a symmetric
    Laurent polynomial and can be rewritten in powers of y = z + 1/z by
    peeling off the top coefficient repeatedly.
    """
    phi = list(cyclotomic_poly(2 * L))
    deg = len(phi) - 1
    if deg % 2 != 0:
        raise ArithmeticError("cyclotomic polynomial of odd degree")
    d = deg // 2
    # balanced coefficients b[k] for z^k, k = -d..d, stored at index k + d
    bal = phi[:]  # same list read with offset d
    # (z + 1/z)^k in balanced form, computed incrementally
    psi = [0] * (d + 1)
    for k in range(d, -1, -1):
        c = bal[k + d]
        psi[k] = c
        if c:
            # subtract c * (z + 1/z)^k
            for t in range(0, k + 1):
                bal[(k - 2 * t) + d] -= c * math.comb(k, t)
    if any(bal):
        raise ArithmeticError("palindromic substitution failed")
    return psi


class RingContext:
    """The ring Z[mu], mu = 2cos(pi/L), for a fixed set of subgon sizes.

    Attributes
    ----------
    levels : frozenset of int
        The declared subgon sizes (each >= 3).
    L : int
        lcm of the levels.
    degree : int
        Degree of the minimal polynomial of mu; equals phi(2L)/2.
    minpoly : tuple of int
        Monic minimal polynomial of mu, ascending coefficients.
    lambda_table : dict
        p -> RingElem representing lambda_p = 2cos(pi/p).

    Contexts are immutable after creation; elements of different contexts
    never mix (no implicit coercion).
    """

    def __init__(self, levels):
        levels = frozenset(int(p) for p in levels)
        if not levels:
            raise ValueError("levels must be nonempty")
        if any(p < 3 for p in levels):
            raise ValueError("every level must be >= 3")
        self.levels = levels
        L = 1
        for p in levels:
            L = L * p // math.gcd(L, p)
        self.L = L
        psi = _minpoly_from_cyclotomic(L)
        self.minpoly = tuple(psi)
        self.degree = len(psi) - 1
        if self.degree != _totient(2 * L) // 2:
            raise ArithmeticError("minimal polynomial degree self-check failed")
        self._enclosure = self._initial_enclosure()
        self.lambda_table = {}
        for p in sorted(levels):
            self.lambda_table[p] = self._two_cos_multiple(L // p)

    # -- construction helpers ------------------------------------------------

    def _initial_enclosure(self):
        """A certified rational interval (lo, hi) containing only the root
        mu = 2cos(pi/L) of the minimal polynomial.

        mu is the largest real root; the next root 2cos(k pi/L) has k >= 3,
        so any rational lo strictly between them works.  The float seed is
        validated by exact sign checks before use.
        """
        if self.degree == 1:
            # mu is rational (only L = 3 here: mu = 1)
            root = Fraction(-self.minpoly[0], self.minpoly[1])
            return (root, root)
        lo = Fraction(2 * math.cos(1.5 * math.pi / self.L)).limit_denominator(10**9)
        hi = Fraction(2)
        if not (self._minpoly_at(lo) < 0 < self._minpoly_at(hi)):
            raise ArithmeticError("could not certify initial root enclosure")
        return (lo, hi)

    def _minpoly_at(self, x):
        acc = Fraction(0)
        for c in reversed(self.minpoly):
            acc = acc * x + c
        return acc

    def _refine_enclosure_once(self):
        lo, hi = self._enclosure
        mid = (lo + hi) / 2
        v = self._minpoly_at(mid)
        if v == 0:
            raise ArithmeticError("rational midpoint is a root (impossible for d >= 2)")
        if v < 0:
            self._enclosure = (mid, hi)
        else:
            self._enclosure = (lo, mid)

    def enclosure(self, width=None):
        """Certified interval around mu, refined below `width` if given."""
        if width is not None:
            lo, hi = self._enclosure
            while hi - lo > width:
                self._refine_enclosure_once()
                lo, hi = self._enclosure
        return self._enclosure

    def _two_cos_multiple(self, k):
        """2cos(k pi/L) as a RingElem: the Chebyshev-like sequence
        t_0 = 2, t_1 = mu, t_k = mu t_{k-1} - t_{k-2}."""
        if k == 0:
            return self.from_int(2)
        mu = self.mu()
        prev = self.from_int(2)
        cur = mu
        for _ in range(k - 1):
            prev, cur = cur, mu * cur - prev
        return cur

    # -- element constructors ------------------------------------------------

    def from_int(self, c):
        coeffs = [0] * self.degree
        coeffs[0] = int(c)
        return RingElem(self, tuple(coeffs))

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def mu(self):
        if self.degree == 1:
            # mu is rational; minpoly is monic linear x - r
            return self.from_int(-self.minpoly[0])
        coeffs = [0] * self.degree
        coeffs[1] = 1
        return RingElem(self, tuple(coeffs))

    def lam(self, p):
        """lambda_p = 2cos(pi/p); p must divide the context's levels set
        only in the sense that p | L."""
        if p in self.lambda_table:
            return self.lambda_table[p]
        if self.L % p != 0:
            raise ValueError("size %d is not covered by this context" % p)
        val = self._two_cos_multiple(self.L // p)
        self.lambda_table[p] = val
        return val

    def _reduce(self, coeffs):
        """Reduce an integer coefficient list modulo the monic minpoly."""
        d = self.degree
        coeffs = list(coeffs)
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if c:
                for j in range(d + 1):
                    coeffs[k - d + j] -= c * self.minpoly[j]
            coeffs.pop()
        while len(coeffs) < d:
            coeffs.append(0)
        return tuple(coeffs)

    def __repr__(self):
        return "RingContext(levels=%s, L=%d, degree=%d)" % (
            sorted(self.levels), self.L, self.degree)


class RingElem:
    """An element of Z[mu] in reduced power-basis form."""

    __slots__ = ("context", "coeffs")

    def __init__(self, context, coeffs):
        self.context = context
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if isinstance(other, int):
            other = self.context.from_int(other)
        if other.context is not self.context:
            raise ValueError("ring context mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return RingElem(self.context,
                        tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return RingElem(self.context,
                        tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return RingElem(self.context, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        prod = _poly_mul(list(self.coeffs), list(other.coeffs))
        return RingElem(self.context, self.context._reduce(prod))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.context.from_int(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.context is other.context and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.context), self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def approx(self):
        """Floating point approximation (display only, never authoritative)."""
        x = 2.0 * math.cos(math.pi / self.context.L)
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return format_elem(self)


def make_context(levels):
    """Build the ring context for a set of subgon sizes (each >= 3)."""
    return RingContext(levels)


def arith(kind, a, b=None):
    """Arithmetic dispatch: kind in {'add', 'sub', 'mul', 'neg'}."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "neg":
        if b is not None:
            raise ValueError("neg takes one operand")
        return -a
    raise ValueError("unknown arithmetic kind %r" % (kind,))


def chebyshev_u(ctx, k, x):
    """Normalized Chebyshev polynomial of the second kind, evaluated at x.

    U_{-1} = 0, U_0 = 1, U_k = x U_{k-1} - U_{k-2}.
    """
    if k < -1:
        raise ValueError("k must be >= -1")
    if isinstance(x, int):
        x = ctx.from_int(x)
    if k == -1:
        return ctx.zero()
    prev = ctx.zero()
    cur = ctx.one()
    for _ in range(k):
        prev, cur = cur, x * cur - prev
    return cur


def _interval_value(elem, lo, hi):
    """Interval enclosure of the element's value given an enclosure of mu.

    mu >= 1 for every context (L >= 3), so powers are monotone.
    """
    vlo = Fraction(0)
    vhi = Fraction(0)
    plo = Fraction(1)
    phi_ = Fraction(1)
    for c in elem.coeffs:
        if c > 0:
            vlo += c * plo
            vhi += c * phi_
        elif c < 0:
            vlo += c * phi_
            vhi += c * plo
        plo *= lo
        phi_ *= hi
    return vlo, vhi


def sign_of(a):
    """Sign in {-1, 0, 1}; zero is decided syntactically, otherwise by a
    refinable certified interval enclosure of mu."""
    if a.is_zero():
        return 0
    ctx = a.context
    lo, hi = ctx.enclosure()
    while True:
        vlo, vhi = _interval_value(a, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        ctx._refine_enclosure_once()
        lo, hi = ctx.enclosure()


def format_elem(a, approx=True):
    """Textual form: integer polynomial in m = 2cos(pi/L), with a decimal
    hint, e.g. ``3 + 3*m : 7.2426``.  The exact part is authoritative."""
    terms = []
    for k, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        elif k == 1:
            body = "%s*m" % abs(c) if abs(c) != 1 else "m"
        else:
            body = ("%s*m^%d" % (abs(c), k)) if abs(c) != 1 else ("m^%d" % k)
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    exact = " ".join(terms) if terms else "0"
    if not approx:
        return exact
    return "%s : %.6g" % (exact, a.approx())
