"""Exact finite algebra: GF(p^m), the Galois ring GR(4^m), abelian groups.

Field and ring elements are little-endian coefficient tuples (length m) over
GF(p) or Z4; all arithmetic is exact integer arithmetic.  Contexts are
immutable after construction and every operation is a pure function, so they
can be shared freely across threads.
"""

from __future__ import annotations

import cmath
import itertools
from functools import reduce
from math import lcm

import numpy as np
from sympy import isprime

# ---------------------------------------------------------------------------
# polynomial helpers (little-endian coefficient tuples over Z_modulus)
# ---------------------------------------------------------------------------


def _ptrim(c):
    """Drop trailing zero coefficients (the zero polynomial becomes ())."""
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b, q):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim((x + y) % q for x, y in zip(a, b))


def _pmul(a, b, q):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % q
    return _ptrim(out)


def _pdivmod(a, b, q):
    """Divide a by b over Z_q. b must be monic (works for q = 4 as well)."""
    b = _ptrim(b)
    assert b and b[-1] == 1, "divisor must be monic"
    rem = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 1)
    db = len(b) - 1
    while len(_ptrim(rem)) - 1 >= db and _ptrim(rem):
        rem = list(_ptrim(rem))
        shift = len(rem) - 1 - db
        coef = rem[-1] % q
        quot[shift] = coef
        for i, y in enumerate(b):
            rem[shift + i] = (rem[shift + i] - coef * y) % q
    return _ptrim(quot), _ptrim(rem)


def _pmod(a, b, q):
    return _pdivmod(a, b, q)[1]


def _pgcd_ext(a, b, p):
    """Extended Euclid over GF(p): returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = _ptrim(a), _ptrim(b)
    u0, u1 = (1,), ()
    v0, v1 = (), (1,)
    while r1:
        # make r1 monic for _pdivmod, then undo the scaling
        lead = r1[-1]
        inv = pow(lead, -1, p)
        r1m = _ptrim(c * inv % p for c in r1)
        quot, _ = _pdivmod(r0, r1m, p)
        quot = _ptrim(c * inv % p for c in quot)
        r0, r1 = r1, _padd(r0, tuple(-c % p for c in _pmul(quot, r1, p)), p)
        u0, u1 = u1, _padd(u0, tuple(-c % p for c in _pmul(quot, u1, p)), p)
        v0, v1 = v1, _padd(v0, tuple(-c % p for c in _pmul(quot, v1, p)), p)
    return r0, u0, v0


def _is_irreducible(poly, p):
    """Trial division by monic polynomials of degree <= deg/2 over GF(p)."""
    poly = _ptrim(poly)
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = tail + (1,)
            if not _pmod(poly, divisor, p):
                return False
    return True


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


# ---------------------------------------------------------------------------
# Galois fields
# ---------------------------------------------------------------------------


class GaloisField:
    """GF(p^m) with elements as little-endian coefficient tuples of length m.

    Arithmetic reduces modulo the (monic, irreducible) defining polynomial.
    The default modulus is primitive, so the coset of x generates the
    multiplicative group.
    """

    def __init__(self, p, m, modulus):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus  # length m+1, little-endian, monic
        self.zero = (0,) * m
        self.one = self._pad((1,)) if m >= 1 else ()

    def _pad(self, c):
        c = _ptrim(c)
        assert len(c) <= self.m
        return tuple(c) + (0,) * (self.m - len(c))

    # -- element encodings ---------------------------------------------------

    def element(self, coeffs):
        c = tuple(int(v) % self.p for v in coeffs)
        if len(c) != self.m:
            raise ValueError(f"element needs {self.m} coefficients, got {len(c)}")
        return c

    def from_int(self, n):
        """Base-p digits of n, little-endian."""
        if not 0 <= n < self.q:
            raise ValueError(f"integer {n} outside [0, {self.q})")
        digits = []
        for _ in range(self.m):
            digits.append(n % self.p)
            n //= self.p
        return tuple(digits)

    def to_int(self, x):
        return sum(c * self.p**i for i, c in enumerate(x))

    def elements(self):
        return [self.from_int(n) for n in range(self.q)]

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        return self._pad(_pmod(_pmul(a, b, self.p), self.modulus, self.p))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out, base = self.one, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("0 has no inverse")
        g, u, _ = _pgcd_ext(a, self.modulus, self.p)
        assert len(g) == 1  # gcd is a nonzero constant: modulus irreducible
        scale = pow(g[0], -1, self.p)
        return self._pad(tuple(c * scale % self.p for c in u))

    def frobenius(self, a):
        return self.pow(a, self.p)

    def x(self):
        """The coset of x (a generator of the multiplicative group for the
        default, primitive modulus)."""
        if self.m == 1:
            # x = root of the degree-1 modulus: x - c0 = 0
            return ((-self.modulus[0]) % self.p,)
        return self._pad((0, 1))

    def trace(self, a):
        """Absolute trace to GF(p): a + a^p + ... + a^(p^(m-1)), as an int."""
        acc, cur = self.zero, a
        for _ in range(self.m):
            acc = self.add(acc, cur)
            cur = self.frobenius(cur)
        assert all(c == 0 for c in acc[1:]), "trace landed outside GF(p)"
        return acc[0]

    def relative_trace(self, a, e):
        """Trace to the subfield GF(p^e): sum of a^(p^(e*j)).  e must divide m."""
        if self.m % e:
            raise ValueError(f"GF({self.p}^{e}) is not a subfield of GF({self.p}^{self.m})")
        acc, cur = self.zero, a
        for _ in range(self.m // e):
            acc = self.add(acc, cur)
            cur = self.pow(cur, self.p**e)
        return acc

    def label(self):
        coeffs = ",".join(str(c) for c in self.modulus)
        return f"GF({self.p}^{self.m})/{coeffs}"

    def __repr__(self):
        return f"GaloisField({self.label()})"


def _is_primitive(modulus, p, m):
    """Does the coset of x generate the multiplicative group mod `modulus`?"""
    order = p**m - 1
    F = GaloisField(p, m, modulus)
    x = F.x()
    if x == F.zero:
        return False
    if F.pow(x, order) != F.one:
        return False
    return all(F.pow(x, order // r) != F.one for r in _prime_factors(order))


def gf_create(p, m, modulus=None):
    """Build GF(p^m).

    The default modulus is the monic primitive polynomial of degree m whose
    base-p integer encoding sum(c_i p^i) is smallest; a user-supplied modulus
    must be monic of degree m and irreducible.
    """
    p, m = int(p), int(m)
    if not isprime(p):
        raise ValueError(f"p = {p} is not prime")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")

    if modulus is not None:
        modulus = _ptrim(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        return GaloisField(p, m, modulus)

    if m == 1:
        # x - g for the smallest primitive root g of GF(p)
        for g in range(1, p):
            cand = ((-g) % p, 1)
            if _is_primitive(cand, p, 1):
                return GaloisField(p, 1, cand)
        raise AssertionError(f"no primitive root mod {p}")

    for tail in range(p**m):
        coeffs = []
        n = tail
        for _ in range(m):
            coeffs.append(n % p)
            n //= p
        cand = tuple(coeffs) + (1,)
        if not _is_irreducible(cand, p):
            continue
        if _is_primitive(cand, p, m):
            return GaloisField(p, m, cand)
    raise AssertionError(f"no primitive polynomial of degree {m} over GF({p})")


def gf_trace(F, x):
    """Absolute trace GF(p^m) -> GF(p) as an integer in [0, p)."""
    return F.trace(x)


# ---------------------------------------------------------------------------
# Galois rings GR(4^m)
# ---------------------------------------------------------------------------


class GaloisRing:
    """GR(4^m) = Z4[x]/(h) for the Hensel lift h of a primitive GF(2^m) modulus.

    Elements are little-endian coefficient tuples of length m over Z4.  The
    Teichmuller set T = {0, 1, xi, ..., xi^(2^m - 2)} is the unique system of
    coset representatives mod 2 that is closed under multiplication; every
    element decomposes uniquely as t0 + 2*t1 with t0, t1 in T.
    """

    def __init__(self, m, lift_modulus, base_field):
        self.m = m
        self.size = 4**m
        self.lift_modulus = lift_modulus  # length m+1 over Z4, monic
        self.base_field = base_field  # GF(2^m) whose modulus was lifted
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        self.teichmuller = self._build_teichmuller()
        # residue-mod-2 tuple -> Teichmuller representative
        self._teich_by_residue = {tuple(c % 2 for c in t): t for t in self.teichmuller}
        assert len(self._teich_by_residue) == 2**m

    def _pad(self, c):
        c = _ptrim(c)
        return tuple(c) + (0,) * (self.m - len(c))

    def _build_teichmuller(self):
        xi = self._pad((0, 1)) if self.m > 1 else (1,)
        out = [self.zero, self.one]
        cur = xi
        for _ in range(2**self.m - 2):
            if cur == self.one:
                break
            out.append(cur)
            cur = self.mul(cur, xi)
        return out

    def element(self, coeffs):
        c = tuple(int(v) % 4 for v in coeffs)
        if len(c) != self.m:
            raise ValueError(f"element needs {self.m} coefficients, got {len(c)}")
        return c

    def elements(self):
        return [t for t in itertools.product(range(4), repeat=self.m)]

    def add(self, a, b):
        return tuple((x + y) % 4 for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % 4 for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % 4 for x in a)

    def mul(self, a, b):
        return self._pad(_pmod(_pmul(a, b, 4), self.lift_modulus, 4))

    def pow(self, a, n):
        out, base = self.one, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def teichmuller_decompose(self, z):
        """z = t0 + 2*t1 with t0, t1 Teichmuller; returns (t0, t1)."""
        t0 = self._teich_by_residue[tuple(c % 2 for c in z)]
        w = self.sub(z, t0)
        assert all(c % 2 == 0 for c in w)
        t1 = self._teich_by_residue[tuple((c // 2) % 2 for c in w)]
        return t0, t1

    def trace(self, z):
        """Sum of the 2^j-power shifts of both Teichmuller parts, in Z4."""
        t0, t1 = self.teichmuller_decompose(z)
        acc = self.zero
        for j in range(self.m):
            e = 2**j
            acc = self.add(acc, self.pow(t0, e))
            acc = self.add(acc, self.mul((2,) + (0,) * (self.m - 1), self.pow(t1, e)))
        assert all(c == 0 for c in acc[1:]), "ring trace landed outside Z4"
        return acc[0]

    def label(self):
        coeffs = ",".join(str(c) for c in self.lift_modulus)
        return f"GR(4^{self.m})/{coeffs}"

    def __repr__(self):
        return f"GaloisRing({self.label()})"


def _hensel_lift(f2, m):
    """Lift a monic degree-m factor f of x^(2^m -1) - 1 from GF(2) to Z4.

    With u = x^(2^m -1) - 1 = f*g over GF(2) and a*f + b*g = 1 over GF(2),
    the corrected factor is f + 2*(b*c mod f) where c = (u - f*g)/2 taken
    mod 2.  The result is certified by exact divisibility over Z4.
    """
    n = 2**m - 1
    u4 = tuple((-1 if i == 0 else 0) % 4 if i != n else 1 for i in range(n + 1))
    u2 = tuple(c % 2 for c in u4)
    g2, rem = _pdivmod(u2, f2, 2)
    assert not rem, "modulus does not divide x^(2^m - 1) - 1 over GF(2)"
    gcd_poly, a2, b2 = _pgcd_ext(f2, g2, 2)
    assert gcd_poly == (1,), "factors of a squarefree polynomial must be coprime"
    # c = (u - f*g)/2 over Z4, halved, then reduced mod 2
    fg4 = _pmul(f2, g2, 4)
    diff = _padd(u4, tuple(-c % 4 for c in fg4), 4)
    assert all(c % 2 == 0 for c in diff)
    c2 = _ptrim((c // 2) % 2 for c in diff)
    s2 = _pmod(_pmul(b2, c2, 2), f2, 2)
    f4 = _padd(tuple(f2), _pmul((2,), s2, 4), 4)
    # certificate: the lift divides x^(2^m - 1) - 1 over Z4
    _, rem4 = _pdivmod(u4, f4, 4)
    assert not rem4, "Hensel lift failed the divisibility certificate"
    return f4


def gr_create(m):
    """Build GR(4^m) by Hensel-lifting the default GF(2^m) modulus."""
    m = int(m)
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    F2 = gf_create(2, m)
    if m == 1:
        # the degree-1 case: x - 1 is its own lift (x + 3 over Z4)
        return GaloisRing(1, (3, 1), F2)
    lift = _hensel_lift(F2.modulus, m)
    return GaloisRing(m, lift, F2)


def gr_trace(R, z):
    """Galois-ring trace GR(4^m) -> Z4 as an integer in [0, 4)."""
    return R.trace(z)


# ---------------------------------------------------------------------------
# finite abelian groups and their characters
# ---------------------------------------------------------------------------


class AbelianGroup:
    """Product of cyclic groups Z_{n_1} x ... x Z_{n_r}, elements as tuples.

    Element order is lexicographic in the cyclic coordinates; characters and
    any derived line sets share this order.
    """

    def __init__(self, cyclic_orders):
        orders = tuple(int(n) for n in cyclic_orders)
        if not orders or any(n < 1 for n in orders):
            raise ValueError(f"invalid cyclic orders {cyclic_orders}")
        self.cyclic_orders = orders
        self.order = reduce(lambda a, b: a * b, orders, 1)
        self.identity = (0,) * len(orders)

    def elements(self):
        return list(itertools.product(*(range(n) for n in self.cyclic_orders)))

    def index_of(self, g):
        idx = 0
        for coord, n in zip(g, self.cyclic_orders):
            idx = idx * n + (coord % n)
        return idx

    def op(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.cyclic_orders))

    def inverse(self, a):
        return tuple(-x % n for x, n in zip(a, self.cyclic_orders))

    def character_value(self, a, g):
        """chi_a(g) = prod exp(2 pi i a_i g_i / n_i)."""
        phase = sum(ai * gi / ni for ai, gi, ni in zip(a, g, self.cyclic_orders))
        return cmath.exp(2j * cmath.pi * phase)

    def character_trivial_on(self, a, subset):
        """Exact test: chi_a(g) = 1 for all g in subset (integer arithmetic)."""
        L = lcm(*self.cyclic_orders)
        for g in subset:
            tot = sum(ai * gi * (L // ni) for ai, gi, ni in zip(a, g, self.cyclic_orders))
            if tot % L:
                return False
        return True

    def subgroup_generated_by(self, gens):
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = self.op(cur, g)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return sorted(seen)

    def __repr__(self):
        return f"AbelianGroup{self.cyclic_orders}"


def group_characters(G):
    """Full character table as a |G| x |G| complex matrix.

    Row a, column g holds chi_a(g); rows are pairwise orthogonal and the row
    of the identity label is all-ones.
    """
    elems = G.elements()
    n = len(elems)
    table = np.empty((n, n), dtype=complex)
    for i, a in enumerate(elems):
        for j, g in enumerate(elems):
            table[i, j] = G.character_value(a, g)
    return table


class GroupAlgebraElement:
    """Integer formal sum over a finite abelian group (a sparse multiset)."""

    def __init__(self, G, coefficients=None):
        self.G = G
        self.coefficients = {}
        if coefficients:
            for g, c in coefficients.items():
                c = int(c)
                if c:
                    self.coefficients[tuple(g)] = c

    @classmethod
    def from_subset(cls, G, subset):
        out = cls(G)
        for g in subset:
            out.coefficients[tuple(g)] = out.coefficients.get(tuple(g), 0) + 1
        return out

    def __add__(self, other):
        out = dict(self.coefficients)
        for g, c in other.coefficients.items():
            out[g] = out.get(g, 0) + c
        return GroupAlgebraElement(self.G, out)

    def __mul__(self, other):
        """Convolution product: (sum a_g g)(sum b_h h) = sum a_g b_h (g+h)."""
        out = {}
        for g, cg in self.coefficients.items():
            for h, ch in other.coefficients.items():
                k = self.G.op(g, h)
                out[k] = out.get(k, 0) + cg * ch
        return GroupAlgebraElement(self.G, out)

    def inverse_support(self):
        """The image under g -> -g (sum of inverses)."""
        return GroupAlgebraElement(
            self.G, {self.G.inverse(g): c for g, c in self.coefficients.items()}
        )

    def character_sum(self, a):
        """chi_a evaluated on this element (complex)."""
        return sum(
            c * self.G.character_value(a, g) for g, c in self.coefficients.items()
        )

    def __eq__(self, other):
        return (
            isinstance(other, GroupAlgebraElement)
            and self.G.cyclic_orders == other.G.cyclic_orders
            and self.coefficients == other.coefficients
        )

    def __getitem__(self, g):
        return self.coefficients.get(tuple(g), 0)

    def __repr__(self):
        terms = sorted(self.coefficients.items())
        return "GroupAlgebraElement(" + " + ".join(f"{c}*{g}" for g, c in terms) + ")"
