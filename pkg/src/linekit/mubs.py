"""Mutually unbiased bases: every construction route in one place.

All constructors return a MubFamily whose first basis is the identity; the
constructor itself certifies unitarity and pairwise flatness, so a family
object in hand is already a valid MUB set.  Angle conventions follow the
squared-modulus rule: unbiased means every cross angle is exactly 1/d.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass

import numpy as np
from sympy import factorint

from linekit.finite_algebra import gf_create, gr_create
from linekit.linesets import LineSet


def _prime_power(q):
    """Return (p, m) with q = p^m, or raise."""
    q = int(q)
    if q < 2:
        raise ValueError(f"q must be a prime power >= 2, got {q}")
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"q = {q} is not a prime power")
    [(p, m)] = fac.items()
    return int(p), int(m)


@dataclass
class MubFamily:
    """d x d bases, bases[0] = I, pairwise unbiased (checked at creation)."""

    d: int
    bases: list
    provenance: tuple = ("unknown", None)
    tol: float = 1e-9

    def __post_init__(self):
        self.bases = [np.asarray(B, dtype=complex) for B in self.bases]
        d = self.d
        eye = np.eye(d)
        for k, B in enumerate(self.bases):
            if B.shape != (d, d):
                raise ValueError(f"basis {k} has shape {B.shape}, expected {(d, d)}")
            if np.abs(B.conj().T @ B - eye).max() > self.tol * 100:
                raise ValueError(f"basis {k} is not unitary")
        target = 1 / np.sqrt(d)
        for a, b in itertools.combinations(range(len(self.bases)), 2):
            M = self.bases[a].conj().T @ self.bases[b]
            dev = np.abs(np.abs(M) - target).max()
            if dev > self.tol * 100:
                raise ValueError(
                    f"bases {a} and {b} are not unbiased (flatness deviation {dev:.3g})"
                )

    def __len__(self):
        return len(self.bases)

    def to_lineset(self):
        """All basis columns as one labeled line set of len(self)*d lines."""
        vectors = np.hstack(self.bases).T
        labels = [k for k in range(len(self.bases)) for _ in range(self.d)]
        return LineSet(self.d, vectors, basis_labels=labels, tol=self.tol)

    def __repr__(self):
        return f"MubFamily(d={self.d}, bases={len(self.bases)}, via {self.provenance[0]})"


# ---------------------------------------------------------------------------
# Wootters-Fields: q+1 bases in C^q for every prime power q
# ---------------------------------------------------------------------------


def _wf_odd(p, m):
    """(W_z)_{x,y} = q^{-1/2} w^{tr(z x^2 + 2 y x)} over GF(p^m), w = e^(2 pi i/p)."""
    F = gf_create(p, m)
    q = p**m
    els = F.elements()
    two = F.from_int(2 % p)
    w = np.exp(2j * np.pi / p)
    bases = [np.eye(q, dtype=complex)]
    for z in els:
        W = np.empty((q, q), dtype=complex)
        for i, x in enumerate(els):
            zx2 = F.mul(z, F.mul(x, x))
            tx = F.mul(two, x)
            for j, y in enumerate(els):
                e = F.add(zx2, F.mul(y, tx))
                W[i, j] = w ** F.trace(e)
        bases.append(W / np.sqrt(q))
    return bases


def _wf_even(m):
    """(W_z)_{x,y} = q^{-1/2} i^{tr(z x^2 + 2 y x)} with x, y, z ranging over the
    Teichmuller set of GR(4^m) and tr the Galois-ring trace into Z4."""
    R = gr_create(m)
    q = 2**m
    T = R.teichmuller
    two = R.element((2,) + (0,) * (m - 1))
    bases = [np.eye(q, dtype=complex)]
    for z in T:
        W = np.empty((q, q), dtype=complex)
        for i, x in enumerate(T):
            zx2 = R.mul(z, R.mul(x, x))
            tx = R.mul(two, x)
            for j, y in enumerate(T):
                e = R.add(zx2, R.mul(y, tx))
                W[i, j] = 1j ** R.trace(e)
        bases.append(W / np.sqrt(q))
    return bases


def wf_mubs(q):
    """The maximal family: q + 1 mutually unbiased bases in C^q.

    Odd prime powers use additive characters of GF(q) twisted by the squaring
    map; even ones replace the field by the Galois ring GR(4^m), whose
    Teichmuller set supplies the index alphabet and whose Z4-valued trace
    supplies fourth roots of unity.
    """
    p, m = _prime_power(q)
    bases = _wf_odd(p, m) if p != 2 else _wf_even(m)
    return MubFamily(q, bases, provenance=("wf", {"q": q}))


# ---------------------------------------------------------------------------
# Alltop cubic-phase variant (characteristic > 3)
# ---------------------------------------------------------------------------


def alltop_mubs(q):
    """(A_z)_{x,y} = q^{-1/2} w^{tr((x+z)^3 + y(x+z))}: q + 1 bases for p > 3."""
    p, m = _prime_power(q)
    if p in (2, 3):
        raise ValueError(f"the cubic construction needs characteristic > 3, got p={p}")
    F = gf_create(p, m)
    els = F.elements()
    w = np.exp(2j * np.pi / p)
    bases = [np.eye(q, dtype=complex)]
    for z in els:
        A = np.empty((q, q), dtype=complex)
        for i, x in enumerate(els):
            xz = F.add(x, z)
            cube = F.mul(xz, F.mul(xz, xz))
            for j, y in enumerate(els):
                e = F.add(cube, F.mul(y, xz))
                A[i, j] = w ** F.trace(e)
        bases.append(A / np.sqrt(q))
    return MubFamily(q, bases, provenance=("alltop", {"q": q}))


# ---------------------------------------------------------------------------
# spin-model triple: 3 bases in EVERY dimension
# ---------------------------------------------------------------------------


def spin_model_mubs(n):
    """{I, W/sqrt(n), D0 W/n} with W_ij = theta^((i-j)^2), theta = e^(i pi (n+1)/n).

    theta^2 = e^(2 pi i/n) is a primitive n-th root, which is all the type-II
    property needs; D0 is the diagonal of sqrt(n) times the entrywise-inverse
    first column, (D0)_ii = sqrt(n) theta^(-i^2).  Works for every n >= 2 —
    including n = 6, where no larger family is known.
    """
    n = int(n)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    theta = np.exp(1j * np.pi * (n + 1) / n)
    idx = np.arange(n)
    W = theta ** ((idx[:, None] - idx[None, :]) ** 2)
    D0 = np.diag(np.sqrt(n) * theta ** (-(idx**2)))
    bases = [np.eye(n, dtype=complex), W / np.sqrt(n), D0 @ W / n]
    return MubFamily(n, bases, provenance=("spin", {"n": n}))


def type_ii_check(n):
    """The defining identity W W^(-T) = nI for the spin-model matrix."""
    theta = np.exp(1j * np.pi * (n + 1) / n)
    idx = np.arange(n)
    W = theta ** ((idx[:, None] - idx[None, :]) ** 2)
    Winv = (1 / W).T
    return float(np.abs(W @ Winv - n * np.eye(n)).max())


# ---------------------------------------------------------------------------
# tensor products
# ---------------------------------------------------------------------------


def tensor_mubs(F1, F2):
    """Basewise Kronecker product; the count is the smaller of the two."""
    k = min(len(F1.bases), len(F2.bases))
    bases = [np.kron(F1.bases[i], F2.bases[i]) for i in range(k)]
    return MubFamily(
        F1.d * F2.d,
        bases,
        provenance=("tensor", {"left": F1.provenance, "right": F2.provenance}),
    )


# ---------------------------------------------------------------------------
# odd-characteristic commutative semifields
# ---------------------------------------------------------------------------


class SemifieldTable:
    """A commutative multiplication on GF(p)^m with identity, distributivity,
    and no zero divisors — everything the character construction needs.

    mult maps (index, index) -> index over the lexicographic element order.
    """

    def __init__(self, p, m, mult):
        self.p = int(p)
        self.m = int(m)
        self.q = self.p**self.m
        self.elements = list(itertools.product(range(self.p), repeat=self.m))
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.mult = np.asarray(mult, dtype=np.int64)
        if self.mult.shape != (self.q, self.q):
            raise ValueError(f"mult table must be {self.q} x {self.q}")

    @classmethod
    def from_function(cls, p, m, op):
        """op takes and returns coefficient tuples."""
        elements = list(itertools.product(range(p), repeat=m))
        index = {e: i for i, e in enumerate(elements)}
        q = p**m
        mult = np.zeros((q, q), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                mult[i, j] = index[tuple(op(a, b))]
        return cls(p, m, mult)

    @classmethod
    def from_field(cls, F):
        """The Galois field itself is the basic (and associative) example.

        Accepts either a field object or a prime power to build one from.
        """
        if isinstance(F, int):
            F = gf_create(*_prime_power(F))
        return cls.from_function(F.p, F.m, F.mul)

    def product(self, a, b):
        return self.elements[self.mult[self.index[tuple(a)], self.index[tuple(b)]]]

    def validate(self):
        """Check all four axioms; raise with a witness on the first failure."""
        els = self.elements
        zero = els[0]
        if not np.array_equal(self.mult, self.mult.T):
            i, j = np.argwhere(self.mult != self.mult.T)[0]
            raise ValueError(f"not commutative: {els[i]} * {els[j]} != {els[j]} * {els[i]}")
        # distributivity (one side suffices given commutativity)
        add = lambda a, b: tuple((x + y) % self.p for x, y in zip(a, b))
        for a in els:
            for b in els:
                ab = self.product(a, b)
                for c in els:
                    lhs = self.product(add(a, c), b)
                    rhs = add(ab, self.product(c, b))
                    if lhs != rhs:
                        raise ValueError(
                            f"not distributive: ({a} + {c}) * {b} = {lhs} "
                            f"but {a}*{b} + {c}*{b} = {rhs}"
                        )
        for a in els:
            if a == zero:
                continue
            for b in els:
                if b != zero and self.product(a, b) == zero:
                    raise ValueError(f"zero divisors: {a} * {b} = 0")
        has_identity = any(
            all(self.product(e, a) == a for a in els) for e in els
        )
        if not has_identity:
            raise ValueError("no multiplicative identity element")

    def __repr__(self):
        return f"SemifieldTable(p={self.p}, m={self.m})"


def semifield_mubs(tbl):
    """(W_z)_{a,y} = q^{-1/2} w^{z.(a*a) + 2 y.a} for a commutative semifield.

    The dot products are the standard GF(p)-bilinear form on coefficient
    vectors; a*a is the semifield square.  Axioms are re-validated first and
    failures reported with witnesses.
    """
    if tbl.p == 2:
        raise ValueError("even characteristic needs the Galois-ring route (wf_mubs)")
    tbl.validate()
    p, q = tbl.p, tbl.q
    els = tbl.elements
    w = np.exp(2j * np.pi / p)
    dot = lambda u, v: sum(x * y for x, y in zip(u, v)) % p
    bases = [np.eye(q, dtype=complex)]
    for z in els:
        W = np.empty((q, q), dtype=complex)
        for i, a in enumerate(els):
            sq = tbl.product(a, a)
            zsq = dot(z, sq)
            for j, y in enumerate(els):
                W[i, j] = w ** ((zsq + 2 * dot(y, a)) % p)
        bases.append(W / np.sqrt(q))
    return MubFamily(q, bases, provenance=("semifield", {"p": p, "m": tbl.m}))


def semifield_to_csv(tbl, path):
    """Write a multiplication table as a CSV of p^m x p^m element indices."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in tbl.mult:
            writer.writerow([int(x) for x in row])


def semifield_from_csv(path):
    """Read a multiplication table from a CSV of p^m x p^m element indices.

    Row i, column j holds the index of element_i * element_j in the
    lexicographic element order; the table size fixes p and m.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [[int(cell) for cell in row] for row in csv.reader(fh) if row]
    q = len(rows)
    if q == 0 or any(len(row) != q for row in rows):
        raise ValueError("semifield CSV must be a nonempty square matrix of indices")
    if any(cell < 0 or cell >= q for row in rows for cell in row):
        raise ValueError(f"semifield CSV entries must be indices in 0..{q - 1}")
    p, m = _prime_power(q)
    return SemifieldTable(p, m, rows)


# ---------------------------------------------------------------------------
# dimension-6 complex Hadamard families
# ---------------------------------------------------------------------------


def _check_unit(name, value):
    if abs(abs(value) - 1) > 1e-9:
        raise ValueError(f"parameter {name} must have modulus 1, got |{name}| = {abs(value):.6g}")
    return complex(value)


def hadamard6(family, s=None, t=None, u=None):
    """One matrix from the three parametrized 6x6 complex Hadamard families.

    sym:  one parameter t; symmetric family through the quaternary matrix
    char: two parameters s, t; s = t = 1 degenerates to the Z6 character table
    skew: s, t and optionally u; u defaults to -(s+t+2)/(st+1), and the
          result is rejected unless |u| = 1 (the closure constraint
          s t u + s + t + u + 2 = 0 with all parameters unimodular)

    Every return value is certified: H* H = 6 I within 1e-9.
    """
    if family == "sym":
        if t is None:
            raise ValueError("sym family needs parameter t")
        t = _check_unit("t", t)
        tb = np.conj(t)
        i = 1j
        H = np.array(
            [
                [1, 1, 1, 1, 1, 1],
                [1, -1, i, -i, -i, i],
                [1, i, -1, t, -t, -i],
                [1, -i, -tb, -1, i, tb],
                [1, -i, tb, i, -1, -tb],
                [1, i, -i, -t, t, -1],
            ],
            dtype=complex,
        )
    elif family == "char":
        if s is None or t is None:
            raise ValueError("char family needs parameters s and t")
        s, t = _check_unit("s", s), _check_unit("t", t)
        w = np.exp(2j * np.pi / 3)
        w2 = w * w
        H = np.array(
            [
                [1, 1, 1, 1, 1, 1],
                [1, 1, w, w, w2, w2],
                [1, 1, w2, w2, w, w],
                [1, -1, s, -s, t, -t],
                [1, -1, s * w, -s * w, t * w2, -t * w2],
                [1, -1, s * w2, -s * w2, t * w, -t * w],
            ],
            dtype=complex,
        )
    elif family == "skew":
        if s is None or t is None:
            raise ValueError("skew family needs parameters s and t")
        s, t = _check_unit("s", s), _check_unit("t", t)
        if abs(s * t + 1) < 1e-12:
            raise ValueError("st = -1: the constraint cannot be solved for u")
        if u is None:
            u = -(s + t + 2) / (s * t + 1)
        u = _check_unit("u", u)
        resid = abs(s * t * u + s + t + u + 2)
        if resid > 1e-8:
            raise ValueError(f"parameters violate stu + s + t + u + 2 = 0 (|residual| = {resid:.3g})")
        sb, tb, ub = np.conj(s), np.conj(t), np.conj(u)
        stu = s * t * u
        H = np.array(
            [
                [1, 1, 1, 1, 1, 1],
                [1, -1, -s, s, tb, -tb],
                [1, -sb, -1, u, sb, -u],
                [1, sb, ub, 1, np.conj(stu), tb],
                [1, t, s, stu, 1, u],
                [1, -t, -ub, t, ub, -1],
            ],
            dtype=complex,
        )
    else:
        raise ValueError(f"family must be 'sym', 'char', or 'skew', got {family!r}")
    gram = H.conj().T @ H
    assert np.abs(gram - 6 * np.eye(6)).max() < 1e-8, "matrix is not Hadamard"
    return H
