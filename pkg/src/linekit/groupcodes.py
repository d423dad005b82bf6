"""Difference sets, bipartite covers, and linear-code routes to line sets.

Three families of constructions live here, all powered by characters of a
finite abelian group:

* difference sets and relative difference sets — classification by direct
  convolution, character-row line sets, Singer sets from planes, and the
  relative-difference-set route to mutually unbiased bases;
* distance-regular antipodal covers of complete bipartite graphs, built
  either from a relative difference set or as the explicit 36-vertex
  "tank-trap" triple cover, with a definitional distance census;
* linear codes over a prime field or Z4, with coset-graph spectra from dual
  weights and codeword-to-line maps (balanced, near-balanced, and Z4
  variants).
"""

from __future__ import annotations

import csv
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from sympy import isprime

from .finite_algebra import AbelianGroup, GroupAlgebraElement, gf_create, gr_create
from .linesets import LineSet
from .mubs import MubFamily, SemifieldTable, _prime_power

__all__ = [
    "DifferenceSetReport",
    "GraphWithSpectrum",
    "LinearCode",
    "classify_difference_set",
    "code_to_lines",
    "code_weights",
    "coset_spectrum",
    "cover_graph",
    "diffset_from_json",
    "diffset_lines",
    "diffset_to_json",
    "dual_code",
    "field_rds",
    "linear_code_from_csv",
    "linear_code_to_csv",
    "rds_to_mubs",
    "semifield_rds",
    "singer_difference_set",
]

_ENUM_CAP = 2**20
_DESK_GROUP_CAP = 512


# ---------------------------------------------------------------------------
# difference sets
# ---------------------------------------------------------------------------


@dataclass
class DifferenceSetReport:
    """Outcome of matching D against the plain and relative templates.

    kind is "plain" with params (v, k, lam), "relative" with params
    (m, n, k, lam), or "none".  difference_multiset holds the full
    convolution D * D^(-1) so callers can inspect near misses.
    """

    kind: str
    params: tuple | None
    excluded_subgroup: list | None
    difference_multiset: GroupAlgebraElement


def _is_subgroup(G, elems):
    s = set(elems)
    if G.identity not in s:
        return False
    for a in s:
        if G.inverse(a) not in s:
            return False
        for b in s:
            if G.op(a, b) not in s:
                return False
    return True


def classify_difference_set(G, D, N=None):
    """Match D * D^(-1) against k*1 + lam*(G - 1) and k*1 + lam*(G - N).

    The relative template forces N to be the zero-coefficient support plus
    the identity, so no subgroup search is needed: that candidate either is
    a subgroup with constant coefficients outside it, or nothing works.
    When N is supplied it is verified instead of inferred.
    """
    Dt = [tuple(g) for g in D]
    if not Dt:
        raise ValueError("D is empty")
    if len(set(Dt)) != len(Dt):
        raise ValueError("D has repeated elements")
    k = len(Dt)
    el = GroupAlgebraElement.from_subset(G, Dt)
    diffs = el * el.inverse_support()
    ident = G.identity
    elems = G.elements()
    zeros = sorted(g for g in elems if g != ident and diffs[g] == 0)

    if N is not None:
        Nt = sorted(tuple(g) for g in N)
        if not _is_subgroup(G, Nt):
            raise ValueError("supplied N is not a subgroup")
    elif G.order > _DESK_GROUP_CAP:
        raise ValueError(
            f"|G| = {G.order} > {_DESK_GROUP_CAP}: supply the excluded subgroup N"
        )
    else:
        cand = sorted(zeros + [ident])
        Nt = cand if _is_subgroup(G, cand) else None

    # plain: every non-identity coefficient equal and positive
    off_vals = {diffs[g] for g in elems if g != ident}
    if not zeros and len(off_vals) == 1 and (N is None or Nt == [ident]):
        return DifferenceSetReport("plain", (G.order, k, off_vals.pop()), None, diffs)

    # relative: zero exactly on N minus identity, constant lam outside N
    if Nt is not None and len(Nt) > 1:
        nset = set(Nt)
        if all(diffs[g] == 0 for g in Nt if g != ident):
            outside = {diffs[g] for g in elems if g not in nset}
            if len(outside) == 1 and 0 not in outside:
                n_ = len(Nt)
                params = (G.order // n_, n_, k, outside.pop())
                return DifferenceSetReport("relative", params, Nt, diffs)

    return DifferenceSetReport("none", None, None, diffs)


def diffset_lines(G, D):
    """Character rows restricted to D, scaled by 1/sqrt(|D|): |G| lines in C^|D|.

    D must generate G, otherwise distinct characters collapse to identical
    restrictions.  Angles are |chi(D D^-1)| / |D|^2 over nontrivial chi.
    """
    Dt = sorted(set(tuple(g) for g in D))
    if G.subgroup_generated_by(Dt) != sorted(G.elements()):
        raise ValueError("D does not generate G")
    k = len(Dt)
    rows = np.array(
        [[G.character_value(a, d) for d in Dt] for a in G.elements()], dtype=complex
    ) / np.sqrt(k)
    return LineSet(k, rows, field="complex")


def singer_difference_set(q):
    """Exponents i < q^2+q+1 with zero relative trace of theta^i in GF(q^3).

    theta is the default primitive element; other moduli give shift- or
    multiplier-equivalent sets.  classify_difference_set sees a plain
    (q^2+q+1, q+1, 1) difference set in Z_{q^2+q+1}.
    """
    p, m = _prime_power(q)
    F = gf_create(p, 3 * m)
    v = q * q + q + 1
    zero = F.from_int(0)
    theta = F.x()
    cur = F.from_int(1)
    D = []
    for i in range(v):
        if F.relative_trace(cur, m) == zero:
            D.append((i,))
        cur = F.mul(cur, theta)
    G = AbelianGroup([v])
    return G, D


def field_rds(q):
    """A semi-regular (q, q, q, 1) relative difference set from GF(q).

    Odd q: pairs (a, -a*a/2) inside Z_p^{2m}, the field playing the role of
    its own (pre)semifield.  Even q: the Teichmuller set of the Galois ring
    GR(4^m) inside Z_4^m, where the forbidden subgroup is 2*GR = {0,2}^m.
    Returns (G, D, N).
    """
    p, m = _prime_power(q)
    if p == 2:
        R = gr_create(m)
        G = AbelianGroup([4] * m)
        D = sorted(R.teichmuller)
        N = sorted(itertools.product((0, 2), repeat=m))
        return G, D, N
    return semifield_rds(SemifieldTable.from_field(q))


def semifield_rds(table):
    """The (q, q, q, 1) relative difference set of an odd-order semifield.

    D = {(a, -(a*a)/2)} in Z_p^{2m} with the semifield square a*a; the
    excluded subgroup is the second factor {0} x Z_p^m.
    """
    if table.p == 2:
        raise ValueError("even characteristic needs the Galois-ring route")
    table.validate()
    p, m = table.p, table.m
    inv2 = pow(2, -1, p)
    G = AbelianGroup([p] * (2 * m))
    D = []
    for a in table.elements:
        sq = table.product(a, a)
        D.append(tuple(a) + tuple((-inv2 * c) % p for c in sq))
    N = sorted((0,) * m + b for b in itertools.product(range(p), repeat=m))
    return G, sorted(D), N


def rds_to_mubs(G, D, N=None):
    """n + 1 mutually unbiased bases in C^k from a semi-regular (k,n,k,lam) RDS.

    Characters trivial on N form a subgroup H of order k; each of the n
    cosets of H, restricted to D and scaled by 1/sqrt(k), is an orthonormal
    basis, and distinct cosets are mutually unbiased.  The standard basis is
    prepended.  Certification happens inside MubFamily.
    """
    report = classify_difference_set(G, D, N)
    if report.kind != "relative":
        raise ValueError(f"classification gave {report.kind!r}, need a relative difference set")
    m_, n_, k, lam = report.params
    if m_ != k:
        raise ValueError(f"({m_},{n_},{k},{lam}) is not semi-regular (need m = k)")
    Nt = report.excluded_subgroup
    Dt = sorted(tuple(g) for g in D)

    H = [a for a in G.elements() if G.character_trivial_on(a, Nt)]
    seen = set()
    bases = [np.eye(k, dtype=complex)]
    for a in G.elements():
        if a in seen:
            continue
        coset = sorted(G.op(a, h) for h in H)
        seen.update(coset)
        B = np.array(
            [[G.character_value(c, d) for c in coset] for d in Dt], dtype=complex
        ) / np.sqrt(k)
        bases.append(B)
    return MubFamily(k, bases, provenance=("rds", f"k={k},n={n_}"))


# ---------------------------------------------------------------------------
# bipartite covers
# ---------------------------------------------------------------------------


@dataclass
class GraphWithSpectrum:
    """A certified graph: 0/1 adjacency, clustered spectrum, intersection array."""

    adjacency: np.ndarray
    eigenvalues: list  # [(value, multiplicity)], descending
    intersection_array: tuple | None = None  # (b_list, c_list)
    diameter: int | None = None
    labels: list | None = None

    def edge_list(self):
        rows, cols = np.nonzero(np.triu(self.adjacency))
        return list(zip(rows.tolist(), cols.tolist()))


def _bfs_all_pairs(A):
    n = A.shape[0]
    nbrs = [np.flatnonzero(A[i]) for i in range(n)]
    dist = np.full((n, n), -1, dtype=np.int64)
    for s in range(n):
        dist[s, s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in nbrs[u]:
                    if dist[s, w] < 0:
                        dist[s, w] = d
                        nxt.append(w)
            frontier = nxt
    if (dist < 0).any():
        raise ValueError("graph is disconnected")
    return dist


def _distance_census(A):
    """Definitional distance-regularity check: returns (b, c, diameter).

    b[i] and c[i] count neighbours one step further / nearer from every pair
    at distance i; any pair disagreeing with the first-seen value is raised
    as a witness.
    """
    dist = _bfs_all_pairs(A)
    n = A.shape[0]
    diam = int(dist.max())
    b = [None] * (diam + 1)
    c = [None] * (diam + 1)
    a = [None] * (diam + 1)
    for u in range(n):
        du = dist[u]
        for v in range(n):
            i = du[int(v)]
            nb = np.flatnonzero(A[v])
            dn = du[nb]
            trip = (int((dn == i + 1).sum()), int((dn == i - 1).sum()), int((dn == i).sum()))
            for store, val in zip((b, c, a), trip):
                if store[i] is None:
                    store[i] = val
                elif store[i] != val:
                    raise ValueError(
                        f"not distance-regular: witness pair ({u}, {v}) at distance {i}"
                    )
    return b[:-1], c[1:], diam


def _cluster_eigenvalues(vals, tol):
    vals = np.sort(vals)[::-1]
    out = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[start] - vals[i] > tol:
            out.append((float(vals[start:i].mean()), i - start))
            start = i
    return out


def _tank_trap_adjacency():
    """The explicit 3-fold cover of K_{6,6} on 5+infinity symbols.

    Row i of the base array pairs {inf, i}, {1+i, 4+i}, {2+i, 3+i} mod 5;
    shifting the three columns cyclically by j gives layer j.  Black vertex
    B_i(j) joins white W_k(h) when k lies in cell (i, h - j); the two
    infinity families are matched within layers, including B_inf(j)W_inf(j).
    """
    INF = 5
    pairs = lambda i: [(INF, i % 5), ((1 + i) % 5, (4 + i) % 5), ((2 + i) % 5, (3 + i) % 5)]
    black = [(i, j) for i in range(6) for j in range(3)]
    white = list(black)
    bidx = {v: t for t, v in enumerate(black)}
    widx = {v: 18 + t for t, v in enumerate(white)}
    A = np.zeros((36, 36), dtype=np.int64)

    def join(bi, bj, wk, wh):
        A[bidx[(bi, bj)], widx[(wk, wh)]] = 1

    for i in range(5):
        for j in range(3):
            row = pairs(i)
            for h in range(3):
                for k in row[(h - j) % 3]:
                    join(i, j, k, h)
    for j in range(3):
        for k in range(6):
            join(INF, j, k, j)
            if k != INF:
                join(k, j, INF, j)
    A = A + A.T
    labels = [f"B_{'inf' if i == INF else i}({j})" for i, j in black]
    labels += [f"W_{'inf' if k == INF else k}({h})" for k, h in white]
    return A, labels


def cover_graph(G=None, D=None, N=None, builtin=None):
    """Antipodal distance-regular cover of K_{k,k}, certified by census.

    Either build the bipartite graph on two copies of G with (0,x) ~ (1,y)
    iff y - x in D, or pass builtin="tank-trap" for the 36-vertex triple
    cover of K_{6,6}.  The distance census must return diameter 4 and the
    array {k, k-1, k-lam, 1; 1, lam, k-1, k}; the spectrum is then checked
    against {+-k, +-sqrt(k), 0} with multiplicities {1, k(n-1), 2(k-1)}.
    """
    if builtin is not None:
        if builtin != "tank-trap":
            raise ValueError(f"unknown builtin {builtin!r}")
        A, labels = _tank_trap_adjacency()
    else:
        if G is None or D is None:
            raise ValueError("need (G, D) or a builtin name")
        if N is not None:
            report = classify_difference_set(G, D, N)
            if report.kind != "relative":
                raise ValueError(f"classification gave {report.kind!r}, not relative")
        Dset = {tuple(g) for g in D}
        elems = G.elements()
        v = len(elems)
        A = np.zeros((2 * v, 2 * v), dtype=np.int64)
        for i, x in enumerate(elems):
            xinv = G.inverse(x)
            for j, y in enumerate(elems):
                if G.op(y, xinv) in Dset:
                    A[i, v + j] = A[v + j, i] = 1
        labels = [f"(0,{x})" for x in elems] + [f"(1,{y})" for y in elems]

    b, c, diam = _distance_census(A)
    if diam != 4:
        raise ValueError(f"diameter {diam}, not a 4-diameter cover of K_(k,k)")
    k, lam = b[0], c[1]
    if b != [k, k - 1, k - lam, 1] or c != [1, lam, k - 1, k]:
        raise ValueError(f"intersection array {{{b};{c}}} is not of cover shape")
    if (k - lam) % lam:
        raise ValueError(f"fold count (k-lam)/lam = {(k - lam)}/{lam} is not integral")
    n_fold = (k - lam) // lam + 1

    vals = np.linalg.eigvalsh(A.astype(float))
    expected = np.sort(
        np.concatenate(
            [
                [-k, k],
                np.full(k * (n_fold - 1), -np.sqrt(k)),
                np.full(k * (n_fold - 1), np.sqrt(k)),
                np.zeros(2 * (k - 1)),
            ]
        )
    )
    dev = np.abs(np.sort(vals) - expected).max()
    if dev > 1e-8 * max(1.0, k):
        raise ValueError(f"spectrum deviates from the cover pattern by {dev:.3g}")

    spectrum = _cluster_eigenvalues(vals, 1e-8 * max(1.0, k))
    return GraphWithSpectrum(A, spectrum, (b, c), diam, labels)


# ---------------------------------------------------------------------------
# linear codes
# ---------------------------------------------------------------------------


class LinearCode:
    """A linear code over a prime field GF(p) or over Z4.

    Generators are stored as rows; codewords are enumerated (and cached) on
    demand, refusing anything past 2^20 words.  Weights are Hamming for GF
    and Lee for Z4.
    """

    def __init__(self, generators, alphabet):
        if alphabet == "z4":
            self.kind = "z4"
            self.q = 4
        else:
            q = int(alphabet)
            if not isprime(q):
                raise ValueError(f"alphabet must be a prime or 'z4', got {alphabet!r}")
            self.kind = "gf"
            self.q = q
        gen = np.atleast_2d(np.asarray(generators, dtype=np.int64)) % self.q
        if gen.size == 0 or gen.shape[1] == 0:
            raise ValueError("generator matrix is empty")
        self.generators = gen
        self.n = gen.shape[1]
        self._codewords = None

    def codewords(self):
        if self._codewords is None:
            words = np.zeros((1, self.n), dtype=np.int64)
            for g in self.generators:
                stack = [(words + a * g) % self.q for a in range(self.q)]
                words = np.unique(np.concatenate(stack), axis=0)
                if len(words) > _ENUM_CAP:
                    raise ValueError(f"code too large to enumerate (> 2^20 words)")
            self._codewords = words
        return self._codewords

    def __len__(self):
        return len(self.codewords())

    def contains(self, word):
        word = tuple(int(x) % self.q for x in word)
        return word in {tuple(w) for w in self.codewords()}

    def word_weight(self, word):
        w = np.asarray(word) % self.q
        if self.kind == "gf":
            return int((w != 0).sum())
        return int(np.minimum(w, 4 - w).sum())

    def min_distance(self):
        words = self.codewords()
        if len(words) == 1:
            return None
        if self.kind == "gf":
            wts = (words != 0).sum(axis=1)
        else:
            wts = np.minimum(words % 4, (4 - words) % 4).sum(axis=1)
        return int(wts[wts > 0].min())

    def dual(self):
        if self.kind == "gf":
            kernel = _gf_nullspace(self.generators, self.q)
        else:
            kernel = _z4_kernel(self.generators)
        if len(kernel) == 0:
            kernel = np.zeros((1, self.n), dtype=np.int64)
        return LinearCode(kernel, "z4" if self.kind == "z4" else self.q)

    def __repr__(self):
        tag = "Z4" if self.kind == "z4" else f"GF({self.q})"
        return f"LinearCode({tag}, n={self.n}, {len(self.generators)} generators)"


def dual_code(C):
    """All words with zero inner product against every codeword of C."""
    return C.dual()


def code_weights(C):
    """Exact weight distribution {weight: count} (Hamming for GF, Lee for Z4)."""
    words = C.codewords()
    if C.kind == "gf":
        wts = (words != 0).sum(axis=1)
    else:
        wts = np.minimum(words % 4, (4 - words) % 4).sum(axis=1)
    return dict(sorted(Counter(int(w) for w in wts).items()))


def _gf_nullspace(M, p):
    M = M.copy() % p
    m, n = M.shape
    pivots = []
    r = 0
    for col in range(n):
        pr = next((i for i in range(r, m) if M[i, col] % p), None)
        if pr is None:
            continue
        M[[r, pr]] = M[[pr, r]]
        M[r] = (M[r] * pow(int(M[r, col]), -1, p)) % p
        for i in range(m):
            if i != r and M[i, col]:
                M[i] = (M[i] - M[i, col] * M[r]) % p
        pivots.append(col)
        r += 1
        if r == m:
            break
    basis = []
    for free in (col for col in range(n) if col not in pivots):
        v = np.zeros(n, dtype=np.int64)
        v[free] = 1
        for i, col in enumerate(pivots):
            v[col] = (-M[i, free]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64) if basis else np.zeros((0, n), dtype=np.int64)


def _z4_kernel(M):
    """Generators of {x : M x = 0 over Z4} by Smith-style diagonalization.

    Row operations leave the kernel alone; column operations are tracked in
    Q so that solutions of the diagonal system map back via x = Q y.  Pivots
    are units when available, otherwise 2; leftover columns are free.
    """
    A = np.array(M, dtype=np.int64) % 4
    m, n = A.shape
    Q = np.eye(n, dtype=np.int64)
    diag = []
    for k in range(min(m, n)):
        pos = None
        for unit_pass in (True, False):
            for i in range(k, m):
                for j in range(k, n):
                    if (A[i, j] % 2 == 1) if unit_pass else (A[i, j] != 0):
                        pos = (i, j)
                        break
                if pos:
                    break
            if pos:
                break
        if pos is None:
            break
        i, j = pos
        A[[k, i]] = A[[i, k]]
        A[:, [k, j]] = A[:, [j, k]]
        Q[:, [k, j]] = Q[:, [j, k]]
        piv = A[k, k] % 4
        if piv % 2 == 1:
            inv = piv if piv == 1 else 3  # 3*3 = 9 = 1 mod 4
            A[k] = (A[k] * inv) % 4
            for i in range(m):
                if i != k and A[i, k]:
                    A[i] = (A[i] - A[i, k] * A[k]) % 4
            for j in range(n):
                if j != k and A[k, j]:
                    Q[:, j] = (Q[:, j] - A[k, j] * Q[:, k]) % 4
                    A[:, j] = (A[:, j] - A[k, j] * A[:, k]) % 4
        else:
            # pivot 2: every remaining entry in its row/column is 0 or 2
            for i in range(m):
                if i != k and A[i, k]:
                    A[i] = (A[i] - A[k]) % 4
            for j in range(n):
                if j != k and A[k, j]:
                    Q[:, j] = (Q[:, j] - Q[:, k]) % 4
                    A[:, j] = (A[:, j] - A[:, k]) % 4
        diag.append(int(A[k, k] % 4))
    basis = []
    for idx, d in enumerate(diag):
        if d == 2:
            basis.append((2 * Q[:, idx]) % 4)
    for j in range(len(diag), n):
        basis.append(Q[:, j] % 4)
    return np.array(basis, dtype=np.int64) if basis else np.zeros((0, n), dtype=np.int64)


def coset_spectrum(C):
    """Eigenvalues of the coset graph of C, one per dual codeword.

    GF(p): vertices are cosets of C, the connection set is every nonzero
    multiple of every coordinate vector, and a dual word of weight a yields
    (p-1)n - pa.  Z4: connection set {+-e_i}, Lee weight a yields 2(n-a).
    The closed forms are cross-checked against literal character sums over
    the connection set whenever the coset count is at most 4096.

    When the minimum distance of C is below 3, connection cosets collide
    and the result is the spectrum of the connection multiset (a multigraph
    on the cosets) rather than of a simple graph.
    """
    dual_words = C.dual().codewords()
    n = C.n
    if C.kind == "gf":
        q = C.q
        wts = (dual_words != 0).sum(axis=1)
        vals = (q - 1) * n - q * wts
        if len(dual_words) <= 4096:
            roots = np.exp(2j * np.pi * np.arange(q) / q)
            direct = sum(
                roots[(a * dual_words) % q].sum(axis=1) for a in range(1, q)
            )
            assert np.abs(direct - vals).max() < 1e-8 * max(1, (q - 1) * n)
    else:
        lee = np.minimum(dual_words % 4, (4 - dual_words) % 4).sum(axis=1)
        vals = 2 * (n - lee)
        if len(dual_words) <= 4096:
            direct = (
                np.exp(1j * np.pi / 2 * dual_words).sum(axis=1)
                + np.exp(-1j * np.pi / 2 * dual_words).sum(axis=1)
            )
            assert np.abs(direct - vals).max() < 1e-8 * max(1, 2 * n)
    return sorted((int(v) for v in vals), reverse=True)


def _near_balance_profile(counts):
    """True when all but (at most) one alphabet letter occur equally often."""
    ordered = sorted(counts)
    return ordered[0] == ordered[-2] or ordered[1] == ordered[-1]


def code_to_lines(C, variant):
    """Map codewords through the alphabet character and read off lines.

    variant "gf-balanced": every codeword must use each nonzero letter
    equally often (automatic over GF(2)); distinct weights become distinct
    angles.  variant "gf-near-balanced": every codeword balanced up to one
    letter and the all-ones word in C, which collapses the image q-fold.
    variant "z4": i^codeword with 1 in C, collapsing 4-fold.  Projectively
    repeated images are merged before the LineSet is built.
    """
    words = C.codewords()
    n = C.n
    if variant in ("gf-balanced", "gf-near-balanced"):
        if C.kind != "gf":
            raise ValueError(f"variant {variant!r} needs a GF code")
        q = C.q
        for w in words:
            counts = np.bincount(w, minlength=q)
            if variant == "gf-balanced":
                if len(set(counts[1:].tolist())) > 1:
                    raise ValueError(f"codeword {w.tolist()} is not balanced")
            elif not _near_balance_profile(counts.tolist()):
                raise ValueError(f"codeword {w.tolist()} is not near-balanced")
        if variant == "gf-near-balanced" and not C.contains([1] * n):
            raise ValueError("the all-ones word is not in the code")
        vecs = np.exp(2j * np.pi * words / q) / np.sqrt(n)
    elif variant == "z4":
        if C.kind != "z4":
            raise ValueError("variant 'z4' needs a Z4 code")
        if not C.contains([1] * n):
            raise ValueError("the all-ones word is not in the code")
        vecs = np.exp(1j * np.pi / 2 * words) / np.sqrt(n)
    else:
        raise ValueError(f"unknown variant {variant!r}")

    overlap = np.abs(vecs @ vecs.conj().T)
    keep = []
    for i in range(len(vecs)):
        if all(overlap[i, j] < 1 - 1e-9 for j in keep):
            keep.append(i)
    vecs = vecs[keep]
    if np.abs(vecs.imag).max() < 1e-12:
        return LineSet(n, vecs.real, field="real")
    return LineSet(n, vecs, field="complex")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def diffset_to_json(G, D, N=None, path=None):
    """{"orders": [...], "D": [[coords], ...], "N": ...?} as a JSON string or file."""
    doc = {"orders": list(G.cyclic_orders), "D": [list(g) for g in D]}
    if N is not None:
        doc["N"] = [list(g) for g in N]
    text = json.dumps(doc, indent=2)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def diffset_from_json(source):
    """Inverse of diffset_to_json; accepts a JSON string or a file path."""
    text = source
    if "\n" not in source and not source.lstrip().startswith("{"):
        with open(source) as fh:
            text = fh.read()
    doc = json.loads(text)
    G = AbelianGroup(doc["orders"])
    D = [tuple(g) for g in doc["D"]]
    N = [tuple(g) for g in doc["N"]] if "N" in doc else None
    return G, D, N


def linear_code_to_csv(C, path):
    """Alphabet header line, then one generator row per line."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["z4"] if C.kind == "z4" else ["gf", C.q])
        for row in C.generators:
            writer.writerow(row.tolist())


def linear_code_from_csv(path):
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    header = [cell.strip().lower() for cell in rows[0]]
    if header[0] == "z4":
        alphabet = "z4"
    elif header[0] == "gf":
        alphabet = int(header[1])
    else:
        raise ValueError(f"unknown alphabet header {rows[0]!r}")
    generators = [[int(cell) for cell in row] for row in rows[1:]]
    if not generators:
        raise ValueError("no generator rows in CSV")
    return LinearCode(generators, alphabet)
