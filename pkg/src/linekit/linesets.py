"""Line sets in C^d or R^d: angles, design strength, certification, doubling.

A LineSet is n unit vectors regarded projectively (each spans a line).  All
statistics below depend only on the squared inner-product moduli |<a,b>|^2,
so they are invariant under per-vector phases and global unitaries.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import pi

import numpy as np
from numpy.polynomial import polynomial as npoly

from linekit.jacobi import JacobiFamily, dim_harm, jacobi_poly

#: relative tolerance on the Jacobi pair sums T_r when deciding design strength
EPS_DESIGN = 1e-8

#: largest denominator considered when snapping a measured angle to a rational
SNAP_DENOMINATOR = 10**6


class LineSet:
    """n unit vectors in dimension dim, optionally partitioned into bases.

    vectors: (n, dim) complex array (real sets keep zero imaginary parts);
    basis_labels: length-n list partitioning the set into cells of size dim.
    Immutable by convention after construction.
    """

    def __init__(self, dim, vectors, field="complex", basis_labels=None, tol=1e-9):
        self.dim = int(dim)
        self.field = field
        self.tol = float(tol)
        if field not in ("complex", "real"):
            raise ValueError(f"field must be 'complex' or 'real', got {field!r}")
        V = np.asarray(vectors, dtype=complex)
        if V.ndim != 2 or V.shape[1] != self.dim:
            raise ValueError(f"vectors must be n x {self.dim}, got shape {V.shape}")
        if V.shape[0] < 1:
            raise ValueError("a line set needs at least one vector")
        norms = np.linalg.norm(V, axis=1)
        worst = int(np.abs(norms - 1).argmax())
        if abs(norms[worst] - 1) > max(self.tol, 1e-12) * 10:
            raise ValueError(
                f"vector {worst} is not unit norm (|v| = {norms[worst]:.6g})"
            )
        if field == "real" and np.abs(V.imag).max() > self.tol * 10:
            raise ValueError("field='real' but vectors have imaginary parts")
        self.vectors = V
        if basis_labels is not None:
            basis_labels = list(basis_labels)
            if len(basis_labels) != V.shape[0]:
                raise ValueError("basis_labels must have one entry per vector")
            cells = {}
            for lab in basis_labels:
                cells[lab] = cells.get(lab, 0) + 1
            bad = {lab: c for lab, c in cells.items() if c != self.dim}
            if bad:
                raise ValueError(f"label cells must have size {self.dim}, got {bad}")
        self.basis_labels = basis_labels

    @property
    def n(self):
        return self.vectors.shape[0]

    def gram(self):
        return self.vectors.conj() @ self.vectors.T

    def angle_matrix(self):
        return np.abs(self.gram()) ** 2

    def __repr__(self):
        labs = "" if self.basis_labels is None else f", {len(set(self.basis_labels))} bases"
        return f"LineSet({self.n} lines in {self.field} dim {self.dim}{labs})"


# ---------------------------------------------------------------------------
# degree set
# ---------------------------------------------------------------------------


@dataclass
class DegreeSetReport:
    angles: list        # cluster representatives, sorted ascending
    multiplicities: list
    s: int
    zero_present: bool


def gram_degree_set(X):
    """Cluster the n(n-1)/2 pairwise angles |<a,b>|^2 into the degree set A.

    Values are sorted and split wherever an adjacent gap exceeds X.tol, which
    makes the clustering deterministic and phase-invariant.  A pair with
    angle above 1 - tol means two copies of the same projective line: error.
    """
    A = X.angle_matrix()
    n = X.n
    iu, ju = np.triu_indices(n, k=1)
    vals = A[iu, ju]
    dup = np.nonzero(vals > 1 - X.tol)[0]
    if dup.size:
        i, j = int(iu[dup[0]]), int(ju[dup[0]])
        raise ValueError(f"vectors {i} and {j} span the same line (angle {vals[dup[0]]:.12g})")
    if vals.size == 0:
        return DegreeSetReport(angles=[], multiplicities=[], s=0, zero_present=False)
    order = np.argsort(vals, kind="stable")
    svals = vals[order]
    splits = np.nonzero(np.diff(svals) > X.tol)[0]
    bounds = [0, *(splits + 1), len(svals)]
    angles, mult = [], []
    for lo, hi in zip(bounds, bounds[1:]):
        angles.append(float(svals[lo:hi].mean()))
        mult.append(hi - lo)
    assert sum(mult) == n * (n - 1) // 2
    return DegreeSetReport(
        angles=angles,
        multiplicities=mult,
        s=len(angles),
        zero_present=bool(angles and angles[0] <= X.tol),
    )


# ---------------------------------------------------------------------------
# design strength via Jacobi pair sums
# ---------------------------------------------------------------------------


@dataclass
class DesignReport:
    T: list             # T[r-1] = (1/n^2) * sum_{a,b} g_r(|<a,b>|^2), r = 1..t_max
    strength: int
    t_max: int
    epsilon: float


def design_strength(X, fam=None, t_max=4, epsilon=EPS_DESIGN):
    """Pair-sum design test: X is a t-design when T_r vanishes for r = 1..t.

    Each T_r is nonnegative up to roundoff; "vanishes" means
    T_r <= epsilon * g_r(1) / n.  Sums run in the stored row-major order so
    results are reproducible.
    """
    if fam is None:
        fam = JacobiFamily(X.dim, max_k=max(t_max, 4))
    if fam.d != X.dim:
        raise ValueError(f"family dimension {fam.d} != line set dimension {X.dim}")
    A = X.angle_matrix()
    n = X.n
    T = []
    for r in range(1, t_max + 1):
        coeffs = [float(c) for c in jacobi_poly(fam, r, "g")]
        T.append(float(npoly.polyval(A, coeffs).sum()) / (n * n))
    strength = 0
    for r in range(1, t_max + 1):
        if T[r - 1] <= epsilon * dim_harm(X.dim, r, r) / n:
            strength = r
        else:
            break
    return DesignReport(T=T, strength=strength, t_max=t_max, epsilon=epsilon)


# ---------------------------------------------------------------------------
# MUB and equiangular certification
# ---------------------------------------------------------------------------


def verify_mub(X):
    """Certify a labeled line set as mutually unbiased bases.

    Each label cell must be an orthonormal basis (error if not); the set is
    unbiased when every cross-cell angle equals 1/dim within tolerance.
    Returns the worst-case measured cross angle as alpha.
    """
    if X.basis_labels is None:
        raise ValueError("verify_mub needs basis_labels partitioning the vectors")
    labels = sorted(set(X.basis_labels))
    cells = {lab: [i for i, l in enumerate(X.basis_labels) if l == lab] for lab in labels}
    bad = []
    for lab, idx in cells.items():
        B = X.vectors[idx]
        if not np.allclose(B.conj() @ B.T, np.eye(X.dim), atol=max(X.tol, 1e-12) * 10):
            bad.append(lab)
    if bad:
        raise ValueError(f"cells {bad} are not orthonormal bases")
    A = X.angle_matrix()
    target = 1.0 / X.dim
    worst = 0.0
    cross_vals = []
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            cross = A[np.ix_(cells[labels[a]], cells[labels[b]])]
            worst = max(worst, float(np.abs(cross - target).max()))
            cross_vals.append(cross.ravel())
    alpha = float(np.concatenate(cross_vals).mean()) if cross_vals else target
    unbiased = worst <= max(X.tol, 1e-12) * 10
    return {"unbiased": unbiased, "alpha": alpha,
            "count": len(labels), "max_deviation": worst}


def verify_equiangular(X, fam=None):
    """Certify a one-angle line set and test the d(1-a)/(1-da) bound equality.

    The measured angle is snapped to the nearest rational with denominator
    <= 10^6 so that bound equality is decided exactly; the 1-design pair sum
    T_1 independently certifies the same equality, and a mismatch between the
    two certificates triggers a warning.
    """
    report = gram_degree_set(X)
    if report.s != 1:
        return {"equiangular": False, "alpha": None, "relative_equality": False,
                "degree_set": report.angles}
    alpha = report.angles[0]
    snapped = Fraction(alpha).limit_denominator(SNAP_DENOMINATOR)
    d, n = X.dim, X.n
    if snapped >= Fraction(1, d):
        equality = False
        bound = None
    else:
        bound = Fraction(d) * (1 - snapped) / (1 - d * snapped)
        equality = bound == n
    des = design_strength(X, fam, t_max=1)
    t1_zero = des.strength >= 1
    if bound is not None and equality != t1_zero:
        warnings.warn(
            f"bound-equality certificate ({equality}) disagrees with the "
            f"1-design pair sum T_1 = {des.T[0]:.3g} ({t1_zero}); the snapped "
            f"angle {snapped} may be wrong",
            stacklevel=2,
        )
    return {"equiangular": True, "alpha": alpha, "alpha_snapped": snapped,
            "relative_equality": bool(equality), "bound": bound, "T1": des.T[0]}


# ---------------------------------------------------------------------------
# equivalence transforms
# ---------------------------------------------------------------------------


def canonical_dephase(bases):
    """Normalize a list of bases: premultiply everything by the adjoint of the
    first, then phase each later column so its first entry is real positive.

    Angles are untouched (a global unitary and per-column phases).  The first
    basis becomes the identity.
    """
    bases = [np.asarray(B, dtype=complex) for B in bases]
    B0 = bases[0]
    if abs(np.linalg.det(B0)) < 1e-12:
        raise ValueError("first basis is singular")
    out = [B0.conj().T @ B for B in bases]
    for k in range(1, len(out)):
        B = out[k]
        for j in range(B.shape[1]):
            lead = B[0, j]
            if abs(lead) > 1e-12:
                B[:, j] *= np.conj(lead) / abs(lead)
    return out


# ---------------------------------------------------------------------------
# complex-to-real doubling
# ---------------------------------------------------------------------------


def real_doubling(X):
    """Send each v = (a_1+ib_1, ..., a_d+ib_d) to the orthogonal real pair

        v1 = (a_1, b_1, ..., a_d, b_d),   v2 = (b_1, -a_1, ..., b_d, -a_d)

    giving 2n vectors in R^(2d) whose every angle is one of the two split
    parts of a source angle: |u*v|^2 = |v1.u1|^2 + |v1.u2|^2, so no output
    angle exceeds the largest input angle.
    """
    if X.field != "complex":
        raise ValueError("real_doubling expects a complex line set")
    n, d = X.n, X.dim
    out = np.zeros((2 * n, 2 * d))
    for i, v in enumerate(X.vectors):
        a, b = v.real, v.imag
        out[2 * i, 0::2] = a
        out[2 * i, 1::2] = b
        out[2 * i + 1, 0::2] = b
        out[2 * i + 1, 1::2] = -a
    labels = None
    if X.basis_labels is not None:
        labels = [lab for lab in X.basis_labels for _ in range(2)]
    return LineSet(2 * d, out, field="real", basis_labels=labels, tol=X.tol)


def phase_align_for_doubling(X):
    """Rotate each vector by a phase so real doubling splits angles evenly.

    The doubled images of u, v make four equal angles exactly when the inner
    product u*v has argument pi/4 modulo pi/2 (equal real and imaginary
    magnitude).  Phases are propagated along a spanning tree of the
    non-orthogonality graph, working modulo pi/2; every non-tree edge is then
    checked, and an inconsistent edge raises with the offending pair.
    Orthogonal pairs are unaffected by any phasing.
    """
    G = X.vectors.conj() @ X.vectors.T
    n = X.n
    halfpi = pi / 2
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if abs(G[i, j]) > X.tol:
                adj[i].append(j)
                adj[j].append(i)
    phase = [None] * n
    for root in range(n):
        if phase[root] is not None:
            continue
        phase[root] = 0.0
        stack = [root]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if phase[v] is None:
                    theta = np.angle(G[u, v])
                    phase[v] = (phase[u] + pi / 4 - theta) % halfpi
                    stack.append(v)
    rotated = X.vectors * np.exp(1j * np.array(phase))[:, None]
    Gr = rotated.conj() @ rotated.T
    for i in range(n):
        for j in adj[i]:
            if j < i:
                continue
            theta = np.angle(Gr[i, j]) % halfpi
            dev = min(abs(theta - pi / 4), abs(theta - pi / 4 + halfpi),
                      abs(theta - pi / 4 - halfpi))
            if dev > 1e-7:
                raise ValueError(
                    f"no consistent phase assignment: pair ({i},{j}) has "
                    f"residual argument deviation {dev:.3g}"
                )
    return LineSet(X.dim, rotated, field="complex",
                   basis_labels=X.basis_labels, tol=X.tol)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def lineset_to_json(X, path=None):
    """Write the interchange format; returns the JSON string."""
    doc = {
        "dim": X.dim,
        "field": X.field,
        "tol": X.tol,
        "vectors": [[[float(z.real), float(z.imag)] for z in row] for row in X.vectors],
    }
    if X.basis_labels is not None:
        doc["labels"] = list(X.basis_labels)
    text = json.dumps(doc)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def lineset_from_json(source):
    """Accepts a JSON string, a parsed dict, or a file path."""
    if isinstance(source, dict):
        doc = source
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        doc = json.loads(source)
    else:
        with open(source) as fh:
            doc = json.load(fh)
    vectors = np.array(
        [[complex(re, im) for re, im in row] for row in doc["vectors"]], dtype=complex
    )
    return LineSet(
        doc["dim"],
        vectors,
        field=doc.get("field", "complex"),
        basis_labels=doc.get("labels"),
        tol=doc.get("tol", 1e-9),
    )
