"""Association-scheme structure of line systems.

Partitioning the pairs of lines by angle gives a family of 0/1 "class"
matrices; this module tests whether their span closes under matrix
multiplication and, when it does, extracts the usual invariants: both
eigenmatrices, intersection numbers, multiplicities, and Krein parameters.
It also builds the zonal idempotent candidates coming from the g-basis,
runs the same closure test on the Gram-weighted classes, and computes
Seidel spectra of real equiangular sets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from linekit.jacobi import JacobiFamily, jacobi_poly
from linekit.linesets import gram_degree_set

#: Frobenius-residual threshold below which a span counts as multiplicatively closed
CLOSURE_TOL = 1e-8

#: seed for the random combination used to separate common eigenspaces
_MIX_SEED = 58123


@dataclass
class SchemeReport:
    """Outcome of testing a line system's angle classes for scheme structure.

    ``classes`` counts the non-identity classes (one per angle); ``angles``
    lists them in ascending order, indexing A_1..A_s.  The spectral data is
    populated only when ``closed`` is true.  Rows of P are indexed by common
    eigenspace — the one containing the all-ones vector first — and columns
    by class, so row 0 holds the valencies and row 0 of Q the multiplicities.
    """

    n: int
    classes: int
    angles: list
    closed: bool
    closure_residual: float
    valencies: list | None = None
    multiplicities: list | None = None
    P: np.ndarray | None = None
    Q: np.ndarray | None = None
    intersection_numbers: np.ndarray | None = None
    krein: np.ndarray | None = None
    pq_residual: float | None = None
    krein_min: float | None = None
    reconstruction_residual: float | None = None


@dataclass
class SeidelReport:
    """Seidel matrix of a real equiangular line set, with its spectrum.

    ``inner_product`` is the common |<u,v>| — the square root of the angle
    as a degree set reports it.  ``spectrum`` pairs each eigenvalue with its
    multiplicity, largest eigenvalue first.  When the set meets the bound
    n = d(1-a^2)/(1-d a^2), ``tight_spectrum_residual`` records how far the
    spectrum sits from the forced {-1/a^(n-d), ((n-d)/(d a))^(d)}.
    """

    matrix: np.ndarray
    spectrum: list
    two_eigenvalue: bool
    inner_product: float
    relative_bound: float
    tight: bool
    tight_spectrum_residual: float | None = None


def _angle_masks(X):
    """Class indicators for X: the identity first, then one 0/1 matrix per angle.

    Off-diagonal pairs are assigned to the nearest clustered angle, so the
    masks reproduce the clustering of the degree set and always sum to J.
    """
    report = gram_degree_set(X)
    sq = X.angle_matrix()
    n = X.n
    centres = np.asarray(report.angles, dtype=float)
    nearest = np.argmin(np.abs(sq[:, :, None] - centres[None, None, :]), axis=2)
    off = ~np.eye(n, dtype=bool)
    masks = [np.eye(n)]
    for i in range(centres.size):
        masks.append(np.where(off & (nearest == i), 1.0, 0.0))
    return report, masks


def _span_residual(product, basis):
    """Relative Frobenius distance from `product` to the span of `basis`.

    The basis matrices are assumed to have pairwise disjoint supports, hence
    orthogonal under the Frobenius inner product, so the least-squares
    projection is one coefficient per matrix.  Returns (residual, coeffs).
    """
    norm = np.linalg.norm(product)
    if norm == 0:
        return 0.0, [0.0] * len(basis)
    residual = product.astype(complex)
    coeffs = []
    for B in basis:
        w = np.vdot(B, product) / np.vdot(B, B)
        coeffs.append(w)
        residual = residual - w * B
    return float(np.linalg.norm(residual) / norm), coeffs


def _eig_clusters(vals, scale):
    """Indices of `vals` grouped into near-equal runs, ascending."""
    order = np.argsort(vals)
    gap = 1e-7 * max(1.0, scale)
    groups = [[order[0]]]
    for idx in order[1:]:
        if vals[idx] - vals[groups[-1][-1]] <= gap:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    return groups


def _joint_eigenspaces(masks, scale):
    """Common eigenspaces of a commuting family of symmetric matrices.

    Diagonalizes a fixed-seed random combination first, then refines every
    eigenspace against each matrix in turn, so an accidental eigenvalue
    collision in the combination cannot merge two genuinely distinct spaces.
    """
    rng = np.random.default_rng(_MIX_SEED)
    weights = rng.uniform(1.0, 2.0, size=len(masks))
    mix = sum(w * A for w, A in zip(weights, masks))
    vals, vecs = np.linalg.eigh(mix)
    spaces = [vecs[:, grp] for grp in _eig_clusters(vals, float(np.abs(vals).max()))]
    for A in masks:
        refined = []
        for U in spaces:
            if U.shape[1] == 1:
                refined.append(U)
                continue
            W = U.T @ A @ U
            wvals, wvecs = np.linalg.eigh((W + W.T) / 2)
            for grp in _eig_clusters(wvals, scale):
                refined.append(U @ wvecs[:, grp])
        spaces = refined
    return spaces


def scheme_from_lineset(X, fam=None, tol=CLOSURE_TOL):
    """Test whether the angle classes of X close into an association scheme.

    The classes are A_0 = I plus one symmetric 0/1 matrix per angle; they sum
    to J by construction.  Their span is multiplicatively closed exactly when
    every product A_i A_j projects back onto the span with no remainder, and
    the largest relative remainder over all pairs is reported.  Non-closure
    is an outcome, not an error.

    When the span closes, the common eigenspaces E_0..E_s (the all-ones space
    first, the rest in a fixed order by eigenvalue rows) yield

    * P[j, i]: eigenvalue of A_i on E_j, so row 0 holds the valencies;
    * Q[i, j]: n times the coefficient of A_i in E_j, so row 0 holds the
      multiplicities; P Q = n I is verified and the residual reported;
    * intersection numbers p_ij(k), counted directly from the products and
      cross-checked against the eigenmatrix formula (1/n) sum_l P_li P_lj Q_kl;
    * Krein parameters q_ij(k) from the Schur products E_i o E_j, whose
      minimum is reported (theory puts them at >= 0).

    ``fam`` is accepted for parity with the other scheme operations; the
    closure test needs no polynomial data.
    """
    report, masks = _angle_masks(X)
    v = X.n
    m = len(masks)
    closure = 0.0
    for i in range(m):
        for j in range(i, m):
            res, _ = _span_residual(masks[i] @ masks[j], masks)
            closure = max(closure, res)
    out = SchemeReport(
        n=v,
        classes=m - 1,
        angles=[float(a) for a in report.angles],
        closed=closure <= tol,
        closure_residual=float(closure),
    )
    if not out.closed:
        return out

    spaces = _joint_eigenspaces(masks, float(v))
    if len(spaces) != m:
        raise RuntimeError(
            f"span closed but {len(spaces)} common eigenspaces found for {m} classes"
        )
    ones = np.ones(v)
    first = int(np.argmax([np.linalg.norm(U.T @ ones) for U in spaces]))
    spaces[0], spaces[first] = spaces[first], spaces[0]

    def eigrow(U):
        k = U.shape[1]
        return [float(np.trace(U.T @ A @ U) / k) for A in masks]

    rows = [eigrow(U) for U in spaces]
    rest = sorted(
        range(1, m), key=lambda r: [round(x, 6) for x in rows[r]], reverse=True
    )
    spaces = [spaces[r] for r in [0] + rest]
    rows = [rows[r] for r in [0] + rest]

    P = np.array(rows)
    E = [U @ U.T for U in spaces]
    mults = [int(round(np.trace(Ej))) for Ej in E]
    sizes = np.array([np.vdot(A, A).real for A in masks])

    Q = np.empty((m, m))
    for i in range(m):
        for j in range(m):
            Q[i, j] = v * np.vdot(masks[i], E[j]).real / sizes[i]

    p_direct = np.empty((m, m, m))
    for i in range(m):
        for j in range(m):
            prod = masks[i] @ masks[j]
            for k in range(m):
                p_direct[i, j, k] = np.vdot(masks[k], prod).real / sizes[k]
    p_eig = np.einsum("li,lj,kl->ijk", P, P, Q) / v

    krein = np.empty((m, m, m))
    for i in range(m):
        for j in range(m):
            had = E[i] * E[j]
            for k in range(m):
                krein[i, j, k] = v * np.vdot(E[k], had).real / mults[k]

    out.valencies = [float(x) for x in P[0]]
    out.multiplicities = mults
    out.P = P
    out.Q = Q
    out.intersection_numbers = p_direct
    out.krein = krein
    out.pq_residual = float(np.abs(P @ Q - v * np.eye(m)).max())
    out.krein_min = float(krein.min())
    out.reconstruction_residual = float(np.abs(p_direct - p_eig).max())
    return out


def jacobi_idempotents(X, fam=None, e=1):
    """Zonal idempotent candidates E_0..E_e of a line set.

    (E_r)_{ab} = g_r(|<a,b>|^2) / n, taking the g-basis for the dimension of
    X.  When the set is a 2e-design these are orthogonal idempotents; the
    report carries the pairwise residuals ||E_i E_j - [i==j] E_i|| either
    way, so a shortfall in design strength shows up as a large residual
    rather than an error.  E_0 is always J/n, and trace(E_r) equals the
    degree-r harmonic dimension by the normalization of the g-basis.
    """
    if e < 0:
        raise ValueError("e must be nonnegative")
    if fam is None:
        fam = JacobiFamily(X.dim, max_k=max(e, 2))
    sq = X.angle_matrix()
    n = X.n
    mats = []
    for r in range(e + 1):
        coeffs = [float(c) for c in jacobi_poly(fam, r, kind="g")]
        val = np.zeros_like(sq)
        for c in reversed(coeffs):
            val = val * sq + c
        mats.append(val / n)
    res = np.zeros((e + 1, e + 1))
    for i in range(e + 1):
        for j in range(e + 1):
            target = mats[i] if i == j else 0.0
            res[i, j] = np.linalg.norm(mats[i] @ mats[j] - target)
    return {
        "idempotents": mats,
        "residuals": res,
        "max_residual": float(res.max()),
        "traces": [float(np.trace(M)) for M in mats],
    }


def gram_algebra_check(X, fam=None, tol=CLOSURE_TOL):
    """Closure test for the Gram-weighted classes A'_i = G o A_i.

    The weighted classes keep the raw inner products instead of flattening
    them to 0/1, so their span can close even when the 0/1 span does not.
    A'_0 = I since the lines are unit vectors; a zero angle contributes the
    zero matrix and is dropped from the spanning set.

    The report also carries two Gram-square diagnostics: the distance of G^2
    from span{I, G} (zero for the lines of unbiased bases and for
    equiangular sets meeting the relative bound, where {I, G} spans an
    algebra), and, when the angle set is the {0, 1/d} of unbiased bases, the
    residual of the identity G^2 = (n/d) G.  ``fam`` is accepted for parity
    and unused.
    """
    report, masks = _angle_masks(X)
    G = X.gram()
    weighted = [G * A for A in masks]
    keep = [W for W in weighted if np.linalg.norm(W) > 1e-12 * X.n]
    closure = 0.0
    for A in keep:
        for B in keep:
            res, _ = _span_residual(A @ B, keep)
            closure = max(closure, res)

    Gsq = G @ G
    pair = [np.eye(X.n, dtype=complex), G]
    gramian = np.array([[np.vdot(a, b) for b in pair] for a in pair])
    rhs = np.array([np.vdot(a, Gsq) for a in pair])
    sol = np.linalg.solve(gramian, rhs)
    fit = sol[0] * pair[0] + sol[1] * pair[1]
    square_residual = float(np.linalg.norm(Gsq - fit) / np.linalg.norm(Gsq))

    nonzero = [a for a in report.angles if a > 1e-9]
    mub_residual = None
    if (
        report.zero_present
        and len(nonzero) == 1
        and abs(nonzero[0] - 1.0 / X.dim) <= 1e-9
        and X.n % X.dim == 0
    ):
        m1 = X.n // X.dim
        mub_residual = float(np.linalg.norm(Gsq - m1 * G) / np.linalg.norm(Gsq))

    return {
        "closed": closure <= tol,
        "closure_residual": float(closure),
        "span_dimension": len(keep),
        "zero_class_dropped": bool(report.zero_present),
        "gram_square_residual": square_residual,
        "mub_identity_residual": mub_residual,
    }


def seidel_analysis(X):
    """Seidel matrix S = (G - I)/a of a real equiangular line set.

    Here a is the common magnitude |<u,v>| of the raw inner products — the
    square root of the angle as the degree set reports it.  The entries of S
    must land on 0 (diagonal) and +-1 within tolerance, otherwise the set is
    not honestly equiangular and a ValueError explains the deviation.  Real
    lines only, and a must be nonzero: pairwise-orthogonal lines admit no
    Seidel normalization.

    The report flags whether S has exactly two eigenvalues, states the bound
    d(1-a^2)/(1-d a^2), and when the set meets it compares the spectrum with
    the forced {-1/a^(n-d), ((n-d)/(d a))^(d)}.
    """
    if X.field != "real":
        raise ValueError("Seidel analysis needs a real line set")
    report = gram_degree_set(X)
    if report.s != 1:
        raise ValueError(f"lines are not equiangular: {report.s} distinct angles")
    angle = float(report.angles[0])
    if angle <= X.tol:
        raise ValueError("pairwise orthogonal lines: angle 0 admits no Seidel matrix")
    a = angle**0.5
    n, d = X.n, X.dim
    S = (X.gram().real - np.eye(n)) / a
    off = ~np.eye(n, dtype=bool)
    dev = float(np.abs(np.abs(S[off]) - 1.0).max())
    if dev > max(100 * X.tol, 1e-7):
        raise ValueError(f"off-diagonal entries miss +-1 by {dev:.3g}")
    S = np.where(off, np.sign(S), 0.0)
    vals = np.linalg.eigvalsh(S)
    groups = _eig_clusters(vals, float(np.abs(vals).max()))
    spectrum = [(float(np.mean(vals[g])), len(g)) for g in reversed(groups)]

    denom = 1.0 - d * angle
    bound = d * (1.0 - angle) / denom if denom > 1e-12 else float("inf")
    tight = bool(np.isfinite(bound) and abs(bound - n) <= 1e-6 * n)
    resid = None
    if tight:
        expected = np.sort(np.array([-1.0 / a] * (n - d) + [(n - d) / (d * a)] * d))
        resid = float(np.abs(np.sort(vals) - expected).max())
    return SeidelReport(
        matrix=S.astype(int),
        spectrum=spectrum,
        two_eigenvalue=len(spectrum) == 2,
        inner_product=a,
        relative_bound=float(bound),
        tight=tight,
        tight_spectrum_residual=resid,
    )


def scheme_to_json(rep, path=None):
    """Serialize a SchemeReport to JSON (arrays become nested lists).

    Returns the JSON text; if `path` is given the text is also written there.
    """

    def listify(x):
        return None if x is None else np.asarray(x).tolist()

    payload = {
        "n": rep.n,
        "classes": rep.classes,
        "angles": rep.angles,
        "closed": rep.closed,
        "closure_residual": rep.closure_residual,
        "valencies": rep.valencies,
        "multiplicities": rep.multiplicities,
        "P": listify(rep.P),
        "Q": listify(rep.Q),
        "intersection_numbers": listify(rep.intersection_numbers),
        "krein": listify(rep.krein),
        "pq_residual": rep.pq_residual,
        "krein_min": rep.krein_min,
        "reconstruction_residual": rep.reconstruction_residual,
    }
    text = json.dumps(payload, indent=2)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
