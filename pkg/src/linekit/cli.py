"""Command-line surface: construct, verify, bounds, scheme, export.

Every run resolves its arguments into a config block that is echoed at the
top of the report, so a saved report is reproducible from its own header.
Reports are deterministic — byte-identical across repeated runs.

Exit codes: 0 all requested certifications pass; 2 usage errors or malformed
input; 3 internal failure during construction; 4 a certification failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from linekit.finite_algebra import gf_create, gr_create
from linekit.groupcodes import (
    LinearCode,
    cover_graph,
    diffset_lines,
    diffset_to_json,
    field_rds,
    linear_code_to_csv,
    singer_difference_set,
)
from linekit.jacobi import (
    BoundQuery,
    JacobiFamily,
    absolute_bound,
    expand_in_basis,
    flat_eal_bound,
    real_mub_gate,
    relative_bound,
    welch_bound,
)
from linekit.linesets import (
    LineSet,
    design_strength,
    gram_degree_set,
    lineset_from_json,
    lineset_to_json,
    verify_equiangular,
    verify_mub,
)
from linekit.mubs import (
    _prime_power,
    alltop_mubs,
    semifield_from_csv,
    semifield_mubs,
    spin_model_mubs,
    tensor_mubs,
    wf_mubs,
)
from linekit.schemes import (
    gram_algebra_check,
    jacobi_idempotents,
    scheme_from_lineset,
    scheme_to_json,
)
from linekit.sics import FiducialCandidate, appleby_candidates, builtin_fiducial, verify_sic, wh_orbit

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3
EXIT_CERTIFICATION = 4


class UsageError(ValueError):
    """Bad parameters or malformed input: mapped to exit code 2."""


@dataclass
class RunConfig:
    """Resolved invocation, echoed into every report header."""

    subcommand: str
    inputs: list
    output: str | None
    tol: float | None
    format: str
    seed: int | None
    options: dict

    def as_dict(self):
        out = {
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "output": self.output,
            "tol": self.tol,
            "format": self.format,
            "seed": self.seed,
        }
        out.update(self.options)
        return out


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def _snap(x, den=10**6, tol=1e-9):
    """Nearest small-denominator rational if one is within tol, else None."""
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    f = Fraction(float(x)).limit_denominator(den)
    return f if abs(float(f) - float(x)) <= tol else None


def fmt_rational(x):
    """Exact values as 'p/q (approx float)'; integers plain; floats as-is."""
    f = x if isinstance(x, Fraction) else _snap(x)
    if f is not None:
        if f.denominator == 1:
            return str(f.numerator)
        return f"{f.numerator}/{f.denominator} (≈ {float(f):.6g})"
    return f"{float(x):.10g}"


def _num_den(x):
    """Exact rational as num/den for CSV cells; floats fall back to repr."""
    f = x if isinstance(x, Fraction) else _snap(x)
    if f is not None:
        return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)
    return f"{float(x):.10g}"


def _emit(report, fmt):
    if fmt == "json":
        return json.dumps(report, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        for key, value in report["config"].items():
            writer.writerow(["config", key, value])
        for section, payload in report.items():
            if section == "config":
                continue
            if isinstance(payload, list):
                for row in payload:
                    if isinstance(row, dict):
                        writer.writerow([section] + [row[k] for k in row])
                    else:
                        writer.writerow([section, row])
            elif isinstance(payload, dict):
                for key, value in payload.items():
                    writer.writerow([section, key, value])
            else:
                writer.writerow([section, payload])
        return buf.getvalue().rstrip("\n")
    lines = [f"# {key}: {value}" for key, value in report["config"].items()]
    for section, payload in report.items():
        if section == "config":
            continue
        if isinstance(payload, dict):
            lines.append(f"[{section}]")
            lines.extend(f"{key}: {value}" for key, value in payload.items())
        elif isinstance(payload, list):
            lines.append(f"[{section}]")
            for row in payload:
                if isinstance(row, dict):
                    lines.append("  " + "; ".join(f"{k}: {v}" for k, v in row.items()))
                else:
                    lines.append(f"  {row}")
        else:
            lines.append(f"{section}: {payload}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# shared line-set reporting
# ---------------------------------------------------------------------------


def _annihilator_poly(angles):
    """Ascending monomial coefficients of prod_i (x - alpha_i), exact."""
    poly = [Fraction(1)]
    for a in angles:
        shifted = [Fraction(0)] + poly
        scaled = [-a * c for c in poly] + [Fraction(0)]
        poly = [u + v for u, v in zip(shifted, scaled)]
    return poly


def _annihilator_bound(X, report):
    """Relative bound from the degree-set annihilator, if its hypotheses hold.

    Expands F(x) = prod_i (x - alpha_i) in the g-basis and evaluates
    F(1)/c_0; returns (bound, all_hypotheses_ok) or None when the degree set
    is empty.  Angles are snapped to rationals so the arithmetic is exact.
    """
    if not report.angles:
        return None
    angles = []
    for a in report.angles:
        f = _snap(a)
        angles.append(f if f is not None else Fraction(float(a)).limit_denominator(10**12))
    poly = _annihilator_poly(angles)
    fam = JacobiFamily(X.dim, max_k=max(12, len(angles)))
    coeffs = expand_in_basis(fam, poly, kind="g")
    if not coeffs or coeffs[0] <= 0:
        return None
    out = relative_bound(
        BoundQuery(d=X.dim, angles=angles, mode="sdist-g", F_coeffs=coeffs)
    )
    return out["bound"], all(out["hypotheses_ok"].values())


def _met_phrase(n, bound):
    value = Fraction(bound) if isinstance(bound, (int, Fraction)) else None
    if value is not None:
        if n == value:
            return "met with equality"
        return "satisfied" if n < value else "VIOLATED"
    return "met with equality" if abs(n - float(bound)) <= 1e-6 else (
        "satisfied" if n < float(bound) else "VIOLATED"
    )


def _lineset_sections(X):
    """Summary and bound rows shared by construct and verify."""
    report = gram_degree_set(X)
    strength = design_strength(X).strength
    degree = ", ".join(
        f"{fmt_rational(a)} (x {m})" for a, m in zip(report.angles, report.multiplicities)
    ) or "(single line)"
    summary = {
        "n": X.n,
        "d": X.dim,
        "field": X.field,
        "degree set": degree,
        "s": report.s,
        "zero angle": "yes" if report.zero_present else "no",
        "design strength": strength,
    }
    if X.basis_labels is not None:
        summary["bases"] = len(set(X.basis_labels))
    for t in (1, 2):
        summary[f"{t}-design"] = "yes" if strength >= t else "no"
    rows = []
    absval = absolute_bound(X.dim, report.s, zero_in_A=report.zero_present)
    rows.append(
        {
            "bound": "absolute",
            "value": fmt_rational(absval),
            "status": _met_phrase(X.n, absval),
        }
    )
    ann = _annihilator_bound(X, report)
    if ann is not None and ann[1]:
        rows.append(
            {
                "bound": "relative",
                "value": fmt_rational(ann[0]),
                "status": _met_phrase(X.n, ann[0]),
            }
        )
    if X.n > X.dim:
        floor = welch_bound(X.dim, X.n)
        top = max(report.angles) if report.angles else 0.0
        at_floor = abs(float(floor) - float(top)) <= 1e-9
        rows.append(
            {
                "bound": "welch floor",
                "value": fmt_rational(floor),
                "status": "largest angle meets the floor"
                if at_floor
                else f"largest angle {fmt_rational(top)} above the floor",
            }
        )
    if X.basis_labels is not None:
        cap = X.dim + 1
        got = len(set(X.basis_labels))
        rows.append(
            {
                "bound": "basis ceiling",
                "value": f"{cap} bases / {X.dim * cap} lines",
                "status": "met with equality" if got == cap else f"{got} of {cap} bases",
            }
        )
    return summary, rows


def _apply_tol(X, tol):
    if tol is None:
        return X
    return LineSet(X.dim, X.vectors, field=X.field, basis_labels=X.basis_labels, tol=tol)


def _field_context(provenance):
    kind, params = provenance
    if kind in ("wf", "alltop"):
        q = params["q"] if isinstance(params, dict) else int(params)
        p, m = _prime_power(q)
        return gr_create(m).label() if p == 2 else gf_create(p, m).label()
    return None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_construct(args):
    target = args.what
    if target == "mub":
        if args.dim is None:
            raise UsageError("construct mub needs --dim")
        fam = _construct_mub(args)
        X = _apply_tol(fam.to_lineset(), args.tol)
        context = _field_context(fam.provenance)
    elif target == "sic":
        if args.dim is None:
            raise UsageError("construct sic needs --dim")
        fid = _resolve_fiducial(args)
        X = _apply_tol(wh_orbit(fid), args.tol)
        context = None
    elif target == "lines":
        if args.singer is None:
            raise UsageError("construct lines needs --singer Q")
        group, diffset = singer_difference_set(args.singer)
        X = _apply_tol(diffset_lines(group, diffset), args.tol)
        context = gf_create(*_prime_power(args.singer**3)).label()
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown construct target {target!r}")

    summary, bound_rows = _lineset_sections(X)
    if context is not None:
        summary["field context"] = context
    if target == "sic":
        verdict = verify_sic(X)
        summary["sic verified"] = "yes" if verdict["is_sic"] else "no"
        if verdict["alpha"] is not None:
            summary["alpha"] = fmt_rational(verdict["alpha"])
    if target == "mub":
        verdict = verify_mub(X)
        summary["unbiased"] = "yes" if verdict["unbiased"] else "no"
        summary["alpha"] = fmt_rational(verdict["alpha"])
        summary["max deviation"] = f"{verdict['max_deviation']:.3g}"
    report = {"summary": summary, "bounds": bound_rows}
    if args.out:
        lineset_to_json(X, path=args.out)
        report["wrote"] = args.out
    return report, EXIT_OK


def _construct_mub(args):
    d, method = args.dim, args.method
    if method == "wf":
        return wf_mubs(d)
    if method == "alltop":
        return alltop_mubs(d)
    if method == "spin":
        return spin_model_mubs(d)
    if method == "tensor":
        if not args.factors:
            raise UsageError("construct mub --method tensor needs --factors A,B")
        parts = [int(x) for x in args.factors.split(",")]
        if len(parts) != 2:
            raise UsageError("--factors wants exactly two comma-separated integers")
        if parts[0] * parts[1] != d:
            raise UsageError(f"--factors {parts[0]},{parts[1]} do not multiply to {d}")
        return tensor_mubs(wf_mubs(parts[0]), wf_mubs(parts[1]))
    if method == "semifield":
        if not args.table:
            raise UsageError("construct mub --method semifield needs --table CSV")
        table = semifield_from_csv(args.table)
        if table.q != d:
            raise UsageError(f"table is {table.q} x {table.q} but --dim is {d}")
        return semifield_mubs(table)
    raise UsageError(f"unknown method {method!r}")  # pragma: no cover


def _resolve_fiducial(args):
    source = args.fiducial
    if source == "builtin":
        return builtin_fiducial(args.dim)
    if source == "appleby":
        survivors = [
            entry for entry in appleby_candidates(args.dim) if entry["verdict"]["is_sic"]
        ]
        if not survivors:
            raise RuntimeError(
                f"the parametrized search found no verified fiducial in dimension {args.dim}"
            )
        return survivors[0]["candidate"]
    if source.startswith("file:"):
        path = source[5:]
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read fiducial file {path}: {exc}") from exc
        vec = np.array([complex(re, im) for re, im in data])
        if vec.shape[0] != args.dim:
            raise UsageError(f"fiducial has length {vec.shape[0]}, expected {args.dim}")
        return FiducialCandidate(
            d=args.dim, vector=vec, source=("file", path), group=args.group
        )
    raise UsageError("--fiducial must be builtin, appleby, or file:PATH")


def cmd_verify(args):
    X = _load_lineset(args.file, args.tol)
    summary, bound_rows = _lineset_sections(X)
    failures = []
    for row in bound_rows:
        if row["status"] == "VIOLATED":
            failures.append(
                {"check": f"bound-{row['bound']}", "detail": f"n exceeds {row['value']}"}
            )
    report = {"summary": summary, "bounds": bound_rows}

    if args.expect == "sic":
        verdict = verify_sic(X)
        report["expect sic"] = {k: str(v) for k, v in verdict.items()}
        if not verdict["is_sic"]:
            failures.append({"check": "expect-sic", "detail": "orbit is not a maximal equiangular set"})
    elif args.expect == "mub":
        try:
            verdict = verify_mub(X)
        except ValueError as exc:
            verdict = None
            failures.append({"check": "expect-mub", "detail": str(exc)})
        if verdict is not None:
            report["expect mub"] = {k: str(v) for k, v in verdict.items()}
            if not verdict["unbiased"]:
                failures.append(
                    {
                        "check": "expect-mub",
                        "detail": f"max deviation {verdict['max_deviation']:.3g}",
                    }
                )
    elif args.expect == "equiangular":
        verdict = verify_equiangular(X)
        report["expect equiangular"] = {k: str(v) for k, v in verdict.items()}
        if not verdict["equiangular"]:
            failures.append({"check": "expect-equiangular", "detail": "more than one angle"})

    if args.deep:
        scheme = scheme_from_lineset(X)
        deep = {
            "scheme closed": "yes" if scheme.closed else "no",
            "closure residual": f"{scheme.closure_residual:.3g}",
        }
        if scheme.closed:
            deep["pq residual"] = f"{scheme.pq_residual:.3g}"
            deep["krein minimum"] = f"{scheme.krein_min:.3g}"
            if scheme.pq_residual > 1e-8 * scheme.n:
                failures.append(
                    {"check": "scheme-pq", "detail": f"PQ deviates from vI by {scheme.pq_residual:.3g}"}
                )
            if scheme.krein_min < -1e-8:
                failures.append(
                    {"check": "scheme-krein", "detail": f"negative parameter {scheme.krein_min:.3g}"}
                )
        gram = gram_algebra_check(X)
        deep["gram algebra closed"] = "yes" if gram["closed"] else "no"
        if gram["mub_identity_residual"] is not None:
            deep["gram square identity residual"] = f"{gram['mub_identity_residual']:.3g}"
            if gram["mub_identity_residual"] > 1e-8:
                failures.append(
                    {
                        "check": "gram-square",
                        "detail": f"G^2 = (n/d) G off by {gram['mub_identity_residual']:.3g}",
                    }
                )
        report["deep"] = deep

    report["failures"] = failures
    report["result"] = "pass" if not failures else "fail"
    return report, EXIT_OK if not failures else EXIT_CERTIFICATION


def _load_lineset(path, tol):
    try:
        X = lineset_from_json(path)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read line-set file {path}: {exc}") from exc
    except ValueError as exc:
        raise UsageError(f"malformed line set in {path}: {exc}") from exc
    try:
        return _apply_tol(X, tol)
    except ValueError as exc:
        raise UsageError(f"malformed line set in {path}: {exc}") from exc


def cmd_bounds(args):
    d = args.dim
    s = args.s
    rows = [
        {
            "bound": f"absolute Hom({s},{s})",
            "value": fmt_rational(absolute_bound(d, s)),
            "hypotheses": f"{s}-distance set in C^{d}",
        },
        {
            "bound": f"absolute Hom({s},{s - 1})",
            "value": fmt_rational(absolute_bound(d, s, zero_in_A=True)),
            "hypotheses": f"{s}-distance set with a zero angle",
        },
        {
            "bound": "unbiased bases",
            "value": f"{d * (d + 1)} lines / {d + 1} bases",
            "hypotheses": "equality exactly for 2-designs",
        },
        {
            "bound": "flat equiangular",
            "value": fmt_rational(flat_eal_bound(d)),
            "hypotheses": f"equiangular lines spanned by flat vectors in C^{d}",
        },
    ]
    n_lines = args.n if args.n is not None else d * d
    rows.append(
        {
            "bound": "welch floor",
            "value": fmt_rational(welch_bound(d, n_lines)),
            "hypotheses": f"minimum largest angle among {n_lines} lines"
            + ("" if args.n is not None else " (n = d^2 default)"),
        }
    )
    if args.angles:
        angles = _parse_angles(args.angles)
        poly = _annihilator_poly(angles)
        fam = JacobiFamily(d, max_k=max(12, len(angles)))
        coeffs = expand_in_basis(fam, poly, kind="g")
        if coeffs[0] == 0:
            raise UsageError("degenerate angle list: annihilator has c_0 = 0")
        out = relative_bound(
            BoundQuery(d=d, angles=angles, mode="sdist-g", F_coeffs=coeffs)
        )
        ok = all(out["hypotheses_ok"].values())
        rows.append(
            {
                "bound": "relative",
                "value": fmt_rational(out["bound"]),
                "hypotheses": "all sign conditions hold"
                if ok
                else "sign conditions FAIL: "
                + ", ".join(k for k, v in out["hypotheses_ok"].items() if not v),
            }
        )
    if args.real:
        gate = real_mub_gate(d)
        rows.append(
            {
                "bound": "real unbiased bases",
                "value": str(gate["bound"]),
                "hypotheses": gate["reason"],
            }
        )
    return {"bounds": rows}, EXIT_OK


def _parse_angles(spec):
    angles = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            angles.append(Fraction(chunk))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse angle {chunk!r}: {exc}") from exc
    if not angles:
        raise UsageError("--angles got an empty list")
    if any(a < 0 or a >= 1 for a in angles):
        raise UsageError("angles must lie in [0, 1)")
    return sorted(set(angles))


def cmd_scheme(args):
    X = _load_lineset(args.file, args.tol)
    rep = scheme_from_lineset(X)
    body = {
        "n": rep.n,
        "classes": rep.classes,
        "angles": ", ".join(fmt_rational(a) for a in rep.angles),
        "closed": "yes" if rep.closed else "no",
        "closure residual": f"{rep.closure_residual:.3g}",
    }
    if rep.closed:
        body["valencies"] = ", ".join(fmt_rational(v) for v in rep.valencies)
        body["multiplicities"] = ", ".join(str(m) for m in rep.multiplicities)
        body["pq residual"] = f"{rep.pq_residual:.3g}"
        body["krein minimum"] = f"{rep.krein_min:.3g}"
        body["reconstruction residual"] = f"{rep.reconstruction_residual:.3g}"
    report = {"scheme": body}
    if args.gram:
        gram = gram_algebra_check(X)
        report["gram algebra"] = {
            "closed": "yes" if gram["closed"] else "no",
            "closure residual": f"{gram['closure_residual']:.3g}",
            "span dimension": gram["span_dimension"],
            "gram square residual": f"{gram['gram_square_residual']:.3g}",
        }
        if gram["mub_identity_residual"] is not None:
            report["gram algebra"]["unbiased identity residual"] = (
                f"{gram['mub_identity_residual']:.3g}"
            )
    if args.idempotents is not None:
        idem = jacobi_idempotents(X, e=args.idempotents)
        report["idempotents"] = {
            "e": args.idempotents,
            "max residual": f"{idem['max_residual']:.3g}",
            "traces": ", ".join(fmt_rational(t) for t in idem["traces"]),
        }
    if args.out:
        scheme_to_json(rep, path=args.out)
        report["wrote"] = args.out
    return report, EXIT_OK


def cmd_export(args):
    what = args.what
    if what == "angles":
        X = _load_lineset(args.file, args.tol)
        sq = X.angle_matrix()
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["i", "j", "angle"])
            for i in range(X.n):
                for j in range(i + 1, X.n):
                    writer.writerow([i, j, f"{sq[i, j]:.12g}"])
        body = {"pairs": X.n * (X.n - 1) // 2, "wrote": args.out}
    elif what == "diffset":
        if (args.singer is None) == (args.rds is None):
            raise UsageError("export diffset needs exactly one of --singer Q or --rds Q")
        if args.singer is not None:
            group, diffset = singer_difference_set(args.singer)
            diffset_to_json(group, diffset, path=args.out)
            body = {"kind": "planar", "size": len(diffset), "wrote": args.out}
        else:
            group, diffset, excluded = field_rds(args.rds)
            diffset_to_json(group, diffset, N=excluded, path=args.out)
            body = {"kind": "relative", "size": len(diffset), "wrote": args.out}
    elif what == "graph":
        if args.tank_trap:
            graph = cover_graph(builtin="tank-trap")
        elif args.rds is not None:
            group, diffset, excluded = field_rds(args.rds)
            graph = cover_graph(group, diffset, N=excluded)
        else:
            raise UsageError("export graph needs --tank-trap or --rds Q")
        with open(args.out, "w", encoding="utf-8") as fh:
            for u, v in graph.edge_list():
                fh.write(f"{graph.labels[u]}\t{graph.labels[v]}\n")
        arr = graph.intersection_array
        body = {
            "vertices": len(graph.labels),
            "edges": len(graph.edge_list()),
            "intersection array": f"{{{','.join(map(str, arr[0]))};{','.join(map(str, arr[1]))}}}",
            "wrote": args.out,
        }
    elif what == "code":
        if not args.generator:
            raise UsageError("export code needs at least one --generator row")
        if args.alphabet is None:
            raise UsageError("export code needs --alphabet (a prime or z4)")
        try:
            rows = [[int(x) for x in g.split(",")] for g in args.generator]
        except ValueError as exc:
            raise UsageError(f"generator rows must be comma-separated integers: {exc}") from exc
        alphabet = args.alphabet if args.alphabet == "z4" else int(args.alphabet)
        code = LinearCode(rows, alphabet)
        linear_code_to_csv(code, args.out)
        body = {
            "alphabet": str(alphabet),
            "length": code.n,
            "words": len(code.codewords()),
            "wrote": args.out,
        }
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown export target {what!r}")
    return {"export": body}, EXIT_OK


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="linekit",
        description="Construct and certify line sets with few angles.",
    )
    parser.add_argument("--tol", type=float, default=None, help="override the line-set tolerance")
    parser.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="report format"
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="seed echoed into reports; reserved for randomized subroutines",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("construct", help="build a line set and write it to JSON")
    c.add_argument("what", choices=("mub", "sic", "lines"))
    c.add_argument("--dim", type=int, default=None)
    c.add_argument(
        "--method",
        choices=("wf", "alltop", "spin", "tensor", "semifield"),
        default="wf",
        help="construction route for mub",
    )
    c.add_argument("--factors", default=None, help="A,B with A*B = dim (tensor method)")
    c.add_argument("--table", default=None, help="semifield multiplication CSV")
    c.add_argument(
        "--fiducial", default="builtin", help="builtin, appleby, or file:PATH (sic)"
    )
    c.add_argument(
        "--group", choices=("cyclic", "binary"), default="cyclic",
        help="displacement group for file fiducials",
    )
    c.add_argument("--singer", type=int, default=None, help="prime power q (lines)")
    c.add_argument("--out", default=None, help="write the line set JSON here")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="certify a line-set file")
    v.add_argument("file")
    v.add_argument("--deep", action="store_true", help="add scheme and Gram-algebra checks")
    v.add_argument(
        "--expect", choices=("sic", "mub", "equiangular"), default=None,
        help="fail unless the set certifies as this kind",
    )
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="print size and angle bounds for a dimension")
    b.add_argument("--dim", type=int, required=True)
    b.add_argument("--s", type=int, default=1, help="number of distinct angles")
    b.add_argument("--angles", default=None, help="comma-separated rationals, e.g. 2/9,1/3")
    b.add_argument("--n", type=int, default=None, help="line count for the welch floor")
    b.add_argument("--real", action="store_true", help="include the real unbiased-basis gate")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("scheme", help="angle-class scheme report for a line-set file")
    s.add_argument("file")
    s.add_argument("--gram", action="store_true", help="add the Gram-weighted closure check")
    s.add_argument(
        "--idempotents", type=int, default=None, metavar="E",
        help="report zonal idempotents E_0..E_E",
    )
    s.add_argument("--out", default=None, help="write the scheme report JSON here")
    s.set_defaults(func=cmd_scheme)

    e = sub.add_parser("export", help="write angles CSV, difference sets, graphs, codes")
    e.add_argument("what", choices=("angles", "diffset", "graph", "code"))
    e.add_argument("file", nargs="?", default=None, help="line-set JSON (angles)")
    e.add_argument("--singer", type=int, default=None, help="planar difference set for q")
    e.add_argument("--rds", type=int, default=None, help="relative difference set for q")
    e.add_argument("--tank-trap", action="store_true", help="the 36-vertex triple cover")
    e.add_argument("--alphabet", default=None, help="prime p or z4 (code)")
    e.add_argument(
        "--generator", action="append", default=None, help="comma-separated row, repeatable"
    )
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_export)
    return parser


def _run_config(args):
    inputs = []
    for name in ("file", "table"):
        value = getattr(args, name, None)
        if value:
            inputs.append(value)
    fiducial = getattr(args, "fiducial", None)
    if fiducial and fiducial.startswith("file:"):
        inputs.append(fiducial[5:])
    options = {}
    for name in ("what", "dim", "method", "singer", "rds", "expect", "deep",
                 "s", "angles", "n", "real", "gram", "idempotents", "factors", "group"):
        value = getattr(args, name, None)
        if value not in (None, False):
            options[name] = value
    return RunConfig(
        subcommand=args.subcommand,
        inputs=inputs,
        output=getattr(args, "out", None),
        tol=args.tol,
        format=args.format,
        seed=args.seed,
        options=options,
    )


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _run_config(args)
    try:
        report, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # construction-internal failures
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    full = {"config": config.as_dict()}
    full.update(report)
    print(_emit(full, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
