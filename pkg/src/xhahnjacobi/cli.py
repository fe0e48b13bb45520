"""Command line front end: ``xhahnjacobi gen | verify | scan``.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
invalid input.  Output is deterministic: keys are sorted, rationals are
printed as ``p/q`` strings and floats with ``repr``.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from fractions import Fraction

from .exact import poly_to_json, rational_to_str
from .family import FamilySpec, GuaranteeError
from .krall import KrallSpec, nu_measure
from .legendre import legendre_matches
from .params import ParameterError, ParamSet
from . import exceptional_hahn as H
from . import exceptional_jacobi as J

SUITES = ("duality", "operator", "orthogonality", "norms", "limits", "gpe", "conjecture")
LIMIT_SIZES = (50, 100, 200)
LIMIT_POINTS = (Fraction(0), Fraction(1, 3), Fraction(-2, 5))
RATIO_BAND = (0.3, 0.7)


class InputError(Exception):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


# --------------------------------------------------------------------------
# input and output helpers


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None


def load_spec(path) -> FamilySpec:
    return _spec_from(_load_json(path))


def _spec_from(data) -> FamilySpec:
    try:
        return FamilySpec.from_json(data)
    except ParameterError as exc:
        raise InputError(str(exc), exc.index) from None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid spec: {exc}") from None


def _dump(payload, fmt, out, csv_rows=None):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in csv_rows:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _spec_key(spec: FamilySpec) -> str:
    return json.dumps(spec.to_json(), sort_keys=True, separators=(",", ":"))


def _check(name, passed, **detail):
    out = {"name": name, "passed": bool(passed)}
    out.update(detail)
    return out


# --------------------------------------------------------------------------
# gen


def _gen_degrees(spec: FamilySpec, degree_max):
    if spec.N is not None:
        members = H.sigma_N(spec)
        if degree_max is not None:
            members = [n for n in members if n <= degree_max]
        return "hahn", members
    top = spec.uF + 8 if degree_max is None else degree_max
    return "jacobi", spec.degrees(top)


def cmd_gen(args) -> int:
    spec = load_spec(args.spec)
    family, degrees = _gen_degrees(spec, args.degree_max)
    build = H.xhahn if family == "hahn" else J.xjacobi
    polys = [(n, build(n, spec)) for n in degrees]
    payload = {
        "command": "gen",
        "family": family,
        "guarantees": spec.guarantees,
        "spec": spec.to_json(),
        "polynomials": [{"degree": n, "coefficients": poly_to_json(p)} for n, p in polys],
    }
    rows = [["family", "degree", "power", "coefficient"]]
    for n, p in polys:
        rows += [[family, n, k, rational_to_str(c)] for k, c in enumerate(p.coeffs)]
    _dump(payload, args.format, args.out, rows)
    return 0


# --------------------------------------------------------------------------
# verify suites; each returns a list of checks


def _need_N(spec):
    if spec.N is None:
        raise InputError("this suite needs N in the spec")
    return spec


def suite_duality(spec, args):
    _need_N(spec)
    nmax = 5 if args.degree_max is None else args.degree_max
    vs = [v for v in range(7) if v not in spec.F]
    relation = {"equal": 0, "negated": 0, "other": 0}
    bad = []
    for n in range(nmax + 1):
        for v in vs:
            lhs, rhs = H.krall_duality_sides(spec, n, v)
            if lhs == rhs:
                relation["equal"] += 1
            elif lhs == -rhs:
                relation["negated"] += 1
                bad.append([n, v])
            else:
                relation["other"] += 1
                bad.append([n, v])
    checks = [_check("h_qn_duality", not bad, relation=relation, failing_points=bad[:20])]
    omega_bad = [n for n in range(nmax + 1) if not all(H.verify_omega_duality(spec, n))]
    checks.append(_check("omega_lambda_duality", not omega_bad, failing_degrees=omega_bad))
    return checks


def suite_operator(spec, args):
    spec.require_guarantees()
    nmax = 8 if args.degree_max is None else args.degree_max
    checks = []
    op = J.differential_operator(spec)
    bad = [n for n in spec.degrees(nmax) if not J.eigen_residual(n, spec, op).is_zero()]
    checks.append(_check("jacobi_eigenfunctions", not bad, degrees=spec.degrees(nmax), failing=bad))
    if spec.N is not None:
        hop = H.difference_operator(spec)
        bad = [n for n in spec.degrees(nmax) if not H.eigen_residual(n, spec, hop).is_zero()]
        checks.append(_check("hahn_eigenfunctions", not bad, degrees=spec.degrees(nmax), failing=bad))
    return checks


def _hahn_gram(spec, degree_max):
    measure = H.orthogonality_measure(spec)
    degrees = H.sigma_N(spec)
    if degree_max is not None:
        degrees = [n for n in degrees if n <= degree_max]
    gram = measure.gram([H.xhahn(n, spec) for n in degrees])
    return measure, degrees, gram


def _jacobi_report(spec, args):
    if not J.omega_rootfree(spec):
        return None
    top = spec.uF + 6 if args.degree_max is None else args.degree_max
    return J.verify_xjacobi_orthogonality(spec, top, nodes=args.nodes)


def suite_orthogonality(spec, args):
    spec.require_guarantees()
    checks = []
    if spec.N is not None:
        measure, degrees, gram = _hahn_gram(spec, args.degree_max)
        off = [[degrees[i], degrees[j]] for i in range(len(degrees)) for j in range(len(degrees))
               if i != j and gram[i][j] != 0]
        checks.append(_check("hahn_gram_diagonal", not off, degrees=degrees, nonzero_off_diagonal=off[:20]))
        checks.append(_check("hahn_masses_positive", measure.is_positive()))
    rep = _jacobi_report(spec, args)
    if rep is None:
        checks.append(_check("jacobi_orthogonality", False, reason="Omega has a root in [-1, 1]"))
    else:
        ok = max(rep.orthogonality_residual, rep.doubled_orthogonality_residual) < 1e-10
        checks.append(_check("jacobi_orthogonality", ok, degrees=list(rep.degrees), nodes=rep.nodes,
                             residual=rep.orthogonality_residual,
                             residual_doubled=rep.doubled_orthogonality_residual))
    return checks


def suite_norms(spec, args):
    spec.require_guarantees()
    checks = []
    if spec.N is not None:
        _, degrees, gram = _hahn_gram(spec, args.degree_max)
        bad = [n for i, n in enumerate(degrees) if gram[i][i] != H.xhahn_norm(n, spec)]
        checks.append(_check("hahn_norms", not bad, degrees=degrees, failing=bad))
    rep = _jacobi_report(spec, args)
    if rep is None:
        checks.append(_check("jacobi_norms", False, reason="Omega has a root in [-1, 1]"))
    else:
        ok = max(rep.norm_residual, rep.doubled_norm_residual) < 1e-8
        checks.append(_check("jacobi_norms", ok, degrees=list(rep.degrees), nodes=rep.nodes,
                             relative_error=rep.norm_residual,
                             relative_error_doubled=rep.doubled_norm_residual))
    return checks


def limit_series(errors):
    """Pass when all errors vanish, or when they shrink with every ratio inside the band."""
    if all(e == 0 for e in errors):
        return True, []
    if any(e == 0 for e in errors[:-1]):
        return False, []
    ratios = [float(errors[k + 1] / errors[k]) for k in range(len(errors) - 1)]
    ok = all(RATIO_BAND[0] <= r <= RATIO_BAND[1] for r in ratios)
    return ok, ratios


def suite_limits(spec, args):
    top = spec.uF + 4 if args.degree_max is None else args.degree_max
    checks = []
    for n in spec.degrees(top):
        for x in LIMIT_POINTS:
            errs = [J.hahn_to_xjacobi_limit_error(n, spec, N, x) for N in LIMIT_SIZES]
            ok, ratios = limit_series(errs)
            checks.append(_check(f"member_limit_n{n}_x{rational_to_str(x)}", ok,
                                 errors=[float(e) for e in errs], ratios=ratios))
    errs = [J.omega_limit_error(spec, N, Fraction(1, 3)) for N in LIMIT_SIZES]
    decreasing = all(errs[k + 1] < errs[k] for k in range(len(errs) - 1)) or all(e == 0 for e in errs)
    checks.append(_check("omega_limit_x1/3", decreasing, errors=[float(e) for e in errs]))
    return checks


def suite_gpe(spec, args):
    checks = []
    for m1 in (1, 2):
        for t in (Fraction(1), Fraction(1, 2)):
            matches = legendre_matches(m1, t, 4)
            checks.append(_check(f"gpe_m{m1}_t{rational_to_str(t)}", all(m.proportional for m in matches),
                                 members=[{"index": m.index, "degree": m.degree,
                                           "ratio": None if m.ratio is None else rational_to_str(m.ratio)}
                                          for m in matches]))
    return checks


def _flipped(spec):
    vals = {}
    for i in spec.M:
        m = -spec.M[i]
        vals[i] = m if m != 1 else Fraction(-2)
    return spec.with_M(ParamSet(vals))


def _conjecture_row(spec):
    adm, rf = H.admissible(spec), J.omega_rootfree(spec)
    return {"spec": spec.to_json(), "admissible": adm, "rootfree": rf,
            "counterexample": adm and not rf, "proved_direction_violated": rf and not adm}


def suite_conjecture(spec, args):
    spec.require_guarantees()
    rows = [_conjecture_row(spec), _conjecture_row(_flipped(spec))]
    return [_check("conjecture_data", True, rows=rows)]


SUITE_FUNCS = {
    "duality": suite_duality, "operator": suite_operator, "orthogonality": suite_orthogonality,
    "norms": suite_norms, "limits": suite_limits, "gpe": suite_gpe, "conjecture": suite_conjecture,
}


def cmd_verify(args) -> int:
    if args.suite == "gpe" and args.spec is None:
        spec = None
    elif args.spec is None:
        raise InputError("--spec is required for this suite")
    else:
        spec = load_spec(args.spec)
    checks = SUITE_FUNCS[args.suite](spec, args)
    passed = all(c["passed"] for c in checks)
    payload = {
        "command": "verify",
        "suite": args.suite,
        "passed": passed,
        "checks": checks,
    }
    if spec is not None:
        payload["spec"] = spec.to_json()
        payload["guarantees"] = spec.guarantees
    rows = [["suite", "check", "passed"]] + [[args.suite, c["name"], c["passed"]] for c in checks]
    _dump(payload, args.format, args.out, rows)
    if args.suite == "conjecture":
        return 0
    return 0 if passed else 1


# --------------------------------------------------------------------------
# scan


def grid_specs(data):
    """Expand a grid file: either ``{"specs": [...]}`` or a base spec whose M values are lists."""
    if not isinstance(data, dict):
        raise InputError("grid file must be a JSON object")
    if "specs" in data:
        return [_spec_from(d) for d in data["specs"]]
    base = dict(data)
    grid = base.pop("M", {}) or {}
    keys = sorted(grid, key=int)
    choices = [v if isinstance(v, list) else [v] for v in (grid[k] for k in keys)]
    specs = []
    for combo in itertools.product(*choices):
        specs.append(_spec_from({**base, "M": dict(zip(keys, combo))}))
    return specs


def scan_row(spec):
    adm = H.admissible(spec)
    rf = J.omega_rootfree(spec)
    gram = ""
    nu = ""
    if spec.N is not None:
        gram = H.admissible_via_omega(spec)
        nu = nu_measure(KrallSpec.from_family(spec)).is_positive()
    return {"spec": _spec_key(spec), "admissible": adm, "rootfree": rf, "gram_positive": gram, "nu_positive": nu}


def cmd_scan(args) -> int:
    specs = grid_specs(_load_json(args.grid))
    rows = []
    for spec in specs:
        spec.require_guarantees()
        row = scan_row(spec)
        if row["rootfree"] and not row["admissible"]:
            sys.stderr.write(json.dumps({"error": "root free but not admissible", "spec": row["spec"]},
                                        sort_keys=True) + "\n")
            return 1
        rows.append(row)
    cols = ["spec", "admissible", "rootfree", "gram_positive", "nu_positive"]
    payload = {"command": "scan", "rows": rows}
    _dump(payload, args.format, args.out, [cols] + [[r[c] for c in cols] for r in rows])
    return 0


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xhahnjacobi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default):
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default=fmt_default)

    g = sub.add_parser("gen", help="build the members of a family")
    g.add_argument("--spec", required=True, help="family spec JSON file")
    g.add_argument("--degree-max", type=int, help="largest degree to emit")
    common(g, "json")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--spec", help="family spec JSON file (optional for the gpe suite)")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--degree-max", type=int, help="largest degree (or n for the duality grid)")
    v.add_argument("--nodes", type=int, default=200, help="quadrature nodes (doubled for confirmation)")
    common(v, "json")

    s = sub.add_parser("scan", help="admissibility and root freeness over a grid of specs")
    s.add_argument("--grid", "--spec", dest="grid", required=True, help="grid JSON file")
    common(s, "csv")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"gen": cmd_gen, "verify": cmd_verify, "scan": cmd_scan}[args.command]
    try:
        return handler(args)
    except (InputError, ParameterError) as exc:
        err = {"error": str(exc)}
        if getattr(exc, "index", None) is not None:
            err["index"] = exc.index
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return 2
    except GuaranteeError as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "guarantees": False}, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
