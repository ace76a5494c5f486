"""Command line: ``cable-slopes {fusion,cable,fit,verify,torus-exact}``.

Exit status: 0 success, 1 verification or fit failure, 2 invalid input.
Every number printed is an exact rational.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .cabling import (
    GOLDEN_KNOTS,
    InvalidCable,
    NotAdmissible,
    StabilizationFailure,
    cable_degree_per_n,
    cable_exact,
    cable_quasipoly,
    golden_knot,
    load_closed_form,
    torus_knot,
    unknot,
)
from .conjectures import GridSpec, reports_to_json, verify_grid
from .exactpoly import degree_hi, degree_lo, format_fraction, parse_fraction
from .fusion import (
    FusionParams,
    degree_closed,
    delta_bruteforce,
    fusion_degree,
    special_forms,
)
from .qpoly import InsufficientSamples, NoFit, NonConstantSlope, PositiveLinearTerm, fit_quasipoly

log = logging.getLogger("cable_slopes")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _degree_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "d_plus"])
    for n, d in rows:
        w.writerow([n, format_fraction(d)])
    return buf.getvalue()


def _int_range(text: str) -> tuple[int, ...]:
    """``-4:4`` (inclusive) or ``1,2,5``."""
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
            return tuple(range(lo, hi + 1))
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from None


def parse_base(spec: str):
    """``unknot``, ``torus:p,q``, ``fusion:m1,m2``, ``golden:8_20`` or ``qp:<file>``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "unknot" and not arg:
            return unknot()
        if kind == "torus":
            p, q = (int(x) for x in arg.split(","))
            return torus_knot(p, q)
        if kind == "fusion":
            m1, m2 = (int(x) for x in arg.split(","))
            params = FusionParams(m1, m2)
            if params.degenerate:
                form = special_forms(params)
                log.info("K(%s,%s) = %s", m1, m2, form)
                return torus_knot(form.torus_q, 2)
            return fusion_degree(params)
        if kind == "golden":
            return golden_knot(arg)
        if kind == "qp":
            return load_closed_form(Path(arg))
    except (ValueError, KeyError, OSError, InvalidCable) as exc:
        raise UsageError(f"bad base {spec!r}: {exc}") from exc
    raise UsageError(f"unknown base {spec!r}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_fusion(args) -> int:
    params = FusionParams(args.m1, args.m2)
    out = []
    if params.degenerate:
        form = special_forms(params)
        out.append(f"# K({args.m1},{args.m2}) = {form}; using the exact torus engine")
        if form.trivial:
            out.append("# trivial knot")
        prov = torus_knot(form.torus_q, 2)
        rows = [(n, prov.degree(n)) for n in range(1, args.n_max + 1)]
        out.append(_degree_csv(rows).rstrip("\n"))
        _emit("\n".join(out) + "\n", args.output)
        return EXIT_OK
    rows, bad = [], None
    for n in range(1, args.n_max + 1):
        closed = degree_closed(params, n) if args.mode in ("closed", "both") else None
        brute = (delta_bruteforce(params, n - 1) + Fraction(n - 1, 2)) if args.mode in ("brute", "both") else None
        if args.mode == "both" and closed != brute and bad is None:
            bad = (n, closed, brute)
        rows.append((n, closed if closed is not None else brute))
    prov = fusion_degree(params)
    if args.format == "json":
        obj = {
            "knot": prov.name,
            "degrees": [{"n": n, "d_plus": format_fraction(d)} for n, d in rows],
            "quasi_polynomial": prov.qp.to_json_obj(),
            "discrepancy": None if bad is None else {
                "n": bad[0], "closed": format_fraction(bad[1]), "brute": format_fraction(bad[2])},
        }
        text = json.dumps(obj, indent=2) + "\n"
    else:
        text = _degree_csv(rows)
        if args.format == "text":
            text += "# quasi-polynomial: " + json.dumps(prov.qp.to_json_obj()) + "\n"
            if args.mode == "both":
                text += "# discrepancies: " + ("0" if bad is None else f"first at n={bad[0]}") + "\n"
    _emit(text, args.output)
    if bad is not None:
        log.error("closed form and lattice maximum differ at n=%s: %s vs %s", *bad)
        return EXIT_FAIL
    return EXIT_OK


def cmd_cable(args) -> int:
    base = parse_base(args.base)
    if args.exact and not base.has_exact():
        raise UsageError(f"--exact needs a base with exact polynomials, not {base.name}")
    try:
        pq = (args.p, args.q)
        certs = [cable_degree_per_n(base, pq, n) for n in range(1, args.n_max + 1)]
    except InvalidCable as exc:
        raise UsageError(str(exc)) from exc
    status = EXIT_OK
    table = []
    for c in certs:
        row = c.to_json_obj()
        row["d_plus_bound"] = format_fraction(c.implied_degree)
        if args.exact:
            d = degree_hi(cable_exact(base, pq, c.n))
            row["d_plus_exact"] = format_fraction(d)
            consistent = d == c.implied_degree if c.unique else d <= c.implied_degree
            row["consistent"] = consistent
            if not consistent:
                status = EXIT_FAIL
        table.append(row)
    result = {"base": base.name, "p": args.p, "q": args.q, "certificates": table}
    if base.qp is not None:
        try:
            res = cable_quasipoly(base, pq)
        except (NotAdmissible, NonConstantSlope, PositiveLinearTerm) as exc:
            result["closed_form"] = None
            result["note"] = f"{type(exc).__name__}: {exc}"
        except StabilizationFailure as exc:
            result["closed_form"] = None
            result["note"] = f"StabilizationFailure: {exc}"
            status = EXIT_FAIL
        else:
            result.update({
                "regime": res.regime,
                "branch": res.branch,
                "A": format_fraction(res.A),
                "closed_form": res.qp.to_json_obj(),
                "fitted": res.fitted.to_json_obj(),
                "agreement": res.verified,
            })
            if not res.verified:
                status = EXIT_FAIL
    _emit(json.dumps(result, indent=2) + "\n", args.output)
    return status


def _read_samples(path: str):
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not {"n", "d_plus"} <= set(reader.fieldnames):
                raise UsageError("CSV needs columns n, d_plus")
            return [(int(row["n"]), parse_fraction(row["d_plus"])) for row in reader]
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"malformed CSV {path}: {exc}") from exc


def cmd_fit(args) -> int:
    samples = _read_samples(args.input)
    try:
        qp = fit_quasipoly(samples, args.max_period)
    except (NoFit, InsufficientSamples) as exc:
        log.error("%s", exc)
        return EXIT_FAIL
    _emit(qp.to_json() + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.grid == "empty":
        grid = GridSpec.empty()
    else:
        grid = GridSpec(args.m1, args.m2, args.q, args.p_span, args.select)
    extra = []
    for name in args.golden or ():
        extra.append(golden_knot(name) if name in GOLDEN_KNOTS else parse_base(f"qp:{name}"))
    reports = verify_grid(grid, threads=args.threads, extra_bases=extra)
    _emit(reports_to_json(reports) + "\n", args.output)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        log.error("failed: %s %s", r.knot, r.error or "")
    log.info("%d reports, %d failed", len(reports), len(failed))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_torus_exact(args) -> int:
    try:
        prov = torus_knot(args.p, args.q)
    except InvalidCable as exc:
        raise UsageError(str(exc)) from exc
    rows = []
    for n in range(1, args.n_max + 1):
        poly = prov.polynomial(n)
        row = {"n": n, "d_plus": format_fraction(degree_hi(poly)), "d_minus": format_fraction(degree_lo(poly))}
        if args.show_poly:
            row["polynomial"] = str(poly)
        rows.append(row)
    _emit(json.dumps({"knot": prov.name, "degrees": rows}, indent=2) + "\n", args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cable-slopes", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fusion", help="degrees of a 2-fusion knot K(m1,m2)")
    f.add_argument("--m1", type=int, required=True)
    f.add_argument("--m2", type=int, required=True)
    f.add_argument("--n-max", type=int, default=20)
    f.add_argument("--mode", choices=("closed", "brute", "both"), default="closed")
    f.add_argument("--format", choices=("text", "csv", "json"), default="text")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_fusion)

    c = sub.add_parser("cable", help="per-n certificates and quasi-polynomial of a cable")
    c.add_argument("--base", required=True,
                   help="unknot | torus:p,q | fusion:m1,m2 | golden:8_20 | qp:FILE")
    c.add_argument("-p", type=int, required=True)
    c.add_argument("-q", type=int, required=True)
    c.add_argument("--n-max", type=int, default=30)
    c.add_argument("--exact", action="store_true", help="also sum the exact polynomials")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_cable)

    t = sub.add_parser("fit", help="fit a quasi-polynomial to a CSV of n,d_plus")
    t.add_argument("--input", required=True)
    t.add_argument("--max-period", type=int, default=6)
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_fit)

    v = sub.add_parser("verify", help="check both conjectures over a grid of knots and cables")
    v.add_argument("--grid", choices=("default", "empty"), default="default")
    v.add_argument("--m1", type=_int_range, default=tuple(range(-4, 5)))
    v.add_argument("--m2", type=_int_range, default=tuple(range(-4, 5)))
    v.add_argument("--q", type=_int_range, default=(2, 3))
    v.add_argument("--p-span", type=int, default=3)
    v.add_argument("--select", choices=("admissible", "membership"), default="admissible")
    v.add_argument("--golden", action="append", help="8_20, 9_43, 9_44 or a quasi-polynomial JSON file")
    v.add_argument("--threads", type=int, default=None)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("torus-exact", help="exact colored Jones degrees of T(p,q)")
    x.add_argument("-p", type=int, required=True)
    x.add_argument("-q", type=int, required=True)
    x.add_argument("--n-max", type=int, default=10)
    x.add_argument("--show-poly", action="store_true")
    x.add_argument("-o", "--output")
    x.set_defaults(func=cmd_torus_exact)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if getattr(args, "n_max", 1) < 1:
        print("error: --n-max must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
