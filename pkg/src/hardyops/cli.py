"""Command-line front end.

    hardyops analyze --psi "2*exp(z)/(2-z)" --phi "z/(2-z)" --out report.json
    hardyops verify-examples
    hardyops range --psi "1/(2-z)" --phi "1/(2-z)" --trunc 128 --out range.csv --svg range.svg

Exit codes: 0 success, 1 error, 2 when hypotheses block a closed form.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

import numpy as np

from .errors import HardyOpsError, HypothesisUnmet
from .report import ASSERTIONS, AnalysisRequest, analyze

log = logging.getLogger("hardyops")


def _ladder(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad truncation list {text!r}") from exc


def _assertions(text):
    items = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in items if t not in ASSERTIONS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown assertion(s) {bad}; choose from {', '.join(ASSERTIONS)}")
    return items


def build_parser():
    p = argparse.ArgumentParser(prog="hardyops", description="Weighted composition operators on H^2.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full analysis of W_{psi,phi} as a JSON report")
    a.add_argument("--psi", required=True, help="weight symbol, e.g. '2*exp(z)/(2-z)'")
    a.add_argument("--phi", required=True, help="self-map symbol, e.g. 'z/(2-z)'")
    a.add_argument("--trunc", type=_ladder, default=[32, 64, 128, 256, 512], help="comma-separated orders")
    a.add_argument("--angles", type=int, default=64)
    a.add_argument("--assert", dest="assertions", type=_assertions, default=[],
                   help="caller-asserted hypotheses: univalent,non_inner,uci")
    a.add_argument("--factor", help="bounded factor f for the product-weight path")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out", help="write the report here instead of stdout")

    sub.add_parser("verify-examples", aliases=["verify-paper"], help="run the acceptance checks")

    r = sub.add_parser("range", help="numerical-range boundary of a section as CSV")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--phi", help="self-map symbol (with --psi, default 1)")
    src.add_argument("--matrix", help="explicit matrix as JSON, entries numbers or strings like '1+2j'")
    r.add_argument("--psi", default="1")
    r.add_argument("--trunc", type=int, default=64, help="section order")
    r.add_argument("--angles", type=int, default=64)
    r.add_argument("--out", help="CSV path (default stdout)")
    r.add_argument("--svg", help="also draw the boundary polygon as SVG")
    return p


def _error(exc):
    json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
    sys.stderr.write("\n")
    return 1


def cmd_analyze(args):
    request = AnalysisRequest(
        psi_text=args.psi,
        phi_text=args.phi,
        trunc_ladder=args.trunc,
        angles=args.angles,
        assertions=args.assertions,
        output_path=args.out,
        seed=args.seed,
        factor_text=args.factor,
    )
    doc = analyze(request)
    text = doc.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return doc.exit_code


def cmd_verify(args):
    from .checks import run_checks

    rows = run_checks()
    for row in rows:
        print(row.line())
        if row.detail:
            print(f"    {row.detail}")
    passed = sum(r.passed for r in rows)
    print(f"{passed}/{len(rows)} criteria passed")
    return 0 if passed == len(rows) else 1


def _parse_matrix(text):
    rows = json.loads(text)
    return np.array([[complex(x) if isinstance(x, str) else x for x in row] for row in rows], dtype=np.complex128)


def svg_polygon(points, size=400, pad=20):
    pts = np.asarray(points)
    re, im = pts.real, pts.imag
    span = max(float(np.ptp(re)), float(np.ptp(im)), 1e-12)
    scale = (size - 2 * pad) / span
    cx, cy = (re.max() + re.min()) / 2, (im.max() + im.min()) / 2
    xs = size / 2 + (re - cx) * scale
    ys = size / 2 - (im - cy) * scale
    path = " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(xs, ys))
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n'
            f'  <polygon points="{path}" fill="none" stroke="black" stroke-width="1"/>\n</svg>\n')


def cmd_range(args):
    from .expr import parse_symbol
    from .operators import wco_matrix
    from .spectra import numerical_range

    if args.matrix:
        m = _parse_matrix(args.matrix)
    else:
        m = wco_matrix(parse_symbol(args.psi), parse_symbol(args.phi), args.trunc).matrix
    nr = numerical_range(m, args.angles)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(["theta", "re", "im"])
        for theta, p in zip(nr.thetas, nr.points):
            w.writerow([repr(float(theta)), repr(float(p.real)), repr(float(p.imag))])
    finally:
        if args.out:
            out.close()
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(svg_polygon(nr.points))
    return 0


COMMANDS = {"analyze": cmd_analyze, "verify-examples": cmd_verify, "verify-paper": cmd_verify, "range": cmd_range}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except HypothesisUnmet as exc:
        _error(exc)
        return 2
    except (HardyOpsError, ValueError, ArithmeticError, TypeError, SyntaxError, OSError) as exc:
        return _error(exc)


if __name__ == "__main__":
    sys.exit(main())
