"""Command-line front end.

Exit codes: 0 success or proved, 1 refuted, 2 usage or input error,
3 inconclusive.  Structured output is JSON Lines: one object per result,
keys sorted, so identical runs give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

import mpmath

from .algebra.evaluate import S_exact, check_triangle
from .algebra.qfield import rational_sqrt
from .algebra.tower import SurdValue
from .config import RunConfig
from .errors import BudgetExhausted, ConstantParseError, DegenerateCenter, NotATriangle

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
STATUS_EXIT = {"proved": EXIT_OK, "refuted": EXIT_REFUTED, "inconclusive": EXIT_INCONCLUSIVE}


class Output:
    """Collects lines or objects and writes them once, to stdout or --out."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: List[str] = []

    def text(self, line: str = "") -> None:
        if self.fmt == "human":
            self.lines.append(line)

    def obj(self, d: dict) -> None:
        if self.fmt == "structured":
            self.lines.append(json.dumps(d, sort_keys=True))

    def raw(self, text: str) -> None:
        self.lines.append(text.rstrip("\n"))

    def flush(self, path: Optional[str]) -> None:
        body = "\n".join(self.lines) + ("\n" if self.lines else "")
        if path:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


def parse_rational(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError(f"decimals are not accepted, write {text!r} as p/q")
    return v


def center_index(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a center index: {text!r}") from None
    if not 1 <= k <= 20:
        raise argparse.ArgumentTypeError(f"center index must be in 1..20, got {k}")
    return k


def surd_text(x: SurdValue) -> str:
    if not x.v:
        return str(x.u)
    return f"{x.u} + ({x.v})*sqrt({x.m})"


def decimal(x: SurdValue, prec: int, digits: int = 20) -> str:
    with mpmath.workprec(prec + 16):
        return mpmath.nstr(x.to_mpf(prec + 16), digits)


def sqrt_text(d2: SurdValue) -> str:
    if d2.is_rational():
        r = rational_sqrt(d2.u.p)
        if r is not None:
            return str(r)
    return f"sqrt({surd_text(d2)})"


def config_from(args) -> RunConfig:
    return RunConfig(precision_bits=args.precision, sample_count=args.samples, seed=args.seed,
                     output_format=args.format if args.format != "dot" else "structured")


# -- subcommands ---------------------------------------------------------------

def cmd_centers(args, out: Output) -> int:
    from .centers.catalog import center
    from .centers.points import normalized_barycentric
    sides = tuple(args.sides)
    check_triangle(*sides)
    a, b, c = sides
    xa = (a * a + b * b - c * c) / (2 * a)
    ya = S_exact(sides) * (1 / a)
    ids = [args.id] if args.id else list(range(1, 21))
    for k in ids:
        d = center(k)
        try:
            P = normalized_barycentric(k, sides)
        except DegenerateCenter as exc:
            out.text(f"X{k} ({d.name}): undefined ({exc})")
            out.obj({"center": k, "name": d.name, "defined": False})
            continue
        x = P.u * xa + P.v * a
        y = P.u * ya
        bary = [surd_text(t) for t in P]
        cart = [surd_text(x), surd_text(y)]
        out.text(f"X{k} ({d.name})")
        out.text(f"  barycentric ({', '.join(bary)})")
        out.text(f"  cartesian   ({', '.join(cart)})")
        out.text(f"  decimal     ({decimal(x, args.precision)}, {decimal(y, args.precision)})")
        out.obj({"center": k, "name": d.name, "defined": True, "barycentric": bary, "cartesian": cart,
                 "cartesian_decimal": [decimal(x, args.precision), decimal(y, args.precision)]})
    return EXIT_OK


def cmd_dist(args, out: Output) -> int:
    from .centers.points import distance_squared
    sides = tuple(args.sides)
    check_triangle(*sides)
    d2 = distance_squared(args.i, args.j, sides)
    with mpmath.workprec(args.precision + 16):
        dec = mpmath.nstr(mpmath.sqrt(d2.to_mpf(args.precision + 16)), 20)
    out.text(f"D({args.i},{args.j})^2 = {surd_text(d2)}")
    out.text(f"D({args.i},{args.j})   = {sqrt_text(d2)} ~ {dec}")
    out.obj({"i": args.i, "j": args.j, "sides": [str(s) for s in sides], "d2": surd_text(d2),
             "d": sqrt_text(d2), "d_decimal": dec})
    return EXIT_OK


def _sampled_claim(n, i, j, k, direction, config):
    """Look for a certified violation on the sample set; None when none is found."""
    from .analysis.graph import sample_shapes
    from .analysis.sampling import SampleEvaluator, precise_d2
    import numpy as np
    ev = SampleEvaluator(sample_shapes(config))
    lo2, hi2 = ev.ratio2(n, i, j)
    K = k.enclosure(128)
    k2lo, k2hi = K.lo_float() ** 2 * (1 - 1e-15), K.hi_float() ** 2 * (1 + 1e-15)
    bad = lo2 > k2hi if direction == "le" else hi2 < k2lo
    K2 = k.square_enclosure(256)
    for idx in np.nonzero(bad)[0][:16].tolist():
        shape = ev.shapes[idx]
        a, b = precise_d2(n, i, shape), precise_d2(n, j, shape)
        if a is None or b is None or not b.is_positive():
            continue
        r2 = a / b
        if (r2.lower > K2.upper) if direction == "le" else (r2.upper < K2.lower):
            return shape, r2.clip_below(0).sqrt()
    return None


def cmd_verify(args, out: Output) -> int:
    from .certify.objective import RatioProblem
    from .certify.certificate import BoundCertificate, Counterexample
    from .certify.verify import as_constant, constant_text, verify_inequality
    config = config_from(args)
    k = as_constant(args.constant)
    problem = RatioProblem(args.n, args.i, args.j)
    claim = f"D({args.n},{args.i}) {'<=' if args.direction == 'le' else '>=' if args.direction == 'ge' else '='} " \
            f"{args.constant} * D({args.n},{args.j})"
    directions = ["le", "ge"] if args.direction == "eq-ratio" else [args.direction]
    certs = None
    if args.mode == "sampled" and args.direction != "eq-ratio":
        found = _sampled_claim(args.n, args.i, args.j, k, args.direction, config)
        if found is None:
            out.text(f"{claim}: no violation on {config.sample_count} samples (sampled evidence, not a proof)")
            out.obj({"claim": claim, "status": "sampled", "samples": config.sample_count})
            return EXIT_OK
        shape, r = found
        cert = BoundCertificate((args.n, args.i, args.j), args.direction, constant_text(k), config, "refuted")
        cert.counterexample = Counterexample(shape.sides, r.lo_str(20), r.hi_str(20), 256)
        cert.note = "violation at a sampled shape"
        certs = [cert]
    if certs is None:
        certs = [verify_inequality(problem, d, k, config) for d in directions]
    statuses = [c.status for c in certs]
    if "refuted" in statuses:
        status = "refuted"
    elif all(s == "proved" for s in statuses):
        status = "proved"
    else:
        status = "inconclusive"
    out.text(f"{claim}: {status.upper()}")
    for cert in certs:
        out.text(f"  {cert.claim_text()}: {cert.status}" + (f" ({cert.note})" if cert.note else ""))
        for cov in cert.interior:
            counts = cov.counts()
            out.text(f"    eps={cov.epsilon}: {cov.status}, {sum(counts.values())} leaves")
        if cert.counterexample is not None:
            ce = cert.counterexample
            out.text(f"    counterexample sides ({', '.join(str(s) for s in ce.sides)}), "
                     f"ratio in [{ce.ratio_lo}, {ce.ratio_hi}]")
    out.obj({"claim": claim, "status": status, "certificates": [json.loads(c.to_json()) for c in certs]})
    if args.certificate:
        body = certs[0].to_json() if len(certs) == 1 else \
            "[" + ",".join(c.to_json() for c in certs) + "]"
        with open(args.certificate, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
    return STATUS_EXIT[status]


def cmd_bound(args, out: Output) -> int:
    from .analysis.best import best_constant
    from .analysis.table import bound_table
    config = config_from(args)
    sides = ["min", "max"] if args.side == "both" else [args.side]
    entry = bound_table().lookup(args.n, args.i, args.j)
    if entry is not None:
        out.text(f"table: {entry.describe()} [{entry.tag}]")
    code = EXIT_OK
    for side in sides:
        try:
            best = best_constant(args.n, args.i, args.j, side, args.tolerance, config)
        except BudgetExhausted as exc:
            br = exc.best
            out.text(f"{side}: budget exhausted, bracket [{br.lower!r}, {br.upper!r}]")
            out.obj({"side": side, "status": "inconclusive", "bracket": br.as_dict()})
            code = EXIT_INCONCLUSIVE
            continue
        br = best.bracket
        label = ", ".join(t for t, _ in best.matches) or "unmatched"
        out.text(f"{side}: [{br.lower!r}, {br.upper!r}] -> {label}; attained {br.attainment.get('kind')}")
        d = best.as_dict()
        d["status"] = "ok"
        out.obj(d)
    return code


def cmd_graph(args, out: Output) -> int:
    from .analysis.equalities import detect_equalities
    from .analysis.graph import build_graph, transitive_reduction
    config = config_from(args)
    g = build_graph(args.n, args.mode, config, workers=args.workers)
    red = transitive_reduction(g, detect_equalities(seed=config.seed))
    if args.format == "dot":
        out.raw(red.to_dot())
    else:
        out.text(f"hub {g.hub} ({g.mode}): {len(g.nodes)} nodes, {len(g.edges)} edges, "
                 f"{len(g.absent)} refuted, {len(g.inconclusive)} inconclusive")
        for cls in red.classes:
            out.text(f"  equal: {' = '.join(str(k) for k in cls)}")
        for i, j, _ in red.edges:
            out.text(f"  {i} -> {j}")
        for i, j, note in g.inconclusive:
            out.text(f"  ? {i} -> {j}: {note}")
        d = g.as_dict()
        d["reduced"] = [[i, j] for i, j, _ in red.edges]
        d["classes"] = [list(c) for c in red.classes]
        out.obj(d)
    return EXIT_INCONCLUSIVE if g.inconclusive else EXIT_OK


def cmd_equalities(args, out: Output) -> int:
    from .analysis.equalities import detect_equalities
    recs = detect_equalities(seed=args.seed)
    out.text(f"{len(recs)} equal-distance pairs")
    for r in recs:
        mid = f"; X{r.midpoint[1]} bisects X{r.midpoint[0]}X{r.midpoint[2]}" if r.midpoint else ""
        out.text(f"  {r.describe()} [{r.verification.as_dict()['kind']}]{mid}")
        out.obj(r.as_dict())
    return EXIT_OK


def cmd_chain(args, out: Output) -> int:
    from .analysis.chain import check_chain
    config = config_from(args)
    res = check_chain(args.hub, args.sequence, args.mode, config)
    out.text(f"chain at hub {args.hub}: {'PASS' if res.passed else 'FAIL'}")
    for link in res.links:
        out.text(f"  D({args.hub},{link.i}) <= D({args.hub},{link.j}): {link.status}")
    out.obj(res.as_dict())
    if res.passed:
        return EXIT_OK
    return EXIT_REFUTED if any(l.status == "fail" for l in res.links) else EXIT_INCONCLUSIVE


def cmd_report(args, out: Output) -> int:
    from .analysis.best import verify_all_constants
    from .analysis.equalities import detect_equalities
    from .analysis.tablecheck import check_table
    config = config_from(args)
    ok = True
    recs = detect_equalities(seed=config.seed)
    eq_ok = len(recs) == 3
    ok &= eq_ok
    out.text(f"[{'PASS' if eq_ok else 'FAIL'}] equalities: {len(recs)} records")
    for r in recs:
        out.text(f"    {r.describe()}")
    out.obj({"section": "equalities", "passed": eq_ok, "records": [r.as_dict() for r in recs]})

    rows = check_table(config)
    bad = [r for r in rows if not r.passed]
    ok &= not bad
    out.text(f"[{'PASS' if not bad else 'FAIL'}] bounds: {len(rows)} rows, {len(bad)} with violations, "
             f"{config.sample_count} samples each")
    for r in bad:
        out.text(f"    {r.entry.describe()}: {len(r.violations)} violations")
    out.obj({"section": "bounds", "passed": not bad, "rows": [r.as_dict() for r in rows]})

    for rep in verify_all_constants(config):
        tag = "PASS" if rep.agree else "FLAG"
        out.text(f"[{tag}] {rep.name}: root in [{float(rep.lower):.12f}, {float(rep.upper):.12f}], "
                 f"printed {rep.printed}" + (f"; {rep.note}" if rep.note else ""))
        d = rep.as_dict()
        d["section"] = "constants"
        out.obj(d)
    return EXIT_OK if ok else EXIT_REFUTED


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("sampled", "certified"), default="sampled")
    common.add_argument("--precision", type=int, default=128, metavar="BITS")
    common.add_argument("--samples", type=int, default=10 ** 4, metavar="N")
    common.add_argument("--seed", type=int, default=0, metavar="N")
    common.add_argument("--format", choices=("human", "structured", "dot"), default="human")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--workers", type=int, default=1, metavar="N")

    p = argparse.ArgumentParser(prog="tricenters", description="Distances between triangle centers X1..X20.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("centers", parents=[common], help="coordinates of centers")
    s.add_argument("sides", nargs=3, type=parse_rational)
    s.add_argument("--id", type=center_index)
    s.set_defaults(func=cmd_centers)

    s = sub.add_parser("dist", parents=[common], help="distance between two centers")
    s.add_argument("sides", nargs=3, type=parse_rational)
    s.add_argument("i", type=center_index)
    s.add_argument("j", type=center_index)
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("verify", parents=[common], help="prove or refute D(n,i) <= k D(n,j)")
    for name in ("n", "i", "j"):
        s.add_argument(name, type=center_index)
    s.add_argument("constant")
    s.add_argument("direction", choices=("le", "ge", "eq-ratio"))
    s.add_argument("--certificate", metavar="PATH", help="write the certificate JSON here")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bound", parents=[common], help="best constant for D(n,i)/D(n,j)")
    for name in ("n", "i", "j"):
        s.add_argument(name, type=center_index)
    s.add_argument("--side", choices=("min", "max", "both"), default="both")
    s.add_argument("--tolerance", type=float, default=1e-6)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("graph", parents=[common], help="inequality digraph around a hub")
    s.add_argument("n", type=center_index)
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("equalities", parents=[common], help="equal center distances")
    s.set_defaults(func=cmd_equalities)

    s = sub.add_parser("chain", parents=[common], help="check a chain of inequalities")
    s.add_argument("hub", type=center_index)
    s.add_argument("sequence", nargs="+", type=center_index)
    s.set_defaults(func=cmd_chain)

    s = sub.add_parser("report", parents=[common], help="full reproduction report")
    s.set_defaults(func=cmd_report)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "chain" and len(args.sequence) < 2:
        parser.error("a chain needs at least two centers")
    if args.format == "dot" and args.command != "graph":
        parser.error("--format dot is only available for graph")
    if args.command == "verify" and args.certificate is None and args.out and args.format != "structured":
        # --out names the certificate file for verify unless structured output is requested
        args.certificate, args.out = args.out, None
    out = Output(args.format)
    try:
        if args.precision <= 0 or args.samples <= 0 or args.workers <= 0 or args.seed < 0:
            raise ValueError("precision, samples and workers must be positive, seed non-negative")
        code = args.func(args, out)
    except NotATriangle as exc:
        print(f"NotATriangle: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstantParseError as exc:
        print(f"ConstantParseError: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush(args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
