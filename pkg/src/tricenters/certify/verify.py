"""Public entry points: prove or refute D(n,i) <= k D(n,j), and bracket best constants.

A claim is proved when, for every margin of the schedule, a cover of the
eps-interior shows ``num - k^2 den <= 0`` box by box (``>= 0`` for lower
bounds), and the limit of the ratio along every boundary family is
consistent with the claim.  The best-constant brackets combine the
interior extreme with the certified family limits, since many extremes are
only approached at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import inf, isfinite, sqrt
from typing import Dict, List, Optional, Tuple, Union

from ..algebra.interval import IntervalScalar
from ..algebra.poly import Poly3
from ..config import DEFAULT, RunConfig
from ..errors import BudgetExhausted, SearchFailed
from ..shapespace import FAMILIES, BoundaryPath, TriangleShape, boundary_paths, canonicalize
from . import univariate as uv
from .bnb import cover, extremize, interior_root, is_triangle_point, outside_canonical, sides_at
from .certificate import BoundCertificate, ChartRecord, Counterexample, InteriorCover
from .constants import Constant, QuadraticConstant, k_squared_exact, parse_constant
from .contact import build_charts
from .evaluator import Kappa, SignTarget
from .limits import FAMILY_RANGES, family_bounds, leading_limit, path_limits
from .objective import RatioObjective, RatioProblem, compile_ratio

DIRECTIONS = {"le": "le", "<=": "le", "ge": "ge", ">=": "ge"}


def normalize_direction(direction: str) -> str:
    try:
        return DIRECTIONS[direction]
    except KeyError:
        raise ValueError(f"direction must be one of {sorted(DIRECTIONS)}") from None


def as_constant(k: Union[str, int, Fraction, Constant]) -> Constant:
    if isinstance(k, str):
        k = parse_constant(k)
    elif isinstance(k, (int, Fraction)):
        k = QuadraticConstant(Fraction(k))
    if k.sign() < 0:
        raise ValueError("the constant must be non-negative")
    return k


def kappa_for(k: Constant) -> Kappa:
    return Kappa(k_squared_exact(k), source=k)


def constant_text(k: Constant) -> str:
    return k.expression() if hasattr(k, "expression") else str(k)


def target_polynomial(obj: RatioObjective, kappa: Kappa, sign: int) -> Optional[Poly3]:
    """sign * (num - kappa den) as one homogeneous polynomial, when exact."""
    if not obj.s_free or kappa.exact is None:
        return None
    F = obj.num.base - obj.den.base.scale(kappa.exact)
    return F if sign > 0 else F.scale(-1)


IDENTITY_NOTE = "identity: num = k^2 den as polynomials"


def is_polynomial_identity(obj: RatioObjective, kappa: Kappa) -> bool:
    """True when the squared ratio equals kappa for every triangle."""
    F = target_polynomial(obj, kappa, 1)
    return F is not None and F.is_zero()


# -- pointwise checks --------------------------------------------------------

def violation(obj: RatioObjective, kappa: Kappa, direction: str, sides, prec: int) -> Optional[IntervalScalar]:
    """Ratio enclosure at ``sides`` when it strictly violates the claim, else None."""
    n, d = obj.num_den_enclosure(sides, prec)
    diff = n - kappa.enclosure(prec) * d
    bad = diff.is_positive() if direction == "le" else diff.is_negative()
    if not bad or not d.is_positive():
        return None
    return n / d


def make_counterexample(sides, ratio_sq: IntervalScalar, prec: int) -> Counterexample:
    r = ratio_sq.clip_below(0).sqrt()
    shape = canonicalize(sides)
    return Counterexample(shape.sides, r.lo_str(20), r.hi_str(20), prec)


# -- boundary limits ---------------------------------------------------------

def boundary_consistency(obj: RatioObjective, k: Constant, kappa: Kappa, direction: str,
                         with_paths: bool = False, prec: int = 128) -> Tuple[bool, List[dict]]:
    """Is every boundary limit consistent with the claim?  Also per-family records."""
    records = []
    ok = True
    if obj.s_free:
        k_lo = kappa.enclosure(prec).lo_float()
        k_hi = kappa.enclosure(prec).hi_float()
        for fam in FAMILY_RANGES:
            lim = leading_limit(obj, fam)
            rec = {"family": fam, "kind": lim.kind}
            if kappa.exact is not None:
                good = lim.consistent(kappa.exact, direction)
                rec["method"] = "exact"
            else:
                good = _consistent_by_range(lim, direction, k_lo, k_hi)
                rec["method"] = "range"
            rec["consistent"] = good
            ok = ok and good
            records.append(rec)
    if with_paths or not obj.s_free:
        kap = kappa.enclosure(prec)
        for pl in path_limits(obj, prec=prec):
            rec = pl.as_dict()
            rec["kind"] = "path"
            if not obj.s_free:
                good = _consistent_numeric(pl.estimate, pl.error, direction, kap.lo_float(), kap.hi_float())
                rec["method"] = "numeric"
                rec["consistent"] = good
                ok = ok and good
            records.append(rec)
    return ok, records


def _consistent_by_range(lim, direction, k_lo, k_hi) -> bool:
    kind = lim.kind
    if kind == "undefined":
        return False
    if kind == "zero":
        return direction == "le" or k_hi == 0
    if kind == "infinite":
        return direction == "ge"
    ext = lim.extremes()
    if ext is None:
        return False
    inf_lo, _, _, sup_hi, _, _ = ext
    return sup_hi <= k_lo if direction == "le" else inf_lo >= k_hi


def _consistent_numeric(estimate, error, direction, k_lo, k_hi) -> bool:
    if estimate != estimate:  # nan: no usable samples
        return False
    if estimate == inf:
        return direction == "ge"
    if direction == "le":
        return estimate - error <= k_hi
    return estimate + error >= k_lo


def _family_path(family: str, p: Fraction) -> Optional[BoundaryPath]:
    factory, (lo, hi) = FAMILIES[family]
    p = min(max(Fraction(p), lo), hi)
    try:
        return factory(p)
    except ValueError:
        return None


def _suspect_paths(obj: RatioObjective, kappa: Kappa, direction: str) -> List[BoundaryPath]:
    """Paths along which the limit breaks the claim, most promising first."""
    out = []
    if obj.s_free:
        for fam, (lo, hi) in FAMILY_RANGES.items():
            lim = leading_limit(obj, fam)
            params = []
            if lim.kind == "finite" and kappa.exact is not None:
                g = uv.strip([a - kappa.exact * b for a, b in zip(*_padded(lim.num, lim.den))])
                if direction == "ge":
                    g = [-c for c in g]
                params = [x for x in uv.sample_points(g, lo, hi) if uv.sign_at(g, x) > 0]
            elif (lim.kind == "infinite" and direction == "le") or (lim.kind == "zero" and direction == "ge"):
                params = [(lo + hi) / 2, lo, hi]
            elif lim.kind == "finite":
                ext = lim.extremes()
                if ext is not None:
                    params = [ext[5] if direction == "le" else ext[4]]
            for p in params:
                path = _family_path(fam, p)
                if path is not None:
                    out.append(path)
    out.extend(boundary_paths())
    return out


def _padded(f, g):
    n = max(len(f), len(g))
    from ..algebra.qfield import QSqrt3
    return (list(f) + [QSqrt3.ZERO] * (n - len(f)), list(g) + [QSqrt3.ZERO] * (n - len(g)))


def _walk_for_violation(obj, kappa, direction, paths, prec, k_max=48):
    for path in paths:
        for k in range(4, k_max + 1):
            t = Fraction(1, 2 ** k)
            if t > path.t_max:
                continue
            sides = path.sides(t)
            try:
                canonicalize(sides)
            except ValueError:
                continue
            r = violation(obj, kappa, direction, sides, prec)
            if r is not None:
                return sides, r
    return None


# -- verify_inequality ---------------------------------------------------------

def verify_inequality(problem: RatioProblem, direction: str, k, config: RunConfig = DEFAULT) -> BoundCertificate:
    """Prove, refute or fail to decide D(n,i) <= k D(n,j) (``ge``: >=)."""
    direction = normalize_direction(direction)
    k = as_constant(k)
    sign = 1 if direction == "le" else -1
    prec = config.precision_bits
    cert = BoundCertificate((problem.hub, problem.num, problem.den), direction, constant_text(k), config,
                            "inconclusive")
    if problem.trivial:
        c = k.compare(1)
        holds = c >= 0 if direction == "le" else c <= 0
        cert.status = "proved" if holds else "refuted"
        cert.note = "identity: the ratio is 1 for every triangle"
        if not holds:
            one = IntervalScalar.exact(1, prec)
            cert.counterexample = Counterexample((Fraction(1), Fraction(4, 5), Fraction(3, 5)),
                                                 one.lo_str(20), one.hi_str(20), prec)
        return cert

    obj = compile_ratio(problem)
    kappa = kappa_for(k)
    if is_polynomial_identity(obj, kappa):
        cert.status = "proved"
        cert.note = IDENTITY_NOTE
        return cert
    ok, cert.boundary = boundary_consistency(obj, k, kappa, direction, with_paths=True, prec=prec)
    if not ok:
        found = _walk_for_violation(obj, kappa, direction, _suspect_paths(obj, kappa, direction), 2 * prec)
        if found is not None:
            cert.status = "refuted"
            cert.counterexample = make_counterexample(found[0], found[1], 2 * prec)
            cert.note = "boundary limit violates the claim"
            return cert
        cert.note = "boundary limit inconsistent with the claim but no violating shape found"
        return cert

    target = SignTarget.for_objective(obj, kappa, sign)
    F = target_polynomial(obj, kappa, sign)
    charts: List = []
    charts_tried = False
    witness: Dict[str, object] = {}

    def refute(pt):
        sides = sides_at(*pt)
        if not is_triangle_point(*pt):
            return False
        r = violation(obj, kappa, direction, sides, 2 * prec)
        if r is None:
            return False
        witness["found"] = (sides, r)
        return True

    for eps in config.epsilon_schedule:
        root = interior_root(eps)
        while True:
            res = cover(target, root, outside=outside_canonical, refute=refute,
                        charts=[rec.chart for rec in charts], precision=prec,
                        max_subdivisions=config.max_subdivisions, batch=config.batch)
            if res.status == "inconclusive" and not charts_tried and F is not None:
                charts_tried = True
                charts = _chart_records(F, config)
                if charts:
                    continue
            break
        if res.status == "refuted":
            sides, r = witness["found"]
            cert.status = "refuted"
            cert.counterexample = make_counterexample(sides, r, 2 * prec)
            cert.note = f"violation inside the eps-interior for eps={eps}"
            cert.interior.append(InteriorCover.from_result(eps, root, res))
            cert.charts = charts
            return cert
        cert.interior.append(InteriorCover.from_result(eps, root, res))
    cert.charts = charts
    if all(c.status == "proved" for c in cert.interior):
        cert.status = "proved"
    else:
        cert.note = "subdivision budget exhausted; frontier boxes recorded"
    return cert


def _chart_records(F: Poly3, config: RunConfig) -> List[ChartRecord]:
    out = []
    for ch in build_charts(F, max_boxes=min(config.max_subdivisions, 50000)):
        out.append(ChartRecord(ch, InteriorCover.from_result(0, ch.box(), ch.derivative_cover)))
    return out


# -- best constants ------------------------------------------------------------

@dataclass
class RatioBracket:
    """Bracket on sup or inf of D(n,i)/D(n,j) (distances, not squares)."""

    problem: RatioProblem
    side: str
    lower: float
    upper: float
    attainment: Dict[str, object] = field(default_factory=dict)
    converged: bool = True
    epsilon: Optional[Fraction] = None
    evaluated: int = 0

    @property
    def width(self) -> float:
        if self.lower == self.upper:
            return 0.0
        return self.upper - self.lower

    def contains(self, value) -> bool:
        return self.lower <= float(value) <= self.upper

    def as_dict(self) -> dict:
        att = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.attainment.items()}
        return {"problem": [self.problem.hub, self.problem.num, self.problem.den], "side": self.side,
                "lower": repr(self.lower), "upper": repr(self.upper), "attainment": att,
                "converged": self.converged}


def _sqrt_down(x: float) -> float:
    if x <= 0:
        return 0.0
    if x == inf:
        return inf
    import numpy as np
    return float(np.nextafter(sqrt(x), 0.0))


def _sqrt_up(x: float) -> float:
    if x == inf:
        return inf
    import numpy as np
    return float(np.nextafter(sqrt(max(x, 0.0)), inf))


def _limit_extremes(obj: RatioObjective, side: str):
    """(lo, hi, family, parameter) of the best boundary limit, squared ratio."""
    if obj.s_free:
        fbs = family_bounds(obj)
        if side == "sup":
            top = max(fbs, key=lambda fb: fb.sup_lo)
            hi = max(inf if fb.kind == "unresolved" else fb.sup_hi for fb in fbs)
            return top.sup_lo, hi, top.family, top.argmax
        bot = min(fbs, key=lambda fb: fb.inf_hi)
        return min(fb.inf_lo for fb in fbs), bot.inf_hi, bot.family, bot.argmin
    best = None
    for pl in path_limits(obj):
        if pl.estimate != pl.estimate:
            continue
        lo, hi = pl.estimate - pl.error, pl.estimate + pl.error
        if side == "sup":
            if best is None or pl.estimate > best[0]:
                best = (lo, hi, pl.path, None)
        elif best is None or pl.estimate < best[1]:
            best = (lo, hi, pl.path, None)
    return best


def _extreme(problem: RatioProblem, side: str, tolerance: float, config: RunConfig) -> RatioBracket:
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if problem.trivial:
        return RatioBracket(problem, side, 1.0, 1.0, {"kind": "identity"})
    obj = compile_ratio(problem)
    lim = _limit_extremes(obj, side)
    eps = config.finest_epsilon
    if side == "sup" and lim is not None and lim[0] == inf:
        return RatioBracket(problem, side, inf, inf,
                            {"kind": "boundary", "family": lim[2], "parameter": lim[3], "limit": "inf"}, True, eps)
    seed = None
    if lim is not None and isfinite(lim[0]) and isfinite(lim[1]):
        seed = lim[0] if side == "sup" else lim[1]
    res = extremize(obj, side, eps, tolerance, seed=seed, max_subdivisions=config.max_subdivisions,
                    batch=min(config.batch, 512))
    lo_sq, hi_sq = res.lower, res.upper
    if lim is not None:
        if side == "sup":
            lo_sq, hi_sq = max(lo_sq, lim[0]), max(hi_sq, lim[1])
        else:
            lo_sq, hi_sq = min(lo_sq, lim[0]), min(hi_sq, lim[1])
    if res.from_seed or res.argument is None:
        att = {"kind": "boundary", "family": lim[2] if lim else None, "parameter": lim[3] if lim else None}
    else:
        u, c = res.argument
        shape = canonicalize(sides_at(u, c))
        att = {"kind": "interior", "shape": [str(shape.b), str(shape.c)],
               "shape_float": [float(shape.b), float(shape.c)]}
    br = RatioBracket(problem, side, _sqrt_down(lo_sq), _sqrt_up(hi_sq), att, res.converged, eps, res.evaluated)
    if not res.converged:
        raise BudgetExhausted(f"{side} of {problem}: bracket [{br.lower}, {br.upper}] after "
                              f"{res.subdivisions} subdivisions", best=br)
    return br


def sup_ratio(problem: RatioProblem, tolerance: float = 1e-6, config: RunConfig = DEFAULT) -> RatioBracket:
    """Bracket the supremum of D(n,i)/D(n,j) over all triangles."""
    return _extreme(problem, "sup", tolerance, config)


def inf_ratio(problem: RatioProblem, tolerance: float = 1e-6, config: RunConfig = DEFAULT) -> RatioBracket:
    """Bracket the infimum of D(n,i)/D(n,j) over all triangles."""
    return _extreme(problem, "inf", tolerance, config)


# -- unbounded ratios ----------------------------------------------------------

@dataclass
class WitnessFamily:
    """Shapes along one path whose ratio enclosures tend to 0 (or infinity)."""

    problem: RatioProblem
    side: str
    path: str
    points: List[Tuple[Fraction, TriangleShape, float, float]]  # (t, shape, ratio_lo, ratio_hi)

    def as_dict(self) -> dict:
        return {"problem": [self.problem.hub, self.problem.num, self.problem.den], "side": self.side,
                "path": self.path,
                "points": [[str(t), str(s.b), str(s.c), repr(lo), repr(hi)] for t, s, lo, hi in self.points]}


def refute_positive_lower_bound(problem: RatioProblem, side: str = "lower", config: RunConfig = DEFAULT,
                                threshold: float = 1e-3, k_max: int = 60) -> WitnessFamily:
    """Find shapes with D(n,i)/D(n,j) below ``threshold`` (``side='upper'``: above 1/threshold).

    Follows candidate boundary paths with t = 2^-k and accepts one when the
    certified enclosures are monotone and cross the threshold.
    """
    if side not in ("lower", "upper"):
        raise ValueError("side must be 'lower' or 'upper'")
    if problem.trivial:
        raise SearchFailed(f"{problem} is identically 1")
    obj = compile_ratio(problem)
    prec = 2 * config.precision_bits
    paths = _unbounded_candidates(obj, side) + boundary_paths()
    seen = set()
    for path in paths:
        if path.name in seen:
            continue
        seen.add(path.name)
        pts = []
        prev = None
        for k in range(4, k_max + 1):
            t = Fraction(1, 2 ** k)
            if t > path.t_max:
                continue
            shape = path.at(t)
            n, d = obj.num_den_enclosure(shape.sides, prec)
            if not d.is_positive():
                break
            r = (n / d).clip_below(0).sqrt()
            lo, hi = r.lo_float(), r.hi_float()
            if prev is not None:
                monotone = hi <= prev[1] if side == "lower" else lo >= prev[0]
                if not monotone:
                    break
            pts.append((t, shape, lo, hi))
            prev = (lo, hi)
            if (side == "lower" and hi < threshold) or (side == "upper" and lo > 1 / threshold):
                return WitnessFamily(problem, side, path.name, pts)
    raise SearchFailed(f"no boundary path drives {problem} "
                       f"{'to 0' if side == 'lower' else 'to infinity'} within the search budget")


def _unbounded_candidates(obj: RatioObjective, side: str) -> List[BoundaryPath]:
    if not obj.s_free:
        return []
    out = []
    for fam, (lo, hi) in FAMILY_RANGES.items():
        lim = leading_limit(obj, fam)
        want = "zero" if side == "lower" else "infinite"
        if lim.kind == want:
            for p in ((lo + hi) / 2, lo, hi):
                path = _family_path(fam, p)
                if path is not None:
                    out.append(path)
        elif lim.kind == "finite":
            n, d = lim.reduced()
            g = n if side == "lower" else d
            for r in uv._roots_in(uv.norm(g), lo, hi):
                p = r.lo if r.exact else (r.lo + r.hi) / 2
                path = _family_path(fam, p)
                if path is not None:
                    out.append(path)
    return out
