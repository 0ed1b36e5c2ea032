"""Spectral toughness bounds and their certification on concrete graphs.

Spectral quantities are floats; toughness is an exact ``Fraction``. Every
comparison grants the bound ``tol`` of slack in its favour, so eigensolver
noise cannot manufacture a counterexample.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .graph import Graph, GraphError, degree_profile, structural_flags
from .spectra import adjacency_spectrum
from .toughness import ToughnessResult, toughness_exact

log = logging.getLogger(__name__)

TOL = 1e-7
DEFAULT_EXACT_CAP = 24

CLASSICAL_BOUNDS = ("alon", "brouwer", "brouwer_conjecture", "haemers")
THRESHOLDS = ("liu_chen", "cioaba_wong", "zhang", "chen_lin_wang")


class BoundError(ValueError):
    pass


class TheoremViolation(RuntimeError):
    """A certified counterexample: exact toughness below a proven bound."""

    def __init__(self, report: BoundReport):
        super().__init__(
            f"{report.graph_id}: t = {report.toughness.value} < main bound {report.main_bound:.12g}"
        )
        self.report = report


def main_bound(d: int, lambda2: float) -> float:
    """min{(d+1)/d * (d - lambda2), 1}."""
    if d < 3:
        raise BoundError(f"main bound needs d >= 3 (got {d})")
    if not lambda2 < d:
        raise BoundError(f"main bound needs lambda2 < d (got {lambda2} >= {d})")
    return min((d + 1) / d * (d - lambda2), 1.0)


def classical_bound(name: str, d: int, lambda2: float, lambda_min: float) -> float:
    lam = max(lambda2, -lambda_min)
    if lam <= 0 or lambda_min >= 0:
        raise BoundError("degenerate spectrum: need max(lambda2, -lambda_min) > 0 and lambda_min < 0")
    if name == "alon":
        return (d * d / (d * lam + lam * lam) - 1) / 3
    if name == "brouwer":
        return d / lam - 2
    if name == "brouwer_conjecture":
        return d / lam - 1
    if name == "haemers":
        return (d - lambda2) / -lambda_min
    raise BoundError(f"unknown bound {name!r}; choose from {CLASSICAL_BOUNDS}")


@dataclass(frozen=True)
class Threshold:
    name: str
    value: float  # lambda2 must be strictly below this
    guaranteed: Fraction  # toughness guaranteed by the theorem
    strict: bool = False  # conclusion is t > guaranteed rather than t >= guaranteed
    b: int | None = None

    def conclusion_holds(self, t: Fraction) -> bool:
        return t > self.guaranteed if self.strict else t >= self.guaranteed


def default_b(d: int) -> int:
    """Smallest b >= 2 with d <= b^2 + b."""
    b = 2
    while d > b * b + b:
        b += 1
    return b


def threshold(name: str, d: int, b: int | None = None) -> Threshold:
    if d < 3:
        raise BoundError(f"threshold theorems need d >= 3 (got {d})")
    even = d % 2 == 0
    if name == "liu_chen":
        return Threshold(name, d - 1 + (3 if even else 2) / (d + 1), Fraction(1))
    if name == "cioaba_wong":
        return Threshold(name, (d - 2 + math.sqrt(d * d + (12 if even else 8))) / 2, Fraction(1))
    if name == "zhang":
        return Threshold(name, (math.sqrt(1 + 4 * (d - 1) ** 2) - 1) / 2, Fraction(1), strict=True)
    if name == "chen_lin_wang":
        if b is None:
            b = default_b(d)
        if b < 2 or d > b * b + b:
            raise BoundError(f"chen_lin_wang needs b >= 2 and d <= b^2 + b (got d={d}, b={b})")
        extra = 8 if b % 2 else 4
        value = (d - 2 + math.sqrt(d * d + 4 * (d - b) + extra)) / 2
        return Threshold(name, value, Fraction(1, b), b=b)
    raise BoundError(f"unknown threshold {name!r}; choose from {THRESHOLDS}")


def extremal_gap(d: int, k: int) -> tuple[float, float, float]:
    """(lambda2 of the extremal graph, d - lambda2, k/(d+2)) in closed form."""
    if k % 2 or not 2 <= k < d:
        raise BoundError(f"extremal family needs k even with 2 <= k < d (got d={d}, k={k})")
    root = math.sqrt(d * d + 4 * (d - k) + 4)
    lam2 = (d - 2 + root) / 2
    gap = 2 * k / (d + 2 + root)
    gap_lower = k / (d + 2)
    if not gap > gap_lower:
        raise AssertionError(f"gap {gap} not above {gap_lower}")
    return lam2, gap, gap_lower


# ---------------------------------------------------------------------------
# per-graph certification

@dataclass(frozen=True)
class ThresholdCheck:
    name: str
    threshold: float
    guaranteed: Fraction
    strict: bool
    hypothesis: bool
    conclusion: bool | None  # None when toughness is unknown

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "threshold": self.threshold,
            "guaranteed": str(self.guaranteed),
            "strict": self.strict,
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
        }


@dataclass
class BoundReport:
    graph_id: str
    n: int
    d: int
    lambda2: float
    lambda_min: float
    lambda_mix: float
    toughness: ToughnessResult | None
    main_bound: float
    alon: float
    brouwer: float
    brouwer_conj: float
    haemers: float
    threshold_checks: list[ThresholdCheck] = field(default_factory=list)
    # proven/conjectured bounds other than the main one: name -> holds (None if t unknown)
    classical_checks: dict[str, bool | None] = field(default_factory=dict)
    # main bound at least the Haemers value, recorded when t < 1
    main_beats_haemers: bool | None = None
    bipartite: bool = False

    @property
    def main_theorem_ok(self) -> bool:
        return self.toughness is not None and self.toughness.value >= self.main_bound - TOL

    @property
    def thresholds_ok(self) -> bool:
        return all(c.conclusion is not False for c in self.threshold_checks if c.hypothesis)

    def to_dict(self) -> dict:
        t = self.toughness
        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "d": self.d,
            "lambda2": self.lambda2,
            "lambda_min": self.lambda_min,
            "lambda_mix": self.lambda_mix,
            "toughness": None if t is None else t.to_dict()["value"],
            "witness": None if t is None else sorted(t.witness),
            "components": None if t is None else t.components,
            "bounds": {
                "main": self.main_bound,
                "alon": self.alon,
                "brouwer": self.brouwer,
                "brouwer_conj": self.brouwer_conj,
                "haemers": self.haemers,
            },
            "classical_checks": dict(self.classical_checks),
            "main_beats_haemers": self.main_beats_haemers,
            "thresholds": [c.to_dict() for c in self.threshold_checks],
            "main_theorem_ok": self.main_theorem_ok,
        }


CSV_FIELDS = [
    "graph_id", "n", "d", "lambda2", "lambda_min", "lambda_mix", "toughness",
    "main", "alon", "brouwer", "brouwer_conj", "haemers",
    "thresholds_hypothesis", "thresholds_ok", "main_theorem_ok",
]


def reports_to_csv(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        t = r.toughness
        w.writerow({
            "graph_id": r.graph_id,
            "n": r.n,
            "d": r.d,
            "lambda2": repr(r.lambda2),
            "lambda_min": repr(r.lambda_min),
            "lambda_mix": repr(r.lambda_mix),
            "toughness": "" if t is None else f"{t.value.numerator}/{t.value.denominator}",
            "main": repr(r.main_bound),
            "alon": repr(r.alon),
            "brouwer": repr(r.brouwer),
            "brouwer_conj": repr(r.brouwer_conj),
            "haemers": repr(r.haemers),
            "thresholds_hypothesis": ";".join(c.name for c in r.threshold_checks if c.hypothesis),
            "thresholds_ok": r.thresholds_ok,
            "main_theorem_ok": r.main_theorem_ok,
        })
    return buf.getvalue()


def high_precision_lambda2(g: Graph, dps: int = 40) -> float:
    """Second eigenvalue re-solved in multiprecision arithmetic."""
    with mpmath.workdps(dps):
        a = mpmath.matrix(g.adjacency_matrix().tolist())
        vals = sorted(mpmath.eigsy(a, eigvals_only=True), reverse=True)
        return float(vals[1])


def applicable_thresholds(d: int, bipartite: bool) -> list[Threshold]:
    out = [threshold("liu_chen", d), threshold("cioaba_wong", d)]
    if not bipartite:
        out.append(threshold("zhang", d))
    out.append(threshold("chen_lin_wang", d))
    return out


def verify_graph(
    g: Graph,
    graph_id: str = "graph",
    exact_cap: int = DEFAULT_EXACT_CAP,
    tol: float = TOL,
    strict: bool = True,
) -> BoundReport:
    """Certify the eigenvalue toughness bounds on one connected regular graph.

    With ``strict`` a main-bound violation that survives a multiprecision
    re-solve of lambda2 raises ``TheoremViolation``.
    """
    regular, d = degree_profile(g)
    if not regular:
        raise GraphError("graph is not regular")
    connected, bipartite, complete = structural_flags(g)
    if not connected:
        raise GraphError("graph is disconnected")
    if complete:
        raise GraphError("graph is complete; toughness undefined")
    if d < 3:
        raise GraphError(f"graph is {d}-regular; the bounds need d >= 3")

    spec = adjacency_spectrum(g)
    lam2, lam_min = spec.lambda2, spec.lambda_min
    t = toughness_exact(g) if g.n <= exact_cap else None

    report = BoundReport(
        graph_id=graph_id,
        n=g.n,
        d=d,
        lambda2=lam2,
        lambda_min=lam_min,
        lambda_mix=spec.lambda_mix,
        toughness=t,
        main_bound=main_bound(d, lam2),
        alon=classical_bound("alon", d, lam2, lam_min),
        brouwer=classical_bound("brouwer", d, lam2, lam_min),
        brouwer_conj=classical_bound("brouwer_conjecture", d, lam2, lam_min),
        haemers=classical_bound("haemers", d, lam2, lam_min),
        bipartite=bipartite,
    )

    tv = None if t is None else t.value
    for th in applicable_thresholds(d, bipartite):
        hyp = lam2 < th.value - tol
        concl = None if tv is None else th.conclusion_holds(tv)
        report.threshold_checks.append(
            ThresholdCheck(th.name, th.value, th.guaranteed, th.strict, hyp, concl)
        )

    if tv is not None:
        # alon and brouwer are strict, proven; the other two are conjectures
        report.classical_checks = {
            "alon": tv > report.alon - tol,
            "brouwer": tv > report.brouwer - tol,
            "brouwer_conjecture": tv >= report.brouwer_conj - tol,
            "haemers": tv >= report.haemers - tol,
        }
        if tv < 1:
            report.main_beats_haemers = report.main_bound >= report.haemers - tol
            if not report.main_beats_haemers:
                log.warning("%s: main bound %.9g below Haemers value %.9g",
                            graph_id, report.main_bound, report.haemers)

    if t is not None and not report.main_theorem_ok:
        precise = high_precision_lambda2(g)
        report.lambda2 = precise
        report.main_bound = main_bound(d, precise)
        if not report.main_theorem_ok:
            log.error("counterexample to the main bound: %s", graph_id)
            if strict:
                raise TheoremViolation(report)
    return report
