"""End-to-end verification: every computed object against its frozen reference.

The reference constants below are the values the whole construction must
reproduce: the subgroup lattice orders, the branching figure, the closed
formula evaluations, the solution lists of the two cubic equations, the
nine-row integral-point table, the class-number facts, and the trace data of
the exceptional curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cartan, covering, ecurve, heegner, param, thue
from .report import CheckReport

DEFAULT_BOUND = 10_000
DEFAULT_DIGITS = 40
DEFAULT_PMAX = 100
CONGRUENCE_PMAX = 1000

# (degree, cusp widths, e2, e3, genus) for the three curves in the tower.
EXPECTED_PROFILES = {
    "x9": (27, (9, 9, 9), 7, 0, 0),
    "intermediate": (9, (9,), 5, 0, 0),
    "x3": (3, (3,), 3, 0, 0),
}

# Relative fibers over the point with j = 1728, keyed by covering.
EXPECTED_PI2_OVER_I = ((1, 1, 1), (1, 2), (1, 2))
EXPECTED_PI1_OVER_I_UNRAMIFIED = ((1, 1, 1), (1, 2), (1, 2), (1, 2), (1, 2))
EXPECTED_PI1_OVER_I_RAMIFIED = ((1, 1, 1), (1, 1, 1))
EXPECTED_PI1_OVER_RHO = ((1, 1, 1), (1, 1, 1), (1, 1, 1))

# The complete coprime solution lists of the two cubic equations.
SOLUTIONS_VALUE_1 = frozenset({(2, -1), (-3, -2), (-1, -1), (1, 0), (1, 3), (0, 1)})
SOLUTIONS_VALUE_3 = frozenset({(-1, -2), (-1, 1), (2, 1)})

# The nine integral points: (m, n, t, matched discriminant).
TABLE_ROWS = (
    (-1, 1, 12, -4),
    (1, 0, -15, -7),
    (-1, -1, 66, -16),
    (0, 1, -96, -19),
    (-1, -2, 255, -28),
    (2, 1, -960, -43),
    (2, -1, -5280, -67),
    (1, 3, -640320, -163),
    (-3, -2, 1117947, None),
)

CLASS_NUMBER_ONE_ALL = (-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163)
CLASS_NUMBER_ONE_INERT = (-4, -7, -16, -19, -28, -43, -67, -163)
FIELD_DISCRIMINANTS = (-3, -4, -7, -8, -11, -19, -43, -67, -163)

# Frozen reference trace row for the good primes below 100.  Exact point
# counts of the exceptional curve disagree with it at eleven primes (see the
# maintainer notes); the comparison check is kept as an honest record of the
# discrepancy and is expected to fail.
REFERENCE_TRACE_ROW = (-1, 0, 0, -2, 0, -2, 0, -1, 0, -9, -2, 0, 1, -7, -8,
                       -10, 0, -4, 9, 9, 8, -18, -11, -9)


def group_checks() -> CheckReport:
    report = cartan.verify_group_structure()
    g = cartan.level9_groups()
    report.add("ambient-orders", (g.sl2_9.order, g.sl2_3.order) == (648, 24),
               "|SL2(Z/9)| = 648 and |SL2(Z/3)| = 24",
               witness={"orders": (g.sl2_9.order, g.sl2_3.order)})
    report.add("lagrange", all(g.sl2_9.order % grp.order == 0 for grp in
                               (g.cartan_sl2, g.kernel, g.kernel_line, g.kernel_plane,
                                g.quaternion, g.intermediate, g.c3_preimage)),
               "every subgroup order divides 648")
    return report


def _rh_balance(profile: covering.RamificationProfile) -> bool:
    d = profile.degree
    branch = (d - profile.e2) // 2 + 2 * (d - profile.e3) // 3 \
        + (d - profile.num_cusps)
    return 2 * profile.genus - 2 == -2 * d + branch


def covering_checks() -> CheckReport:
    g = cartan.level9_groups()
    report = CheckReport("covering data")
    curves = {"x9": g.cartan_sl2, "intermediate": g.intermediate, "x3": g.c3_preimage}
    for name, group in curves.items():
        profile = covering.curve_profile(group)
        got = (profile.degree, profile.cusp_widths, profile.e2, profile.e3, profile.genus)
        report.add(f"profile-{name}", got == EXPECTED_PROFILES[name],
                   f"degree, cusp widths, e2, e3, genus for {name}",
                   witness={"got": got, "expected": EXPECTED_PROFILES[name]})
        report.add(f"riemann-hurwitz-{name}", _rh_balance(profile),
                   "branch data balances the genus formula")

    level3 = covering.curve_profile(g.c3)
    report.add("x3-at-level-3",
               (level3.degree, level3.cusp_widths, level3.e2, level3.e3, level3.genus)
               == EXPECTED_PROFILES["x3"],
               "the level-3 curve computed at modulus 3 agrees with the "
               "preimage computation at modulus 9")

    pi2 = covering.relative_fibers(g.intermediate, g.c3_preimage, "i")
    report.add("fibers-middle-over-i",
               covering.fiber_multisets(pi2) == EXPECTED_PI2_OVER_I,
               "intermediate over level-3 above 1728: {1,2}, {1,1,1}, {2,1}",
               witness=[f.as_dict() for f in pi2])

    pi1 = covering.relative_fibers(g.cartan_sl2, g.intermediate, "i")
    unramified = tuple(sorted(f.relative_indices for f in pi1 if f.outer_index == 1))
    ramified = tuple(sorted(f.relative_indices for f in pi1 if f.outer_index == 2))
    report.add("fibers-top-over-i",
               unramified == EXPECTED_PI1_OVER_I_UNRAMIFIED
               and ramified == EXPECTED_PI1_OVER_I_RAMIFIED,
               "top covering above 1728: four {1,2} and one {1,1,1} over the "
               "unramified points, {1,1,1} over both ramified ones",
               witness=[f.as_dict() for f in pi1])

    pi1_rho = covering.relative_fibers(g.cartan_sl2, g.intermediate, "rho")
    report.add("fibers-top-over-rho",
               covering.fiber_multisets(pi1_rho) == EXPECTED_PI1_OVER_RHO,
               "top covering above the order-3 point is unramified")

    towers = ((g.cartan_sl2, g.intermediate), (g.intermediate, g.c3_preimage),
              (g.c3_preimage, g.sl2_9))
    bookkeeping = True
    for inner, outer in towers:
        rel = outer.order // inner.order
        for base in ("cusp", "i", "rho"):
            fibers = covering.relative_fibers(inner, outer, base)
            if any(sum(f.relative_indices) != rel for f in fibers):
                bookkeeping = False
    report.add("degree-bookkeeping", bookkeeping,
               "every fiber's relative indices sum to the covering degree; "
               "the three degrees multiply to 27")

    inside = cartan.mat(9, 0, -1, 1, 0) in g.cartan_sl2
    out_b = cartan.mat(9, 3, -1, 1, -3) not in g.intermediate
    out_c9 = cartan.mat(9, -3, -4, -2, 3) not in g.cartan_sl2
    report.add("membership-spot-checks", inside and out_b and out_c9,
               "(0,-1;1,0) in the level-9 group; (3,-1;1,-3) outside the "
               "intermediate group; (-3,-4;-2,3) outside the level-9 group")
    return report


def param_checks() -> CheckReport:
    report = param.verify_tower_identities()
    for check in param.fiber_checks():
        report.checks.append(check)
    tower = param.build_tower()
    values_ok = (tower.eval_t(0) == -96
                 and tower.t_of_y.at_infinity() == -15
                 and tower.eval_t(-1) == 12 and tower.eval_j(-1) == 1728)
    report.add("anchor-values", values_ok,
               "t(0) = -96, t(infinity) = -15, t(-1) = 12 with j = 1728")
    report.add("cube-identity", tower.j_of_y == tower.t_of_y ** 3,
               "j = t^3 as normalized rational functions")
    return report


def thue_checks(bound: int = DEFAULT_BOUND) -> CheckReport:
    report = thue.mod9_obstruction()
    form = thue.DENOMINATOR_FORM
    ones = {(s.m, s.n) for s in thue.solve_bounded(form, {1}, bound)}
    threes = {(s.m, s.n) for s in thue.solve_bounded(form, {3}, bound)}
    minus = {(s.m, s.n) for s in thue.solve_bounded(form, {-1}, bound)}
    report.add("value-1-solutions", ones == SOLUTIONS_VALUE_1,
               f"six coprime solutions of value 1 below {bound}",
               witness=sorted(ones))
    report.add("value-3-solutions", threes == SOLUTIONS_VALUE_3,
               f"three coprime solutions of value 3 below {bound}",
               witness=sorted(threes))
    report.add("negation-symmetry", minus == {(-m, -n) for (m, n) in SOLUTIONS_VALUE_1},
               "value -1 solutions are the negations of the value 1 list")
    return report


@dataclass(frozen=True)
class PointsResult:
    rows: tuple[heegner.IntegralPoint, ...]
    report: CheckReport


def points_checks(bound: int = DEFAULT_BOUND, digits: int = DEFAULT_DIGITS) -> PointsResult:
    report = CheckReport("integral points and matched orders")
    rows = tuple(heegner.build_table(bound, digits))
    report.add("nine-points", len(rows) == 9,
               f"exactly nine integral points below bound {bound}",
               witness={"count": len(rows)})
    expected = tuple((m, n, t, t ** 3, d) for m, n, t, d in TABLE_ROWS)
    got = tuple((p.m, p.n, p.t, p.j, p.matched_discriminant) for p in rows)
    report.add("table-rows", got == expected,
               "each row's (m, n), t, j and discriminant pairing",
               witness={"got": got})
    report.add("cubes", all(p.j == p.t ** 3 for p in rows),
               "every j-invariant is the cube of the integral t")
    matched = tuple(p.matched_discriminant for p in rows if p.matched_discriminant)
    report.add("matched-set", matched == CLASS_NUMBER_ONE_INERT,
               "the eight matched discriminants, in order",
               witness={"matched": matched})
    return PointsResult(rows, report)


def class_number_checks(bound: int = DEFAULT_BOUND) -> CheckReport:
    report = CheckReport("class numbers")
    h = heegner.class_number(-3511)
    report.add("h-3511", h == 41, "h(-3511) = 41", witness={"h": h})
    lists = heegner.class_number_one_list(bound)
    report.add("thirteen-orders", lists.all_discriminants == CLASS_NUMBER_ONE_ALL,
               "the thirteen class-number-one order discriminants below 10^4",
               witness={"got": lists.all_discriminants})
    report.add("eight-inert", lists.three_inert == CLASS_NUMBER_ONE_INERT,
               "the eight of them in which 3 is inert")
    excluded = tuple(d for d in FIELD_DISCRIMINANTS if d not in lists.three_inert)
    report.add("excluded-fields", excluded == (-3, -8, -11),
               "the three fields left out are exactly those where 3 is not inert",
               witness={"excluded": excluded})
    inert_ok = all(heegner.inertness_criterion(d).passed for d in FIELD_DISCRIMINANTS)
    report.add("small-primes-inert", inert_ok,
               "every prime below (1+|d|)/4 is inert in each of the nine fields")
    return report


@dataclass(frozen=True)
class TraceResult:
    records: tuple[ecurve.ApRecord, ...]
    report: CheckReport


def trace_checks(pmax: int = DEFAULT_PMAX,
                 congruence_pmax: int = CONGRUENCE_PMAX) -> TraceResult:
    report = CheckReport("exceptional curve traces")
    curve = ecurve.EXCEPTIONAL_CURVE
    inv = ecurve.invariants(curve)
    report.add("discriminant", abs(inv.disc) == 5 ** 3 * 3511 ** 3,
               "|disc| = 5^3 * 3511^3", witness={"disc": inv.disc})
    report.add("j-invariant", inv.j == Fraction(1117947 ** 3),
               "j = 1117947^3, the j of the ninth integral point",
               witness={"j": str(inv.j)})

    records = tuple(ecurve.ap_table(curve, pmax))
    good = [r for r in records if r.good]
    report.add("good-prime-count", len(good) == 24,
               "24 good primes below 100 (5 is the only bad one there)",
               witness={"bad": [r.p for r in records if not r.good]})
    report.add("hasse", all(r.a_p * r.a_p <= 4 * r.p for r in good),
               "Hasse bound holds at every good prime")

    got_row = tuple(r.a_p for r in good)
    mismatches = [(r.p, want, r.a_p) for r, want in zip(good, REFERENCE_TRACE_ROW)
                  if r.a_p != want]
    report.add("reference-trace-row", got_row == REFERENCE_TRACE_ROW,
               "computed traces against the frozen reference row "
               "(known discrepancy, see maintainer notes)",
               witness={"mismatches (p, reference, computed)": mismatches})

    sweep = tuple(ecurve.ap_table(curve, congruence_pmax))
    failures = ecurve.inert_congruence_failures(list(sweep))
    inert_count = sum(1 for r in sweep if r.good and r.inert)
    report.add("inert-congruence", not failures,
               f"a_p = 0 (mod 9) at all {inert_count} good inert primes up to "
               f"{congruence_pmax}",
               witness={"failures": [r.as_dict() for r in failures]})
    return TraceResult(records, report)


@dataclass(frozen=True)
class ReportBundle:
    reports: dict[str, CheckReport]
    points_rows: tuple[heegner.IntegralPoint, ...]
    trace_records: tuple[ecurve.ApRecord, ...]

    @property
    def passed(self) -> bool:
        return all(rep.passed for rep in self.reports.values())


def full_report(bound: int = DEFAULT_BOUND, digits: int = DEFAULT_DIGITS,
                pmax: int = DEFAULT_PMAX) -> ReportBundle:
    """Every verification surface, in rendering order."""
    points = points_checks(bound, digits)
    traces = trace_checks(pmax)
    cross = CheckReport("cross-module consistency")
    ninth = next(p for p in points.rows if p.matched_discriminant is None)
    cross.add("curve-matches-ninth-point",
              ecurve.invariants(ecurve.EXCEPTIONAL_CURVE).j == Fraction(ninth.j),
              "the exceptional curve's j equals the unmatched table row's j")
    reports = {
        "groups": group_checks(),
        "covering": covering_checks(),
        "param": param_checks(),
        "thue": thue_checks(bound),
        "points": points.report,
        "classnumbers": class_number_checks(bound),
        "traces": traces.report,
        "consistency": cross,
    }
    return ReportBundle(reports, points.rows, traces.records)
