import pytest
from mpmath import mp

from xns9.heegner import (CM_TOLERANCE, IntegralPoint, PrecisionError,
                          QuadForm, build_table, class_number,
                          class_number_one_list, cm_j, inertness_criterion,
                          integral_points, is_fundamental, j_q_coefficients,
                          match_point, reduced_forms)

NINE_ROWS = (
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


def test_integral_points_count_is_nine():
    for bound in (4, 100, 1000):
        assert len(integral_points(bound)) == 9


def test_integral_points_representatives_and_values():
    points = integral_points(100)
    got = {(p.m, p.n): (p.t, p.j) for p in points}
    assert set(got) == {(m, n) for m, n, _, _ in NINE_ROWS}
    for m, n, t, _ in NINE_ROWS:
        assert got[(m, n)] == (t, t ** 3)


def test_integral_points_bound_validation():
    with pytest.raises(ValueError):
        integral_points(3)


def test_every_j_is_a_perfect_cube():
    for p in integral_points(50):
        assert p.j == p.t ** 3


def test_reduced_forms_hand_enumeration():
    assert reduced_forms(-15) == [QuadForm(1, 1, 4), QuadForm(2, 1, 2)]
    assert reduced_forms(-4) == [QuadForm(1, 0, 1)]
    assert reduced_forms(-3) == [QuadForm(1, 1, 1)]
    assert all(f.is_reduced and f.is_primitive for f in reduced_forms(-3511))


def test_class_numbers():
    assert class_number(-3511) == 41
    assert class_number(-4) == 1
    assert class_number(-15) == 2
    assert class_number(-23) == 3
    for d in (-12, -16, -27, -28):
        assert class_number(d) == 1


def test_class_number_rejects_bad_residues():
    with pytest.raises(ValueError):
        class_number(-5)
    with pytest.raises(ValueError):
        class_number(4)


def test_class_number_stable_under_wider_enumeration_window():
    import math
    for d in (-4, -15, -163, -3511, -9999):
        if d % 4 not in (0, 1):
            continue
        default = reduced_forms(d)
        widened = reduced_forms(d, b_limit=2 * math.isqrt(-d // 3) + 2)
        assert default == widened


def _class_number_by_a_loop(d):
    # independent oracle: outer loop over a, inner over b, boundary rules
    # checked explicitly on each candidate form
    import math
    count = 0
    for a in range(1, math.isqrt(-d // 3) + 1):
        for b in range(-a, a + 1):
            if (b - d) % 2 != 0:
                continue
            num = b * b - d
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                count += 1
    return count


def test_class_number_against_independent_enumeration():
    for d in range(-3, -500, -1):
        if d % 4 in (0, 1):
            assert class_number(d) == _class_number_by_a_loop(d), d


def test_class_number_one_lists():
    lists = class_number_one_list(10_000)
    assert lists.all_discriminants == (-3, -4, -7, -8, -11, -12, -16, -19,
                                       -27, -28, -43, -67, -163)
    assert lists.three_inert == (-4, -7, -16, -19, -28, -43, -67, -163)


def test_excluded_fields_are_not_three_inert():
    from xns9.exactalg import kronecker
    for d in (-3, -8, -11):
        assert kronecker(d, 3) != -1


def test_q_expansion_coefficients():
    coeffs = j_q_coefficients(5)
    assert coeffs[0] == 1          # 1/q
    assert coeffs[1] == 744
    assert coeffs[2] == 196884
    assert coeffs[3] == 21493760
    assert coeffs[4] == 864299970
    assert coeffs[5] == 20245856256


def test_cm_values_near_known_integers():
    assert abs(cm_j(-4, 40) - 1728) < CM_TOLERANCE
    assert abs(cm_j(-3, 40) - 0) < CM_TOLERANCE
    assert abs(cm_j(-163, 40) + 640320 ** 3) < CM_TOLERANCE
    assert abs(cm_j(-7, 40) + 3375) < CM_TOLERANCE
    assert abs(cm_j(-8, 40) - 8000) < CM_TOLERANCE
    assert abs(cm_j(-11, 40) + 32768) < CM_TOLERANCE
    assert abs(cm_j(-12, 40) - 54000) < CM_TOLERANCE
    assert abs(cm_j(-16, 40) - 287496) < CM_TOLERANCE
    assert abs(cm_j(-19, 40) + 884736) < CM_TOLERANCE
    assert abs(cm_j(-27, 40) + 12288000) < CM_TOLERANCE
    assert abs(cm_j(-28, 40) - 16581375) < CM_TOLERANCE
    assert abs(cm_j(-43, 40) + 884736000) < CM_TOLERANCE
    assert abs(cm_j(-67, 40) + 147197952000) < CM_TOLERANCE


def test_cm_precision_guards():
    with pytest.raises(ValueError):
        cm_j(-4, 20)
    with pytest.raises(PrecisionError):
        cm_j(-163, 30, tolerance=1e-60)
    with pytest.raises(ValueError):
        cm_j(-5, 40)


def test_match_point_examples():
    assert match_point(IntegralPoint(1, 0, -15, -3375)) == -7
    assert match_point(IntegralPoint(-1, -1, 66, 287496)) == -16
    ninth = IntegralPoint(-3, -2, 1117947, 1117947 ** 3)
    assert match_point(ninth) is None


def test_build_table_matches_reference_rows():
    rows = build_table(bound=100, digits=40)
    got = tuple((p.m, p.n, p.t, p.matched_discriminant) for p in rows)
    assert got == NINE_ROWS


def test_is_fundamental():
    for d in (-3, -4, -7, -8, -11, -19, -43, -67, -163, -3511, -15):
        assert is_fundamental(d)
    for d in (-12, -16, -27, -28, -9, -18):
        if d % 4 in (0, 1):
            assert not is_fundamental(d)


def test_inertness_criterion_examples():
    report = inertness_criterion(-163)
    assert report.passed
    tested = [c.name for c in report]
    assert tested == [f"p={p}" for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)]

    vacuous = inertness_criterion(-7)
    assert vacuous.passed and [c.name for c in vacuous] == ["vacuous"]

    control = inertness_criterion(-15)
    assert not control.passed
    assert control.failures[0].name == "p=2"


def test_inertness_criterion_holds_for_all_nine_fields():
    for d in (-3, -4, -7, -8, -11, -19, -43, -67, -163):
        assert inertness_criterion(d).passed, d


def test_inertness_criterion_rejects_non_fundamental():
    with pytest.raises(ValueError):
        inertness_criterion(-16)


def test_high_precision_value_digits():
    # j at the largest matched discriminant is a proper 18-digit integer, so
    # the matching window really does need tens of digits to be meaningful
    with mp.workdps(50):
        value = cm_j(-163, 40)
        assert mp.mpf(-2.7e17) < value < mp.mpf(-2.6e17)
