import pytest

from xns9.cartan import closure, level9_groups, mat, sl2_group
from xns9.covering import (CosetSpace, Fiber, branching_figure, curve_profile,
                           fiber_multisets, relative_fibers)


def test_coset_space_tiles_group():
    g = level9_groups()
    cs = CosetSpace(g.sl2_9, g.cartan_sl2)
    assert len(cs) == 27
    assert len(cs.lookup) == 648
    perm = cs.permutation(mat(9, 1, 1, 0, 1))
    assert sorted(perm) == list(range(27))


def test_profile_level9_curve():
    g = level9_groups()
    p = curve_profile(g.cartan_sl2)
    assert p.degree == 27
    assert p.cusp_widths == (9, 9, 9)
    assert (p.e2, p.e3, p.genus) == (7, 0, 0)


def test_profile_intermediate_curve():
    g = level9_groups()
    p = curve_profile(g.intermediate)
    assert p.degree == 9
    assert p.cusp_widths == (9,)
    assert (p.e2, p.e3, p.genus) == (5, 0, 0)


def test_profile_level3_curve_two_ways():
    g = level9_groups()
    at3 = curve_profile(g.c3)
    at9 = curve_profile(g.c3_preimage)
    for p in (at3, at9):
        assert p.degree == 3
        assert p.cusp_widths == (3,)
        assert (p.e2, p.e3, p.genus) == (3, 0, 0)


def test_profile_full_group_is_base_curve():
    p = curve_profile(sl2_group(9))
    assert p.degree == 1
    assert p.cusp_widths == (1,)
    assert (p.e2, p.e3, p.genus) == (1, 1, 0)


def test_profile_requires_minus_identity():
    shear_only = closure([mat(9, 1, 1, 0, 1)])
    assert not shear_only.has_minus_identity()
    with pytest.raises(ValueError):
        curve_profile(shear_only)


def test_riemann_hurwitz_balance():
    g = level9_groups()
    for group in (g.cartan_sl2, g.intermediate, g.c3_preimage, g.sl2_9):
        p = curve_profile(group)
        d = p.degree
        branch = (d - p.e2) // 2 + 2 * (d - p.e3) // 3 + (d - p.num_cusps)
        assert 2 * p.genus - 2 == -2 * d + branch


def test_fibers_middle_covering_over_i():
    g = level9_groups()
    fibers = relative_fibers(g.intermediate, g.c3_preimage, "i")
    assert fiber_multisets(fibers) == ((1, 1, 1), (1, 2), (1, 2))
    assert all(f.outer_index == 1 for f in fibers)


def test_fibers_top_covering_over_i():
    g = level9_groups()
    fibers = relative_fibers(g.cartan_sl2, g.intermediate, "i")
    over_unramified = sorted(f.relative_indices for f in fibers if f.outer_index == 1)
    over_ramified = sorted(f.relative_indices for f in fibers if f.outer_index == 2)
    assert over_unramified == [(1, 1, 1), (1, 2), (1, 2), (1, 2), (1, 2)]
    assert over_ramified == [(1, 1, 1), (1, 1, 1)]


def test_fibers_top_covering_over_rho():
    g = level9_groups()
    fibers = relative_fibers(g.cartan_sl2, g.intermediate, "rho")
    assert fiber_multisets(fibers) == ((1, 1, 1), (1, 1, 1), (1, 1, 1))
    assert all(f.outer_index == 3 for f in fibers)


def test_fibers_over_cusp():
    g = level9_groups()
    top = relative_fibers(g.cartan_sl2, g.intermediate, "cusp")
    assert top == (Fiber(9, (1, 1, 1)),)
    middle = relative_fibers(g.intermediate, g.c3_preimage, "cusp")
    assert middle == (Fiber(3, (3,)),)
    bottom = relative_fibers(g.c3_preimage, g.sl2_9, "cusp")
    assert bottom == (Fiber(1, (3,)),)


def test_identity_covering_fibers_are_trivial():
    g = level9_groups()
    for base in ("cusp", "i", "rho"):
        fibers = relative_fibers(g.cartan_sl2, g.cartan_sl2, base)
        assert all(f.relative_indices == (1,) for f in fibers)


def test_degree_bookkeeping():
    g = level9_groups()
    towers = ((g.cartan_sl2, g.intermediate), (g.intermediate, g.c3_preimage),
              (g.c3_preimage, g.sl2_9))
    degrees = []
    for inner, outer in towers:
        rel = outer.order // inner.order
        degrees.append(rel)
        for base in ("cusp", "i", "rho"):
            for fiber in relative_fibers(inner, outer, base):
                assert sum(fiber.relative_indices) == rel
    product = degrees[0] * degrees[1] * degrees[2]
    assert product == 27


def test_relative_riemann_hurwitz_per_covering():
    # each covering is degree 3 between genus-0 curves, so the total relative
    # branching over all base points must be exactly 4
    g = level9_groups()
    towers = ((g.cartan_sl2, g.intermediate), (g.intermediate, g.c3_preimage),
              (g.c3_preimage, g.sl2_9))
    for inner, outer in towers:
        branching = 0
        for base in ("cusp", "i", "rho"):
            for fiber in relative_fibers(inner, outer, base):
                branching += sum(e - 1 for e in fiber.relative_indices)
        assert branching == 4, (inner, outer)


def test_membership_spot_checks():
    g = level9_groups()
    assert mat(9, 0, -1, 1, 0) in g.cartan_sl2
    assert mat(9, 3, -1, 1, -3) not in g.intermediate
    assert mat(9, -3, -4, -2, 3) not in g.cartan_sl2


def test_relative_fibers_rejections():
    g = level9_groups()
    with pytest.raises(ValueError):
        relative_fibers(g.intermediate, g.cartan_sl2, "i")  # not a subgroup
    with pytest.raises(ValueError):
        relative_fibers(g.cartan_sl2, g.intermediate, "nowhere")


def test_branching_figure_shape():
    figure = branching_figure()
    assert sorted(figure) == ["cusp", "i", "rho"]
    for base in figure.values():
        assert sorted(base) == ["intermediate_over_x3", "x3_over_x1",
                                "x9_over_intermediate"]
    cusp_fibers = figure["cusp"]["x9_over_intermediate"]
    assert cusp_fibers == [{"outer_index": 9, "relative_indices": [1, 1, 1]}]
