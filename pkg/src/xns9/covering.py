"""Cusps, elliptic points, ramification and genus for curves attached to
subgroups of SL2(Z/nZ) containing -I, by pure coset-orbit computations.

Soundness of working in the finite quotient: membership of an integer matrix
in the congruence subgroup attached to G <= SL2(Z/nZ) depends only on its
reduction mod n, and reduction SL2(Z) -> SL2(Z/nZ) is surjective.  So right
cosets of the congruence subgroup in SL2(Z) biject with right cosets of G in
SL2(Z/nZ), and the stabilizer indices that give ramification indices turn
into orbit sizes of the reductions of the standard stabilizer generators:
T = (1,1;0,1) above the cusp, S = (0,-1;1,0) above i, and S*T (order 6, order
3 projectively) above the third-root-of-unity point.  Because -I lies in every
group considered, indices in SL2 agree with indices of the projective images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .cartan import GroupTable, Mat2ModN, level9_groups, mat, sl2_group

BasePoint = Literal["cusp", "i", "rho"]


def _base_element(n: int, base: BasePoint) -> Mat2ModN:
    t = mat(n, 1, 1, 0, 1)
    s = mat(n, 0, -1, 1, 0)
    if base == "cusp":
        return t
    if base == "i":
        return s
    if base == "rho":
        return s * t
    raise ValueError(f"unknown base point {base!r} (expected cusp, i or rho)")


class CosetSpace:
    """Right cosets sub\\ambient with a fast element -> coset index lookup."""

    def __init__(self, ambient: GroupTable, sub: GroupTable):
        if not sub.is_subgroup_of(ambient):
            raise ValueError("sub is not a subgroup of ambient")
        self.ambient = ambient
        self.sub = sub
        lookup: dict[Mat2ModN, int] = {}
        reps: list[Mat2ModN] = []
        for g in ambient:  # sorted, so coset numbering is deterministic
            if g in lookup:
                continue
            idx = len(reps)
            reps.append(g)
            for s in sub.elements:
                lookup[s * g] = idx
        self.reps = reps
        self.lookup = lookup
        if len(reps) * sub.order != ambient.order:
            raise AssertionError("coset decomposition does not tile the group")

    def __len__(self) -> int:
        return len(self.reps)

    def permutation(self, x: Mat2ModN) -> list[int]:
        """Index permutation induced by right multiplication with x."""
        return [self.lookup[rep * x] for rep in self.reps]

    def orbits(self, x: Mat2ModN) -> list[tuple[int, ...]]:
        """Cycles of the right-multiplication permutation, each sorted."""
        perm = self.permutation(x)
        seen = [False] * len(perm)
        out = []
        for start in range(len(perm)):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = perm[i]
            out.append(tuple(sorted(cycle)))
        return out


@dataclass(frozen=True)
class RamificationProfile:
    """Branching data of the curve of a subgroup over the base curve."""

    degree: int
    cusp_widths: tuple[int, ...]
    e2: int
    e3: int
    genus: int

    def __post_init__(self):
        assert sum(self.cusp_widths) == self.degree
        assert (self.degree - self.e2) % 2 == 0
        assert (self.degree - self.e3) % 3 == 0

    @property
    def num_cusps(self) -> int:
        return len(self.cusp_widths)

    def as_dict(self) -> dict:
        return {
            "cusp_widths": list(self.cusp_widths),
            "degree": self.degree,
            "e2": self.e2,
            "e3": self.e3,
            "genus": self.genus,
        }


def curve_profile(sub: GroupTable) -> RamificationProfile:
    """Cusp widths, elliptic point counts and genus for the curve of ``sub``.

    Widths are T-orbit sizes on the cosets; e2 and e3 count the cosets fixed
    by S and by S*T.  The genus comes from the standard formula
    g = 1 + d/12 - e2/4 - e3/3 - c/2, which assumes -I in the group.
    """
    if not sub.has_minus_identity():
        raise ValueError("the genus formula requires -I in the subgroup")
    ambient = sl2_group(sub.n)
    cs = CosetSpace(ambient, sub)
    widths = tuple(sorted(len(o) for o in cs.orbits(_base_element(sub.n, "cusp"))))
    e2 = sum(1 for o in cs.orbits(_base_element(sub.n, "i")) if len(o) == 1)
    e3 = sum(1 for o in cs.orbits(_base_element(sub.n, "rho")) if len(o) == 1)
    degree = len(cs)
    genus = Fraction(1) + Fraction(degree, 12) - Fraction(e2, 4) - Fraction(e3, 3) \
        - Fraction(len(widths), 2)
    if genus.denominator != 1 or genus < 0:
        raise AssertionError(f"genus formula gave {genus}, not a non-negative integer")
    return RamificationProfile(degree, widths, e2, e3, int(genus))


@dataclass(frozen=True)
class Fiber:
    """One point of the outer curve over the base point, with the relative
    ramification indices of the inner-curve points above it."""

    outer_index: int                 # ramification of the outer point over the base curve
    relative_indices: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"outer_index": self.outer_index,
                "relative_indices": list(self.relative_indices)}


def relative_fibers(inner: GroupTable, outer: GroupTable,
                    base: BasePoint) -> tuple[Fiber, ...]:
    """Fibers of the covering X_inner -> X_outer over the points of X_outer
    that lie above the chosen base point of the degree-1 curve.

    Outer points correspond to orbits of the relevant cyclic action on
    outer-cosets; each inner-coset orbit lands inside one of them, with
    relative index = inner orbit size / outer orbit size.  Every fiber's
    relative indices sum to [outer : inner].
    """
    if not inner.is_subgroup_of(outer):
        raise ValueError("inner is not a subgroup of outer")
    if not (inner.has_minus_identity() and outer.has_minus_identity()):
        raise ValueError("both groups must contain -I")
    ambient = sl2_group(inner.n)
    x = _base_element(inner.n, base)
    inner_cs = CosetSpace(ambient, inner)
    outer_cs = CosetSpace(ambient, outer)
    outer_orbit_of: dict[int, int] = {}
    outer_orbits = outer_cs.orbits(x)
    for oid, orbit in enumerate(outer_orbits):
        for idx in orbit:
            outer_orbit_of[idx] = oid
    fibers: dict[int, list[int]] = {oid: [] for oid in range(len(outer_orbits))}
    for orbit in inner_cs.orbits(x):
        outer_idx = outer_cs.lookup[inner_cs.reps[orbit[0]]]
        oid = outer_orbit_of[outer_idx]
        size = len(outer_orbits[oid])
        if len(orbit) % size != 0:
            raise AssertionError("inner orbit size not divisible by outer orbit size")
        fibers[oid].append(len(orbit) // size)
    rel_index = outer.order // inner.order
    out = []
    for oid, indices in fibers.items():
        assert sum(indices) == rel_index
        out.append(Fiber(len(outer_orbits[oid]), tuple(sorted(indices))))
    return tuple(sorted(out, key=lambda f: (f.outer_index, f.relative_indices)))


def fiber_multisets(fibers: tuple[Fiber, ...]) -> tuple[tuple[int, ...], ...]:
    """Forget the outer-point labels: the multiset of relative-index multisets."""
    return tuple(sorted(f.relative_indices for f in fibers))


def branching_figure() -> dict:
    """The full branching tree of the three coverings over cusp, i and rho."""
    g = level9_groups()
    towers = {
        "x9_over_intermediate": (g.cartan_sl2, g.intermediate),
        "intermediate_over_x3": (g.intermediate, g.c3_preimage),
        "x3_over_x1": (g.c3_preimage, g.sl2_9),
    }
    figure: dict = {}
    for base in ("cusp", "i", "rho"):
        figure[base] = {
            name: [f.as_dict() for f in relative_fibers(inner, outer, base)]  # type: ignore[arg-type]
            for name, (inner, outer) in towers.items()
        }
    return figure
