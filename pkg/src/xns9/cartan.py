"""Finite matrix groups over Z/nZ for n in {3, 9}.

Builds SL2(Z/nZ), the non-split Cartan subgroup coming from the ring
(Z/nZ)[i], its normalizer, and the specific level-9 subgroup lattice used by
the covering computations: the reduction kernel, its distinguished rank-1 and
rank-2 pieces, the order-8 quaternion subgroup, and the two products they
generate between the Cartan group and the full preimage of the level-3 group.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .report import CheckReport


class Mat2ModN:
    """2x2 matrix over Z/nZ, entries normalized to [0, n)."""

    __slots__ = ("n", "a", "b", "c", "d")

    def __init__(self, n: int, a: int, b: int, c: int, d: int):
        if n <= 0:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", a % n)
        object.__setattr__(self, "b", b % n)
        object.__setattr__(self, "c", c % n)
        object.__setattr__(self, "d", d % n)

    def __setattr__(self, name, value):
        raise AttributeError("Mat2ModN values are immutable")

    @classmethod
    def identity(cls, n: int) -> "Mat2ModN":
        return cls(n, 1, 0, 0, 1)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.n

    def is_invertible(self) -> bool:
        return math.gcd(self.det(), self.n) == 1

    def in_sl(self) -> bool:
        return self.det() == 1

    def __mul__(self, other: "Mat2ModN") -> "Mat2ModN":
        if self.n != other.n:
            raise ValueError("mixed moduli")
        n = self.n
        return Mat2ModN(
            n,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Mat2ModN":
        det = self.det()
        try:
            det_inv = pow(det, -1, self.n)
        except ValueError:
            raise ValueError(f"{self!r} is not invertible") from None
        return Mat2ModN(self.n, self.d * det_inv, -self.b * det_inv,
                        -self.c * det_inv, self.a * det_inv)

    def __pow__(self, k: int) -> "Mat2ModN":
        if k < 0:
            return self.inverse() ** (-k)
        out = Mat2ModN.identity(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def order(self) -> int:
        """Multiplicative order (matrix must be invertible)."""
        k = 1
        acc = self
        ident = Mat2ModN.identity(self.n)
        while acc != ident:
            acc = acc * self
            k += 1
            if k > self.n ** 4:
                raise ValueError("matrix is not of finite order (not invertible?)")
        return k

    def reduce(self, m: int) -> "Mat2ModN":
        if self.n % m != 0:
            raise ValueError(f"cannot reduce mod {m} from modulus {self.n}")
        return Mat2ModN(m, self.a, self.b, self.c, self.d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2ModN):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.n,) + self.entries)

    def __lt__(self, other: "Mat2ModN") -> bool:
        return self.entries < other.entries

    def __repr__(self) -> str:
        return f"Mat2ModN({self.n}, {self.a}, {self.b}, {self.c}, {self.d})"


def mat(n: int, a: int, b: int, c: int, d: int) -> Mat2ModN:
    return Mat2ModN(n, a, b, c, d)


class GroupTable:
    """A finite matrix group stored as its full element set.

    Full storage (rather than generators only) is deliberate: every downstream
    coset computation needs fast membership tests.  Immutable once built.
    """

    def __init__(self, n: int, generators: Iterable[Mat2ModN],
                 elements: frozenset[Mat2ModN]):
        self.n = n
        self.generators = tuple(generators)
        self.elements = elements
        self.order = len(elements)

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[Mat2ModN],
                      generators: Iterable[Mat2ModN] = (),
                      validate: bool = False) -> "GroupTable":
        elems = frozenset(elements)
        table = cls(n, generators, elems)
        if validate:
            assert Mat2ModN.identity(n) in elems
            for g in elems:
                assert g.inverse() in elems
                for h in elems:
                    assert g * h in elems
        return table

    def __contains__(self, g: Mat2ModN) -> bool:
        return g in self.elements

    def __iter__(self) -> Iterator[Mat2ModN]:
        return iter(sorted(self.elements))

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.n == other.n and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.n, self.elements))

    def is_subgroup_of(self, other: "GroupTable") -> bool:
        return self.n == other.n and self.elements <= other.elements

    def index_in(self, ambient: "GroupTable") -> int:
        if not self.is_subgroup_of(ambient):
            raise ValueError("not a subgroup of the ambient group")
        if ambient.order % self.order != 0:
            raise ValueError("order does not divide ambient order")
        return ambient.order // self.order

    def is_abelian(self) -> bool:
        elems = list(self.elements)
        return all(g * h == h * g for i, g in enumerate(elems) for h in elems[i + 1 :])

    def element_order_profile(self) -> Counter:
        return Counter(g.order() for g in self.elements)

    def has_minus_identity(self) -> bool:
        return Mat2ModN(self.n, -1, 0, 0, -1) in self.elements

    def normalizes(self, other: "GroupTable") -> bool:
        """True when every conjugate g*other*g^-1 with g in self equals other."""
        for g in self.elements:
            ginv = g.inverse()
            if any(g * h * ginv not in other.elements for h in other.elements):
                return False
        return True

    def product_with(self, other: "GroupTable") -> frozenset[Mat2ModN]:
        """The product set {g*h}; a subgroup iff one factor normalizes the other."""
        return frozenset(g * h for g in self.elements for h in other.elements)

    def reduce(self, m: int) -> frozenset[Mat2ModN]:
        return frozenset(g.reduce(m) for g in self.elements)

    def __repr__(self) -> str:
        return f"GroupTable(mod {self.n}, order {self.order})"


def closure(gens: list[Mat2ModN]) -> GroupTable:
    """Least subgroup containing the generators, by breadth-first closure."""
    if not gens:
        raise ValueError("closure requires at least one generator")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError("generators with mixed moduli")
        if not g.is_invertible():
            raise ValueError(f"non-invertible generator {g!r}")
    step = []
    for g in gens:
        step.append(g)
        step.append(g.inverse())
    ident = Mat2ModN.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in step:
            y = x * g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return GroupTable(n, gens, frozenset(seen))


@lru_cache(maxsize=None)
def sl2_group(n: int) -> GroupTable:
    """All of SL2(Z/nZ), generated by the standard shear and rotation."""
    return closure([mat(n, 1, 1, 0, 1), mat(n, 0, -1, 1, 0)])


@lru_cache(maxsize=None)
def gl2_group(n: int) -> GroupTable:
    """All of GL2(Z/nZ), by direct enumeration of invertible matrices."""
    elems = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    m = Mat2ModN(n, a, b, c, d)
                    if m.is_invertible():
                        elems.append(m)
    return GroupTable.from_elements(n, elems)


@lru_cache(maxsize=None)
def build_cartan(n: int) -> tuple[GroupTable, GroupTable, GroupTable]:
    """Non-split Cartan data at level n in {3, 9}.

    The rank-2 algebra is (Z/nZ)[i] with basis {1, i}; x^2 + 1 is irreducible
    mod 3, so the algebra is non-split at 3.  Multiplication by a + b*i acts as
    the matrix (a, -b; b, a).  Returns (cartan, normalizer, normalizer ^ SL2):
    the normalizer is the Cartan extended by the matrix of i -> -i, and the
    last entry is the level-n group that defines the modular curve.
    """
    if n not in (3, 9):
        raise ValueError("only levels 3 and 9 are supported")
    cartan_elems = []
    for a in range(n):
        for b in range(n):
            if math.gcd(a * a + b * b, n) == 1:
                cartan_elems.append(Mat2ModN(n, a, -b, b, a))
    conj = Mat2ModN(n, 1, 0, 0, -1)  # i -> -i in the basis {1, i}
    normalizer_elems = set(cartan_elems)
    normalizer_elems.update(g * conj for g in cartan_elems)
    sl_part = frozenset(g for g in normalizer_elems if g.in_sl())
    cartan = GroupTable.from_elements(n, cartan_elems)
    normalizer = GroupTable.from_elements(n, normalizer_elems, generators=(conj,))
    c_n = GroupTable.from_elements(n, sl_part)
    return cartan, normalizer, c_n


# Distinguished level-9 generator matrices.
KERNEL_GENS = ((1, -3, 3, 1), (-2, 3, 3, 4), (1, 0, 3, 1))
KERNEL_LINE_GEN = (1, -3, 3, 1)
KERNEL_PLANE_GENS = ((1, -3, 3, 1), (-2, 3, 3, 4))
QUATERNION_GENS = ((0, -1, 1, 0), (-1, -4, -4, 1))


@dataclass(frozen=True)
class Level9Groups:
    """The subgroup lattice of SL2(Z/9Z) behind the three modular curves.

    kernel        kernel of entrywise reduction SL2(Z/9) -> SL2(Z/3), order 27
    kernel_line   order-3 subgroup of the kernel fixed by quaternion conjugation
    kernel_plane  order-9 subgroup between kernel_line and kernel
    quaternion    order-8 group mapped bijectively onto the level-3 group
    cartan_sl2    the level-9 curve group (normalizer of the Cartan, det 1)
    intermediate  kernel_plane * quaternion, strictly between the two others
    c3_preimage   full preimage of the level-3 curve group, = kernel * quaternion
    """

    sl2_9: GroupTable
    sl2_3: GroupTable
    c3: GroupTable
    cartan_sl2: GroupTable
    kernel: GroupTable
    kernel_line: GroupTable
    kernel_plane: GroupTable
    quaternion: GroupTable
    intermediate: GroupTable
    c3_preimage: GroupTable


@lru_cache(maxsize=None)
def level9_groups() -> Level9Groups:
    sl9 = sl2_group(9)
    sl3 = sl2_group(3)
    _, _, c3 = build_cartan(3)
    _, _, c9 = build_cartan(9)
    kernel = GroupTable.from_elements(
        9, (g for g in sl9.elements if g.reduce(3) == Mat2ModN.identity(3)))
    kernel_line = closure([mat(9, *KERNEL_LINE_GEN)])
    kernel_plane = closure([mat(9, *g) for g in KERNEL_PLANE_GENS])
    quaternion = closure([mat(9, *g) for g in QUATERNION_GENS])
    intermediate = GroupTable.from_elements(
        9, kernel_plane.product_with(quaternion),
        generators=kernel_plane.generators + quaternion.generators)
    c3_preimage = GroupTable.from_elements(
        9, (g for g in sl9.elements if g.reduce(3) in c3.elements))
    return Level9Groups(sl9, sl3, c3, c9, kernel, kernel_line, kernel_plane,
                        quaternion, intermediate, c3_preimage)


def _is_quaternion_profile(group: GroupTable) -> bool:
    # Among groups of order 8 the profile {1:1, 2:1, 4:6} picks out the
    # quaternion group; a unique involution also forces every proper
    # subgroup to be cyclic.
    return group.order == 8 and group.element_order_profile() == Counter({1: 1, 2: 1, 4: 6})


def verify_group_structure() -> CheckReport:
    """Recompute and check the level-9 subgroup lattice from its definitions."""
    g = level9_groups()
    report = CheckReport("level-9 subgroup lattice")

    kernel_from_gens = closure([mat(9, *gen) for gen in KERNEL_GENS])
    ok = (g.kernel.order == 27
          and g.kernel.is_abelian()
          and all(x.order() == 3 for x in g.kernel.elements if x != Mat2ModN.identity(9))
          and kernel_from_gens == g.kernel)
    report.add("reduction-kernel", ok,
               "kernel of SL2(Z/9)->SL2(Z/3) has order 27, is elementary abelian "
               "of exponent 3, and equals the closure of its three generators",
               witness={"order": g.kernel.order})

    image_of_h = g.quaternion.reduce(3)
    ok = (_is_quaternion_profile(g.quaternion)
          and len(image_of_h) == 8
          and image_of_h == g.c3.elements)
    report.add("quaternion-subgroup", ok,
               "order-8 subgroup has the quaternion order profile (unique "
               "involution) and reduces bijectively onto the level-3 group",
               witness={"order_profile": sorted(g.quaternion.element_order_profile().items())})

    ok = (g.kernel_line.order == 3
          and g.kernel_line.product_with(g.quaternion) == g.cartan_sl2.elements)
    report.add("cartan-product", ok,
               "the level-9 curve group equals kernel_line * quaternion",
               witness={"cartan_order": g.cartan_sl2.order})

    idx1 = g.cartan_sl2.index_in(g.intermediate)
    idx2 = g.intermediate.index_in(g.c3_preimage)
    ok = (g.kernel_plane.order == 9
          and g.intermediate.order == 72
          and g.cartan_sl2.is_subgroup_of(g.intermediate)
          and g.intermediate.is_subgroup_of(g.c3_preimage)
          and (idx1, idx2) == (3, 3))
    report.add("index-chain", ok,
               "cartan_sl2 < intermediate < c3_preimage with indices (3, 3)",
               witness={"indices": (idx1, idx2), "orders": (g.cartan_sl2.order,
                        g.intermediate.order, g.c3_preimage.order)})

    ok = (g.quaternion.normalizes(g.kernel_line)
          and g.quaternion.normalizes(g.kernel_plane)
          and g.quaternion.normalizes(g.kernel))
    report.add("quaternion-normalizes", ok,
               "the quaternion subgroup normalizes all three kernel pieces")

    ok = (g.kernel.product_with(g.quaternion) == g.c3_preimage.elements
          and g.cartan_sl2.reduce(3) == g.c3.elements
          and g.intermediate.reduce(3) == g.c3.elements)
    report.add("reduction-images", ok,
               "kernel * quaternion is the full preimage, and both middle groups "
               "reduce onto the level-3 group")

    return report
