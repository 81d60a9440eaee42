"""Weyl groups of classical type as signed permutations."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .rootsys import RootSystem, Weight

DEFAULT_CAP = 10**7


class EnumerationCapExceeded(RuntimeError):
    def __init__(self, needed: int, cap: int):
        super().__init__(
            f"Weyl group has {needed} elements, above the enumeration cap {cap}; "
            f"raise it with JANTZEN_WEYL_CAP={needed} or a larger value"
        )
        self.needed = needed
        self.cap = cap


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: basis vector e_j goes to signs[perm[j]] * e_perm[j].

    On coordinates, ``(w x)_i = signs[i] * x[perm^-1(i)]``.  For type D the
    product of the signs must be +1.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def identity(cls, m: int) -> WeylElement:
        return cls(tuple(range(m)), (1,) * m)

    @property
    def m(self) -> int:
        return len(self.perm)

    @property
    def det(self) -> int:
        # equals (-1)^length, since every reflection has determinant -1
        prod = 1
        for s in self.signs:
            prod *= s
        return _perm_sign(self.perm) * prod

    @property
    def sign_product(self) -> int:
        prod = 1
        for s in self.signs:
            prod *= s
        return prod

    def act(self, coords: Sequence) -> tuple:
        out = [None] * len(coords)
        for j, x in enumerate(coords):
            i = self.perm[j]
            out[i] = self.signs[i] * x
        return tuple(out)

    def inverse(self) -> WeylElement:
        m = self.m
        inv = [0] * m
        signs = [0] * m
        for j, i in enumerate(self.perm):
            inv[i] = j
            signs[j] = self.signs[i]
        return WeylElement(tuple(inv), tuple(signs))

    def __mul__(self, other: WeylElement) -> WeylElement:
        """Composition: (self * other)(x) = self(other(x))."""
        m = self.m
        perm = [0] * m
        signs = [0] * m
        for j in range(m):
            k = other.perm[j]
            i = self.perm[k]
            perm[j] = i
            signs[i] = self.signs[i] * other.signs[k]
        return WeylElement(tuple(perm), tuple(signs))

    def belongs_to(self, family: str) -> bool:
        if family == "A":
            return all(s == 1 for s in self.signs)
        if family == "D":
            return self.sign_product == 1
        return True

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "signs": list(self.signs), "det": self.det}


def apply(w: WeylElement, x: Weight, family: str | None = None) -> Weight:
    """Linear action on coordinates; on rho-shifted coordinates this is the dot action."""
    if w.m != x.m:
        raise ValueError(f"dimension mismatch: element acts on {w.m} coordinates, weight has {x.m}")
    if family is not None and not w.belongs_to(family):
        raise ValueError(f"{w} is not an element of the type {family} Weyl group")
    return Weight(w.act(x.coords), x.shifted)


@dataclass(frozen=True)
class Reduction:
    """Outcome of moving a shifted weight into the dominant chamber.

    ``dominant`` is None when the weight is singular.
    """

    dominant: Weight | None
    det: int = 0
    witness: WeylElement | None = None

    @property
    def singular(self) -> bool:
        return self.dominant is None


def reduce_coords(coords: Sequence, family: str):
    """Dominant reduction on raw coordinates.

    Returns ``(dominant_coords, witness)`` or ``None`` when some root is
    orthogonal to ``coords``.  Works for ints and Fractions alike.
    """
    m = len(coords)
    if family == "A":
        order = sorted(range(m), key=lambda j: coords[j], reverse=True)
        dom = [coords[j] for j in order]
        for i in range(m - 1):
            if dom[i] == dom[i + 1]:
                return None
        perm = [0] * m
        for i, j in enumerate(order):
            perm[j] = i
        return tuple(dom), WeylElement(tuple(perm), (1,) * m)

    absval = [abs(c) for c in coords]
    order = sorted(range(m), key=lambda j: absval[j], reverse=True)
    dom = [absval[j] for j in order]
    for i in range(m - 1):
        if dom[i] == dom[i + 1]:
            return None
    perm = [0] * m
    signs = [1] * m
    for i, j in enumerate(order):
        perm[j] = i
        if coords[j] < 0:
            signs[i] = -1
    if family in ("B", "C"):
        if dom[-1] == 0:
            return None
    elif family == "D":
        flips = sum(1 for s in signs if s < 0)
        if flips % 2 == 1:
            # the smallest coordinate absorbs the extra flip; it may be zero
            signs[m - 1] = -signs[m - 1]
            dom[m - 1] = -dom[m - 1]
    else:
        raise ValueError(f"unsupported family {family!r}")
    return tuple(dom), WeylElement(tuple(perm), tuple(signs))


def dominant_reduce(x: Weight, family: str) -> Reduction:
    """Find the regular dominant member of the orbit of a shifted weight."""
    if not x.shifted:
        raise ValueError("dominant_reduce expects rho-shifted coordinates")
    res = reduce_coords(x.coords, family)
    if res is None:
        return Reduction(None)
    dom, w = res
    return Reduction(Weight(dom, True), w.det, w)


def weyl_order(rs: RootSystem) -> int:
    m = rs.m
    fact = 1
    for k in range(2, m + 1):
        fact *= k
    if rs.family == "A":
        return fact
    if rs.family == "D":
        return 2 ** (m - 1) * fact
    return 2**m * fact


def weyl_cap() -> int:
    env = os.environ.get("JANTZEN_WEYL_CAP")
    return int(env) if env else DEFAULT_CAP


def enumerate_weyl(rs: RootSystem, cap: int | None = None) -> Iterator[WeylElement]:
    """Yield every element of W(rs) exactly once."""
    cap = weyl_cap() if cap is None else cap
    size = weyl_order(rs)
    if size > cap:
        raise EnumerationCapExceeded(size, cap)
    m = rs.m
    if rs.family == "A":
        sign_choices = [(1,) * m]
    else:
        sign_choices = [s for s in itertools.product((1, -1), repeat=m)
                        if rs.family != "D" or _prod(s) == 1]
    for perm in itertools.permutations(range(m)):
        for signs in sign_choices:
            yield WeylElement(perm, signs)


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def reflection(rs: RootSystem, root_coords: Sequence[int]) -> WeylElement:
    """The reflection s_gamma as a signed permutation."""
    m = rs.m
    nz = [i for i, c in enumerate(root_coords) if c != 0]
    perm = list(range(m))
    signs = [1] * m
    if len(nz) == 1:
        signs[nz[0]] = -1
    else:
        a, b = nz
        perm[a], perm[b] = b, a
        if root_coords[a] == root_coords[b]:
            # e_a + e_b: e_a -> -e_b, e_b -> -e_a
            signs[a] = signs[b] = -1
    return WeylElement(tuple(perm), tuple(signs))
