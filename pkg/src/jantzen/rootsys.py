"""Classical root systems realized in epsilon coordinates.

Type A uses the GL_m convention: a weight is an integer vector, and vectors
differing by a multiple of (1, ..., 1) describe the same weight of the
derived group.  Every quantity computed downstream is invariant under that
shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

FAMILIES = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

HALF = Fraction(1, 2)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point coordinates are not accepted")
    return Fraction(x)


@dataclass(frozen=True)
class Root:
    coords: tuple[int, ...]
    coroot: tuple[int, ...]

    @property
    def norm2(self) -> int:
        return sum(c * c for c in self.coords)

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.coords), tuple(-c for c in self.coroot))

    def __str__(self) -> str:
        return format_root(self.coords)


@dataclass(frozen=True)
class Weight:
    """A weight in epsilon coordinates.

    ``shifted`` records whether the coordinates are those of lambda or of
    lambda + rho; mixing the two is the classic off-by-rho bug, so the flag
    is checked wherever it matters.
    """

    coords: tuple[Fraction, ...]
    shifted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in self.coords))

    @property
    def m(self) -> int:
        return len(self.coords)

    def __add__(self, other: Weight) -> Weight:
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)), self.shifted)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


@dataclass(frozen=True, eq=False)
class RootSystem:
    family: str
    rank: int
    m: int
    roots: tuple[Root, ...] = field(repr=False)
    positive_roots: tuple[Root, ...] = field(repr=False)
    simple_roots: tuple[Root, ...] = field(repr=False)
    rho: Weight = field(repr=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootSystem) and (self.family, self.rank) == (other.family, other.rank)

    def __hash__(self) -> int:
        return hash((self.family, self.rank))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def short_norm2(self) -> int:
        return min(r.norm2 for r in self.positive_roots)

    def d(self, root: Root) -> int:
        """Root length ratio used for Gaussian integers [m]_d."""
        ratio, rem = divmod(root.norm2, self.short_norm2)
        assert rem == 0 and ratio in (1, 2)
        return ratio

    def weight(self, coords: Iterable, shifted: bool = False) -> Weight:
        """Build a weight, checking it lies in the weight lattice."""
        c = tuple(_frac(x) for x in coords)
        if self.family == "A" and len(c) == self.m - 1:
            c = c + (Fraction(0),)
        if len(c) != self.m:
            raise ValueError(f"{self.name} weights need {self.m} coordinates, got {len(c)}")
        halves = [x.denominator == 2 for x in c]
        if any(x.denominator > 2 for x in c):
            raise ValueError(f"coordinates must be integers or half-integers: {c}")
        # for B and D rho is integral, so the lattice condition is the same shifted or not
        if self.family in ("A", "C"):
            if any(halves):
                raise ValueError(f"type {self.family} weights must be integral: {c}")
        elif any(halves) and not all(halves):
            raise ValueError(f"type {self.family} weights must be all integral or all half-integral: {c}")
        return Weight(c, shifted)

    def shift(self, x: Weight) -> Weight:
        if x.shifted:
            return x
        return Weight(tuple(a + b for a, b in zip(x.coords, self.rho.coords)), True)

    def unshift(self, x: Weight) -> Weight:
        if not x.shifted:
            return x
        return Weight(tuple(a - b for a, b in zip(x.coords, self.rho.coords)), False)

    def canonical(self, x: Weight) -> Weight:
        """Shifted weight with the type A GL shift removed (last coordinate 0)."""
        x = self.shift(x)
        if self.family != "A" or x.coords[-1] == 0:
            return x
        t = x.coords[-1]
        return Weight(tuple(c - t for c in x.coords), True)

    def norm2(self, coords: Sequence) -> Fraction:
        """Squared length, projected orthogonally to (1,...,1) in type A."""
        n = sum(Fraction(c) * c for c in coords)
        if self.family == "A":
            n -= Fraction(sum(coords)) ** 2 / self.m
        return n

    def is_positive(self, coords: Sequence) -> bool:
        # rho is regular dominant, so its pairing decides positivity
        return sum(a * b for a, b in zip(coords, self.rho.coords)) > 0

    def root_by_coords(self, coords: Sequence[int]) -> Root:
        return _root_index(self)[tuple(coords)]


@lru_cache(maxsize=None)
def _root_index(rs: RootSystem) -> dict[tuple[int, ...], Root]:
    return {r.coords: r for r in rs.roots}


def _unit(m: int, i: int, scale: int = 1) -> list[int]:
    v = [0] * m
    v[i] = scale
    return v


def _make_root(coords: list[int]) -> Root:
    n2 = sum(c * c for c in coords)
    coroot = tuple(2 * c // n2 for c in coords)
    assert all(2 * c % n2 == 0 for c in coords)
    return Root(tuple(coords), coroot)


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Realize the classical root system of the given family and rank."""
    family = str(family).upper()
    if family not in FAMILIES:
        raise ValueError(f"unsupported family {family!r}; expected one of {', '.join(FAMILIES)}")
    if not isinstance(rank, int) or rank < MIN_RANK[family]:
        raise ValueError(f"type {family} needs rank >= {MIN_RANK[family]}, got {rank!r}")

    m = rank + 1 if family == "A" else rank
    pos: list[list[int]] = []
    for i in range(m):
        for j in range(i + 1, m):
            v = [0] * m
            v[i], v[j] = 1, -1
            pos.append(v)
            if family != "A":
                w = [0] * m
                w[i], w[j] = 1, 1
                pos.append(w)
        if family == "B":
            pos.append(_unit(m, i))
        elif family == "C":
            pos.append(_unit(m, i, 2))

    positive = tuple(_make_root(v) for v in pos)
    roots = positive + tuple(-r for r in positive)

    simple = [_make_root([1 if k == i else -1 if k == i + 1 else 0 for k in range(m)]) for i in range(m - 1)]
    if family == "B":
        simple.append(_make_root(_unit(m, m - 1)))
    elif family == "C":
        simple.append(_make_root(_unit(m, m - 1, 2)))
    elif family == "D":
        simple.append(_make_root([1 if k >= m - 2 else 0 for k in range(m)]))

    if family == "A":
        rho = tuple(Fraction(m - 1 - i) for i in range(m))
    else:
        total = [Fraction(0)] * m
        for r in positive:
            for i, c in enumerate(r.coords):
                total[i] += c
        rho = tuple(t / 2 for t in total)

    return RootSystem(family, rank, m, roots, positive, tuple(simple), Weight(rho, False))


def pairing(x: Weight, r: Root) -> int:
    """<x, r^vee>; integral for every lattice weight."""
    if x.m != len(r.coroot):
        raise ValueError(f"dimension mismatch: weight has {x.m} coordinates, root has {len(r.coroot)}")
    val = sum(a * b for a, b in zip(x.coords, r.coroot))
    if val.denominator != 1:
        raise ValueError(f"non-integral pairing <{x}, {r}^vee> = {val}")
    return int(val)


def is_regular_dominant_shifted(x: Weight, family: str) -> bool:
    if not x.shifted:
        raise ValueError("expected rho-shifted coordinates")
    c = x.coords
    m = len(c)
    if family == "A":
        return all(c[i] > c[i + 1] for i in range(m - 1))
    if family in ("B", "C"):
        return all(c[i] > c[i + 1] for i in range(m - 1)) and c[-1] > 0
    if family == "D":
        return all(c[i] > c[i + 1] for i in range(m - 2)) and c[m - 2] > abs(c[m - 1])
    raise ValueError(f"unsupported family {family!r}")


def simple_root_coefficients(rs: RootSystem, diff: Sequence[Fraction]) -> list[Fraction] | None:
    """Coefficients of ``diff`` in the simple roots, or None if outside their span."""
    m = rs.m
    s = []
    acc = Fraction(0)
    for d in diff:
        acc += d
        s.append(acc)
    fam = rs.family
    if fam == "A":
        if s[-1] != 0:
            return None
        return s[:-1]
    if fam == "B":
        return s
    if fam == "C":
        return s[:-1] + [s[-1] / 2]
    # D: simple roots e_i - e_{i+1} (i < m-1) and e_{m-1} + e_m
    last = diff[m - 1]
    return s[: m - 2] + [(s[m - 2] - last) / 2, (s[m - 2] + last) / 2]


def _align_type_a(lam: Weight, mu: Weight) -> Weight | None:
    """Shift ``mu`` by an integer multiple of (1,...,1) so both sums agree."""
    gap = sum(lam.coords) - sum(mu.coords)
    q, r = divmod(gap, len(mu.coords))
    if r != 0:
        return None
    return Weight(tuple(c + q for c in mu.coords), mu.shifted)


def dominance_leq(lam: Weight, mu: Weight, rs: RootSystem) -> bool:
    """True iff mu - lam is a nonnegative integral combination of positive roots."""
    if lam.shifted != mu.shifted:
        raise ValueError("compare weights with the same shift convention")
    if rs.family == "A":
        aligned = _align_type_a(lam, mu)
        if aligned is None:
            return False
        mu = aligned
    coeffs = simple_root_coefficients(rs, [b - a for a, b in zip(lam.coords, mu.coords)])
    if coeffs is None:
        return False
    return all(c.denominator == 1 and c >= 0 for c in coeffs)


def format_root(coords: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(coords, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}e{i}")
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def parse_weight(text: str) -> tuple[Fraction, ...]:
    """Parse ``5/2,3/2,1/2`` into exact rationals."""
    items = [t for t in text.replace(" ", "").split(",") if t != ""]
    if not items:
        raise ValueError("empty weight")
    try:
        return tuple(Fraction(t) for t in items)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed weight {text!r}") from exc
