"""Characters in the chi-basis and their weight expansions."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator

from .arith import Divisor
from .rootsys import RootSystem, Weight, is_regular_dominant_shifted
from .weylact import dominant_reduce


def display_coords(rs: RootSystem, lam: Weight) -> tuple:
    """Unshifted coordinates as shown to users.

    Type A drops the GL shift by making the last coordinate zero; rank-one
    type A collapses to the single integer <lambda, alpha^vee>.
    """
    c = rs.unshift(lam).coords
    if rs.family == "A":
        c = tuple(x - c[-1] for x in c)
        if rs.rank == 1:
            c = c[:1]
    return tuple(int(x) if x.denominator == 1 else x for x in c)


def format_coords(c: tuple) -> str:
    return ",".join(str(x) for x in c)


def _json_coord(x):
    return int(x) if isinstance(x, int) or x.denominator == 1 else str(x)


class ChiCombination:
    """Finite Z- or D(Z)-linear combination of chi(lambda), lambda dominant.

    Keys are rho-shifted regular dominant weights.
    """

    def __init__(self, rs: RootSystem, terms: dict[Weight, object] | None = None):
        self.rs = rs
        self._terms: dict[Weight, object] = {}
        for k, v in (terms or {}).items():
            self.add(k, v)

    def add(self, key: Weight, coeff) -> None:
        key = self.rs.canonical(key)
        cur = self._terms.get(key)
        new = coeff if cur is None else cur + coeff
        if new:
            self._terms[key] = new
        elif cur is not None:
            del self._terms[key]

    def __getitem__(self, key: Weight):
        return self._terms.get(self.rs.canonical(key), 0)

    def __contains__(self, key: Weight) -> bool:
        return self.rs.canonical(key) in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def keys(self) -> list[Weight]:
        return [k for k, _ in self.items()]

    def items(self) -> list[tuple[Weight, object]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].coords, reverse=True)

    def highest_weights(self) -> list[Weight]:
        return [self.rs.unshift(k) for k in self.keys()]

    def map(self, fn: Callable[[object], object]) -> ChiCombination:
        out = ChiCombination(self.rs)
        for k, v in self._terms.items():
            out.add(k, fn(v))
        return out

    def __add__(self, other: ChiCombination) -> ChiCombination:
        out = ChiCombination(self.rs, dict(self._terms))
        for k, v in other._terms.items():
            out.add(k, v)
        return out

    def __neg__(self) -> ChiCombination:
        return self.map(lambda v: -v)

    def __sub__(self, other: ChiCombination) -> ChiCombination:
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChiCombination):
            return NotImplemented
        return self.rs == other.rs and self._terms == other._terms

    def as_dict(self) -> dict[tuple, object]:
        """Display coordinates -> coefficient."""
        return {display_coords(self.rs, k): v for k, v in self.items()}

    def __repr__(self) -> str:
        return f"ChiCombination({self.rs.name}: {self.to_text()})"

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (k, v) in enumerate(self.items()):
            label = f"χ({format_coords(display_coords(self.rs, k))})"
            if isinstance(v, Divisor):
                term = f"[{v}]·{label}"
                out.append(term if i == 0 else f"+ {term}")
                continue
            mag = abs(v)
            term = label if mag == 1 else f"{mag}·{label}"
            if i == 0:
                out.append(term if v > 0 else f"-{term}")
            else:
                out.append(f"{'+' if v > 0 else '-'} {term}")
        return " ".join(out)

    def to_json(self) -> dict:
        terms = []
        for k, v in self.items():
            coeff = v.to_json() if isinstance(v, Divisor) else int(v)
            terms.append({"lambda": [_json_coord(x) for x in display_coords(self.rs, k)], "coeff": coeff})
        return {"basis": "chi", "terms": terms}


class WeightMultiset(dict):
    """Weight (as a tuple of unshifted coordinates) -> multiplicity."""

    def total(self) -> int:
        return sum(self.values())

    def pruned(self) -> WeightMultiset:
        return WeightMultiset({k: v for k, v in self.items() if v})


def chi_reduce(xi: Weight, rs: RootSystem) -> ChiCombination:
    """Rewrite chi(xi) as 0 or +-chi(dominant) using chi(w.xi) = det(w) chi(xi)."""
    if xi.shifted:
        raise ValueError("chi_reduce takes an unshifted weight")
    red = dominant_reduce(rs.shift(xi), rs.family)
    out = ChiCombination(rs)
    if not red.singular:
        out.add(red.dominant, red.det)
    return out


def weyl_dim(lam: Weight, rs: RootSystem) -> int:
    """Weyl's dimension formula."""
    x = rs.shift(lam)
    if not is_regular_dominant_shifted(x, rs.family):
        raise ValueError(f"{rs.unshift(lam)} is not dominant for {rs.name}")
    num = Fraction(1)
    for beta in rs.positive_roots:
        num *= Fraction(sum(a * b for a, b in zip(x.coords, beta.coroot)),
                        sum(a * b for a, b in zip(rs.rho.coords, beta.coroot)))
    if num.denominator != 1:
        raise ArithmeticError(f"non-integral Weyl dimension {num}")
    return int(num)


# Freudenthal's recursion runs on doubled integer coordinates so spin weights
# stay integral; the Euclidean form there is 4x the true one, which cancels.

def _dom_linear(x: tuple[int, ...], family: str) -> tuple[int, ...]:
    if family == "A":
        return tuple(sorted(x, reverse=True))
    a = sorted((abs(c) for c in x), reverse=True)
    if family == "D" and a[-1] != 0:
        neg = sum(1 for c in x if c < 0)
        if neg % 2:
            a[-1] = -a[-1]
    return tuple(a)


def _orbit(x: tuple[int, ...], family: str) -> Iterator[tuple[int, ...]]:
    perms = set(itertools.permutations(x))
    if family == "A":
        yield from perms
        return
    seen = set()
    for p in perms:
        nz = [i for i, c in enumerate(p) if c != 0]
        for flips in itertools.product((1, -1), repeat=len(nz)):
            if family == "D" and len(nz) == len(p):
                prod = 1
                for f in flips:
                    prod *= f
                if prod != 1:
                    continue
            y = list(p)
            for i, f in zip(nz, flips):
                y[i] *= f
            t = tuple(y)
            if t not in seen:
                seen.add(t)
                yield t


@lru_cache(maxsize=4096)
def _dominant_multiplicities(rs: RootSystem, top: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    fam = rs.family
    pos = [tuple(2 * c for c in r.coords) for r in rs.positive_roots]
    rho2 = tuple(int(2 * c) for c in rs.rho.coords)

    # dominant weights below top: closed under subtracting positive roots
    # while staying dominant (covering relations are root differences)
    dominant = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for v in frontier:
            for a in pos:
                w = tuple(x - y for x, y in zip(v, a))
                if w not in dominant and _dom_linear(w, fam) == w:
                    dominant.add(w)
                    nxt.append(w)
        frontier = nxt

    def norm_shift(v):
        return sum((x + r) ** 2 for x, r in zip(v, rho2))

    top_norm = norm_shift(top)
    mult: dict[tuple[int, ...], int] = {}
    for v in sorted(dominant, key=norm_shift, reverse=True):
        if v == top:
            mult[v] = 1
            continue
        acc = 0
        for a in pos:
            k = 1
            while True:
                u = tuple(x + k * y for x, y in zip(v, a))
                mu = mult.get(_dom_linear(u, fam), 0)
                if mu == 0:
                    break
                acc += mu * sum(x * y for x, y in zip(u, a))
                k += 1
        denom = top_norm - norm_shift(v)
        val, rem = divmod(2 * acc, denom)
        if rem:
            raise ArithmeticError(f"Freudenthal recursion produced a non-integer at {v}")
        if val:
            mult[v] = val
    return tuple(sorted(mult.items(), reverse=True))


def _doubled(lam: Weight, rs: RootSystem) -> tuple[int, ...]:
    x = rs.unshift(lam)
    return tuple(int(2 * c) for c in x.coords)


def _expand_doubled(lam: Weight, rs: RootSystem) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    for v, k in _dominant_multiplicities(rs, _doubled(lam, rs)):
        for u in _orbit(v, rs.family):
            out[u] = out.get(u, 0) + k
    return out


def _undouble(d: dict[tuple[int, ...], int], rs: RootSystem) -> WeightMultiset:
    out = WeightMultiset()
    for k, v in d.items():
        if rs.family == "A":
            # drop the GL shift so weights of different degree line up
            k = tuple(c - k[-1] for c in k)
        key = tuple(Fraction(c, 2) for c in k)
        out[key] = out.get(key, 0) + v
    return out.pruned()


def expand_weights(lam: Weight, rs: RootSystem) -> WeightMultiset:
    """All weights of chi(lambda) with multiplicities (Freudenthal).

    Type A weights come back with last coordinate 0.
    """
    if not is_regular_dominant_shifted(rs.shift(lam), rs.family):
        raise ValueError(f"{rs.unshift(lam)} is not dominant for {rs.name}")
    return _undouble(_expand_doubled(lam, rs), rs)


def dominant_multiplicities(lam: Weight, rs: RootSystem) -> dict[tuple[Fraction, ...], int]:
    """Multiplicities of the dominant weights of chi(lambda) only."""
    return {tuple(Fraction(c, 2) for c in v): k for v, k in _dominant_multiplicities(rs, _doubled(lam, rs))}


def expand_combination(c: ChiCombination) -> WeightMultiset:
    """Linear extension of expand_weights to integer chi-combinations."""
    total: dict[tuple[int, ...], int] = {}
    for key, coeff in c.items():
        if isinstance(coeff, Divisor):
            raise TypeError("expand_combination needs integer coefficients; take a prime component first")
        for u, k in _expand_doubled(key, c.rs).items():
            total[u] = total.get(u, 0) + coeff * k
    return _undouble(total, c.rs)
