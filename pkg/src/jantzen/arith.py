"""Divisors over Z and (v - q)-multiplicities of Gaussian integers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from sympy import factorint, isprime, primerange


class ConsistencyError(RuntimeError):
    """Two computations that must agree did not."""


class Divisor:
    """Finitely supported map prime -> integer (an element of D(Z)).

    Multiplicities may be negative; zero entries are dropped.
    """

    __slots__ = ("_m",)

    def __init__(self, mults: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = mults.items() if isinstance(mults, Mapping) else mults
        m: dict[int, int] = {}
        for p, k in items:
            p, k = int(p), int(k)
            if k:
                m[p] = m.get(p, 0) + k
                if m[p] == 0:
                    del m[p]
        self._m = m

    @classmethod
    def zero(cls) -> Divisor:
        return cls()

    def items(self):
        return sorted(self._m.items())

    def primes(self) -> list[int]:
        return sorted(self._m)

    def nu(self, p: int) -> int:
        return self._m.get(p, 0)

    def is_zero(self) -> bool:
        return not self._m

    def __bool__(self) -> bool:
        return bool(self._m)

    def __add__(self, other: Divisor) -> Divisor:
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self._m)
        for p, k in other._m.items():
            out[p] = out.get(p, 0) + k
        return Divisor(out)

    __radd__ = __add__

    def __neg__(self) -> Divisor:
        return Divisor({p: -k for p, k in self._m.items()})

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, c: int) -> Divisor:
        return Divisor({p: c * k for p, k in self._m.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Divisor):
            return self._m == other._m
        if isinstance(other, Mapping):
            return self._m == Divisor(other)._m
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __repr__(self) -> str:
        return f"Divisor({dict(self.items())})"

    def __str__(self) -> str:
        if not self._m:
            return "0"
        return "·".join(str(p) if k == 1 else f"{p}^{k}" for p, k in self.items())

    def to_json(self) -> dict[str, int]:
        return {str(p): k for p, k in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> Divisor:
        return cls({int(p): int(k) for p, k in data.items()})


def divisor_of_int(n: int) -> Divisor:
    if n == 0:
        raise ValueError("div(0) is undefined")
    return Divisor(factorint(abs(int(n))))


def nu_p(d: Divisor, p: int) -> int:
    return d.nu(p)


def _legendre(n: int, p: int) -> int:
    """Exponent of p in n!."""
    e = 0
    while n:
        n //= p
        e += n
    return e


def divisor_of_binomial(r: int, j: int) -> Divisor:
    """div C(r, j), counted prime by prime with Legendre's formula."""
    if r < 0 or j < 0 or j > r:
        raise ValueError(f"need 0 <= j <= r, got r={r}, j={j}")
    return Divisor({p: _legendre(r, p) - _legendre(j, p) - _legendre(r - j, p) for p in primerange(2, r + 1)})


@dataclass(frozen=True)
class QuantumSpec:
    """Order parameter l (odd, >= 3) and characteristic of the ground field.

    The characteristic must be 0 or a prime not dividing l.  That is all
    the Gaussian-integer arithmetic needs; the quantum group setting also
    excludes characteristic 2 (and 3 with a G2 component), which
    ``require_quantum_group`` enforces.
    """

    l: int
    char: int = 0
    has_g2: bool = False

    def __post_init__(self):
        if self.l < 3 or self.l % 2 == 0:
            raise ValueError(f"l must be odd and at least 3, got {self.l}")
        if self.char != 0:
            if not isprime(self.char):
                raise ValueError(f"characteristic must be 0 or a prime, got {self.char}")
            if self.l % self.char == 0:
                raise ValueError(f"characteristic {self.char} divides l={self.l}")

    def require_quantum_group(self) -> None:
        if self.char == 2:
            raise ValueError("characteristic 2 is excluded for quantum groups at roots of unity")
        if self.char == 3 and self.has_g2:
            raise ValueError("characteristic 3 is excluded when the root system has a G2 component")


def _nu_int(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def divq_gaussian_int(m: int, spec: QuantumSpec) -> int:
    """Vanishing order of [m] = (v^m - v^-m)/(v - v^-1) at v = q."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if m % spec.l:
        return 0
    if spec.char == 0:
        return 1
    return spec.char ** _nu_int(m, spec.char)


def divq_gaussian_int_d(m: int, d: int, spec: QuantumSpec) -> int:
    """Vanishing order of [m]_d = [dm]/[d] at v = q."""
    return divq_gaussian_int(d * m, spec) - divq_gaussian_int(d, spec)


def divq_gaussian_binomial(r: int, j: int, d: int, spec: QuantumSpec) -> int:
    if r < 0 or j < 0 or j > r:
        raise ValueError(f"need 0 <= j <= r, got r={r}, j={j}")
    top = sum(divq_gaussian_int_d(t, d, spec) for t in range(r - j + 1, r + 1))
    bottom = sum(divq_gaussian_int_d(t, d, spec) for t in range(1, j + 1))
    val = top - bottom
    if val < 0:
        raise ConsistencyError(f"negative (v-q)-multiplicity {val} for [{r} choose {j}]_{d}")
    return val
