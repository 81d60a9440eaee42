"""Independent reference computations used by the tests and ``verify``.

None of these share code paths with the fast routines they check: Weyl
group elements are enumerated outright, (v - q)-multiplicities come from
polynomial division, characters from the Weyl character formula, and the
rank one Jantzen sums from the elementary divisors C(r, j).
"""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache

from sympy import cyclotomic_poly, symbols, Poly

from .arith import QuantumSpec
from .rootsys import RootSystem, Weight, is_regular_dominant_shifted
from .weylact import Reduction, enumerate_weyl

_x = symbols("x")


# -- dominant reduction by orbit scan ---------------------------------------

def reduce_by_scan(x: Weight, rs: RootSystem, cap: int | None = None) -> Reduction:
    """Dominant reduction by trying every element of W."""
    for w in enumerate_weyl(rs, cap):
        y = Weight(w.act(x.coords), True)
        if is_regular_dominant_shifted(y, rs.family):
            return Reduction(y, w.det, w)
    return Reduction(None)


# -- polynomial arithmetic over Z or GF(p), coefficients low degree first ----

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mod(a: list[int], p: int) -> list[int]:
    return _trim([c % p for c in a]) if p else _trim(list(a))


def _divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Division by a monic polynomial b."""
    b = list(b)
    if b[-1] != 1:
        raise ValueError("divisor must be monic")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1]
        if p:
            c %= p
        if c:
            q[k] = c
            for i, y in enumerate(b):
                a[k + i] -= c * y
    return _mod(q, p), _mod(a, p)


def _multiplicity(f: list[int], g: list[int], p: int) -> int:
    f = _mod(f, p)
    if not f:
        raise ValueError("multiplicity in the zero polynomial")
    k = 0
    while True:
        q, r = _divmod(f, g, p)
        if r:
            return k
        f, k = q, k + 1


@lru_cache(maxsize=None)
def _cyclotomic(n: int, p: int) -> tuple[int, ...]:
    coeffs = Poly(cyclotomic_poly(n, _x), _x).all_coeffs()[::-1]
    return tuple(_mod([int(c) for c in coeffs], p))


def _geometric(m: int) -> list[int]:
    """(x^m - 1)/(x - 1); the Gaussian integer [m] is v^(1-m) times this at x = v^2."""
    return [1] * m


def divq_int_oracle(m: int, spec: QuantumSpec, d: int = 1) -> int:
    """Vanishing order of [m]_d at v = q by repeated division.

    q^2 is a primitive l-th root of unity whether q has order l or 2l, so the
    order at v = q equals the multiplicity of Phi_l(x) in [dm]/[d] at x = v^2.
    """
    p = spec.char
    phi = _cyclotomic(spec.l, p)
    q, r = _divmod(_geometric(d * m), _geometric(d), p)
    if r:
        raise ArithmeticError("[d] does not divide [dm]")
    return _multiplicity(q, phi, p)


@lru_cache(maxsize=None)
def _qpascal_row(n: int, d: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Row n of the q-Pascal triangle in t = x^d: [n choose k] for k = 0..n."""
    if n == 0:
        return ((1,),)
    prev = _qpascal_row(n - 1, d, p)
    row = [(1,)]
    for k in range(1, n):
        left, right = prev[k - 1], (0,) * (d * k) + prev[k]
        size = max(len(left), len(right))
        row.append(tuple(_mod([(left[i] if i < len(left) else 0) + (right[i] if i < len(right) else 0)
                               for i in range(size)], p)))
    row.append((1,))
    return tuple(row)


def gaussian_binomial_poly(r: int, j: int, d: int, p: int = 0) -> list[int]:
    """[r choose j] in t = x^d via the q-Pascal rule, as a polynomial in x."""
    return list(_qpascal_row(r, d, p)[j])


def divq_binomial_oracle(r: int, j: int, d: int, spec: QuantumSpec) -> int:
    return _multiplicity(gaussian_binomial_poly(r, j, d, spec.char), _cyclotomic(spec.l, spec.char), spec.char)


# -- characters via the Weyl character formula --------------------------------

def weyl_character(lam: Weight, rs: RootSystem, cap: int | None = None) -> dict[tuple, int]:
    """Weight multiplicities of chi(lambda) by dividing the alternating sum.

    A(lambda+rho) e^{-rho} is divided by (1 - e^{-alpha}) one positive root at
    a time; division along an alpha-string is a running sum from the top.
    Works on doubled coordinates so spin weights stay integral.
    """
    L = rs.shift(lam)
    rho = rs.rho.coords
    f: dict[tuple, int] = defaultdict(int)
    for w in enumerate_weyl(rs, cap):
        y = w.act(L.coords)
        f[tuple(int(2 * (a - b)) for a, b in zip(y, rho))] += w.det
    f = {k: v for k, v in f.items() if v}
    for alpha in rs.positive_roots:
        a = tuple(2 * c for c in alpha.coords)
        f = _divide_string(f, a)
    return {tuple(Fraction(c, 2) for c in k): v for k, v in f.items() if v}


def _divide_string(f: dict[tuple, int], a: tuple[int, ...]) -> dict[tuple, int]:
    i = next(k for k, c in enumerate(a) if c)
    strings: dict[tuple, dict[int, int]] = defaultdict(dict)
    for nu, c in f.items():
        # base point of the string: 0 <= base[i] < a[i]
        t = nu[i] // a[i]
        base = tuple(x - t * y for x, y in zip(nu, a))
        strings[base][t] = strings[base].get(t, 0) + c
    out: dict[tuple, int] = {}
    for base, pts in strings.items():
        run = 0
        for t in range(max(pts), min(pts) - 1, -1):
            run += pts.get(t, 0)
            if run:
                out[tuple(x + t * y for x, y in zip(base, a))] = run
        if run:
            raise ArithmeticError("alternating sum is not divisible by 1 - e^-alpha")
    return out


# -- rank one: SL2 ------------------------------------------------------------

def resolve_sl2(weights: dict[int, int]) -> dict[int, int]:
    """Write a W-invariant function on Z as a combination of chi(n), n >= 0."""
    w = {k: v for k, v in weights.items() if v}
    out: dict[int, int] = {}
    while w:
        top = max(w)
        c = w[top]
        if top < 0 or w.get(-top, 0) != c:
            raise ValueError("input is not W-invariant")
        out[top] = c
        for k in range(-top, top + 1, 2):
            w[k] = w.get(k, 0) - c
            if w[k] == 0:
                del w[k]
    return out


def _nu(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def sl2_jantzen_oracle(mu: int, p: int) -> dict[int, int]:
    """Layer sum of Delta(mu) for SL2 from the elementary divisors of Delta -> nabla.

    The map is diagonal in the standard bases with entry C(mu, j) on the
    weight mu - 2j, so the layer sum has weight multiplicities nu_p(C(mu, j)).
    """
    weights = {mu - 2 * j: _nu(math.comb(mu, j), p) for j in range(mu + 1)}
    return resolve_sl2(weights)


def sl2_jantzen_quantum_oracle(mu: int, spec: QuantumSpec) -> dict[int, int]:
    weights = {mu - 2 * j: divq_binomial_oracle(mu, j, 1, spec) for j in range(mu + 1)}
    return resolve_sl2(weights)


def sl2_cokernel_oracle(mu: int) -> dict[int, dict[int, int]]:
    """div_T of the SL2 cokernel, per prime: p -> chi-resolution of nu_p(C(mu, j))."""
    primes = sorted({q for j in range(mu + 1) for q in _prime_factors(math.comb(mu, j))})
    return {q: resolve_sl2({mu - 2 * j: _nu(math.comb(mu, j), q) for j in range(mu + 1)}) for q in primes}


def _prime_factors(n: int) -> set[int]:
    out, k = set(), 2
    while k * k <= n:
        while n % k == 0:
            out.add(k)
            n //= k
        k += 1
    if n > 1:
        out.add(n)
    return out


def sl2_tilting_factors(n: int, p: int) -> dict[int, int]:
    """Weyl factors of the SL2 tilting module T(n) via Donkin's tensor product theorem."""
    if n <= p - 1:
        return {n: 1}
    if n <= 2 * p - 2:
        return {n: 1, 2 * p - 2 - n: 1}
    r = (n - (p - 1)) % p
    a = (n - (p - 1) - r) // p
    small = _sl2_weights(sl2_tilting_factors(p - 1 + r, p))
    twist = {p * k: v for k, v in _sl2_weights(sl2_tilting_factors(a, p)).items()}
    prod: dict[int, int] = defaultdict(int)
    for k1, v1 in small.items():
        for k2, v2 in twist.items():
            prod[k1 + k2] += v1 * v2
    return resolve_sl2(prod)


def _sl2_weights(chis: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = defaultdict(int)
    for top, c in chis.items():
        for k in range(-top, top + 1, 2):
            out[k] += c
    return dict(out)
