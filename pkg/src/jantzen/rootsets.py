"""The root subsets S, U and V attached to a pair of dominant weights.

All three come from solutions of  lambda - n*gamma = w . mu  with gamma a
positive root, n a nonzero integer and w in W.  On rho-shifted coordinates
L = lambda + rho, M = mu + rho this reads  L - n*gamma = w(M).

``s_set_fast`` reads the solutions off the coordinate difference sets of L
and M, type by type; ``s_set_bruteforce`` scans the whole Weyl group and is
the reference it is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import ConsistencyError
from .rootsys import Root, RootSystem, Weight, _align_type_a, dominance_leq, is_regular_dominant_shifted, pairing
from .weylact import WeylElement, enumerate_weyl, reduce_coords


@dataclass(frozen=True)
class RootSetEntry:
    """(gamma, w, n) in U(lambda, mu), or (beta, x, m) in V(lambda, mu)."""

    gamma: Root
    w: WeylElement
    n: int

    @property
    def det(self) -> int:
        return self.w.det

    def to_json(self) -> dict:
        return {"gamma": list(self.gamma.coords), "n": self.n, "det": self.det,
                "w": {"perm": list(self.w.perm), "signs": list(self.w.signs)}}


@dataclass(frozen=True)
class SSetEntry:
    gamma: Root
    solutions: frozenset  # of (WeylElement, int)

    def sorted_solutions(self) -> list[tuple[WeylElement, int]]:
        return sorted(self.solutions, key=lambda s: s[1])


def _shifted_pair(lam: Weight, mu: Weight, rs: RootSystem):
    L = rs.shift(lam)
    M = rs.shift(mu)
    for x, name in ((L, "lambda"), (M, "mu")):
        if not is_regular_dominant_shifted(x, rs.family):
            raise ValueError(f"{name} = {rs.unshift(x)} is not dominant for {rs.name}")
    if rs.family == "A":
        M = _align_type_a(L, M)
    return L, M


def same_root_class(L: Weight, M: Weight, rs: RootSystem) -> bool:
    """True iff L - M lies in the root lattice (type A: after alignment)."""
    diff = [a - b for a, b in zip(L.coords, M.coords)]
    if any(d.denominator != 1 for d in diff):
        return False
    if rs.family == "A":
        return sum(diff) == 0
    if rs.family in ("C", "D"):
        return sum(diff) % 2 == 0
    return True


def same_weight(lam: Weight, mu: Weight, rs: RootSystem) -> bool:
    L, M = rs.shift(lam), rs.shift(mu)
    if rs.family == "A":
        M = _align_type_a(L, M)
        if M is None:
            return False
    return L.coords == M.coords


def strictly_below(lam: Weight, mu: Weight, rs: RootSystem) -> bool:
    return dominance_leq(rs.unshift(lam), rs.unshift(mu), rs) and not same_weight(lam, mu, rs)


def _collect(rs: RootSystem, found: dict) -> set[SSetEntry]:
    return {SSetEntry(rs.root_by_coords(g), frozenset(sols)) for g, sols in found.items()}


def s_set_bruteforce(lam: Weight, mu: Weight, rs: RootSystem, cap: int | None = None) -> set[SSetEntry]:
    """S(lambda, mu) by scanning every w in W."""
    L, M = _shifted_pair(lam, mu, rs)
    if M is None or L.coords == M.coords or not same_root_class(L, M, rs):
        return set()
    fam = rs.family
    found: dict[tuple[int, ...], set] = {}
    for w in enumerate_weyl(rs, cap):
        y = w.act(M.coords)
        diff = [a - b for a, b in zip(L.coords, y)]
        support = [i for i, d in enumerate(diff) if d != 0]
        gamma = n = None
        if len(support) == 1 and fam in ("B", "C"):
            i = support[0]
            scale = 1 if fam == "B" else 2
            gamma = tuple(scale if k == i else 0 for k in range(rs.m))
            n = diff[i] / scale
        elif len(support) == 2:
            i, j = support
            if diff[i] == -diff[j]:
                gamma = tuple(1 if k == i else -1 if k == j else 0 for k in range(rs.m))
            elif diff[i] == diff[j] and fam != "A":
                gamma = tuple(1 if k in (i, j) else 0 for k in range(rs.m))
            n = diff[i]
        if gamma is None or Fraction(n).denominator != 1:
            continue
        found.setdefault(gamma, set()).add((w, int(n)))
    return _collect(rs, found)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def _sign_product(xs: Iterable) -> int:
    out = 1
    for x in xs:
        out *= _sgn(x)
    return out


class _Solver:
    """Accumulates candidate (gamma, n) pairs and confirms each one exactly."""

    def __init__(self, rs: RootSystem, L: Sequence[Fraction], M: Sequence[Fraction]):
        self.rs = rs
        self.L = L
        self.M = M
        self.found: dict[tuple[int, ...], set] = {}

    def root(self, a: int, b: int | None = None, sign: int = -1, scale: int = 1) -> tuple[int, ...]:
        v = [0] * self.rs.m
        v[a] = scale
        if b is not None:
            v[b] = sign
        return tuple(v)

    def fits(self, gamma: Sequence[int], n) -> bool:
        y = [l - n * g for l, g in zip(self.L, gamma)]
        res = reduce_coords(y, self.rs.family)
        return res is not None and res[0] == tuple(self.M)

    def add(self, gamma: tuple[int, ...], n, where: str) -> None:
        """Record a solution the case analysis claims; it must check out."""
        if Fraction(n).denominator != 1 or n == 0:
            raise ConsistencyError(f"{where}: candidate n={n} for gamma={gamma} is not a nonzero integer")
        n = int(n)
        y = [l - n * g for l, g in zip(self.L, gamma)]
        res = reduce_coords(y, self.rs.family)
        if res is None or res[0] != tuple(self.M):
            raise ConsistencyError(f"{where}: gamma={gamma}, n={n} does not satisfy lambda - n*gamma = w.mu")
        witness = res[1]
        if not self.rs.is_positive(gamma):
            gamma, n = tuple(-g for g in gamma), -n
        self.found.setdefault(gamma, set()).add((witness.inverse(), n))


def _diff_sets(L, M, absolute: bool):
    f = abs if absolute else (lambda x: x)
    IL = {f(x): i for i, x in enumerate(L)}
    IM = {f(x): i for i, x in enumerate(M)}
    DL = sorted((IL[v] for v in IL if v not in IM))
    DM = sorted((IM[v] for v in IM if v not in IL))
    return IL, DL, DM


def _fast_a(s: _Solver) -> None:
    L, M = s.L, s.M
    _, DL, DM = _diff_sets(L, M, absolute=False)
    if len(DL) != 2 or len(DM) != 2:
        return
    a, b = DL
    c, d = DM
    if L[a] + L[b] != M[c] + M[d]:
        raise ConsistencyError("type A: difference sets with unequal sums after alignment")
    gamma = s.root(a, b, -1)
    for n in (L[a] - M[c], L[a] - M[d]):
        s.add(gamma, n, "A")


def _fast_bc(s: _Solver) -> None:
    L, M = s.L, s.M
    fam = s.rs.family
    IL, DL, DM = _diff_sets(L, M, absolute=False)
    if len(DL) != len(DM) or len(DL) not in (1, 2):
        return
    if len(DL) == 1:
        a, c = DL[0], DM[0]
        la, mc = L[a], M[c]
        # Case 1: the short root e_a (type B) or the long root 2e_a (type C)
        if fam == "B":
            for n in (la - mc, la + mc):
                s.add(s.root(a), n, "B case 1")
        elif (la - mc) % 2 == 0:
            for n in ((la - mc) / 2, (la + mc) / 2):
                s.add(s.root(a, scale=2), n, "C case 1")
        # Subcase 2.1: lambda_a - mu_c = -2 lambda_b, gamma = e_a - e_b
        b = IL.get((mc - la) / 2)
        if b is not None and b != a:
            for n in (la - mc, mc - L[b]):
                s.add(s.root(a, b, -1), n, "subcase 2.1")
        # Subcase 3.1: lambda_a -+ mu_c = 2 lambda_b, gamma = e_a + e_b
        for target in ((la - mc) / 2, (la + mc) / 2):
            b = IL.get(target)
            if b is not None and b != a:
                for n in (2 * L[b], la - L[b]):
                    s.add(s.root(a, b, 1), n, "subcase 3.1")
        return
    a, b = DL
    c, d = DM
    la, lb, mc, md = L[a], L[b], M[c], M[d]
    case22 = la + lb in (mc + md, mc - md)
    case32 = la - lb in (mc + md, mc - md)
    if case22 and case32:
        raise ConsistencyError("subcases 2.2 and 3.2 cannot hold together")
    if case22:
        _pair_case(s, a, b, -1, (mc, md), "subcase 2.2")
    elif case32:
        _pair_case(s, a, b, 1, (mc, md), "subcase 3.2")


def _pair_case(s: _Solver, a: int, b: int, sign: int, targets, where: str) -> None:
    """gamma = e_a + sign*e_b moves the pair (L_a, L_b) onto the two new values."""
    L = s.L
    gamma = s.root(a, b, sign)
    cands = set()
    for t in targets:
        cands.update((L[a] - t, L[a] + t))
    hits = 0
    for n in sorted(cands):
        if n != 0 and s.fits(gamma, n):
            s.add(gamma, n, where)
            hits += 1
    if hits == 0:
        raise ConsistencyError(f"{where}: numerical condition met but no solution found")


def _fast_d(s: _Solver) -> None:
    L, M = s.L, s.M
    m = len(L)
    IL, DL, DM = _diff_sets(L, M, absolute=True)
    if len(DL) != len(DM) or len(DL) not in (1, 2):
        return
    target_sign = _sign_product(M)

    def try_add(gamma, n, where):
        if n == 0:
            return
        y = [l - n * g for l, g in zip(L, gamma)]
        if _sign_product(y) != target_sign:
            return
        if sorted(abs(v) for v in y) != sorted(abs(v) for v in M):
            return
        s.add(gamma, n, where)

    if len(DL) == 1:
        a = DL[0]
        mc = abs(M[DM[0]])
        la = L[a]
        for b in range(m):
            if b == a:
                continue
            lb = L[b]
            # gamma = e_a + e_b: |L_b - n| = |L_b| and |L_a - n| = mu_c, or the crossed pairing
            if la - 2 * lb in (mc, -mc):
                for n in (2 * lb, la - lb):
                    try_add(s.root(a, b, 1), n, "D, |D'|=1, e_a+e_b")
            # gamma = e_a - e_b
            if la + 2 * lb in (mc, -mc):
                for n in (-2 * lb, la + lb):
                    try_add(s.root(a, b, -1), n, "D, |D'|=1, e_a-e_b")
        return
    a, b = DL
    mc, md = abs(M[DM[0]]), abs(M[DM[1]])
    la, lb = L[a], L[b]
    for sign in (1, -1):
        gamma = s.root(a, b, sign)
        for t in (mc, md):
            for n in (la - t, la + t):
                try_add(gamma, n, "D, |D'|=2")


def s_set_fast(lam: Weight, mu: Weight, rs: RootSystem) -> set[SSetEntry]:
    """S(lambda, mu) from the difference sets of lambda + rho and mu + rho."""
    L, M = _shifted_pair(lam, mu, rs)
    if M is None or L.coords == M.coords or not same_root_class(L, M, rs):
        return set()
    s = _Solver(rs, L.coords, M.coords)
    {"A": _fast_a, "B": _fast_bc, "C": _fast_bc, "D": _fast_d}[rs.family](s)
    return _collect(rs, s.found)


def s_set(lam: Weight, mu: Weight, rs: RootSystem, oracle: bool = False) -> set[SSetEntry]:
    return s_set_bruteforce(lam, mu, rs) if oracle else s_set_fast(lam, mu, rs)


def _entries(sset: set[SSetEntry]) -> list[RootSetEntry]:
    out = [RootSetEntry(e.gamma, w, n) for e in sset for (w, n) in e.solutions]
    return sorted(out, key=lambda e: (e.gamma.coords, e.n), reverse=True)


def u_set(lam: Weight, mu: Weight, rs: RootSystem, oracle: bool = False) -> list[RootSetEntry]:
    """U(lambda, mu): (gamma, w, n) with lambda - n gamma = w.mu, n < 0 or n > <lambda+rho, gamma^vee>."""
    if not strictly_below(lam, mu, rs):
        return []
    out = _entries(s_set(lam, mu, rs, oracle))
    L = rs.shift(lam)
    for e in out:
        if 0 <= e.n <= pairing(L, e.gamma):
            raise ConsistencyError(f"U-entry with n={e.n} inside [0, <lambda+rho, gamma^vee>]")
    return out


def v_set(lam: Weight, mu: Weight, rs: RootSystem, oracle: bool = False) -> list[RootSetEntry]:
    """V(lambda, mu): (beta, x, m) with mu - m beta = x.lambda, 0 < m < <mu+rho, beta^vee>."""
    if not strictly_below(lam, mu, rs):
        return []
    out = _entries(s_set(mu, lam, rs, oracle))
    M = rs.shift(mu)
    for e in out:
        if not 0 < e.n < pairing(M, e.gamma):
            raise ConsistencyError(f"V-entry with m={e.n} outside (0, <mu+rho, beta^vee>)")
    return out


def _transport(rs: RootSystem, entry: RootSetEntry) -> RootSetEntry:
    # (gamma, w, n) -> (+-w^-1 gamma, w^-1, -+n); the same rule inverts itself
    winv = entry.w.inverse()
    image = winv.act(entry.gamma.coords)
    if rs.is_positive(image):
        return RootSetEntry(rs.root_by_coords(image), winv, -entry.n)
    return RootSetEntry(rs.root_by_coords(tuple(-c for c in image)), winv, entry.n)


def check_u_entry(lam: Weight, mu: Weight, rs: RootSystem, e: RootSetEntry) -> bool:
    L, M = rs.shift(lam), rs.shift(mu)
    if rs.family == "A":
        M = _align_type_a(L, M)
        if M is None:
            return False
    if not e.w.belongs_to(rs.family) or not rs.is_positive(e.gamma.coords):
        return False
    lhs = tuple(l - e.n * g for l, g in zip(L.coords, e.gamma.coords))
    r = pairing(L, e.gamma)
    return lhs == e.w.act(M.coords) and (e.n < 0 or e.n > r)


def check_v_entry(lam: Weight, mu: Weight, rs: RootSystem, e: RootSetEntry) -> bool:
    L, M = rs.shift(lam), rs.shift(mu)
    if rs.family == "A":
        L = _align_type_a(M, L)
        if L is None:
            return False
    if not e.w.belongs_to(rs.family) or not rs.is_positive(e.gamma.coords):
        return False
    lhs = tuple(c - e.n * g for c, g in zip(M.coords, e.gamma.coords))
    return lhs == e.w.act(L.coords) and 0 < e.n < pairing(M, e.gamma)


def uv_bijection(entry: RootSetEntry, lam: Weight, mu: Weight, rs: RootSystem) -> RootSetEntry:
    """Map a U(lambda, mu) entry to the matching V(lambda, mu) entry (x = w^-1, m = +-n)."""
    if not check_u_entry(lam, mu, rs, entry):
        raise ValueError(f"not an element of U({lam}, {mu}): {entry}")
    out = _transport(rs, entry)
    if not check_v_entry(lam, mu, rs, out):
        raise ConsistencyError(f"image {out} of {entry} is not in V")
    return out


def vu_bijection(entry: RootSetEntry, lam: Weight, mu: Weight, rs: RootSystem) -> RootSetEntry:
    """Inverse of uv_bijection."""
    if not check_v_entry(lam, mu, rs, entry):
        raise ValueError(f"not an element of V({lam}, {mu}): {entry}")
    out = _transport(rs, entry)
    if not check_u_entry(lam, mu, rs, out):
        raise ConsistencyError(f"image {out} of {entry} is not in U")
    return out
