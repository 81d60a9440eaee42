"""Acceptance criteria AC-1 .. AC-12.

Each test prints one PASS/FAIL line with its wall time; the lines are
collected again in the terminal summary.
"""

import math
import time

import pytest

from conftest import ACCEPTANCE_LINES
from jantzen import oracles
from jantzen.arith import QuantumSpec, divisor_of_binomial, divisor_of_int, divq_gaussian_int
from jantzen.chars import expand_combination, expand_weights
from jantzen.rootsets import s_set, s_set_bruteforce, s_set_fast, strictly_below, u_set, uv_bijection, v_set, vu_bijection
from jantzen.rootsys import build_root_system, pairing
from jantzen.sumformulas import TiltingCharacter, euler_delta, jantzen_sum, jantzen_sum_quantum, tilting_sum
from jantzen.verify import _card_bounds, _small_dominants, random_dominant, random_pairs, rng_for
from jantzen.weylact import reflection


@pytest.fixture
def record(capsys):
    def _record(label, ok, elapsed, limit=None, detail=""):
        within = limit is None or elapsed < limit
        verdict = "PASS" if ok and within else "FAIL"
        budget = f" (limit {limit} s)" if limit is not None else ""
        line = f"{label}: {verdict} in {elapsed:.2f} s{budget}" + (f"; {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, detail
        assert within, f"took {elapsed:.2f} s, limit {limit} s"
    return _record


def _roots(entries):
    return {e.gamma.coords for e in entries}


def test_ac01_b3_example(record):
    B3 = build_root_system("B", 3)
    t = time.perf_counter()
    S = s_set(B3.weight((5, 3, 2), True), B3.weight((3, 2, 1), True), B3)
    dt = time.perf_counter() - t
    want = {(1, 0, 0), (1, 1, 0), (1, 0, 1)}
    record("AC-1", _roots(S) == want and len(S) == 3, dt, 0.1, f"|S| = {len(S)}")


def test_ac02_d4_example(record):
    D4 = build_root_system("D", 4)
    lam, mu = D4.weight((5, 3, 2, 0), True), D4.weight((3, 2, 1, 0), True)
    t = time.perf_counter()
    S = s_set(lam, mu, D4)
    dt = time.perf_counter() - t
    brute = s_set_bruteforce(lam, mu, D4)
    record("AC-2", len(S) == 2 and S == brute, dt, 0.1, f"|S| = {len(S)}")


FAMILIES = [("A", r) for r in range(1, 5)] + [("B", r) for r in range(2, 5)] \
    + [("C", r) for r in range(2, 5)] + [("D", r) for r in range(3, 5)]
PAIRS_PER_FAMILY = 200


@pytest.fixture(scope="module")
def sweep():
    """One pass over the random pairs; AC-3, AC-4 and AC-5 read from it."""
    mism = {"fast-vs-brute": [], "routes": [], "bijection": [], "pairing": [], "cardinality": []}
    counts = {}
    t = time.perf_counter()
    for fam, rank in FAMILIES:
        rs = build_root_system(fam, rank)
        rng = rng_for(2024, "acceptance", rs.name)
        n = 0
        for L, M in random_pairs(rs, rng, PAIRS_PER_FAMILY, bound=12):
            n += 1
            lam, mu = rs.unshift(L), rs.unshift(M)
            if s_set_fast(lam, mu, rs) != s_set_bruteforce(lam, mu, rs):
                mism["fast-vs-brute"].append((rs.name, L, M))
            if not strictly_below(lam, mu, rs):
                lam, mu, L, M = mu, lam, M, L
            U, V = u_set(lam, mu, rs), v_set(lam, mu, rs)
            if euler_delta(lam, mu, rs, "V") != euler_delta(lam, mu, rs, "U"):
                mism["routes"].append((rs.name, L, M))
            images = []
            for e in U:
                img = uv_bijection(e, lam, mu, rs)
                ok = img.w == e.w.inverse() and img.n in (e.n, -e.n) and vu_bijection(img, lam, mu, rs) == e
                if not ok:
                    mism["bijection"].append((rs.name, L, M))
                images.append(img)
            if set(images) != set(V) or len(images) != len(V):
                mism["bijection"].append((rs.name, L, M))
            by_beta = {}
            for e in V:
                by_beta.setdefault(e.gamma, []).append(e)
            for beta, es in by_beta.items():
                r = pairing(M, beta)
                if len(es) != 2 or es[0].n + es[1].n != r or reflection(rs, beta.coords) * es[0].w != es[1].w:
                    mism["pairing"].append((rs.name, L, M))
            if len(V) not in _card_bounds(rs) or len(U) != len(V):
                mism["cardinality"].append((rs.name, L, M, len(V)))
        counts[rs.name] = n
    return mism, counts, time.perf_counter() - t


def test_ac03_fast_vs_bruteforce(record, sweep):
    mism, counts, dt = sweep
    ok = not mism["fast-vs-brute"] and all(n >= PAIRS_PER_FAMILY for n in counts.values())
    record("AC-3", ok, dt, 60, f"{sum(counts.values())} pairs, {len(mism['fast-vs-brute'])} mismatches")


def test_ac04_uv_bijection(record, sweep):
    mism, counts, dt = sweep
    bad = len(mism["routes"]) + len(mism["bijection"])
    record("AC-4", bad == 0, dt, None, f"{bad} mismatches")


def test_ac05_structural(record, sweep):
    mism, counts, dt = sweep
    bad = len(mism["pairing"]) + len(mism["cardinality"])
    record("AC-5", bad == 0, dt, None, f"{bad} violations")


def test_ac06_sl2_elementary_divisors(record):
    A1 = build_root_system("A", 1)
    bad = []
    t = time.perf_counter()
    for mu in range(0, 61):
        for p in (2, 3, 5, 7):
            got = {k[0]: v for k, v in jantzen_sum(A1.weight((mu,)), p, A1).combo.as_dict().items()}
            if got != oracles.sl2_jantzen_oracle(mu, p):
                bad.append((mu, p))
    dt = time.perf_counter() - t
    record("AC-6", not bad, dt, 5, f"{len(bad)} mismatches")


SWEEP_SYSTEMS = (("A", 1), ("A", 2), ("B", 2))


def _ac7_sweep():
    negative, outside = [], []
    n = 0
    for fam, rank in SWEEP_SYSTEMS:
        rs = build_root_system(fam, rank)
        for mu in _small_dominants(rs, 8):
            results = [("p", p, jantzen_sum(mu, p, rs).combo) for p in (2, 3)]
            results += [("l", l, jantzen_sum_quantum(mu, QuantumSpec(l), rs).combo) for l in (3, 5)]
            for kind, val, combo in results:
                n += 1
                if any(v < 0 for v in expand_combination(combo).values()):
                    negative.append((rs.name, mu, kind, val))
                if not all(strictly_below(k, mu, rs) for k in combo.highest_weights()):
                    outside.append((rs.name, mu, kind, val))
    return n, negative, outside


@pytest.fixture(scope="module")
def positivity_sweep():
    t = time.perf_counter()
    res = _ac7_sweep()
    return res + (time.perf_counter() - t,)


def test_ac07_positivity(record, positivity_sweep):
    n, negative, _, dt = positivity_sweep
    record("AC-7", not negative, dt, 120, f"{n} sums, {len(negative)} violations")


def test_ac08_support(record, positivity_sweep):
    n, _, outside, dt = positivity_sweep
    record("AC-8", not outside, dt, None, f"{n} sums, {len(outside)} violations")


def test_ac09_binomial_identity(record):
    bad = []
    t = time.perf_counter()
    for r in range(0, 101):
        for m in range(1, r + 1):
            lhs = divisor_of_binomial(r, m) - divisor_of_binomial(r, r + 1 - m)
            rhs = divisor_of_int(r + 1 - m) - divisor_of_int(m)
            if lhs != rhs:
                bad.append((r, m))
    # the formal identity, checked against plain integers as well
    for r in range(1, 101):
        for m in range(1, r + 1):
            if math.comb(r, m) * m != math.comb(r, r + 1 - m) * (r + 1 - m):
                bad.append((r, m, "int"))
    dt = time.perf_counter() - t
    record("AC-9", not bad, dt, None, f"{len(bad)} failures")


def test_ac10_quantum_divisor_oracle(record):
    bad = []
    t = time.perf_counter()
    for l in (3, 5, 7, 9, 15):
        for char in (0, 3, 5, 7):
            if char and l % char == 0:
                continue
            spec = QuantumSpec(l, char)
            for m in range(1, 61):
                if divq_gaussian_int(m, spec) != oracles.divq_int_oracle(m, spec):
                    bad.append((l, char, m))
    dt = time.perf_counter() - t
    record("AC-10", not bad, dt, 30, f"{len(bad)} mismatches")


def test_ac11_tilting_routes(record):
    bad = []
    t = time.perf_counter()
    n = 0
    for fam, rank in (("A", 1), ("A", 2), ("A", 3), ("B", 2)):
        rs = build_root_system(fam, rank)
        rng = rng_for(7, "acceptance-tilting", rs.name)
        for _ in range(100):
            lam = rs.unshift(random_dominant(rs, rng, 7))
            factors = {rs.unshift(random_dominant(rs, rng, 7)): rng.randint(1, 3) for _ in range(rng.randint(1, 4))}
            Q = TiltingCharacter.from_mapping(rs, factors)
            p = rng.choice((2, 3))
            direct = tilting_sum(lam, Q, p, rs, "direct").value
            euler = tilting_sum(lam, Q, p, rs, "euler").value
            n += 1
            if direct != euler:
                bad.append((rs.name, lam, Q, p))
        single = TiltingCharacter.from_mapping(rs, {lam: 1})
        if tilting_sum(lam, single, 2, rs).value != 0:
            bad.append((rs.name, "degenerate"))
    A1 = build_root_system("A", 1)
    T4 = TiltingCharacter.from_mapping(A1, {A1.weight((4,)): 1, A1.weight((0,)): 1})
    hand = tilting_sum(A1.weight((0,)), T4, 3, A1).value
    dt = time.perf_counter() - t
    record("AC-11", not bad and hand == 1, dt, None, f"{n} instances, {len(bad)} mismatches, T(4) example = {hand}")


def test_ac12_performance(record):
    B4 = build_root_system("B", 4)
    t = time.perf_counter()
    mu = B4.weight((8, 6, 4, 2), True)
    res = jantzen_sum(mu, 2, B4)
    expansion = expand_combination(res.combo)
    top = expand_weights(B4.unshift(mu), B4)
    dt = time.perf_counter() - t
    ok = all(v >= 0 for v in expansion.values()) and sum(top.values()) > 0
    record("AC-12", ok, dt, 5, f"sum = {res.to_text()}, dim chi(mu) = {sum(top.values())}")
