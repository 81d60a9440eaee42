"""Randomized differential checks behind ``jantzen verify``.

Every suite is seeded, so a given (suite, seed, max_rank, trials) always
visits the same instances. Failures carry a CLI command that replays the
offending instance.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from . import oracles
from .arith import (ConsistencyError, QuantumSpec, divisor_of_binomial, divisor_of_int,
                    divq_gaussian_binomial, divq_gaussian_int, divq_gaussian_int_d)
from .chars import expand_combination, expand_weights
from .rootsets import (s_set_bruteforce, s_set_fast, strictly_below, u_set, uv_bijection, v_set,
                       vu_bijection)
from .rootsys import MIN_RANK, RootSystem, Weight, build_root_system, pairing
from .sumformulas import (TiltingCharacter, divT_Q, euler_delta, euler_q, jantzen_sum, jantzen_sum_by_scan,
                          jantzen_sum_quantum, jantzen_sum_quantum_by_scan, rank1_cokernel_divisors,
                          tilting_sum, tilting_sum_quantum)
from .weylact import dominant_reduce, reduce_coords, reflection

SUITES = ("arith", "reduce", "rootsets", "euler", "sums", "quantum")


@dataclass(frozen=True)
class Failure:
    suite: str
    check: str
    detail: str
    reproducer: str

    def to_json(self) -> dict:
        return {"suite": self.suite, "check": self.check, "detail": self.detail, "reproducer": self.reproducer}


@dataclass
class Report:
    counts: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: Report) -> None:
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v
        self.failures.extend(other.failures)

    def to_text(self) -> str:
        lines = [f"{name}: {n} instances" for name, n in sorted(self.counts.items())]
        lines.append(f"failures: {len(self.failures)}")
        for f in sorted(self.failures, key=lambda f: (f.suite, f.check, f.reproducer)):
            lines.append(f"  [{f.suite}/{f.check}] {f.detail}")
            lines.append(f"    reproduce: {f.reproducer}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        fails = sorted(self.failures, key=lambda f: (f.suite, f.check, f.reproducer))
        return {"ok": self.ok, "counts": dict(sorted(self.counts.items())),
                "failures": [f.to_json() for f in fails]}


class _Run:
    def __init__(self, suite: str):
        self.suite = suite
        self.report = Report()

    def count(self, check: str, n: int = 1) -> None:
        key = f"{self.suite}.{check}"
        self.report.counts[key] = self.report.counts.get(key, 0) + n

    def check(self, check: str, ok: bool, detail: str | Callable[[], str], reproducer: str = "") -> None:
        self.count(check)
        if not ok:
            text = detail() if callable(detail) else detail
            self.report.failures.append(Failure(self.suite, check, text, reproducer))

    def guard(self, check: str, fn: Callable[[], object], reproducer: str):
        try:
            return fn()
        except (ConsistencyError, ArithmeticError, ValueError) as exc:
            self.count(check)
            self.report.failures.append(Failure(self.suite, check, f"{type(exc).__name__}: {exc}", reproducer))
            return None


# -- instance generation ------------------------------------------------------

def families(max_rank: int) -> Iterator[RootSystem]:
    top = {"A": 4, "B": 4, "C": 4, "D": 4}
    for fam in ("A", "B", "C", "D"):
        for rank in range(MIN_RANK[fam], min(max_rank, top[fam]) + 1):
            yield build_root_system(fam, rank)


def rng_for(seed: int, *labels) -> random.Random:
    return random.Random(":".join(str(x) for x in (seed,) + labels))


def random_dominant(rs: RootSystem, rng: random.Random, bound: int = 12) -> Weight:
    """Random regular dominant rho-shifted weight with coordinates of size <= bound."""
    while True:
        half = rs.family in "BD" and rng.random() < 0.3
        c = [Fraction(rng.randint(-bound, bound)) + (Fraction(1, 2) if half else 0) for _ in range(rs.m)]
        if half:
            c = [x if abs(x) <= bound else x - 1 for x in c]
        res = reduce_coords(c, rs.family)
        if res is None:
            continue
        return Weight(res[0], True)


def random_below(rs: RootSystem, M: Weight, rng: random.Random, bound: int = 12) -> Weight | None:
    """Reduce M - k beta for random beta, k; lands in the same root-lattice class."""
    beta = rng.choice(rs.positive_roots)
    k = rng.randint(-bound, bound)
    res = reduce_coords([a - k * b for a, b in zip(M.coords, beta.coords)], rs.family)
    return None if res is None else Weight(res[0], True)


def random_pairs(rs: RootSystem, rng: random.Random, trials: int, bound: int = 12):
    """Yield ``trials`` pairs (L, M) of distinct shifted dominant weights.

    Half of them are reflection partners, which is where S-sets are nonempty.
    """
    made = 0
    i = 0
    while made < trials:
        i += 1
        M = random_dominant(rs, rng, bound)
        L = random_below(rs, M, rng, bound) if i % 2 else random_dominant(rs, rng, bound)
        if L is None or L == M or max(abs(x) for x in L.coords) > bound:
            continue
        made += 1
        yield L, M


def _coords(c) -> str:
    return ",".join(str(x) for x in c)


def _repro(cmd: str, rs: RootSystem, **weights) -> str:
    parts = [f"jantzen {cmd} --family {rs.family} --rank {rs.rank}"]
    for name, w in weights.items():
        if isinstance(w, Weight):
            parts.append(f"--{name}-rho {_coords(w.coords)}" if w.shifted else f"--{name} {_coords(w.coords)}")
        else:
            parts.append(f"--{name} {w}")
    return " ".join(parts)


# -- suites ---------------------------------------------------------------------

def suite_arith(seed: int, max_rank: int, trials: int) -> Report:
    run = _Run("arith")
    for r in range(0, 101):
        for m in range(1, r + 1):
            lhs = divisor_of_binomial(r, m) - divisor_of_binomial(r, r + 1 - m)
            rhs = divisor_of_int(r + 1 - m) - divisor_of_int(m)
            run.check("binomial-identity", lhs == rhs, f"r={r}, m={m}: {lhs} != {rhs}", "")
    for r in range(0, 41):
        got = rank1_cokernel_divisors(r)
        want = [(j, divisor_of_int(math.comb(r, j))) for j in range(1, r)]
        run.check("rank1-cokernel", got == want, f"r={r}", "")
    return run.report


def suite_quantum_arith(run: _Run) -> None:
    for l in (3, 5, 7, 9, 15):
        for char in (0, 2, 3, 5, 7):
            if char and l % char == 0:
                continue
            spec = QuantumSpec(l, char)
            for m in range(1, 61):
                for d in (1, 2):
                    got = divq_gaussian_int(m, spec) if d == 1 else divq_gaussian_int_d(m, d, spec)
                    want = oracles.divq_int_oracle(m, spec, d)
                    run.check("divq-int", got == want, f"[{m}]_{d} at l={l}, char={char}: {got} != {want}", "")
    for l in (3, 5):
        for char in (0, 7):
            spec = QuantumSpec(l, char)
            for r in range(0, 21):
                for j in range(r + 1):
                    for d in (1, 2):
                        got = divq_gaussian_binomial(r, j, d, spec)
                        want = oracles.divq_binomial_oracle(r, j, d, spec)
                        run.check("divq-binomial", got == want,
                                  f"[{r} choose {j}]_{d} at l={l}, char={char}: {got} != {want}", "")


def suite_reduce(seed: int, max_rank: int, trials: int) -> Report:
    run = _Run("reduce")
    for rs in families(max_rank):
        rng = rng_for(seed, "reduce", rs.name)
        for _ in range(trials):
            half = rs.family in "BD" and rng.random() < 0.3
            c = tuple(Fraction(rng.randint(-8, 8)) + (Fraction(1, 2) if half else 0) for _ in range(rs.m))
            x = Weight(c, True)
            fast = dominant_reduce(x, rs.family)
            slow = oracles.reduce_by_scan(x, rs)
            repro = f"{rs.name} x+rho=({_coords(c)})"
            ok = fast.dominant == slow.dominant and fast.det == slow.det
            if ok and not fast.singular:
                ok = fast.witness.belongs_to(rs.family) and fast.witness.act(c) == fast.dominant.coords
            run.check("reduce-vs-scan", ok, lambda: f"{repro}: fast {fast} vs scan {slow}", repro)
    return run.report


def _v_pairing_ok(rs: RootSystem, M: Weight, entries) -> bool:
    by_beta: dict = {}
    for e in entries:
        by_beta.setdefault(e.gamma, []).append(e)
    for beta, es in by_beta.items():
        if len(es) != 2:
            return False
        r = pairing(M, beta)
        (x1, m1), (x2, m2) = ((e.w, e.n) for e in es)
        if m1 + m2 != r:
            return False
        s = reflection(rs, beta.coords)
        if s * x1 != x2:
            return False
    return True


def _card_bounds(rs: RootSystem) -> set[int]:
    if rs.family == "A":
        return {0, 2}
    if rs.family == "D" or rs.rank == 2:
        return {0, 2, 4}
    return {0, 2, 4, 6}


def suite_rootsets(seed: int, max_rank: int, trials: int) -> Report:
    run = _Run("rootsets")
    for rs in families(max_rank):
        rng = rng_for(seed, "rootsets", rs.name)
        for L, M in random_pairs(rs, rng, trials):
            lam, mu = rs.unshift(L), rs.unshift(M)
            repro = _repro("rootsets", rs, **{"lambda": L, "mu": M})
            fast = run.guard("fast-vs-brute", lambda: s_set_fast(lam, mu, rs), repro)
            if fast is None:
                continue
            brute = s_set_bruteforce(lam, mu, rs)
            run.check("fast-vs-brute", fast == brute, lambda: f"fast {sorted(map(str, fast))} != brute {sorted(map(str, brute))}", repro)
            # both orders, so the pair lands in U/V whichever way dominance goes
            for a, b, A, B in ((lam, mu, L, M), (mu, lam, M, L)):
                rep = _repro("rootsets", rs, **{"lambda": A, "mu": B})
                U = run.guard("uv", lambda: u_set(a, b, rs), rep)
                V = run.guard("uv", lambda: v_set(a, b, rs), rep)
                if U is None or V is None:
                    continue
                run.check("emptiness", not U or strictly_below(a, b, rs), "U nonempty but lambda not below mu", rep)
                run.check("cardinality", len(V) in _card_bounds(rs) and len(V) == len(U), f"|U|={len(U)}, |V|={len(V)}", rep)
                run.check("pairing", _v_pairing_ok(rs, B, V), "V_beta does not split into (x,m), (s_beta x, r-m)", rep)
                images = []
                for e in U:
                    img = run.guard("bijection", lambda: uv_bijection(e, a, b, rs), rep)
                    if img is not None:
                        back = vu_bijection(img, a, b, rs)
                        run.check("bijection", back == e and img.w == e.w.inverse() and abs(img.n) == abs(e.n),
                                  f"{e} -> {img} -> {back}", rep)
                        images.append(img)
                run.check("bijection", sorted(map(_key, images)) == sorted(map(_key, V)), "U -> V is not onto", rep)
    return run.report


def _key(e):
    return (e.gamma.coords, e.w.perm, e.w.signs, e.n)


def suite_euler(seed: int, max_rank: int, trials: int) -> Report:
    run = _Run("euler")
    for rs in families(max_rank):
        rng = rng_for(seed, "euler", rs.name)
        for L, M in random_pairs(rs, rng, trials):
            lam, mu = rs.unshift(L), rs.unshift(M)
            if not strictly_below(lam, mu, rs):
                lam, mu, L, M = mu, lam, M, L
            repro = _repro("euler", rs, **{"lambda": L, "mu": M})
            d = run.guard("routes", lambda: euler_delta(lam, mu, rs, "both"), repro)
            if d is None:
                continue
            run.count("routes")
            q = euler_q(lam, mu, rs)
            run.check("complementarity", (q + d).is_zero(), f"euler_q {q} + euler_delta {d} != 0", repro)
        run.check("diagonal", euler_delta(rs.weight([0] * rs.m), rs.weight([0] * rs.m), rs, "both").is_zero(),
                  "e_lambda(Delta(lambda)) != 0", "")
    A1 = build_root_system("A", 1)
    for mu in range(0, 61):
        want = oracles.sl2_cokernel_oracle(mu)
        got = divT_Q(A1.weight((mu,)), A1)
        primes = set(want) | {p for _, c in got.items() for p in c.primes()}
        ok = all({k[0]: v for k, v in got.map(lambda c, p=p: c.nu(p)).as_dict().items()} == want.get(p, {})
                 for p in primes)
        run.check("sl2-cokernel", ok, f"divT_Q({mu}) = {got.to_text()}", f"jantzen divt --family A --rank 1 --weight {mu}")
    return run.report


def _small_dominants(rs: RootSystem, bound: int = 8):
    """All dominant unshifted weights with coordinates in [0, bound] (A: last coordinate 0)."""
    out = []
    grids = [range(0, bound + 1)]
    if rs.family in "BD":
        grids.append([Fraction(2 * k + 1, 2) for k in range(bound)])
    for grid in grids:
        for c in itertools.product(grid, repeat=rs.m):
            if rs.family == "A" and c[-1] != 0:
                continue
            if any(c[i] < c[i + 1] for i in range(rs.m - 1)):
                continue
            try:
                out.append(rs.weight(c))
            except ValueError:
                continue
    return out


def _positivity(run: _Run, name: str, rs: RootSystem, mu: Weight, combo, repro: str) -> None:
    e = expand_combination(combo)
    run.check(f"{name}-positivity", all(v >= 0 for v in e.values()), f"negative weight multiplicity in {combo.to_text()}", repro)
    run.check(f"{name}-support", all(strictly_below(k, mu, rs) for k in combo.highest_weights()),
              f"support not strictly below mu in {combo.to_text()}", repro)


def suite_sums(seed: int, max_rank: int, trials: int) -> Report:
    run = _Run("sums")
    A1 = build_root_system("A", 1)
    for mu in range(0, 61):
        for p in (2, 3, 5, 7):
            got = {k[0]: v for k, v in jantzen_sum(A1.weight((mu,)), p, A1).combo.as_dict().items()}
            want = oracles.sl2_jantzen_oracle(mu, p)
            run.check("sl2-elementary-divisors", got == want, f"mu={mu}, p={p}: {got} != {want}",
                      f"jantzen sum-weyl --family A --rank 1 --weight {mu} --p {p}")
    for rs in (build_root_system("A", 1), build_root_system("A", 2), build_root_system("B", 2)):
        for mu in _small_dominants(rs):
            for p in (2, 3, 5):
                repro = _repro("sum-weyl", rs, weight=mu, p=p) + " --expand"
                res = jantzen_sum(mu, p, rs).combo
                _positivity(run, "weyl", rs, mu, res, repro)
    for rs in families(min(max_rank, 3)):
        rng = rng_for(seed, "sums", rs.name)
        for _ in range(max(trials // 4, 1)):
            M = random_dominant(rs, rng, 10)
            mu = rs.unshift(M)
            p = rng.choice((2, 3, 5))
            repro = _repro("sum-weyl", rs, weight=M, p=p)
            run.check("scan-vs-euler", jantzen_sum(mu, p, rs).combo == jantzen_sum_by_scan(mu, p, rs), "routes differ", repro)
    for rs in families(min(max_rank, 3)):
        rng = rng_for(seed, "chars", rs.name)
        for _ in range(max(trials // 20, 1)):
            lam = rs.unshift(random_dominant(rs, rng, 5))
            got = dict(expand_weights(lam, rs))
            want = oracles.weyl_character(lam, rs)
            if rs.family == "A":
                want = {tuple(c - k[-1] for c in k): v for k, v in want.items()}
            run.check("freudenthal-vs-weyl", got == want, f"chi({lam}) expansions differ", _repro("expand", rs, weight=lam))
    _tilting_checks(run, seed, trials)
    return run.report


def _random_tilting(rs: RootSystem, rng: random.Random) -> tuple[Weight, TiltingCharacter]:
    lam = rs.unshift(random_dominant(rs, rng, 7))
    factors = {}
    for _ in range(rng.randint(1, 4)):
        factors[rs.unshift(random_dominant(rs, rng, 7))] = rng.randint(1, 3)
    return lam, TiltingCharacter.from_mapping(rs, factors)


def _factors_arg(rs: RootSystem, Q: TiltingCharacter) -> str:
    return '"' + ",".join(f"{'/'.join(str(x) for x in k.coords)}:{v}" for k, v in Q.highest_weights()) + '"'


def _tilting_checks(run: _Run, seed: int, trials: int) -> None:
    for fam, rank in (("A", 1), ("A", 2), ("A", 3), ("B", 2)):
        rs = build_root_system(fam, rank)
        rng = rng_for(seed, "tilting", rs.name)
        for _ in range(trials):
            lam, Q = _random_tilting(rs, rng)
            p = rng.choice((2, 3))
            repro = _repro("sum-tilting", rs, **{"lambda": lam}, p=p, factors=_factors_arg(rs, Q))
            run.guard("tilting-routes", lambda: tilting_sum(lam, Q, p, rs, "both"), repro)
            run.count("tilting-routes")
        single = TiltingCharacter.from_mapping(rs, {lam: 1})
        run.check("tilting-degenerate", tilting_sum(lam, single, 2, rs).value == 0, "single factor gives nonzero",
                  _repro("sum-tilting", rs, **{"lambda": lam}, p=2, factors=_factors_arg(rs, single)))
    A1 = build_root_system("A", 1)
    for p in (2, 3, 5):
        for n in range(0, 30):
            Q = TiltingCharacter.from_mapping(A1, {A1.weight((k,)): v for k, v in oracles.sl2_tilting_factors(n, p).items()})
            for lam, _ in Q.highest_weights():
                val = tilting_sum(lam, Q, p, A1).value
                run.check("tilting-nonnegative", val >= 0, f"T({n}), p={p}, lambda={lam}: {val}",
                          _repro("sum-tilting", A1, **{"lambda": lam}, p=p, factors=_factors_arg(A1, Q)))


def suite_quantum(seed: int, max_rank: int, trials: int) -> Report:
    run = _Run("quantum")
    suite_quantum_arith(run)
    A1 = build_root_system("A", 1)
    for mu in range(0, 41):
        for l in (3, 5):
            for char in (0, 7):
                spec = QuantumSpec(l, char)
                got = {k[0]: v for k, v in jantzen_sum_quantum(A1.weight((mu,)), spec, A1).combo.as_dict().items()}
                want = oracles.sl2_jantzen_quantum_oracle(mu, spec)
                run.check("sl2-gaussian", got == want, f"mu={mu}, l={l}, char={char}: {got} != {want}",
                          f"jantzen sum-weyl-q --family A --rank 1 --weight {mu} --l {l} --char {char}")
    for rs in (build_root_system("A", 1), build_root_system("A", 2), build_root_system("B", 2)):
        for mu in _small_dominants(rs):
            for l in (3, 5):
                spec = QuantumSpec(l)
                res = jantzen_sum_quantum(mu, spec, rs).combo
                repro = _repro("sum-weyl-q", rs, weight=mu, l=l, char=0) + " --expand"
                _positivity(run, "quantum", rs, mu, res, repro)
                run.check("quantum-scan", res == jantzen_sum_quantum_by_scan(mu, spec, rs), "routes differ", repro)
    for fam, rank in (("A", 1), ("A", 2), ("B", 2)):
        rs = build_root_system(fam, rank)
        rng = rng_for(seed, "qtilting", rs.name)
        for _ in range(max(trials // 2, 1)):
            lam, Q = _random_tilting(rs, rng)
            spec = QuantumSpec(rng.choice((3, 5)), rng.choice((0, 7)))
            repro = _repro("sum-tilting-q", rs, **{"lambda": lam}, l=spec.l, char=spec.char, factors=_factors_arg(rs, Q))
            run.guard("tilting-routes", lambda: tilting_sum_quantum(lam, Q, spec, rs, "both"), repro)
            run.count("tilting-routes")
    return run.report


_SUITES: dict[str, Callable[[int, int, int], Report]] = {
    "arith": suite_arith,
    "reduce": suite_reduce,
    "rootsets": suite_rootsets,
    "euler": suite_euler,
    "sums": suite_sums,
    "quantum": suite_quantum,
}


def verify_suite(name: str, seed: int = 0, max_rank: int = 4, trials: int = 200) -> Report:
    if name == "all":
        report = Report()
        for s in SUITES:
            report.merge(_SUITES[s](seed, max_rank, trials))
        return report
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    return _SUITES[name](seed, max_rank, trials)
