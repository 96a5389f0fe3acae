"""Structured self-checks tying the independent routes together.

Each check returns a CheckResult rather than raising, so the CLI can
report every failure; the test suite asserts on .passed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import counting, density, dirichlet
from .torsor import EDGES, coprimality_full, coprimality_reduced

__all__ = [
    "CheckResult",
    "check_bijection",
    "check_coprimality_equiv",
    "check_g2_scaling",
    "check_height_bounds",
    "check_local_factor_oracle",
    "check_theta_consistency",
    "run_all",
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def __bool__(self) -> bool:
        return self.passed


def _timed(name: str, fn) -> CheckResult:
    t0 = time.perf_counter()
    passed, detail = fn()
    return CheckResult(name, passed, detail, time.perf_counter() - t0)


def check_bijection(B: int = 100, *, workers: int | None = None) -> CheckResult:
    """Both engines agree and the torsor images are duplicate-free."""

    def run():
        r = counting.verify_bijection(B, workers=workers)
        if r.equal:
            return True, f"B={B}: {r.n_naive} points from both engines, no duplicates"
        return False, f"B={B}: mismatch at {r.first_mismatch()}"

    return _timed("bijection", run)


def check_coprimality_equiv(
    height_bound: int = 50,
    box_bound: int = 10,
    edges: frozenset = EDGES,
) -> CheckResult:
    """Graph-derived coprimality == reduced conditions on equation solutions.

    Runs over every torsor-equation solution of image height <= the
    height bound, and every solution with all coordinates in the box.
    The edges parameter exists for fault injection: dropping an edge
    must make this check fail.
    """

    def run():
        n = 0
        for t in counting.equation_solutions(height_bound):
            n += 1
            if coprimality_full(t, edges) != coprimality_reduced(t):
                return False, f"mismatch at {tuple(t)} (height scan)"
        m = 0
        for t in counting.equation_solutions_box(box_bound):
            m += 1
            if coprimality_full(t, edges) != coprimality_reduced(t):
                return False, f"mismatch at {tuple(t)} (box scan)"
        return True, f"{n} height-bounded and {m} box solutions agree"

    return _timed("coprimality-equivalence", run)


def check_height_bounds(B: int = 1000, *, workers: int | None = None) -> CheckResult:
    """The two necessary bounds and the identities behind them.

    For every enumerated solution: x1 + x4 = -(e1 e2 e3^2 e4^2 e5^2 e6)
    and x3 + x5 = -(e3 e4^2 e5^3 e6^2) exactly, and both right sides are
    at most 2B in absolute value.
    """

    def run():
        res = counting.count_torsor(B, workers=workers, collect=True)
        if res.solutions is None:
            return False, "retention cap exceeded"
        from .torsor import TorsorPoint, psi

        for s in res.solutions:
            e1, e2, e3, e4, e5, e6, _, _ = s
            t = TorsorPoint(*s)
            p = psi(t)
            b1 = e1 * e2 * e3**2 * e4**2 * e5**2 * e6
            b2 = e3 * e4**2 * e5**3 * e6**2
            if p.x1 + p.x4 != -b1 or p.x3 + p.x5 != -b2:
                return False, f"identity failed at {s}"
            if abs(b1) > 2 * B or b2 > 2 * B:
                return False, f"bound failed at {s}"
        return True, f"B={B}: {res.count} solutions satisfy both bounds"

    return _timed("height-bounds", run)


def check_theta_consistency(bound: int = 30) -> CheckResult:
    """theta == theta2a == theta2b exactly on the coprime eta box.

    The identity only holds when eta1, eta2, eta4 are pairwise coprime,
    which is also when theta is nonzero.  Caches are cleared per stratum
    to bound memory on the full box.
    """

    def run():
        from math import gcd

        n = 0
        for e1 in range(1, bound + 1):
            for e2 in range(1, bound + 1):
                if gcd(e1, e2) != 1:
                    continue
                for e4 in range(1, bound + 1):
                    if gcd(e4, e1) != 1 or gcd(e4, e2) != 1:
                        continue
                    for e3 in range(1, bound + 1):
                        eta = (e1, e2, e3, e4)
                        t = dirichlet.theta(eta)
                        if t != dirichlet.theta2a(eta) or t != dirichlet.theta2b(eta):
                            return False, f"mismatch at eta={eta}"
                        n += 1
            dirichlet.theta0.cache_clear()
            dirichlet._theta_coeff.cache_clear()
        return True, f"{n} eta tuples consistent up to {bound}"

    return _timed("theta-consistency", run)


def check_local_factor_oracle(
    ps: tuple[int, ...] = (2, 3, 5),
    ss: tuple = (Fraction(1, 2), 1),
    max_exp: int = 12,
) -> CheckResult:
    """Closed per-prime factor vs brute-force truncated local sum."""

    def run():
        for k in (dirichlet.K_MAIN, dirichlet.K_CUT):
            for p in ps:
                for s in ss:
                    closed = float(dirichlet.local_factor(k, p, s))
                    brute, tail = dirichlet.local_factor_truncated(k, p, s, max_exp)
                    if abs(closed - brute) > tail + 1e-9 * abs(closed):
                        return False, (
                            f"k={k} p={p} s={s}: closed {closed} vs brute {brute}"
                            f" (tail {tail:.3g})"
                        )
        return True, f"{2 * len(ps) * len(ss)} (k, p, s) combinations agree"

    return _timed("local-factor-oracle", run)


def check_g2_scaling(
    t0s: tuple[float, ...] = (1.0, 1.25, 1.5, 2.0),
    rel_tol: float = 0.01,
    tol: float = 1e-6,
) -> CheckResult:
    """t0^2 G2(t0) is constant and equals the t0 = 1 value."""

    def run():
        try:
            om = density.omega_infty(tol)
            vals = {t0: t0 * t0 * density.G2(t0, tol).value for t0 in t0s}
        except density.QuadratureError as exc:
            return False, f"quadrature failed: {exc}"
        for t0, v in vals.items():
            if abs(v / om.value - 1.0) > rel_tol:
                return False, f"t0={t0}: t0^2 G2 = {v} vs omega = {om.value}"
        return True, f"omega_infty = {om.value:.8f}, constant over t0 in {t0s}"

    return _timed("g2-scaling", run)


def run_all(deep: bool = False, *, workers: int | None = None) -> list[CheckResult]:
    """The whole suite; deep mode widens every search range."""
    return [
        check_local_factor_oracle(),
        check_theta_consistency(30 if deep else 12),
        check_coprimality_equiv(*((50, 10) if deep else (30, 5))),
        check_bijection(100 if deep else 50, workers=workers),
        check_height_bounds(1000 if deep else 200, workers=workers),
        check_g2_scaling() if deep else check_g2_scaling(t0s=(1.0, 2.0), tol=1e-5),
    ]
