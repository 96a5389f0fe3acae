"""The arithmetic density theta, its Dirichlet series, and the main term.

theta(eta) for eta = (eta1, eta2, eta3, eta4) is an exact rational
multiple of 1/zeta(2); values are carried symbolically as ZetaRational
so every identity in this module can be tested with exact equality.

The staged sums theta0 -> theta1 -> theta2 exist in two routes (a and
b, reflecting the two summation orders of the counting argument); both
collapse to the same closed product, which is what theta() returns.

Delta_k(n) sums theta(eta)/(eta1 eta2 eta3 eta4) over eta with
eta1^k1 eta2^k2 eta3^k3 eta4^k4 = n.  Its Dirichlet series factors as
prod_p F_{k,p}(s); the per-prime closed form is implemented here along
with a brute-force truncated oracle for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import moebius, phi_star, prime_divisors, squarefree_divisors

__all__ = [
    "K_CUT",
    "K_MAIN",
    "MainTerm",
    "ZetaRational",
    "delta_k",
    "e_star_sum",
    "euler_reference_factor",
    "g_k_zero_factor",
    "local_factor",
    "local_factor_truncated",
    "predicted_main_term",
    "summatory_M",
    "theta",
    "theta0",
    "theta1a",
    "theta1b",
    "theta2a",
    "theta2b",
]

K_MAIN = (2, 2, 3, 2)
K_CUT = (3, 3, 4, 2)

ZETA2_INV = 6.0 / math.pi**2


@dataclass(frozen=True)
class ZetaRational:
    """A number q * zeta(2)^(-zpow) with q rational, compared exactly."""

    coeff: Fraction
    zpow: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff == 0:
            object.__setattr__(self, "zpow", 0)

    def __float__(self) -> float:
        return float(self.coeff) * ZETA2_INV**self.zpow

    def __add__(self, other: "ZetaRational") -> "ZetaRational":
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if self.zpow != other.zpow:
            raise ValueError("cannot add different zeta powers exactly")
        return ZetaRational(self.coeff + other.coeff, self.zpow)

    def __sub__(self, other: "ZetaRational") -> "ZetaRational":
        return self + ZetaRational(-other.coeff, other.zpow)

    def __mul__(self, other):
        if isinstance(other, ZetaRational):
            return ZetaRational(self.coeff * other.coeff, self.zpow + other.zpow)
        return ZetaRational(self.coeff * Fraction(other), self.zpow)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ZetaRational":
        return ZetaRational(self.coeff / Fraction(other), self.zpow)

    def __bool__(self) -> bool:
        return self.coeff != 0


def _eta_coprime(eta: tuple[int, int, int, int]) -> bool:
    """Pairwise coprimality of eta1, eta2, eta4 (the eta-only condition)."""
    e1, e2, _, e4 = eta
    return gcd(e1, e2) == 1 and gcd(e1, e4) == 1 and gcd(e2, e4) == 1


@lru_cache(maxsize=None)
def theta0(eta: tuple[int, int, int, int]) -> Fraction:
    """Moebius-inverted density of the alpha1 congruence classes."""
    e1, e2, e3, e4 = eta
    e14 = e1 * e4
    total = Fraction(0)
    for k in squarefree_divisors(e3):
        if gcd(k, e14) != 1:
            continue
        total += Fraction(moebius(k), k) / phi_star(gcd(e3, k * e2))
    return total * phi_star(e3 * e4)


def _p2_correction(n: int) -> Fraction:
    """prod over p | n of (1 - 1/p^2)^(-1)."""
    out = Fraction(1)
    for p in prime_divisors(n):
        out /= 1 - Fraction(1, p * p)
    return out


def theta1a(eta: tuple[int, int, int, int]) -> ZetaRational:
    e1, e2, e3, e4 = eta
    coeff = theta0(eta) * phi_star(e1 * e2 * e3) * _p2_correction(e1 * e2 * e3 * e4)
    return ZetaRational(coeff, 1)


def theta2a(eta: tuple[int, int, int, int]) -> ZetaRational:
    e1, e2, e3, e4 = eta
    return theta1a(eta) * phi_star(e1 * e2 * e3 * e4)


def theta1b(eta: tuple[int, int, int, int]) -> ZetaRational:
    e1, e2, e3, e4 = eta
    return ZetaRational(theta0(eta) * phi_star(e1 * e2 * e3 * e4), 0)


def theta2b(eta: tuple[int, int, int, int]) -> ZetaRational:
    e1, e2, e3, e4 = eta
    extra = phi_star(e1 * e2 * e3) * _p2_correction(e1 * e2 * e3 * e4)
    return ZetaRational(theta1b(eta).coeff * extra, 1)


@lru_cache(maxsize=None)
def _theta_coeff(eta: tuple[int, int, int, int]) -> Fraction:
    """zeta(2) * theta(eta) as an exact rational."""
    if not _eta_coprime(eta):
        return Fraction(0)
    e1, e2, e3, e4 = eta
    e14 = e1 * e4
    ksum = Fraction(0)
    for k in squarefree_divisors(e3):
        if gcd(k, e14) != 1:
            continue
        ksum += Fraction(moebius(k), k) / phi_star(gcd(e3, k * e2))
    return (
        phi_star(e3 * e4)
        * phi_star(e1 * e2 * e3)
        * phi_star(e1 * e2 * e3 * e4)
        * _p2_correction(e1 * e2 * e3 * e4)
        * ksum
    )


def theta(eta: tuple[int, int, int, int]) -> ZetaRational:
    """Closed product form; zero unless eta1, eta2, eta4 pairwise coprime."""
    return ZetaRational(_theta_coeff(eta), 1)


# ---------------------------------------------------------------------------
# Delta, M, and the main term
# ---------------------------------------------------------------------------


def delta_k(k: tuple[int, int, int, int], n: int) -> ZetaRational:
    """Sum of theta(eta)/(eta1 eta2 eta3 eta4) over eta with prod eta_j^k_j = n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = Fraction(0)
    e1 = 0
    while True:
        e1 += 1
        p1 = e1 ** k[0]
        if p1 > n:
            break
        if n % p1:
            continue
        n1 = n // p1
        e2 = 0
        while True:
            e2 += 1
            p2 = e2 ** k[1]
            if p2 > n1:
                break
            if n1 % p2:
                continue
            n2 = n1 // p2
            e3 = 0
            while True:
                e3 += 1
                p3 = e3 ** k[2]
                if p3 > n2:
                    break
                if n2 % p3:
                    continue
                n3 = n2 // p3
                e4 = round(n3 ** (1.0 / k[3]))
                for c in (e4 - 1, e4, e4 + 1):
                    if c >= 1 and c ** k[3] == n3:
                        total += _theta_coeff((e1, e2, e3, c)) / (e1 * e2 * e3 * c)
    return ZetaRational(total, 1)


def _tree_sum(parts: list[Fraction]) -> Fraction:
    """Pairwise reduction; far cheaper than a running total on long lists."""
    if not parts:
        return Fraction(0)
    while len(parts) > 1:
        parts = [
            parts[i] + parts[i + 1] if i + 1 < len(parts) else parts[i]
            for i in range(0, len(parts), 2)
        ]
    return parts[0]


def _eta_range(k: tuple[int, int, int, int], t: int):
    """All eta with prod eta_j^k_j <= t, yielded with that product."""
    e1 = 0
    while True:
        e1 += 1
        p1 = e1 ** k[0]
        if p1 > t:
            break
        e2 = 0
        while True:
            e2 += 1
            p2 = p1 * e2 ** k[1]
            if p2 > t:
                break
            e3 = 0
            while True:
                e3 += 1
                p3 = p2 * e3 ** k[2]
                if p3 > t:
                    break
                e4 = 0
                while True:
                    e4 += 1
                    p4 = p3 * e4 ** k[3]
                    if p4 > t:
                        break
                    yield (e1, e2, e3, e4), p4


def summatory_M(
    k: tuple[int, int, int, int], t: int, *, exact: bool = True, via: str = "eta"
):
    """M_k(t) = sum_{n <= t} Delta_k(n).

    via="eta" enumerates eta directly; via="n" sums delta_k(n), which is
    much slower and exists as an independent cross-check.  exact=True
    returns a ZetaRational, exact=False a float (coeff only summed in
    floating point, for large t).
    """
    if via == "n":
        total = ZetaRational(Fraction(0), 1)
        for n in range(1, t + 1):
            total = total + delta_k(k, n)
        return total if exact else float(total)
    if via != "eta":
        raise ValueError(f"unknown M mode {via!r}")
    if exact:
        parts = [
            _theta_coeff(eta) / (eta[0] * eta[1] * eta[2] * eta[3])
            for eta, _ in _eta_range(k, t)
            if _eta_coprime(eta)
        ]
        return ZetaRational(_tree_sum(parts), 1)
    acc = 0.0
    for eta, _ in _eta_range(k, t):
        if _eta_coprime(eta):
            c = _theta_coeff(eta)
            if c:
                acc += c.numerator / c.denominator / (eta[0] * eta[1] * eta[2] * eta[3])
    return acc * ZETA2_INV


def e_star_sum(B: int, *, exact: bool = True):
    """Sum of theta(eta)/(eta1 eta2 eta3 eta4) over the shell E*(B).

    E*(B) keeps eta with eta1^2 eta2^2 eta3^3 eta4^2 <= B but
    eta1^3 eta2^3 eta3^4 eta4^2 > B.  Since the second base is the first
    times eta1 eta2 eta3, the shell is exactly the set difference of the
    two sublevel sets, and this sum equals M_(2,2,3,2) - M_(3,3,4,2).
    """
    parts: list[Fraction] = []
    acc = 0.0
    for eta, _ in _eta_range(K_MAIN, B):
        e1, e2, e3, e4 = eta
        if e1**3 * e2**3 * e3**4 * e4**2 <= B:
            continue
        if not _eta_coprime(eta):
            continue
        c = _theta_coeff(eta)
        if exact:
            parts.append(c / (e1 * e2 * e3 * e4))
        elif c:
            acc += c.numerator / c.denominator / (e1 * e2 * e3 * e4)
    if exact:
        return ZetaRational(_tree_sum(parts), 1)
    return acc * ZETA2_INV


@dataclass(frozen=True)
class MainTerm:
    B: int
    omega: float
    m_main: float
    m_cut: float
    value: float


def predicted_main_term(B: int, omega: float, *, cross_check: bool | None = None) -> MainTerm:
    """omega * B * (M_(2,2,3,2)(B) - M_(3,3,4,2)(B)).

    cross_check (default for B <= 10^4) re-derives the difference as the
    direct shell sum and requires exact agreement.
    """
    if B < 1:
        raise ValueError("B must be >= 1")
    if cross_check is None:
        cross_check = B <= 10**4
    if cross_check:
        m1 = summatory_M(K_MAIN, B)
        m2 = summatory_M(K_CUT, B)
        diff = m1 - m2
        shell = e_star_sum(B)
        if diff != shell:
            raise ArithmeticError(
                f"main-term identity failed at B={B}: {diff} != {shell}"
            )
        return MainTerm(B, omega, float(m1), float(m2), omega * B * float(diff))
    m1f = summatory_M(K_MAIN, B, exact=False)
    m2f = summatory_M(K_CUT, B, exact=False)
    return MainTerm(B, omega, m1f, m2f, omega * B * (m1f - m2f))


# ---------------------------------------------------------------------------
# per-prime factors of the Dirichlet series
# ---------------------------------------------------------------------------


def _exact_s(k: tuple[int, int, int, int], s) -> bool:
    if isinstance(s, int):
        return True
    if isinstance(s, Fraction):
        return all((kj * s).denominator == 1 for kj in k)
    return False


def local_factor(k: tuple[int, int, int, int], p: int, s):
    """Closed form of F_{k,p}(s).

    Exact Fraction when every k_j*s is an integer (s may be a Fraction),
    float otherwise.  Raises for s at or left of the pole line
    (any k_j*s + 1 <= 0).
    """
    if any(kj * float(s) + 1 <= 0 for kj in k):
        raise ValueError("s is at or beyond the abscissa of the pole")
    if _exact_s(k, s):
        one = Fraction(1)
        T = [(1 - Fraction(1, p)) / (p ** int(kj * s + 1) - 1) for kj in k]
        u = Fraction(1, p)
    else:
        one = 1.0
        T = [(1.0 - 1.0 / p) / (p ** (kj * s + 1.0) - 1.0) for kj in k]
        u = 1.0 / p
    t124 = T[0] + T[1] + T[3]
    return (one - u) * ((one + u) + t124 + T[2] * ((one - 2 * u) + t124))


def g_k_zero_factor(k: tuple[int, int, int, int], p: int) -> Fraction:
    """F_{k,p}(0) * (1 - 1/p)^4: the per-prime value of the series residue."""
    return local_factor(k, p, 0) * (1 - Fraction(1, p)) ** 4


def euler_reference_factor(p: int) -> Fraction:
    """(1 - 1/p)^5 (1 + 5/p + 1/p^2), the closed per-prime residue value."""
    u = Fraction(1, p)
    return (1 - u) ** 5 * (1 + 5 * u + u * u)


def local_factor_truncated(
    k: tuple[int, int, int, int], p: int, s, max_exp: int = 12
) -> tuple[float, float]:
    """Brute-force F_{k,p}(s) from theta on p-power tuples, with tail bound.

    theta(eta) = prod_q w_q over the local weights; the p-factor is
    (1 - 1/p^2) * sum over exponent tuples of (zeta(2) theta) at
    (p^a, p^b, p^c, p^d) times p^{-sum (k_j s + 1) e_j}.  Truncating all
    exponents at max_exp leaves a geometric tail, bounded crudely here.
    """
    sf = float(s)
    if sf <= 0:
        raise ValueError("the brute-force sum needs s > 0")
    total = 0.0
    for a in range(max_exp + 1):
        for b in range(max_exp + 1):
            for d in range(max_exp + 1):
                if (a > 0) + (b > 0) + (d > 0) > 1:
                    continue  # theta vanishes: eta1, eta2, eta4 share p
                for c in range(max_exp + 1):
                    w = _theta_coeff((p**a, p**b, p**c, p**d))
                    if not w:
                        continue
                    ex = (k[0] * sf + 1) * a + (k[1] * sf + 1) * b
                    ex += (k[2] * sf + 1) * c + (k[3] * sf + 1) * d
                    total += float(w) * p**-ex
    total *= 1.0 - 1.0 / (p * p)
    min_exp = min(kj * sf + 1 for kj in k)
    tail = 64.0 * p ** (-min_exp * (max_exp + 1))
    return total, tail
