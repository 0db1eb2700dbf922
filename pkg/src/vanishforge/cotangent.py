"""Cotangent power sums, the Taylor constants delta_nu(u) and the
Berndt-Yeap closed form for sum cot^{2n}(pi r/N)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from threading import Lock

from .bernoulli import bernoulli_number
from .context import DEFAULT_CONTEXT, PrecisionContext

__all__ = [
    "stirling_star",
    "delta_coeff",
    "delta_row",
    "DeltaTable",
    "cot_nodes",
    "cot_power_sum",
    "cot_power_sums",
    "berndt_yeap_closed_form",
]

_I_POW = ((1, 0), (0, 1), (-1, 0), (0, -1))


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    # S*(n, m) = m (S*(n-1, m) + S*(n-1, m-1))
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1) + (0,)
    return (0,) + tuple(m * (prev[m] + prev[m - 1]) for m in range(1, n + 1))


def stirling_star(n: int, m: int) -> int:
    """S*(n, m) = sum_j (-1)^j C(m, j) (m-j)^n = m! times a Stirling number of the second kind."""
    if n < 0 or m < 0 or m > n:
        raise ValueError(f"need 0 <= m <= n, got n={n}, m={m}")
    if n > 400:
        return sum((-1) ** j * comb(m, j) * (m - j) ** n for j in range(m + 1))
    for k in range(0, n, 200):
        _stirling_row(k)
    return _stirling_row(n)[m]


_ROWS: dict[int, tuple] = {}
_ROWS_LOCK = Lock()


def delta_row(nu: int) -> tuple:
    """(delta_nu(0), ..., delta_nu(nu)) as exact (re, im) pairs of Fractions."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    row = _ROWS.get(nu)
    if row is not None:
        return row
    n = nu - 1
    srow = [stirling_star(n, l) for l in range(n + 1)]
    # D(u) = sum_l (-1)^l 2^(n-l) S*(n,l) C(l,u), via Horner in (1+x)
    poly = [0]
    for l in range(n, -1, -1):
        nxt = poly + [0]
        for j in range(len(poly) - 1, -1, -1):
            nxt[j + 1] += poly[j]
        nxt[0] += (-1) ** l * 2 ** (n - l) * srow[l]
        poly = nxt
    D = poly + [0] * (nu + 2 - len(poly))
    fac = factorial(n)
    out = []
    for u in range(nu + 1):
        val = (-1) ** (nu - u) * (D[u] - (D[u - 1] if u else 0))
        re, im = _I_POW[(nu + u) % 4]
        f = Fraction(val, fac)
        out.append((re * f, im * f))
    row = tuple(out)
    with _ROWS_LOCK:
        _ROWS.setdefault(nu, row)
    return row


def delta_coeff(nu: int, u: int) -> tuple[Fraction, Fraction]:
    """delta_nu(u) from the explicit Stirling-number formula, as (re, im).

    Every entry is real except delta_1(0) = -i, which only ever multiplies
    sum(beta) and so drops out on functions regular at 0.
    """
    if nu < 1 or not 0 <= u <= nu:
        raise ValueError(f"need nu >= 1 and 0 <= u <= nu, got nu={nu}, u={u}")
    return delta_row(nu)[u]


class DeltaTable:
    """delta_nu(u) for 1 <= nu <= max_nu, built once."""

    def __init__(self, max_nu: int):
        self.max_nu = max_nu
        self.rows = tuple(delta_row(nu) for nu in range(1, max_nu + 1))

    def __getitem__(self, key):
        nu, u = key
        return self.rows[nu - 1][u]


@lru_cache(maxsize=256)
def cot_nodes(N: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """(cot(pi r/N))_{r=1..N-1}, the value at r = N/2 set exactly to 0."""
    if N < 2:
        raise ValueError("N must be >= 2")
    mp = ctx.mp
    out = []
    for r in range(1, N):
        if 2 * r == N:
            out.append(mp.mpf(0))
        else:
            t = mp.mpf(r) / N
            out.append(mp.cospi(t) / mp.sinpi(t))
    return tuple(out)


def _check_beta(beta, N):
    if N < 3:
        raise ValueError("N must be >= 3")
    if len(beta) != N - 1:
        raise ValueError(f"beta must have length N-1 = {N - 1}, got {len(beta)}")


def cot_power_sum(beta, N: int, u: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """sum_{r=1}^{N-1} beta(r) cot^u(pi r/N); beta is indexed from r = 1."""
    _check_beta(beta, N)
    if u < 0:
        raise ValueError("u must be >= 0")
    mp = ctx.mp
    return mp.fsum(mp.mpc(b) * c ** u for b, c in zip(beta, cot_nodes(N, ctx)))


def cot_power_sums(beta, N: int, umax: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
    """[cot_power_sum(beta, N, u) for u = 0..umax] sharing the powers."""
    _check_beta(beta, N)
    mp = ctx.mp
    nodes = cot_nodes(N, ctx)
    cur = [mp.mpc(b) for b in beta]
    out = []
    for _ in range(umax + 1):
        out.append(mp.fsum(cur))
        cur = [a * c for a, c in zip(cur, nodes)]
    return out


def berndt_yeap_closed_form(n: int, N: int) -> Fraction:
    """Exact value of sum_{r=1}^{N-1} cot^{2n}(pi r/N) from Bernoulli numbers."""
    if n < 1 or N < 2:
        raise ValueError("need n >= 1 and N >= 2")
    b = [bernoulli_number(2 * j) / factorial(2 * j) for j in range(n + 1)]
    # power[i] = coefficient of x^i in (sum_j b_j x^j)^(2n), truncated at x^n
    power = [Fraction(1)] + [Fraction(0)] * n
    for _ in range(2 * n):
        power = [sum(power[i - j] * b[j] for j in range(i + 1)) for i in range(n + 1)]
    inner = sum(b[j0] * power[n - j0] * Fraction(N) ** (2 * j0) for j0 in range(n + 1))
    sign = (-1) ** n
    return sign * N - sign * 4 ** n * inner
