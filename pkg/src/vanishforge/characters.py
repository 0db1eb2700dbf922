"""Dirichlet characters modulo odd primes, Fourier transforms, Gauss sums
and Dirichlet L-values.

Characters are stored as an exponent against the smallest primitive root,
so every value is an exact root of unity until it is evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bernoulli import bernoulli_number, bernoulli_poly
from .context import DEFAULT_CONTEXT, PrecisionContext, VerificationError

__all__ = [
    "DirichletCharacter",
    "enumerate_characters",
    "primitive_root",
    "dft",
    "gauss_sum",
    "root_of_unity",
    "hurwitz_zeta",
    "dirichlet_l",
    "generalized_bernoulli",
    "dirichlet_l_negative",
    "is_prime",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_odd_prime(p: int) -> None:
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p!r}")


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest primitive root modulo the odd prime p."""
    _check_odd_prime(p)
    n = p - 1
    factors = {q for q in range(2, n + 1) if n % q == 0 and is_prime(q)}
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in factors):
            return g
    raise AssertionError("no primitive root found")


@lru_cache(maxsize=None)
def _dlog(p: int) -> tuple:
    g = primitive_root(p)
    table = [None] * p
    x = 1
    for e in range(p - 1):
        table[x] = e
        x = x * g % p
    return tuple(table)


@lru_cache(maxsize=4096)
def root_of_unity(order: int, e: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """exp(2 pi i e / order) at working precision."""
    mp = ctx.mp
    e %= order
    t = mp.mpf(2 * e) / order
    return mp.mpc(mp.cospi(t), mp.sinpi(t))


@dataclass(frozen=True, order=True)
class DirichletCharacter:
    """Character mod p sending the smallest primitive root to exp(2 pi i j/(p-1))."""

    modulus: int
    index: int

    def __post_init__(self):
        _check_odd_prime(self.modulus)
        if not 0 <= self.index <= self.modulus - 2:
            raise ValueError(f"index must lie in 0..{self.modulus - 2}")

    @property
    def order_bound(self) -> int:
        return self.modulus - 1

    @property
    def is_principal(self) -> bool:
        return self.index == 0

    @property
    def conductor(self) -> int:
        return 1 if self.is_principal else self.modulus

    @property
    def parity(self) -> int:
        # -1 = g^((p-1)/2), so chi(-1) = (-1)^index
        return -1 if self.index % 2 else 1

    def exponent(self, n: int) -> int | None:
        """chi(n) = exp(2 pi i e/(p-1)) with e returned; None when p | n."""
        log = _dlog(self.modulus)[n % self.modulus]
        if log is None:
            return None
        return self.index * log % (self.modulus - 1)

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, (-self.index) % (self.modulus - 1))

    def value(self, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
        e = self.exponent(n)
        if e is None:
            return ctx.mp.mpc(0)
        return root_of_unity(self.modulus - 1, e, ctx)

    def values(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
        """(chi(0), ..., chi(p-1))."""
        return tuple(self.value(n, ctx) for n in range(self.modulus))

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "index": self.index}

    @classmethod
    def from_json(cls, d: dict) -> "DirichletCharacter":
        return cls(int(d["modulus"]), int(d["index"]))

    def __str__(self):
        return f"chi[{self.modulus},{self.index}]"


def enumerate_characters(p: int) -> list[DirichletCharacter]:
    """The p-2 non-principal characters mod p, ordered by index."""
    _check_odd_prime(p)
    return [DirichletCharacter(p, j) for j in range(1, p - 1)]


def dft(values, direction: str = "forward", ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
    """Discrete Fourier transform with exp(-2 pi i j n/N) in the forward direction."""
    n = len(values)
    if n == 0:
        raise ValueError("empty input")
    if direction not in ("forward", "inverse"):
        raise ValueError("direction must be 'forward' or 'inverse'")
    mp = ctx.mp
    sign = -1 if direction == "forward" else 1
    vals = [mp.mpc(v) for v in values]
    out = []
    for j in range(n):
        acc = mp.fsum(vals[m] * root_of_unity(n, sign * j * m, ctx) for m in range(n) if vals[m])
        out.append(acc if direction == "forward" else acc / n)
    return out


@lru_cache(maxsize=None)
def gauss_sum(chi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """G(chi) = sum_n chi(n) exp(2 pi i n/p)."""
    if chi.is_principal:
        raise ValueError("Gauss sum requested for the principal character")
    p = chi.modulus
    return ctx.mp.fsum(chi.value(n, ctx) * root_of_unity(p, n, ctx) for n in range(1, p))


# -- Hurwitz zeta by Euler-Maclaurin -------------------------------------------

def _as_point(s, mp):
    """Normalize s: Python int when integral and real, else an mpc/mpf."""
    if isinstance(s, int):
        return s
    z = mp.mpc(s)
    if z.imag == 0:
        r = z.real
        if r == int(r):
            return int(r)
        return r
    return z


def _em_weighted(s, xs, ws, ctx: PrecisionContext):
    """sum_a w_a * zeta(s, x_a) with the pole part combined across a.

    When s == 1 the weights must sum to zero and the combined pole term is
    replaced by its limit, -sum w_a log(M + x_a).
    """
    base = ctx.mp
    sv = base.mpc(s)
    sigma = sv.real
    bits = ctx.precision_bits + 32
    M = max(ctx.precision_bits // 2, int(2 * abs(sv)) + 10)
    guard = 20 + max(0, int(base.ceil((1 - sigma) * base.log(M + 1, 2))))
    mp = ctx.extra(guard)
    s_ = mp.mpc(s) if not isinstance(s, int) else s
    if isinstance(s_, mp.mpc) and s_.imag == 0:
        s_ = s_.real
    xs = [mp.mpf(x) for x in xs]
    ws = [mp.mpc(w) for w in ws]
    pieces = []
    for x, w in zip(xs, ws):
        if w == 0:
            continue
        pieces.append(w * mp.fsum(mp.power(n + x, -s_) for n in range(M)))
    ys = [M + x for x in xs]
    if s_ == 1:
        pieces.append(-mp.fsum(w * mp.log(y) for y, w in zip(ys, ws)))
    else:
        pieces.append(mp.fsum(w * mp.power(y, 1 - s_) for y, w in zip(ys, ws)) / (s_ - 1))
    pieces.append(mp.fsum(w * mp.power(y, -s_) for y, w in zip(ys, ws)) / 2)
    ref = max(abs(t) for t in pieces) or mp.mpf(1)
    tol = ref * mp.mpf(2) ** (-bits - guard)
    cur = [w * mp.power(y, -s_ - 1) for y, w in zip(ys, ws)]
    inv2 = [1 / (y * y) for y in ys]
    poch = s_
    fact = mp.mpf(2)
    prev = None
    for j in range(1, 4 * bits):
        term = mp.mpf(bernoulli_number(2 * j).numerator) / bernoulli_number(2 * j).denominator
        term = term / fact * poch * mp.fsum(cur)
        pieces.append(term)
        a = abs(term)
        if a <= tol and (prev is None or a <= prev):
            break
        if prev is not None and a > prev and a > tol:
            raise VerificationError("Euler-Maclaurin tail diverged; increase the shift")
        prev = a
        poch *= (s_ + 2 * j - 1) * (s_ + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        cur = [c * q for c, q in zip(cur, inv2)]
    else:
        raise VerificationError("Euler-Maclaurin tail did not converge")
    return ctx.mp.mpc(mp.fsum(pieces))


def hurwitz_zeta(s, a, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """zeta(s, a) = sum_{n>=0} (n+a)^(-s) for 0 < a <= 1, s != 1."""
    mp = ctx.mp
    s = _as_point(s, mp)
    if s == 1:
        raise ValueError("Hurwitz zeta has a pole at s = 1")
    a = mp.mpf(a)
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    return _em_weighted(s, [a], [1], ctx)


@lru_cache(maxsize=None)
def generalized_bernoulli(chi: DirichletCharacter, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """B_{n,chi} = p^(n-1) sum_a chi(a) B_n(a/p), from exact Bernoulli polynomials."""
    p = chi.modulus
    mp = ctx.mp
    acc = []
    for a in range(1, p):
        b = bernoulli_poly(n, Fraction(a, p)) * Fraction(p) ** (n - 1)
        if b:
            acc.append(chi.value(a, ctx) * (mp.mpf(b.numerator) / b.denominator))
    return mp.fsum(acc) if acc else mp.mpc(0)


def dirichlet_l_negative(chi: DirichletCharacter, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """L(chi, 1-n) = -B_{n,chi}/n for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return -generalized_bernoulli(chi, n, ctx) / n


@lru_cache(maxsize=None)
def _dirichlet_l(chi: DirichletCharacter, s, ctx: PrecisionContext):
    p = chi.modulus
    mp = ctx.mp
    xs = [mp.mpf(a) / p for a in range(1, p)]
    ws = [chi.value(a, ctx) for a in range(1, p)]
    val = _em_weighted(s, xs, ws, ctx) * mp.power(p, -mp.mpc(s) if not isinstance(s, int) else -s)
    if isinstance(s, int) and s <= 0:
        other = dirichlet_l_negative(chi, 1 - s, ctx)
        scale = max(abs(other), abs(val), mp.mpf(1))
        if abs(other - val) > scale * mp.mpf(2) ** (-(ctx.precision_bits // 2)):
            raise VerificationError(
                f"L({chi}, {s}): Hurwitz and Bernoulli paths disagree "
                f"({mp.nstr(val, 10)} vs {mp.nstr(other, 10)})")
    return val


def dirichlet_l(chi: DirichletCharacter, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """L(chi, s) for non-principal chi and any complex s.

    Uses p^(-s) sum_a chi(a) zeta(s, a/p) with the Hurwitz zeta by
    Euler-Maclaurin; at s = 1 - n the generalized Bernoulli closed form is
    computed as a cross-check.
    """
    if chi.is_principal:
        raise ValueError("L-functions of the principal character are not supported")
    return _dirichlet_l(chi, _as_point(s, ctx.mp), ctx)
