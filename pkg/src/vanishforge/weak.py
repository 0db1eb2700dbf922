"""Weak functions of level N.

A weak function is stored through its pole coefficients,

    omega(z) = sum_{j=1}^{N-1} beta(j) e(z) / (e(j/N) - e(z)),   e(z) = exp(2 pi i z),

and the space W_N^0 of those regular at z = 0 is cut out by sum(beta) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .characters import DirichletCharacter, dft
from .context import DEFAULT_CONTEXT, AmbiguityError, PrecisionContext, VerificationError
from .cotangent import cot_nodes, cot_power_sums, delta_row

__all__ = [
    "WeakFunction",
    "OrderResult",
    "character_weak_function",
    "evaluate",
    "taylor_coeffs",
    "order",
    "reflect",
    "parity",
    "cot_matrix",
    "cotm_ranks",
    "cotm_kernel",
    "kernel_dimension",
    "vandermonde_inverse",
    "alpha_basis",
    "weak_fourier_transform",
]

INF = math.inf


@dataclass(frozen=True)
class WeakFunction:
    level: int
    beta: tuple

    def __post_init__(self):
        if self.level < 3:
            raise ValueError("level must be >= 3")
        if len(self.beta) != self.level - 1:
            raise ValueError(f"beta must have length {self.level - 1}, got {len(self.beta)}")

    @classmethod
    def from_beta(cls, N: int, beta, ctx: PrecisionContext = DEFAULT_CONTEXT,
                  check: bool = True) -> "WeakFunction":
        mp = ctx.mp
        w = cls(N, tuple(mp.mpc(b) for b in beta))
        if check and not w.in_w0(ctx):
            raise ValueError("coefficients do not sum to zero; the function has a pole at 0")
        return w

    def norm(self, ctx: PrecisionContext = DEFAULT_CONTEXT):
        mp = ctx.mp
        return mp.sqrt(mp.fsum(abs(b) ** 2 for b in self.beta))

    def in_w0(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> bool:
        mp = ctx.mp
        tol = mp.mpf(2) ** (-(ctx.precision_bits - 8))
        return abs(mp.fsum(self.beta)) <= tol * self.norm(ctx)

    def is_zero(self) -> bool:
        return all(b == 0 for b in self.beta)

    def scale(self, c, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "WeakFunction":
        c = ctx.mp.mpc(c)
        return WeakFunction(self.level, tuple(c * b for b in self.beta))

    def __add__(self, other: "WeakFunction") -> "WeakFunction":
        if other.level != self.level:
            raise ValueError("levels differ")
        return WeakFunction(self.level, tuple(a + b for a, b in zip(self.beta, other.beta)))

    def __sub__(self, other: "WeakFunction") -> "WeakFunction":
        if other.level != self.level:
            raise ValueError("levels differ")
        return WeakFunction(self.level, tuple(a - b for a, b in zip(self.beta, other.beta)))


@dataclass(frozen=True)
class OrderResult:
    order: float | int
    witness: int | None
    value: object = None

    def __str__(self):
        if self.order == INF:
            return "order ∞"
        return f"order {self.order}, witness u={self.witness}"


def character_weak_function(chi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CONTEXT) -> WeakFunction:
    """omega_chi with beta(r) = chi(r)."""
    if chi.is_principal:
        raise ValueError("the principal character does not give a function in W^0")
    return WeakFunction(chi.modulus, tuple(chi.value(r, ctx) for r in range(1, chi.modulus)))


def reflect(w: WeakFunction) -> WeakFunction:
    """z -> omega(-z); its coefficients are -beta(N-r)."""
    return WeakFunction(w.level, tuple(-b for b in reversed(w.beta)))


def taylor_coeffs(w: WeakFunction, count: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """Coefficients of z^0 .. z^(count-1) at z = 0.

    coefficient of z^nu = -(i/2) pi^nu sum_u delta_{nu+1}(u) sum_r beta(r) cot^u(pi r/N)
    """
    if not w.in_w0(ctx):
        raise ValueError("taylor_coeffs needs a function regular at 0")
    return _taylor(w, count, ctx)


@lru_cache(maxsize=1024)
def _taylor(w: WeakFunction, count: int, ctx: PrecisionContext) -> tuple:
    mp = ctx.mp
    if count <= 0:
        return ()
    sums = cot_power_sums(w.beta, w.level, count, ctx)
    half_i = mp.mpc(0, -0.5)
    out = []
    pipow = mp.mpf(1)
    for nu in range(count):
        acc = []
        for u, (re, im) in enumerate(delta_row(nu + 1)):
            if re or im:
                d = mp.mpc(mp.mpf(re.numerator) / re.denominator, mp.mpf(im.numerator) / im.denominator)
                acc.append(d * sums[u])
        out.append(half_i * pipow * mp.fsum(acc))
        pipow *= mp.pi
    return tuple(out)


def evaluate(w: WeakFunction, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """omega(z); close to an integer the Taylor series at 0 is summed instead."""
    mp = ctx.mp
    z = mp.mpc(z)
    N = w.level
    shift = mp.nint(z.real)
    zr = z - shift
    if abs(zr) * 2 * N < 1 and w.in_w0(ctx):
        if zr == 0:
            return _taylor(w, 1, ctx)[0]
        rho = abs(zr) * N
        n = int(mp.ceil((ctx.precision_bits + 40) / -mp.log(rho, 2))) + 2
        coeffs = _taylor(w, n, ctx)
        acc = mp.mpc(0)
        for c in reversed(coeffs):
            acc = acc * zr + c
        return acc
    x = z.imag
    if x == 0:
        jr = z.real * N
        j = mp.nint(jr)
        if jr == j:
            jj = int(j) % N
            if jj == 0 or w.beta[jj - 1] != 0:
                where = "0" if jj == 0 else f"{jj}/{N}"
                raise ZeroDivisionError(f"pole of the weak function at z = {mp.nstr(z.real, 15)} (class {where} mod 1)")
    ez = mp.expjpi(2 * zr)
    acc = []
    for r, b in enumerate(w.beta, start=1):
        if b == 0:
            continue
        acc.append(b * ez / (mp.expjpi(mp.mpf(2 * r) / N) - ez))
    return mp.fsum(acc)


def order(w: WeakFunction, ctx: PrecisionContext = DEFAULT_CONTEXT) -> OrderResult:
    """Vanishing order at 0 with the first nonvanishing cotangent power sum as witness.

    The order is sup{m : beta in ker CotM(N, m)}; each sum is judged against
    |beta| times the norm of the corresponding matrix row.
    """
    mp = ctx.mp
    N = w.level
    nb = w.norm(ctx)
    if nb == 0:
        return OrderResult(INF, None, None)
    sums = cot_power_sums(w.beta, N, N - 2, ctx)
    nodes = cot_nodes(N, ctx)
    for u, s in enumerate(sums):
        rown = mp.sqrt(mp.fsum(abs(c) ** (2 * u) for c in nodes))
        if ctx.classify(s, nb * rown, what=f"cot-power sum u={u}", index=u):
            if u == 0:
                raise ValueError("not in W^0: the coefficients do not sum to zero")
            return OrderResult(u - 1, u, s)
    raise AmbiguityError(
        f"nonzero coefficient vector with all cot-power sums u=0..{N - 2} vanishing; "
        "raise the precision", N - 2)


def parity(w: WeakFunction, ctx: PrecisionContext = DEFAULT_CONTEXT) -> int | None:
    """+1 or -1 if omega(-z) = +-omega(z), decided by evaluation; 0 for the zero function."""
    if w.is_zero():
        return 0
    mp = ctx.mp
    samples = [mp.mpc("0.1234", "0.0371"), mp.mpc("0.3111", "-0.2101"), mp.mpc("-0.0417", "0.4431")]
    even = odd = True
    for z in samples:
        a, b = evaluate(w, z, ctx), evaluate(w, -z, ctx)
        scale = abs(a) + abs(b)
        even = even and not ctx.classify(a - b, scale, what="parity test")
        odd = odd and not ctx.classify(a + b, scale, what="parity test")
    if even:
        return 1
    if odd:
        return -1
    return None


def cot_matrix(N: int, m: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
    """CotM(N, m): rows u = 0..m of (cot^u(pi j/N))_{j=1..N-1}."""
    nodes = cot_nodes(N, ctx)
    return [[c ** u for c in nodes] for u in range(m + 1)]


@lru_cache(maxsize=None)
def _krylov_dimension(N: int, ctx: PrecisionContext) -> int:
    # The rows of CotM(N, m) span the Krylov space of diag(nodes) started at
    # the all-ones row, so the rank is found from an orthonormal Krylov basis;
    # this avoids judging the exponentially small singular values of the
    # monomial rows themselves.
    mp = ctx.mp
    nodes = cot_nodes(N, ctx)
    xn = max(abs(c) for c in nodes) or mp.mpf(1)
    n0 = mp.sqrt(N - 1)
    Q = [[mp.mpf(1) / n0] * (N - 1)]
    while len(Q) < N - 1 + 1:
        w = [c * a for c, a in zip(nodes, Q[-1])]
        for _ in range(2):
            for q in Q:
                h = mp.fsum(a * b for a, b in zip(q, w))
                w = [a - h * b for a, b in zip(w, q)]
        r = mp.sqrt(mp.fsum(a * a for a in w))
        if not ctx.classify(r, xn, what=f"Krylov step {len(Q)}", index=len(Q)):
            break
        Q.append([a / r for a in w])
    return len(Q)


def cotm_ranks(N: int, ctx: PrecisionContext = DEFAULT_CONTEXT, mmax: int | None = None) -> list[int]:
    """Numerical rank of CotM(N, m) for m = 0..mmax (default N)."""
    if N < 3:
        raise ValueError("N must be >= 3")
    k = _krylov_dimension(N, ctx)
    mmax = N if mmax is None else mmax
    return [min(m + 1, k) for m in range(mmax + 1)]


def kernel_dimension(N: int, m: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> int:
    return (N - 1) - cotm_ranks(N, ctx, m)[m]


def _elementary_symmetric(xs, mp) -> list:
    e = [mp.mpf(1)]
    for x in xs:
        e = [a - x * b for a, b in zip(e + [0], [0] + e)]
    # e holds the coefficients of prod (t - x) from t^n downwards, signed
    return e


def vandermonde_inverse(nodes, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
    """Explicit inverse of V = (x_j^(i-1))_{i,j} via elementary symmetric functions.

    B[k][l] = (-1)^(n-1-l) e_{n-1-l}(x without x_k) / prod_{m != k}(x_k - x_m)
    (zero-based indices), so that sum_k x_k^i B[k][l] = delta_{il}.
    """
    mp = ctx.mp
    xs = [mp.mpf(x) if mp.mpc(x).imag == 0 else mp.mpc(x) for x in nodes]
    n = len(xs)
    out = []
    for k in range(n):
        others = xs[:k] + xs[k + 1:]
        e = _elementary_symmetric(others, mp)  # e[j] = (-1)^j e_j(others)
        denom = mp.fprod(xs[k] - x for x in others)
        out.append([e[n - 1 - l] / denom for l in range(n)])
    return out


def cotm_kernel(N: int, m: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[WeakFunction]:
    """Basis of ker CotM(N, m) as weak functions, max(0, N-m-2) of them.

    Each vector is supported on m+2 consecutive nodes and carries the last
    column of the inverse Vandermonde matrix of those nodes.
    """
    if N < 3 or m < 0:
        raise ValueError("need N >= 3 and m >= 0")
    mp = ctx.mp
    nodes = cot_nodes(N, ctx)
    width = m + 2
    out = []
    rows_norm = max(mp.sqrt(mp.fsum(abs(c) ** (2 * u) for c in nodes)) for u in range(m + 1))
    for start in range(0, N - 1 - width + 1):
        inv = vandermonde_inverse(nodes[start:start + width], ctx)
        col = [row[-1] for row in inv]
        nrm = mp.sqrt(mp.fsum(abs(c) ** 2 for c in col))
        beta = [mp.mpc(0)] * (N - 1)
        for i, c in enumerate(col):
            beta[start + i] = mp.mpc(c / nrm)
        res = max(abs(s) for s in cot_power_sums(beta, N, m, ctx))
        if ctx.classify(res, rows_norm, what=f"kernel residual (N={N}, m={m})"):
            raise VerificationError(f"kernel vector {start} of CotM({N},{m}) is not annihilated")
        out.append(WeakFunction(N, tuple(beta)))
    expected = max(0, N - m - 2)
    if len(out) != expected or len(out) != kernel_dimension(N, m, ctx):
        raise VerificationError(f"kernel of CotM({N},{m}) has unexpected dimension {len(out)}")
    return out


@lru_cache(maxsize=None)
def alpha_basis(N: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """alpha_0, ..., alpha_{N-3} with alpha_j = z^j + O(z^(N-2)) and parity (-1)^j.

    Built from the top down: take a kernel vector of exact order j,
    symmetrize, normalize the z^j coefficient and clear z^(j+1..N-3)
    using the functions already built.
    """
    if N < 3:
        raise ValueError("N must be >= 3")
    top = N - 3
    basis: dict[int, WeakFunction] = {}
    for j in range(top, -1, -1):
        best, best_val = None, None
        for v in cotm_kernel(N, j, ctx):
            s = cot_power_sums(v.beta, N, j + 1, ctx)[j + 1]
            if best is None or abs(s) > best_val:
                best, best_val = v, abs(s)
        sign = 1 if j % 2 == 0 else -1
        refl = reflect(best)
        w = WeakFunction(N, tuple(a + sign * b for a, b in zip(best.beta, refl.beta)))
        res = order(w, ctx)
        if res.order != j:
            raise VerificationError(f"alpha_{j}: symmetrized kernel vector has order {res.order}")
        t = _taylor(w, top + 1, ctx)
        w = w.scale(1 / t[j], ctx)
        t = _taylor(w, top + 1, ctx)
        beta = list(w.beta)
        for jj in range(j + 2, top + 1, 2):
            c = t[jj]
            beta = [a - c * b for a, b in zip(beta, basis[jj].beta)]
        basis[j] = WeakFunction(N, tuple(beta))
    return tuple(basis[j] for j in range(top + 1))


def weak_fourier_transform(w: WeakFunction, direction: str = "forward",
                           ctx: PrecisionContext = DEFAULT_CONTEXT) -> WeakFunction:
    """Weak function whose coefficients are the discrete Fourier transform of beta.

    beta is read as a function on Z/N with beta(0) = 0; the transformed value
    at 0 is sum(beta) = 0, which keeps the result in W^0.
    """
    mp = ctx.mp
    full = [mp.mpc(0)] + list(w.beta)
    out = dft(full, direction, ctx)
    tol = mp.mpf(2) ** (-(ctx.precision_bits - 8)) * (w.norm(ctx) * mp.sqrt(w.level) + 1)
    if abs(out[0]) > tol or abs(mp.fsum(out[1:])) > tol * w.level:
        raise ValueError("input is not in W^0")
    return WeakFunction(w.level, tuple(out[1:]))


def character_coordinates(w: WeakFunction, ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict:
    """Coordinates a_chi with omega = sum_chi a_chi omega_chi, for prime level.

    a_chi = (1/(p-1)) sum_r beta(r) conj(chi(r)); the reconstruction is checked.
    """
    from .characters import enumerate_characters

    mp = ctx.mp
    p = w.level
    chars = enumerate_characters(p)
    coords = {}
    for chi in chars:
        bar = chi.conj()
        coords[chi] = mp.fsum(b * bar.value(r, ctx) for r, b in enumerate(w.beta, start=1)) / (p - 1)
    scale = w.norm(ctx) + mp.mpf(1) * (w.norm(ctx) == 0)
    for r in range(1, p):
        back = mp.fsum(a * chi.value(r, ctx) for chi, a in coords.items())
        if ctx.classify(back - w.beta[r - 1], scale, what="character reconstruction"):
            raise VerificationError("weak function is not spanned by non-principal characters")
    return coords


__all__.append("character_coordinates")
