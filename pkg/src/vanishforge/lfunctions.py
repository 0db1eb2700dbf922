"""L-values, completed L-values and period polynomials of Eisenstein
combinations, with a Mellin-integral second path and the Eichler identity."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from .characters import DirichletCharacter, dirichlet_l
from .context import DEFAULT_CONTEXT, PrecisionContext
from .eisenstein import EisensteinCombination, eisenstein_constant, eisenstein_q_expansion
from .tensor import residue_polynomial
from .weak import character_weak_function

__all__ = [
    "LValueReport",
    "PeriodPolynomial",
    "l_value",
    "l_value_term",
    "l_value_report",
    "completed_lambda",
    "mellin_lambda",
    "period_polynomial",
    "eichler_identity_check",
    "is_trivial_zero",
]


def _point(s, mp):
    if isinstance(s, int):
        return s
    z = mp.mpc(s)
    if z.imag == 0 and z.real == int(z.real):
        return int(z.real)
    return z


def _dirichlet_trivial(chi: DirichletCharacter, s) -> bool:
    # L(chi, 1-n) = -B_{n,chi}/n vanishes when chi(-1) != (-1)^n
    return isinstance(s, int) and s <= 0 and chi.parity != (-1) ** (1 - s)


def is_trivial_zero(chi: DirichletCharacter, psi: DirichletCharacter, k: int, s) -> bool:
    """True when L(E_k(chi, psi); s) vanishes because a Dirichlet factor sits at a trivial zero."""
    return _dirichlet_trivial(chi, s) or _dirichlet_trivial(psi.conj(), s - k + 1 if isinstance(s, int) else None)


def _check_s(k: int, s):
    if isinstance(s, int) and s == k:
        raise ValueError(f"s = k = {k} is not supported (possible pole of the completed L-series)")


def l_value_term(chi: DirichletCharacter, psi: DirichletCharacter, k: int, s,
                 ctx: PrecisionContext = DEFAULT_CONTEXT):
    """L(E_k(chi, psi; N_psi tau); s) = 2 (-2 pi i)^k G(psi)/(N_psi^k (k-1)!) L(chi; s) L(conj psi; s-k+1)."""
    mp = ctx.mp
    s = _point(s, mp)
    _check_s(k, s)
    return eisenstein_constant(chi, psi, k, ctx) * dirichlet_l(chi, s, ctx) * dirichlet_l(psi.conj(), s - k + 1, ctx)


def l_value(f: EisensteinCombination, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """L(f; s) for f = sum c E_k(chi, psi; p2 tau); no shift factor arises since N_psi = p2."""
    mp = ctx.mp
    s = _point(s, mp)
    _check_s(f.weight, s)
    return mp.fsum(c * l_value_term(chi, psi, f.weight, s, ctx) for chi, psi, c in f.terms)


def _term_scale(chi, psi, k, c, s, ctx):
    # size of one summand, with a factor at a trivial zero replaced by 1
    mp = ctx.mp
    a = mp.mpf(1) if _dirichlet_trivial(chi, s) else abs(dirichlet_l(chi, s, ctx))
    t = s - k + 1 if isinstance(s, int) else mp.mpc(s) - k + 1
    b = mp.mpf(1) if _dirichlet_trivial(psi.conj(), t) else abs(dirichlet_l(psi.conj(), t, ctx))
    return abs(c) * abs(eisenstein_constant(chi, psi, k, ctx)) * a * b


@dataclass(frozen=True)
class LValueReport:
    form: EisensteinCombination
    points: tuple
    values: tuple
    scales: tuple
    vanished: tuple
    trivial: tuple
    precision_bits: int
    vanish_threshold: float
    promised: tuple = field(default=())

    def rows(self):
        return list(zip(self.points, self.values, self.scales, self.vanished, self.trivial))

    def to_json(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list:
        from .serialize import encode_complex, encode_real

        out = []
        for s, v, sc, van, triv in self.rows():
            out.append({"s": s if isinstance(s, int) else encode_complex(s, ctx),
                        "value": encode_complex(v, ctx), "scale": encode_real(sc, ctx),
                        "vanished": van, "trivial": triv, "promised_zero": s in self.promised})
        return out


def l_value_report(f: EisensteinCombination, points, ctx: PrecisionContext = DEFAULT_CONTEXT,
                   promised=()) -> LValueReport:
    """L(f; s) at each point with the vanishing decision.

    vanished means |L(f; s)| < vanish_threshold * scale, where scale is the
    largest summand |c L(E_k(chi, psi); s)|; a Dirichlet factor sitting at a
    trivial zero counts with modulus 1 in the scale. A point is labelled
    trivial when every term has such a factor there.
    """
    mp = ctx.mp
    pts = tuple(_point(s, mp) for s in points)
    vals, scales, van, triv = [], [], [], []
    for s in pts:
        v = l_value(f, s, ctx)
        sc = max((_term_scale(chi, psi, f.weight, c, s, ctx) for chi, psi, c in f.terms), default=mp.mpf(0))
        vals.append(v)
        scales.append(sc)
        van.append(bool(abs(v) < ctx.vanish * sc) or not f.terms)
        triv.append(bool(f.terms) and all(is_trivial_zero(chi, psi, f.weight, s) for chi, psi, _ in f.terms))
    return LValueReport(f, pts, tuple(vals), tuple(scales), tuple(van), tuple(triv),
                        ctx.precision_bits, ctx.vanish_threshold, tuple(promised))


def completed_lambda(f: EisensteinCombination, s, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Lambda(f; s) = (2 pi)^(-s) Gamma(s) L(f; s) for an expansion in integral powers of q."""
    mp = ctx.mp
    s = _point(s, mp)
    if isinstance(s, int) and s <= 0:
        raise ValueError(f"Gamma has a pole at s = {s}")
    return mp.power(2 * mp.pi, -s) * mp.gamma(s) * l_value(f, s, ctx)


def _upper_gamma(a, x, mp):
    if isinstance(a, int) and a >= 1:
        # Gamma(n, x) = (n-1)! e^-x sum_{j<n} x^j/j!
        term, acc = mp.mpf(1), mp.mpf(1)
        for j in range(1, a):
            term = term * x / j
            acc += term
        return factorial(a - 1) * mp.exp(-x) * acc
    return mp.gammainc(a, x)


def mellin_lambda(f: EisensteinCombination, s, ctx: PrecisionContext = DEFAULT_CONTEXT,
                  terms: int | None = None):
    """Lambda(f; s) as the integral of f(ix) x^(s-1) over (0, inf), split at 1/sqrt(p1 p2).

    The piece near 0 is moved to infinity with
    E_k(chi, psi; -1/tau) = chi(-1) tau^k E_k(psi, chi; tau), which gives
    chi(-1) i^k p1^k (p1 p2)^(-s) sum_m b_m (2 pi m)^(s-k) Gamma(k-s, 2 pi m x0)
    with b_m the coefficients of E_k(psi, chi) in q^(m/p1).
    """
    mp = ctx.mp
    s = _point(s, mp)
    k, p1, p2 = f.weight, f.p1, f.p2
    _check_s(k, s)
    x0 = 1 / mp.sqrt(p1 * p2)
    if terms is None:
        terms = int(((ctx.precision_bits + 40) * mp.log(2) + 3 * k * mp.log(ctx.precision_bits)) / (2 * mp.pi * x0)) + 10
    a = f.q_expansion(terms, ctx).coeffs
    big = mp.fsum(a[n] * mp.power(2 * mp.pi * n, -s) * _upper_gamma(s, 2 * mp.pi * n * x0, mp)
                  for n in range(1, terms + 1) if a[n])
    sk = k - s
    small = []
    for chi, psi, c in f.terms:
        b = eisenstein_q_expansion(psi, chi, k, terms, ctx).coeffs
        acc = mp.fsum(b[m] * mp.power(2 * mp.pi * m, -sk) * _upper_gamma(sk, 2 * mp.pi * m * x0, mp)
                      for m in range(1, terms + 1) if b[m])
        small.append(c * chi.parity * mp.mpc(0, 1) ** k * mp.mpf(p1) ** k * acc)
    return big + mp.power(p1 * p2, -s) * mp.fsum(small)


@dataclass(frozen=True)
class PeriodPolynomial:
    weight: int
    coeffs: tuple  # tau^0 .. tau^(k-2)

    def __post_init__(self):
        if len(self.coeffs) > self.weight - 1:
            raise ValueError("degree exceeds k-2")


def period_polynomial(f: EisensteinCombination, ctx: PrecisionContext = DEFAULT_CONTEXT) -> PeriodPolynomial:
    """P(f; tau) = (-1)^k sum_n C(k-2, n) i^(1-n) Lambda(f; n+1) tau^(k-2-n)."""
    mp = ctx.mp
    k = f.weight
    out = [mp.mpc(0)] * (k - 1)
    for n in range(k - 1):
        out[k - 2 - n] = (-1) ** k * comb(k - 2, n) * mp.mpc(0, 1) ** (1 - n) * completed_lambda(f, n + 1, ctx)
    return PeriodPolynomial(k, tuple(out))


def eichler_identity_check(chi: DirichletCharacter, psi: DirichletCharacter, k: int,
                           ctx: PrecisionContext = DEFAULT_CONTEXT, return_sides: bool = False):
    """Compare sum_l C(k-2,l) i^(1-l) Lambda(g; l+1) p1^(l+1) tau^l for g = E_k(chi, psi; p2 tau)
    with 4 pi^2 chi(-1)/(p2^k (k-1)) res_{z=0} z^(1-k) omega_psi(z) omega_chi(z tau).

    Returns the largest coefficient difference relative to the largest coefficient.
    """
    mp = ctx.mp
    p1, p2 = chi.modulus, psi.modulus
    g = EisensteinCombination.build(k, p1, p2, {(chi, psi): 1}, ctx)
    lhs = [comb(k - 2, l) * mp.mpc(0, 1) ** (1 - l) * completed_lambda(g, l + 1, ctx) * mp.mpf(p1) ** (l + 1)
           for l in range(k - 1)]
    res = residue_polynomial(character_weak_function(chi, ctx), character_weak_function(psi, ctx), k - 2, ctx)
    const = 4 * mp.pi ** 2 * chi.parity / (mp.mpf(p2) ** k * (k - 1))
    rhs = [const * r for r in res]
    scale = max(max(abs(x) for x in lhs), max(abs(x) for x in rhs))
    resid = max(abs(a - b) for a, b in zip(lhs, rhs)) / scale if scale else mp.mpf(0)
    if return_sides:
        return resid, lhs, rhs
    return resid
