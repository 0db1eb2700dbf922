"""q-expansions of Eisenstein series E_k(chi, psi) and of theta_k(omega (x) eta),
the correspondence between them, and a check of the theta transformation law."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd

from .characters import DirichletCharacter, dft, gauss_sum, root_of_unity
from .context import DEFAULT_CONTEXT, PrecisionContext
from .weak import WeakFunction, parity, reflect

__all__ = [
    "QExpansion",
    "EisensteinCombination",
    "eisenstein_constant",
    "correspondence_constant",
    "eisenstein_q_expansion",
    "theta_q_expansion",
    "weak_pair_to_eisenstein",
    "transform_check",
]


@dataclass(frozen=True)
class QExpansion:
    """sum_{m=0}^{M} c_m q^(m/scale), q = exp(2 pi i tau)."""

    weight: int
    scale: int
    coeffs: tuple
    provenance: str = ""

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, tau, ctx: PrecisionContext = DEFAULT_CONTEXT):
        mp = ctx.mp
        tau = mp.mpc(tau)
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half plane")
        q = mp.expjpi(2 * tau / self.scale)
        acc = mp.mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def tail_bound(self, tau, ctx: PrecisionContext = DEFAULT_CONTEXT):
        """Rough size of the omitted terms, from the last few coefficients."""
        mp = ctx.mp
        r = mp.exp(-2 * mp.pi * mp.mpc(tau).imag / self.scale)
        M = self.truncation
        last = max((abs(c) / (m + 1) ** (self.weight - 1) for m, c in enumerate(self.coeffs[-5:], start=M - 4)),
                   default=mp.mpf(0))
        grow = (M + 2) ** (self.weight - 1)
        return last * grow * r ** (M + 1) / (1 - r) ** self.weight

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if (self.weight, self.scale) != (other.weight, other.scale):
            raise ValueError("expansions have different weight or scale")
        n = min(len(self.coeffs), len(other.coeffs))
        return QExpansion(self.weight, self.scale,
                          tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])), "sum")

    def scaled(self, c, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "QExpansion":
        c = ctx.mp.mpc(c)
        return QExpansion(self.weight, self.scale, tuple(c * a for a in self.coeffs), self.provenance)

    def shifted(self) -> "QExpansion":
        """tau -> scale * tau, turning q^(m/scale) into q^m."""
        return QExpansion(self.weight, 1, self.coeffs, self.provenance + f"|B_{self.scale}")

    def to_json(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict:
        from .serialize import SCHEMA_QEXP, encode_complex

        return {"schema": SCHEMA_QEXP, "k": self.weight, "scale": self.scale,
                "coeffs": [encode_complex(c, ctx) for c in self.coeffs]}


def _check_pair(chi: DirichletCharacter, psi: DirichletCharacter, k: int):
    if chi.is_principal or psi.is_principal:
        raise ValueError("characters must be non-principal")
    if k < 3:
        raise ValueError("weight must be >= 3")
    if chi.parity * psi.parity != (-1) ** k:
        raise ValueError(f"parity mismatch: chi(-1) psi(-1) != (-1)^{k} for ({chi}, {psi})")


def eisenstein_constant(chi: DirichletCharacter, psi: DirichletCharacter, k: int,
                        ctx: PrecisionContext = DEFAULT_CONTEXT):
    """2 (-2 pi i)^k G(psi) / (N_psi^k (k-1)!), the common factor of all coefficients."""
    mp = ctx.mp
    return 2 * mp.mpc(0, -2 * mp.pi) ** k * gauss_sum(psi, ctx) / (mp.mpf(psi.modulus) ** k * factorial(k - 1))


def correspondence_constant(chi: DirichletCharacter, psi: DirichletCharacter, k: int,
                            ctx: PrecisionContext = DEFAULT_CONTEXT):
    """K with E_k(chi, psi) = K theta_k(omega_conj(chi) (x) omega_conj(psi))."""
    mp = ctx.mp
    return (chi.parity * mp.mpc(0, -2 * mp.pi) ** k * gauss_sum(psi, ctx)
            / (psi.modulus * factorial(k - 1) * gauss_sum(chi.conj(), ctx)))


def _divisor_sum_exact(chi: DirichletCharacter, psi: DirichletCharacter, k: int, m: int):
    """sum_{d|m} d^(k-1) conj(psi)(d) chi(m/d) as integer weights on lcm-th roots of unity."""
    L = (chi.modulus - 1) * (psi.modulus - 1) // gcd(chi.modulus - 1, psi.modulus - 1)
    a = L // (chi.modulus - 1)
    b = L // (psi.modulus - 1)
    bins: dict[int, int] = {}
    d = 1
    while d * d <= m:
        if m % d == 0:
            for dd in {d, m // d}:
                e1 = psi.exponent(dd)
                e2 = chi.exponent(m // dd)
                if e1 is None or e2 is None:
                    continue
                e = (e2 * a - e1 * b) % L
                bins[e] = bins.get(e, 0) + dd ** (k - 1)
        d += 1
    return L, bins


def eisenstein_q_expansion(chi: DirichletCharacter, psi: DirichletCharacter, k: int, M_terms: int,
                           ctx: PrecisionContext = DEFAULT_CONTEXT, shifted: bool = False) -> QExpansion:
    """Coefficients c_0..c_M of E_k(chi, psi; tau) in powers q^(m/N_psi).

    c_m = 2 (-2 pi i)^k G(psi) / (N_psi^k (k-1)!) sum_{d|m} d^(k-1) conj(psi)(d) chi(m/d).
    With ``shifted`` the expansion is that of E_k(chi, psi; N_psi tau) in integral powers of q.
    """
    _check_pair(chi, psi, k)
    mp = ctx.mp
    K = eisenstein_constant(chi, psi, k, ctx)
    coeffs = [mp.mpc(0)]
    for m in range(1, M_terms + 1):
        L, bins = _divisor_sum_exact(chi, psi, k, m)
        s = mp.fsum(mp.mpf(w) * root_of_unity(L, e, ctx) for e, w in sorted(bins.items()))
        coeffs.append(K * s)
    q = QExpansion(k, psi.modulus, tuple(coeffs), f"E_{k}({chi},{psi})")
    return q.shifted() if shifted else q


def _graded_sign(w: WeakFunction, ctx) -> int:
    s = parity(w, ctx)
    if s is None:
        raise ValueError(f"weak function of level {w.level} is neither even nor odd")
    return s


def theta_q_expansion(omega: WeakFunction, eta: WeakFunction, k: int, M_terms: int,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> QExpansion:
    """theta_k(omega (x) eta; tau) = 2 N^(1-k) sum_m sum_{d|m} d^(k-1) beta_eta(d) (F_M beta_omega)(m/d) q^(m/N)."""
    if k < 3:
        raise ValueError("weight must be >= 3")
    mp = ctx.mp
    M, N = omega.level, eta.level
    s1, s2 = _graded_sign(omega, ctx), _graded_sign(eta, ctx)
    if s1 * s2 not in (0, (-1) ** k):
        raise ValueError(f"parity mismatch: sgn(omega) sgn(eta) = {s1 * s2} but (-1)^k = {(-1) ** k}")
    b_eta = [mp.mpc(0)] + list(eta.beta)
    f_om = dft([mp.mpc(0)] + list(omega.beta), "forward", ctx)
    pref = 2 * mp.mpf(N) ** (1 - k)
    coeffs = [mp.mpc(0)]
    for m in range(1, M_terms + 1):
        acc = []
        d = 1
        while d * d <= m:
            if m % d == 0:
                for dd in {d, m // d}:
                    x = b_eta[dd % N]
                    y = f_om[(m // dd) % M]
                    if x and y:
                        acc.append(mp.mpf(dd) ** (k - 1) * x * y)
            d += 1
        coeffs.append(pref * mp.fsum(acc))
    return QExpansion(k, N, tuple(coeffs), f"theta_{k}")


@dataclass(frozen=True)
class EisensteinCombination:
    """sum c_{chi,psi} E_k(chi, psi; p2 tau) over primitive chi mod p1, psi mod p2."""

    weight: int
    p1: int
    p2: int
    terms: tuple  # ((chi, psi, coeff), ...) sorted by character indices

    @classmethod
    def build(cls, k: int, p1: int, p2: int, coeffs: dict, ctx: PrecisionContext = DEFAULT_CONTEXT,
              prune: bool = True) -> "EisensteinCombination":
        mp = ctx.mp
        items = {}
        for (chi, psi), c in coeffs.items():
            if chi.modulus != p1 or psi.modulus != p2:
                raise ValueError("character moduli do not match the level pair")
            _check_pair(chi, psi, k)
            items[(chi, psi)] = items.get((chi, psi), mp.mpc(0)) + mp.mpc(c)
        if prune and items:
            mx = max(abs(c) for c in items.values())
            items = {key: c for key, c in items.items() if abs(c) > ctx.vanish * mx}
        terms = tuple((chi, psi, c) for (chi, psi), c in sorted(items.items(), key=lambda kv: (kv[0][0].index, kv[0][1].index)))
        return cls(k, p1, p2, terms)

    def as_dict(self) -> dict:
        return {(chi, psi): c for chi, psi, c in self.terms}

    def coefficient(self, chi, psi, ctx: PrecisionContext = DEFAULT_CONTEXT):
        return self.as_dict().get((chi, psi), ctx.mp.mpc(0))

    def scaled(self, c, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "EisensteinCombination":
        c = ctx.mp.mpc(c)
        return EisensteinCombination(self.weight, self.p1, self.p2,
                                     tuple((chi, psi, c * a) for chi, psi, a in self.terms))

    def __add__(self, other: "EisensteinCombination") -> "EisensteinCombination":
        if (self.weight, self.p1, self.p2) != (other.weight, other.p1, other.p2):
            raise ValueError("combinations live in different spaces")
        d = self.as_dict()
        for key, c in other.as_dict().items():
            d[key] = d.get(key, 0) + c
        return EisensteinCombination.build(self.weight, self.p1, self.p2, d, prune=False)

    def norm(self, ctx: PrecisionContext = DEFAULT_CONTEXT):
        return max((abs(c) for _, _, c in self.terms), default=ctx.mp.mpf(0))

    def normalized(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "EisensteinCombination":
        """Largest coefficient of modulus 1, first surviving coefficient real positive."""
        mx = self.norm(ctx)
        if mx == 0:
            return self
        first = next(c for _, _, c in self.terms if abs(c) > ctx.vanish * mx)
        return self.scaled(abs(first) / (first * mx), ctx)

    def q_expansion(self, M_terms: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> QExpansion:
        """Expansion of the combination in integral powers of q (argument p2 tau)."""
        mp = ctx.mp
        out = [mp.mpc(0)] * (M_terms + 1)
        for chi, psi, c in self.terms:
            q = eisenstein_q_expansion(chi, psi, self.weight, M_terms, ctx)
            out = [a + c * b for a, b in zip(out, q.coeffs)]
        return QExpansion(self.weight, 1, tuple(out), "combination")

    def to_json(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict:
        from .serialize import encode_complex

        return {"k": self.weight, "p1": self.p1, "p2": self.p2, "terms": [
            {"chi": chi.to_json(), "psi": psi.to_json(), "coeff": encode_complex(c, ctx)}
            for chi, psi, c in self.terms]}

    @classmethod
    def from_json(cls, doc: dict, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "EisensteinCombination":
        from .serialize import decode_complex

        k, p1, p2 = int(doc["k"]), int(doc["p1"]), int(doc["p2"])
        coeffs = {(DirichletCharacter.from_json(t["chi"]), DirichletCharacter.from_json(t["psi"])):
                  decode_complex(t["coeff"], ctx) for t in doc["terms"]}
        return cls.build(k, p1, p2, coeffs, ctx, prune=False)


def weak_pair_to_eisenstein(coeffs: dict, k: int, p1: int, p2: int,
                            ctx: PrecisionContext = DEFAULT_CONTEXT) -> EisensteinCombination:
    """Image of sum b_{chi,psi} omega_chi (x) omega_psi under theta_k(.; p2 tau).

    theta_k(omega_chi (x) omega_psi; p2 tau) = p2 (k-1)! G(chi) / (chi(-1) (-2 pi i)^k G(conj psi))
    E_k(conj chi, conj psi; p2 tau).
    """
    mp = ctx.mp
    out = {}
    top = max((abs(mp.mpc(b)) for b in coeffs.values()), default=0)
    for (chi, psi), b in coeffs.items():
        if abs(mp.mpc(b)) <= ctx.vanish * top:
            continue
        if chi.modulus != p1 or psi.modulus != p2:
            raise ValueError("character moduli do not match the level pair")
        if chi.parity * psi.parity != (-1) ** k:
            raise ValueError(f"parity mismatch for ({chi}, {psi}) at weight {k}")
        inv = 1 / correspondence_constant(chi.conj(), psi.conj(), k, ctx)
        key = (chi.conj(), psi.conj())
        out[key] = out.get(key, mp.mpc(0)) + mp.mpc(b) * inv
    return EisensteinCombination.build(k, p1, p2, out, ctx)


def transform_check(omega: WeakFunction, eta: WeakFunction, k: int, taus, M_terms: int = 200,
                    ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Max relative residual of theta_k(omega (x) eta; -1/tau) = -tau^k theta_k(eta (x) omega^; tau) + 2 pi i res.

    Inputs regular at 0 make z^(k-1) eta(z) omega^(z/tau) holomorphic there,
    so the residue term is zero.
    """
    mp = ctx.mp
    if omega.level != eta.level:
        raise ValueError("both functions must have the same level")
    if omega.is_zero() or eta.is_zero():
        return mp.mpf(0)
    for w in (omega, eta):
        if not w.in_w0(ctx):
            raise ValueError("transform_check needs functions regular at 0")
    lhs_q = theta_q_expansion(omega, eta, k, M_terms, ctx)
    rhs_q = theta_q_expansion(eta, reflect(omega), k, M_terms, ctx)
    worst = mp.mpf(0)
    for tau in taus:
        tau = mp.mpc(tau)
        t2 = -1 / tau
        lhs = lhs_q.evaluate(t2, ctx)
        rhs = -tau ** k * rhs_q.evaluate(tau, ctx)
        scale = max(abs(lhs), abs(rhs))
        tail = max(lhs_q.tail_bound(t2, ctx), abs(tau) ** k * rhs_q.tail_bound(tau, ctx))
        if scale == 0:
            continue
        if tail > scale * mp.mpf(2) ** (-(ctx.precision_bits // 2)):
            raise ValueError(f"truncation at {M_terms} terms is insufficient at tau = {mp.nstr(tau, 8)}")
        worst = max(worst, abs(lhs - rhs) / scale)
    return worst
