"""Tensors in W_{p1}^0 (x) W_{p2}^0, their two-variable realization
eta(z) omega(z tau), orders, and the residue and selection maps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .context import DEFAULT_CONTEXT, PrecisionContext
from .weak import WeakFunction, alpha_basis, taylor_coeffs, character_coordinates

INF = math.inf

__all__ = [
    "TensorElement",
    "BivariateSeries",
    "xi_map",
    "bi_order",
    "series_order",
    "series_multiply",
    "res_T",
    "residue_polynomial",
    "coeff_select",
    "kernel_index_set",
    "to_character_basis",
]


@dataclass(frozen=True)
class TensorElement:
    """sum a[c][d] alpha_c^(p1) (x) alpha_d^(p2)."""

    p1: int
    p2: int
    coeffs: tuple
    weight_parity: int | None = None

    def __post_init__(self):
        if len(self.coeffs) != self.p1 - 2 or any(len(r) != self.p2 - 2 for r in self.coeffs):
            raise ValueError(f"coefficient matrix must be {self.p1 - 2} x {self.p2 - 2}")
        if self.weight_parity is not None:
            for c, row in enumerate(self.coeffs):
                for d, a in enumerate(row):
                    if a != 0 and (c + d - self.weight_parity) % 2:
                        raise ValueError(f"entry ({c},{d}) violates the weight parity")

    @classmethod
    def zero(cls, p1: int, p2: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "TensorElement":
        z = ctx.mp.mpc(0)
        return cls(p1, p2, tuple(tuple(z for _ in range(p2 - 2)) for _ in range(p1 - 2)))

    @classmethod
    def from_entries(cls, p1: int, p2: int, entries: dict, ctx: PrecisionContext = DEFAULT_CONTEXT,
                     weight_parity: int | None = None) -> "TensorElement":
        mp = ctx.mp
        rows = [[mp.mpc(0)] * (p2 - 2) for _ in range(p1 - 2)]
        for (c, d), a in entries.items():
            rows[c][d] += mp.mpc(a)
        return cls(p1, p2, tuple(tuple(r) for r in rows), weight_parity)

    @classmethod
    def elementary(cls, p1: int, p2: int, c: int, d: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
        return cls.from_entries(p1, p2, {(c, d): 1}, ctx)

    def entries(self):
        for c, row in enumerate(self.coeffs):
            for d, a in enumerate(row):
                if a != 0:
                    yield c, d, a

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if (self.p1, self.p2) != (other.p1, other.p2):
            raise ValueError("levels differ")
        return TensorElement(self.p1, self.p2, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))

    def to_json(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict:
        from .serialize import encode_real

        return {"p1": self.p1, "p2": self.p2, "entries": [
            {"c": c, "d": d, "re": encode_real(a.real, ctx), "im": encode_real(a.imag, ctx)}
            for c, d, a in self.entries()]}

    @classmethod
    def from_json(cls, data: dict, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "TensorElement":
        mp = ctx.mp
        ent = {(int(e["c"]), int(e["d"])): mp.mpc(mp.mpf(e["re"]), mp.mpf(e["im"])) for e in data["entries"]}
        return cls.from_entries(int(data["p1"]), int(data["p2"]), ent, ctx)


@dataclass(frozen=True)
class BivariateSeries:
    """sum_{j<=T} P_j(tau) z^j with deg P_j <= j; polys[j] lists tau^0..tau^j."""

    truncation: int
    polys: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.polys) != self.truncation + 1:
            raise ValueError("need one polynomial per power of z")
        for j, P in enumerate(self.polys):
            if len(P) > j + 1:
                raise ValueError(f"P_{j} has degree above {j}")


def _alpha_taylor(p: int, T: int, ctx: PrecisionContext) -> list:
    return [taylor_coeffs(a, T + 1, ctx) for a in alpha_basis(p, ctx)]


def xi_map(t: TensorElement, T: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> BivariateSeries:
    """Truncation at z^T of sum a_{c,d} alpha_d^(p2)(z) alpha_c^(p1)(z tau)."""
    if T < 0:
        raise ValueError("T must be >= 0")
    mp = ctx.mp
    A1 = _alpha_taylor(t.p1, T, ctx)
    A2 = _alpha_taylor(t.p2, T, ctx)
    polys = [[mp.mpc(0)] * (j + 1) for j in range(T + 1)]
    for c, d, a in t.entries():
        for j in range(T + 1):
            P = polys[j]
            for n in range(j + 1):
                x = A1[c][n]
                if x:
                    P[n] += a * x * A2[d][j - n]
    return BivariateSeries(T, tuple(tuple(P) for P in polys))


def residue_polynomial(omega: WeakFunction, eta: WeakFunction, T: int,
                       ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """Coefficient of z^T in eta(z) omega(z tau): sum_l a^omega_l a^eta_(T-l) tau^l."""
    a = taylor_coeffs(omega, T + 1, ctx)
    b = taylor_coeffs(eta, T + 1, ctx)
    return tuple(a[l] * b[T - l] for l in range(T + 1))


def res_T(t: TensorElement, T: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """res_{z=0} z^-(T+1) eta(z) omega(z tau), extended linearly; tau^0..tau^T."""
    return xi_map(t, T, ctx).polys[T]


def coeff_select(P, S, T: int) -> tuple:
    """(coefficient of tau^l in P)_{l in S}, ascending in l."""
    S = sorted(set(S))
    if S and (S[0] < 0 or S[-1] > T):
        raise ValueError(f"selection {S} is not inside 0..{T}")
    if len(P) > T + 1 and any(P[T + 1:]):
        raise ValueError(f"polynomial has degree above {T}")
    return tuple(P[l] if l < len(P) else 0 for l in S)


def _nonzero(a, scale, ctx, what) -> bool:
    return ctx.classify(a, scale, what=what)


def bi_order(t: TensorElement, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """(min c with a row c entry nonzero, min d with a column d entry nonzero)."""
    mx = max((abs(a) for row in t.coeffs for a in row), default=0)
    if mx == 0:
        return (INF, INF)
    cmin = dmin = INF
    for c, row in enumerate(t.coeffs):
        for d, a in enumerate(row):
            if _nonzero(a, mx, ctx, f"tensor entry ({c},{d})"):
                cmin, dmin = min(cmin, c), min(dmin, d)
    return (cmin, dmin)


def series_order(s: BivariateSeries, ctx: PrecisionContext = DEFAULT_CONTEXT) -> tuple:
    """Order pair of a truncated series sum P_j(tau) z^j.

    First entry: min over j of j - deg(tau^j P_j(1/tau)), i.e. the lowest
    tau-power present; second: min over j of j - deg P_j.
    """
    mx = max((abs(a) for P in s.polys for a in P), default=0)
    if mx == 0:
        return (INF, INF)
    first = second = INF
    for j, P in enumerate(s.polys):
        live = [n for n, a in enumerate(P) if _nonzero(a, mx, ctx, f"series coefficient z^{j} tau^{n}")]
        if live:
            first = min(first, live[0])
            second = min(second, j - live[-1])
    return (first, second)


def series_multiply(a: BivariateSeries, b: BivariateSeries, ctx: PrecisionContext = DEFAULT_CONTEXT) -> BivariateSeries:
    mp = ctx.mp
    T = min(a.truncation, b.truncation)
    polys = []
    for j in range(T + 1):
        R = [mp.mpc(0)] * (j + 1)
        for i in range(j + 1):
            for m, x in enumerate(a.polys[i]):
                if x:
                    for n, y in enumerate(b.polys[j - i]):
                        R[m + n] += x * y
        polys.append(tuple(R))
    return BivariateSeries(T, tuple(polys))


def kernel_index_set(p1: int, p2: int, k: int, S) -> tuple:
    """Index pairs (m, n) spanning the kernel of the selected-coefficient map.

    Returns (sorted pairs, exact). With k-2 <= min(p1-3, p2-3) the pairs are an
    exact kernel basis; otherwise they only index a guaranteed subspace.
    """
    S = set(S)
    T = k - 2
    if any(s < 0 or s > T for s in S):
        raise ValueError(f"S must be a subset of 0..{T}")
    exact = T <= min(p1 - 3, p2 - 3)
    out = []
    for m in range(p1 - 2):
        for n in range(p2 - 2):
            if (m + n - k) % 2:
                continue
            if exact:
                keep = m not in S or m != T - n
            else:
                keep = (m not in S and T - n not in S) or (m in S and T - n in S and m != T - n)
            if keep:
                out.append((m, n))
    return tuple(out), exact


def to_character_basis(t: TensorElement, ctx: PrecisionContext = DEFAULT_CONTEXT) -> dict:
    """Coefficients b_{chi,psi} with t = sum b omega_chi (x) omega_psi."""
    mp = ctx.mp
    A1 = [character_coordinates(a, ctx) for a in alpha_basis(t.p1, ctx)]
    A2 = [character_coordinates(a, ctx) for a in alpha_basis(t.p2, ctx)]
    out: dict = {}
    for c, d, a in t.entries():
        for chi, x in A1[c].items():
            for psi, y in A2[d].items():
                out[(chi, psi)] = out.get((chi, psi), mp.mpc(0)) + a * x * y
    return out
