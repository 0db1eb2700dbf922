"""Reference computations that share no code path with the library."""

from __future__ import annotations

import mpmath


def direct_weak_value(mp, beta, N, z):
    """sum_r beta(r) e(z)/(e(r/N) - e(z)) summed term by term."""
    ez = mp.exp(2j * mp.pi * z)
    return mp.fsum(b * ez / (mp.exp(2j * mp.pi * r / N) - ez) for r, b in enumerate(beta, start=1))


class CauchyTaylor:
    """Taylor coefficients at 0 by the trapezoid rule on |z| = 1/(2N).

    The nearest pole sits at distance 1/N, so the aliasing error of
    coefficient n is about 2^-K relative to its natural size N^n.
    """

    def __init__(self, N: int, K: int = 400, extra_bits: int = 160, base_bits: int = 256):
        self.N, self.K = N, K
        self.mp = mpmath.MPContext()
        self.mp.prec = base_bits + extra_bits
        mp = self.mp
        self.rho = mp.mpf(1) / (2 * N)
        self.roots = [mp.exp(2j * mp.pi * j / K) for j in range(K)]
        poles = [mp.exp(2j * mp.pi * r / N) for r in range(1, N)]
        self.kernel = []
        for w in self.roots:
            ez = mp.exp(2j * mp.pi * self.rho * w)
            self.kernel.append([ez / (pr - ez) for pr in poles])

    def coeffs(self, beta, count: int):
        mp = self.mp
        beta = [mp.mpc(b) for b in beta]
        vals = [mp.fsum(b * k for b, k in zip(beta, row)) for row in self.kernel]
        out = []
        for n in range(count):
            s = mp.fsum(v * mp.conj(w) ** n for v, w in zip(vals, self.roots)) / self.K
            out.append(s / self.rho ** n)
        return out


def brute_divisor_coeff(mp, chi_vals, psi_vals, p_chi, p_psi, k, m):
    """sum_{d|m} d^(k-1) conj(psi)(d) chi(m/d) by plain divisor enumeration."""
    acc = mp.mpc(0)
    for d in range(1, m + 1):
        if m % d == 0:
            acc += mp.mpf(d) ** (k - 1) * mp.conj(psi_vals[d % p_psi]) * chi_vals[(m // d) % p_chi]
    return acc


def lattice_eisenstein(chi_vals, psi_vals, p_chi, p_psi, k, tau, mmax=40, dps=40):
    """sum_{(m,n) != 0} chi(m) psi(n) (m tau + n)^-k.

    chi(0) = 0 kills m = 0; the n-sum for fixed m is done exactly through
    mpmath's Hurwitz zeta, sum_j (w + j)^-k = zeta(k, w) + (-1)^k zeta(k, 1 - w).
    """
    with mpmath.workdps(dps):
        tau = mpmath.mpc(tau)
        total = mpmath.mpc(0)
        for m in list(range(1, mmax + 1)) + list(range(-mmax, 0)):
            cm = chi_vals[m % p_chi]
            if cm == 0:
                continue
            inner = mpmath.mpc(0)
            for a in range(1, p_psi):
                w = (m * tau + a) / p_psi
                inner += psi_vals[a] * (mpmath.zeta(k, w) + (-1) ** k * mpmath.zeta(k, 1 - w))
            total += cm * inner / mpmath.mpf(p_psi) ** k
        return total
