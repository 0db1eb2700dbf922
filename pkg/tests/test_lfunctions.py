import mpmath
import pytest

from test_eisenstein import brute_values
from vanishforge.characters import DirichletCharacter
from vanishforge.construct import newform_pairs
from vanishforge.eisenstein import EisensteinCombination, eisenstein_constant
from vanishforge.lfunctions import (
    completed_lambda,
    eichler_identity_check,
    is_trivial_zero,
    l_value,
    l_value_report,
    mellin_lambda,
    period_polynomial,
)

CHI5, CHI5B = DirichletCharacter(5, 1), DirichletCharacter(5, 3)


def dirichlet_series(chi, psi, k, s, M=10000, dps=30):
    """sum_{n<=M} a_n n^-s with a_n sieved from the divisor sum (K factored out)."""
    cv = brute_values(chi.modulus, chi.index)
    pv = brute_values(psi.modulus, psi.index)
    with mpmath.workdps(dps):
        a = [mpmath.mpc(0)] * (M + 1)
        for d in range(1, M + 1):
            w = mpmath.mpf(d) ** (k - 1) * mpmath.conj(pv[d % psi.modulus])
            if w == 0:
                continue
            for e in range(1, M // d + 1):
                ce = cv[e % chi.modulus]
                if ce != 0:
                    a[d * e] += w * ce
        return mpmath.fsum(a[n] * mpmath.power(n, -s) for n in range(1, M + 1))


@pytest.mark.parametrize("j1,j2,k", [(1, 2, 3), (2, 2, 4)])
def test_l_value_against_dirichlet_series(ctx, mp, j1, j2, k):
    chi, psi = DirichletCharacter(5, j1), DirichletCharacter(7, j2)
    if chi.parity * psi.parity != (-1) ** k:
        pytest.skip("inadmissible")
    f = EisensteinCombination.build(k, 5, 7, {(chi, psi): 1}, ctx)
    s = k + 2
    ours = l_value(f, s, ctx)
    ref = eisenstein_constant(chi, psi, k, ctx) * dirichlet_series(chi, psi, k, s)
    assert abs(complex(ours) - complex(ref)) < 1e-6 * abs(complex(ref))


def test_trivial_zero_labels():
    for k in (4, 6, 8):
        for s in range(1, k):
            want = s in (2, k - 2) or (s % 2 == 0 and 2 <= s <= k - 2)
            assert is_trivial_zero(CHI5B, CHI5B, k, s) == want
    # even psi: L(conj psi, s-k+1) vanishes at s-k+1 = 0, -2, ...
    chi, psi = DirichletCharacter(5, 2), DirichletCharacter(7, 2)
    assert [is_trivial_zero(chi, psi, 4, s) for s in (1, 2, 3)] == [True, False, True]


def test_unsupported_points(ctx):
    f = EisensteinCombination.build(4, 5, 5, {(CHI5, CHI5): 1}, ctx)
    with pytest.raises(ValueError):
        l_value(f, 4, ctx)
    with pytest.raises(ValueError):
        completed_lambda(f, 0, ctx)


@pytest.mark.parametrize("k", [3, 4])
def test_mellin_two_paths(ctx, mp, k):
    for chi, psi in newform_pairs(5, 7, k)[:4]:
        f = EisensteinCombination.build(k, 5, 7, {(chi, psi): 1}, ctx)
        rep = l_value_report(f, range(1, k), ctx)
        for s, sc in zip(rep.points, rep.scales):
            a = completed_lambda(f, s, ctx)
            b = mellin_lambda(f, s, ctx)
            floor = mp.power(2 * mp.pi, -s) * mp.gamma(s) * sc
            assert abs(a - b) <= mp.mpf(10) ** -40 * max(abs(a), abs(b), floor)


def test_mellin_at_complex_point(ctx, mp):
    f = EisensteinCombination.build(3, 5, 7, {(DirichletCharacter(5, 1), DirichletCharacter(7, 2)): 1}, ctx)
    s = mp.mpc("1.5", "0.75")
    a, b = completed_lambda(f, s, ctx), mellin_lambda(f, s, ctx)
    assert abs(a - b) < mp.mpf(10) ** -40 * abs(a)


@pytest.mark.parametrize("p1,p2", [(5, 5), (5, 7)])
def test_eichler_identity(ctx, mp, p1, p2):
    for k in (3, 4):
        for chi, psi in newform_pairs(p1, p2, k):
            assert eichler_identity_check(chi, psi, k, ctx) < mp.mpf(2) ** -(ctx.precision_bits // 2)


def test_period_polynomial(ctx, mp):
    f = EisensteinCombination.build(5, 7, 7, {(DirichletCharacter(7, 1), DirichletCharacter(7, 2)): 1}, ctx)
    P = period_polynomial(f, ctx)
    assert len(P.coeffs) == 4
    # tau^(k-2) coefficient is (-1)^k i Lambda(f; 1)
    assert abs(P.coeffs[3] - (-1) ** 5 * 1j * completed_lambda(f, 1, ctx)) < mp.mpf(10) ** -70


def test_report_fields(ctx, mp):
    f = EisensteinCombination.build(6, 5, 5, {(CHI5B, CHI5B): 1, (CHI5, CHI5): 1}, ctx)
    rep = l_value_report(f, [1, 2, 3], ctx, promised=[2])
    rows = rep.rows()
    assert [r[0] for r in rows] == [1, 2, 3]
    assert rows[1][3] and rows[1][4]  # trivial zero at s = 2 vanishes
    assert not rows[0][3]
    doc = rep.to_json(ctx)
    assert doc[1]["promised_zero"] and doc[1]["trivial"]
