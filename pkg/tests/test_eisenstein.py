import mpmath
import pytest

from oracles import brute_divisor_coeff, lattice_eisenstein
from vanishforge.characters import DirichletCharacter
from vanishforge.construct import newform_pairs
from vanishforge.eisenstein import (
    EisensteinCombination,
    correspondence_constant,
    eisenstein_constant,
    eisenstein_q_expansion,
    theta_q_expansion,
    transform_check,
    weak_pair_to_eisenstein,
)
from vanishforge.tensor import TensorElement, to_character_basis
from vanishforge.weak import alpha_basis, character_weak_function


def brute_values(p, j, dps=60):
    """Character values from a primitive root found by brute force."""
    g = next(g for g in range(2, p) if len({pow(g, e, p) for e in range(p - 1)}) == p - 1)
    vals = [mpmath.mpc(0)] * p
    with mpmath.workdps(dps):
        for e in range(p - 1):
            vals[pow(g, e, p)] = mpmath.expjpi(mpmath.mpf(2 * j * e) / (p - 1))
    return vals


@pytest.mark.parametrize("pair,k", [((5, 1, 7, 2), 3), ((7, 2, 5, 2), 4), ((5, 1, 5, 1), 4), ((7, 1, 7, 2), 5)])
def test_against_lattice_sum(ctx, pair, k):
    pc, jc, pp, jp = pair
    chi, psi = DirichletCharacter(pc, jc), DirichletCharacter(pp, jp)
    if chi.parity * psi.parity != (-1) ** k:
        pytest.skip("inadmissible")
    tau = mpmath.mpc("0.13", "1.1")
    ref = lattice_eisenstein(brute_values(pc, jc), brute_values(pp, jp), pc, pp, k, tau, mmax=90, dps=45)
    got = eisenstein_q_expansion(chi, psi, k, 200, ctx).evaluate(tau, ctx)
    assert abs(got - ref) < mpmath.mpf(10) ** -30 * abs(ref)


@pytest.mark.parametrize("p1,p2,k", [(5, 7, 3), (7, 7, 4), (5, 5, 6)])
def test_coefficients_against_brute_force(ctx, mp, p1, p2, k):
    for chi, psi in newform_pairs(p1, p2, k):
        q = eisenstein_q_expansion(chi, psi, k, 60, ctx)
        assert q.coeffs[0] == 0
        K = eisenstein_constant(chi, psi, k, ctx)
        cv = [mp.mpc(v) for v in brute_values(p1, chi.index)]
        pv = [mp.mpc(v) for v in brute_values(p2, psi.index)]
        for m in range(1, 61):
            ref = K * brute_divisor_coeff(mp, cv, pv, p1, p2, k, m)
            assert abs(q.coeffs[m] - ref) <= 1e-13 * abs(K) * m ** (k - 1)


@pytest.mark.parametrize("p1,p2,k", [(5, 7, 3), (7, 7, 4)])
def test_hecke_multiplicativity(ctx, mp, p1, p2, k):
    for chi, psi in newform_pairs(p1, p2, k):
        q = eisenstein_q_expansion(chi, psi, k, 150, ctx)
        K = eisenstein_constant(chi, psi, k, ctx)
        lam = [c / K for c in q.coeffs]
        for ell in (2, 3, 11, 13):
            for m in (1, 2, 3, 4, 5, 9, 10):
                if m % ell == 0 or ell * m > 150:
                    continue
                assert abs(lam[ell * m] - lam[ell] * lam[m]) < mp.mpf(10) ** -60 * (ell * m) ** (k - 1)


@pytest.mark.parametrize("k", [3, 4])
def test_correspondence(ctx, mp, k):
    tol = mp.mpf(2) ** -(ctx.precision_bits // 2)
    for chi, psi in newform_pairs(5, 7, k):
        E = eisenstein_q_expansion(chi, psi, k, 200, ctx)
        th = theta_q_expansion(character_weak_function(chi.conj(), ctx), character_weak_function(psi.conj(), ctx),
                               k, 200, ctx)
        K = correspondence_constant(chi, psi, k, ctx)
        assert E.scale == th.scale == 7
        nat = abs(eisenstein_constant(chi, psi, k, ctx))
        for m, (a, b) in enumerate(zip(E.coeffs, th.coeffs)):
            assert abs(a - K * b) <= tol * max(abs(a), nat * max(m, 1) ** (k - 1))


def test_theta_parity_mismatch(ctx):
    a0, a1 = alpha_basis(5, ctx)[0], alpha_basis(5, ctx)[1]
    with pytest.raises(ValueError):
        theta_q_expansion(a0, a1, 4, 10, ctx)
    with pytest.raises(ValueError):
        eisenstein_q_expansion(DirichletCharacter(5, 1), DirichletCharacter(5, 2), 4, 10, ctx)


@pytest.mark.parametrize("c,d,k", [(0, 2, 4), (1, 2, 3), (3, 1, 4)])
def test_transformation_law(ctx, mp, c, d, k):
    A = alpha_basis(7, ctx)
    resid = transform_check(A[c], A[d], k, [mp.mpc(0, "1.2"), mp.mpc("0.2", "1.1")], M_terms=220, ctx=ctx)
    assert resid < mp.mpf(10) ** -40


def test_weak_pair_to_eisenstein_alpha2(ctx, mp):
    t = TensorElement.elementary(5, 5, 2, 2, ctx)
    f = weak_pair_to_eisenstein(to_character_basis(t, ctx), 4, 5, 5, ctx)
    assert len(f.terms) == 4
    th = theta_q_expansion(alpha_basis(5, ctx)[2], alpha_basis(5, ctx)[2], 4, 60, ctx).shifted()
    q = f.q_expansion(60, ctx)
    assert q.scale == th.scale == 1
    scale = max(abs(x) for x in th.coeffs)
    assert max(abs(a - b) for a, b in zip(q.coeffs, th.coeffs)) < mp.mpf(10) ** -60 * scale


def test_combination_algebra_and_json(ctx, mp):
    chi, psi = DirichletCharacter(5, 1), DirichletCharacter(7, 2)
    f = EisensteinCombination.build(3, 5, 7, {(chi, psi): mp.mpc(2, 1)}, ctx)
    g = f + f.scaled(-1, ctx)
    assert g.terms == () or max(abs(c) for _, _, c in g.terms) == 0
    n = f.normalized(ctx)
    assert abs(abs(n.coefficient(chi, psi, ctx)) - 1) < mp.mpf(10) ** -70
    back = EisensteinCombination.from_json(f.to_json(ctx), ctx)
    assert abs(back.coefficient(chi, psi, ctx) - mp.mpc(2, 1)) < mp.mpf(10) ** -70
    with pytest.raises(ValueError):
        EisensteinCombination.build(4, 5, 7, {(chi, psi): 1}, ctx)


def test_q_expansion_truncation_and_tail(ctx, mp):
    q = eisenstein_q_expansion(DirichletCharacter(5, 1), DirichletCharacter(5, 1), 4, 40, ctx)
    assert q.truncation == 40
    tau = mp.mpc(0, 1)
    s = q.shifted()
    assert abs(s.evaluate(tau / 5, ctx) - q.evaluate(tau, ctx)) < mp.mpf(10) ** -10 * abs(q.evaluate(tau, ctx))
    assert q.tail_bound(tau, ctx) < mp.mpf(10) ** -8
    assert q.to_json(ctx)["k"] == 4
