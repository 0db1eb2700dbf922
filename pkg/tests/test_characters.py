import mpmath
import pytest
from hypothesis import given, strategies as st

from vanishforge.bernoulli import bernoulli_number
from vanishforge.characters import (
    DirichletCharacter,
    dft,
    dirichlet_l,
    dirichlet_l_negative,
    enumerate_characters,
    gauss_sum,
    generalized_bernoulli,
    is_prime,
    primitive_root,
)

PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]


def test_primes_and_roots():
    assert [p for p in range(2, 40) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    assert primitive_root(5) == 2 and primitive_root(7) == 3 and primitive_root(23) == 5


def test_bernoulli_numbers():
    assert bernoulli_number(1) == mpmath.mpf(-0.5)
    for n in range(0, 30):
        assert float(bernoulli_number(n)) == pytest.approx(float(mpmath.bernoulli(n)), rel=1e-14, abs=1e-300)


def test_chi5_conventions(ctx, mp):
    chi = DirichletCharacter(5, 1)
    assert abs(chi.value(2, ctx) - 1j) < 1e-70
    assert chi.parity == -1 and chi.conj() == DirichletCharacter(5, 3)
    assert chi.value(5, ctx) == 0
    # G(chi_5) = i (-15 + 20 i)^(1/4), principal branch
    expected = 1j * mp.root(mp.mpc(-15, 20), 4)
    assert abs(gauss_sum(chi, ctx) - expected) < mp.mpf(10) ** -70


@given(st.sampled_from(PRIMES), st.data())
def test_gauss_sum_modulus(p, data):
    from vanishforge.context import DEFAULT_CONTEXT as c

    j = data.draw(st.integers(1, p - 2))
    g = gauss_sum(DirichletCharacter(p, j), c)
    assert abs(abs(g) ** 2 - p) <= p * c.mp.mpf(2) ** -(c.precision_bits // 2)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_orthogonality(ctx, mp, p):
    chars = [DirichletCharacter(p, j) for j in range(p - 1)]
    for a in chars:
        for b in chars:
            s = mp.fsum(a.value(n, ctx) * mp.conj(b.value(n, ctx)) for n in range(p))
            assert abs(s - ((p - 1) if a == b else 0)) < mp.mpf(10) ** -60


def test_enumerate_excludes_principal():
    chars = enumerate_characters(7)
    assert len(chars) == 5 and not any(c.is_principal for c in chars)
    assert all(c.conductor == 7 for c in chars)


@given(st.lists(st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)), min_size=1, max_size=64))
def test_dft_round_trip(vals):
    from vanishforge.context import DEFAULT_CONTEXT as c

    mp = c.mp
    x = [mp.mpc(a, b) for a, b in vals]
    y = dft(dft(x, "forward", c), "inverse", c)
    scale = max([abs(v) for v in x] + [mp.mpf(1)])
    assert max(abs(a - b) for a, b in zip(x, y)) <= scale * mp.mpf(2) ** -200


def test_dft_direct(ctx, mp):
    x = [mp.mpc(n * n, 1 - n) for n in range(7)]
    f = dft(x, "forward", ctx)
    for m in range(7):
        direct = mp.fsum(x[n] * mp.expjpi(mp.mpf(-2 * m * n) / 7) for n in range(7))
        assert abs(f[m] - direct) < mp.mpf(10) ** -70


def _mpmath_l(chi, s, dps=50):
    # independent path: mpmath's own Hurwitz zeta
    with mpmath.workdps(dps):
        p = chi.modulus
        vals = [complex(chi.value(a)) for a in range(p)]
        if s == 1:
            return -mpmath.fsum(mpmath.mpc(vals[a]) * mpmath.digamma(mpmath.mpf(a) / p) for a in range(1, p)) / p
        return mpmath.power(p, -s) * mpmath.fsum(mpmath.mpc(vals[a]) * mpmath.zeta(s, mpmath.mpf(a) / p)
                                                 for a in range(1, p))


@pytest.mark.parametrize("p,j,s", [(5, 1, 2), (5, 2, 3), (7, 3, 1), (7, 1, mpmath.mpf("0.5")),
                                   (11, 4, 5), (5, 1, mpmath.mpc("0.5", "3"))])
def test_dirichlet_l_against_mpmath(ctx, p, j, s):
    chi = DirichletCharacter(p, j)
    ours = dirichlet_l(chi, s, ctx)
    ref = _mpmath_l(chi, s)
    assert abs(complex(ours) - complex(ref)) < 1e-14 * max(1.0, abs(complex(ref)))


@pytest.mark.parametrize("p", [5, 7, 11])
def test_dirichlet_l_two_paths_at_nonpositive_integers(ctx, mp, p):
    for chi in enumerate_characters(p):
        for n in range(0, 11):
            a = dirichlet_l(chi, -n, ctx)
            b = dirichlet_l_negative(chi, n + 1, ctx)
            assert b == -generalized_bernoulli(chi, n + 1, ctx) / (n + 1)
            scale = max(abs(b), mp.mpf(1))
            assert abs(a - b) <= scale * ctx.vanish


def test_character_json_round_trip():
    chi = DirichletCharacter(11, 7)
    assert DirichletCharacter.from_json(chi.to_json()) == chi
    assert str(chi) == "chi[11,7]"


def test_invalid_character():
    with pytest.raises(ValueError):
        DirichletCharacter(9, 1)
