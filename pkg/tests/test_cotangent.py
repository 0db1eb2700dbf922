from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from vanishforge.cotangent import (
    DeltaTable,
    berndt_yeap_closed_form,
    cot_nodes,
    cot_power_sum,
    cot_power_sums,
    delta_coeff,
    delta_row,
    stirling_star,
)


def test_stirling_star_against_definition():
    for n in range(0, 25):
        for m in range(0, n + 1):
            direct = sum((-1) ** j * comb(m, j) * (m - j) ** n for j in range(m + 1))
            assert stirling_star(n, m) == direct
    assert stirling_star(5, 2) == factorial(2) * 15


def test_closed_form_small_values():
    assert berndt_yeap_closed_form(1, 5) == 4
    assert berndt_yeap_closed_form(1, 7) == 10
    assert berndt_yeap_closed_form(2, 5) == Fraction(36, 5)
    for N in range(2, 60):
        assert berndt_yeap_closed_form(1, N) == Fraction((N - 1) * (N - 2), 3)


@pytest.mark.parametrize("n", range(1, 7))
def test_closed_form_matches_sum(ctx, mp, n):
    for N in range(3, 51):
        num = cot_power_sum([1] * (N - 1), N, 2 * n, ctx)
        exact = berndt_yeap_closed_form(n, N)
        ref = mp.mpf(exact.numerator) / exact.denominator
        assert abs(num - ref) <= abs(ref) * mp.mpf(2) ** -(ctx.precision_bits // 2)


def test_cot_nodes(ctx, mp):
    nodes = cot_nodes(8, ctx)
    assert nodes[3] == 0
    assert abs(nodes[1] - 1) < mp.mpf(10) ** -70
    assert all(abs(nodes[r] + nodes[6 - r]) < mp.mpf(10) ** -70 for r in range(7))


def test_power_sums_agree(ctx, mp):
    beta = [mp.mpc(r, -r * r) for r in range(1, 9)]
    many = cot_power_sums(beta, 9, 6, ctx)
    for u in range(7):
        assert abs(many[u] - cot_power_sum(beta, 9, u, ctx)) < mp.mpf(10) ** -60 * (1 + abs(many[u]))


@given(st.integers(3, 30), st.integers(0, 8), st.data())
def test_symmetric_vectors_kill_opposite_powers(N, u, data):
    from vanishforge.context import DEFAULT_CONTEXT as c

    mp = c.mp
    half = data.draw(st.lists(st.floats(-10, 10), min_size=N - 1, max_size=N - 1))
    sign = -1 if u % 2 == 0 else 1  # odd beta kills even u, even beta kills odd u
    beta = [mp.mpf(0)] * (N - 1)
    for r in range(1, N):
        s = N - r
        if r < s:
            beta[r - 1] = mp.mpf(half[r - 1])
            beta[s - 1] = sign * mp.mpf(half[r - 1])
        elif r == s and sign == 1:
            beta[r - 1] = mp.mpf(half[r - 1])
    total = cot_power_sum(beta, N, u, c)
    scale = sum(abs(b) for b in beta) * max(abs(x) for x in cot_nodes(N, c)) ** u + 1
    assert abs(total) <= scale * mp.mpf(2) ** -200


def test_delta_rows_real_except_first():
    assert delta_coeff(1, 0) == (Fraction(0), Fraction(-1))
    for nu in range(1, 30):
        for u, (re, im) in enumerate(delta_row(nu)):
            if (nu, u) != (1, 0):
                assert im == 0


def test_delta_table_indexing():
    t = DeltaTable(6)
    assert t[3, 2] == delta_coeff(3, 2)
    with pytest.raises(ValueError):
        delta_coeff(3, 4)


def test_delta_leading_terms():
    # omega has a z^0 coefficient sum beta(r) (i cot(pi r/N) - 1)/2, so delta_1 = (-i, 1)/2 up to the
    # normalisation; the leading coefficient of the cot^nu term is nonzero for every nu
    for nu in range(1, 20):
        re, im = delta_coeff(nu, nu)
        assert re != 0 or im != 0
