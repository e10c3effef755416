import random

import pytest
from hypothesis import given, settings, strategies as st

from iwahori.adlv import (abc_invariants, class_key, f_bar_nu_table, f_nu, f_nu_direct,
                          f_nu_inverse, h_map, in_adlv, output_precision)
from iwahori.arith import get_field, random_series
from iwahori.coset import classify_double_coset
from iwahori.errors import InvalidTwist, TooLarge
from iwahori.linalg import Mat, in_congruence_subgroup, is_unipotent_upper, mat_mul
from iwahori.weyl import NAMES3, AffineWeylElt, perm_from_name, perm_inverse, weyl_to_mat

from util import random_entry, random_iwahori, random_unipotent

NU3 = [(1, 0, -1), (2, 0, -2), (3, 1, -4), (5, 2, 0)]


def u1(F, a, b, c):
    one, zero = F.one(), F.zero()
    return Mat(F, [[one, a, b], [zero, one, c], [zero, zero, one]])


def perm_mat(F, w):
    return weyl_to_mat(AffineWeylElt.from_perm(w), F)


def test_h_map_identity(F5):
    for nu in NU3:
        assert h_map(Mat.identity(F5, 3), nu) == Mat.diag_eps(F5, nu)
        assert in_adlv(Mat.identity(F5, 3), AffineWeylElt.translation(nu), nu)


@pytest.mark.parametrize("name", NAMES3)
def test_h_map_image_matrix(F4, rng, name):
    w = perm_from_name(name)
    W, Winv = perm_mat(F4, w), perm_mat(F4, perm_inverse(w))
    for _ in range(10):
        nu = rng.choice(NU3)
        u = random_unipotent(F4, rng)
        abc = abc_invariants(u, nu)
        i, j, k = nu
        zero = F4.zero()
        inner = Mat(F4, [[F4.eps(i), abc.alpha, abc.beta], [zero, F4.eps(j), abc.gamma],
                         [zero, zero, F4.eps(k)]])
        expected = mat_mul(mat_mul(Winv, inner), W)
        assert h_map(mat_mul(u, W), nu).agrees(expected)


def test_h_map_right_iwahori_invariance(F5, rng):
    for _ in range(30):
        nu = rng.choice(NU3)
        g = random_unipotent(F5, rng)
        N = random_iwahori(F5, rng)
        assert classify_double_coset(h_map(mat_mul(g, N), nu)) == \
            classify_double_coset(h_map(g, nu))


def test_h_map_constant_torus(F4, rng):
    # a diagonal matrix with F_p coefficients is fixed by sigma, so h is unchanged
    one, zero = F4.one(), F4.zero()
    tau = Mat(F4, [[one + F4.eps(1), zero, zero], [zero, one, zero],
                   [zero, zero, one + F4.eps(2)]])
    for _ in range(20):
        nu = rng.choice(NU3)
        g = random_unipotent(F4, rng)
        assert classify_double_coset(h_map(mat_mul(tau, g), nu)) == \
            classify_double_coset(h_map(g, nu))


def test_family_one_witness(F5, rng):
    nu = (1, 0, -1)
    x = AffineWeylElt.translation(nu)
    for _ in range(30):
        g = u1(F5, *(random_series(F5, rng, rng.randint(1, 5), 4) for _ in range(3)))
        assert in_adlv(g, x, nu)


def test_abc_identity(F5):
    abc = abc_invariants(Mat.identity(F5, 3), (1, 0, -1))
    assert abc.alpha.is_zero() and abc.beta.is_zero() and abc.gamma.is_zero()


def test_abc_example(F5):
    g = u1(F5, F5.eps(-1), F5.zero(), F5.zero())
    abc = abc_invariants(g, (1, 0, -1))
    assert abc.alpha == F5.one() - F5.eps(-1)
    assert abc.beta.is_zero() and abc.gamma.is_zero()


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (5, 1), (2, 2)])
def test_minor_identity(p, m):
    F = get_field(p, m, 32)
    rng = random.Random(p + 10 * m)
    for _ in range(125):
        nu = rng.choice(NU3)
        g = random_unipotent(F, rng)
        abc = abc_invariants(g, nu)
        assert abc.minor.agrees(abc.beta.shift(nu[1]) - abc.alpha * abc.gamma)


def test_f_nu_identity(F5):
    assert f_nu(Mat.identity(F5, 3), (1, 0, -1)) == Mat.identity(F5, 3)
    assert f_nu_inverse(Mat.identity(F5, 3), (1, 0, -1)) == Mat.identity(F5, 3)


def test_f_nu_example(F5):
    one, zero = F5.one(), F5.zero()
    g = Mat(F5, [[one, F5.eps(-1)], [zero, one]])
    assert f_nu(g, (1, -1)).rows[0][1] == F5.eps(1) - F5.eps(-1)


@pytest.mark.parametrize("n", [2, 3])
def test_recursion_matches_definition(F4, rng, n):
    for _ in range(100):
        nu = tuple(sorted(rng.sample(range(-5, 6), n), reverse=True))
        g = random_unipotent(F4, rng, n)
        f = f_nu(g, nu)
        assert is_unipotent_upper(f)
        assert f.agrees(f_nu_direct(g, nu))


@pytest.mark.parametrize("n", [2, 3])
def test_inverse_round_trip(F5, rng, n):
    for _ in range(100):
        nu = tuple(sorted(rng.sample(range(-5, 6), n), reverse=True))
        g = random_unipotent(F5, rng, n)
        back = f_nu_inverse(f_nu(g, nu), nu)
        assert output_precision(back) >= 8
        assert back.agrees(g)
        h = random_unipotent(F5, rng, n)
        assert f_nu(f_nu_inverse(h, nu), nu).agrees(h)


def test_inverse_requires_strictly_dominant(F5):
    with pytest.raises(InvalidTwist):
        f_nu_inverse(Mat.identity(F5, 3), (1, 1, -2))


def test_integral_matrices_are_preserved(F5, rng):
    for _ in range(100):
        nu = rng.choice(NU3)
        g = random_unipotent(F5, rng, lo=0, hi=6)
        assert in_congruence_subgroup(f_nu(g, nu), 0, 0)
        assert in_congruence_subgroup(f_nu_inverse(g, nu), 0, 0)


@pytest.mark.parametrize("N", [-2, 1, 3])
def test_congruence_subgroups_are_preserved(F5, rng, N):
    for _ in range(40):
        nu = rng.choice(NU3)
        one, zero = F5.one(), F5.zero()
        g = Mat(F5, [[one, random_entry(F5, rng, N, N + 4), random_entry(F5, rng, 2 * N, 2 * N + 4)],
                     [zero, one, random_entry(F5, rng, N, N + 4)], [zero, zero, one]])
        assert in_congruence_subgroup(g, 0, N)
        assert in_congruence_subgroup(f_nu(g, nu), 0, N)
        assert in_congruence_subgroup(f_nu_inverse(g, nu), 0, N)


def test_twist_by_dominant_nu_keeps_congruence_subgroup(F5, rng):
    for _ in range(60):
        nu = rng.choice(NU3)
        m, N = rng.randint(1, 3), rng.randint(-2, 2)
        one, zero = F5.one(), F5.zero()
        g = Mat(F5, [[one, random_entry(F5, rng, N + m, N + m + 4),
                      random_entry(F5, rng, 2 * N + m, 2 * N + m + 4)],
                     [zero, one, random_entry(F5, rng, N + m, N + m + 4)], [zero, zero, one]])
        conj = Mat(F5, [[g.rows[i][j].shift(nu[i] - nu[j]) for j in range(3)] for i in range(3)])
        assert in_congruence_subgroup(conj, m, N)


def test_val_of_first_superdiagonal_entry(F5, rng):
    for _ in range(200):
        nu = rng.choice(NU3)
        g = random_unipotent(F5, rng)
        if g.rows[0][1].is_zero():
            continue
        assert f_nu(g, nu).rows[0][1].valuation() == g.rows[0][1].valuation()


def test_injectivity(F5, rng):
    for _ in range(50):
        nu = rng.choice(NU3)
        g1, g2 = random_unipotent(F5, rng), random_unipotent(F5, rng)
        if not g1.agrees(g2):
            assert not f_nu(g1, nu).agrees(f_nu(g2, nu))


@pytest.mark.parametrize("name", ["s1", "s2", "s1s2", "s1s2s1"])
def test_conjugation_intertwining(F5, rng, name):
    w = perm_from_name(name)
    W, Winv = perm_mat(F5, w), perm_mat(F5, perm_inverse(w))
    for _ in range(20):
        nu = rng.choice(NU3)
        h = random_unipotent(F5, rng)
        # keep the entries that stay upper triangular after conjugation by w
        rows = [list(r) for r in h.rows]
        for i in range(3):
            for j in range(i + 1, 3):
                if w[i] > w[j]:
                    rows[i][j] = F5.zero()
        h = Mat(F5, rows)
        winv_nu = tuple(nu[w[i]] for i in range(3))
        lhs = f_nu_direct(h, winv_nu)
        rhs = mat_mul(mat_mul(Winv, f_nu(mat_mul(mat_mul(W, h), Winv), nu)), W)
        assert lhs.agrees(rhs)


@pytest.mark.parametrize("n,p,size", [(2, 2, 2), (2, 3, 3), (3, 2, 8)])
def test_f_bar_table_is_bijection(n, p, size):
    F = get_field(p, 1, 32)
    nu = (1, -1) if n == 2 else (1, 0, -1)
    table = f_bar_nu_table(n, 1, 0, nu, F)
    assert len(table) == size
    assert table.is_bijection()


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_f_bar_representative_independence(n, p):
    F = get_field(p, 1, 32)
    rng = random.Random(n * 10 + p)
    nu = (2, -1) if n == 2 else (2, 0, -1)
    m, N = 1, 0
    table = f_bar_nu_table(n, m, N, nu, F)
    for key, image in table.mapping.items():
        for _ in range(4):
            one, zero = F.one(), F.zero()
            rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
            for s, (i, j) in enumerate((i, j) for i in range(n) for j in range(i + 1, n)):
                lo = (j - i) * N
                # the class entry plus a random tail inside U_{m,N}
                rows[i][j] = random_series(F, rng, lo + m, 3, unit_lead=False)
                for t, code in enumerate(key[s]):
                    rows[i][j] = rows[i][j] + F.eps(lo + t, code)
            g = Mat(F, rows)
            assert class_key(g, m, N) == key
            assert class_key(f_nu(g, nu), m, N) == image


def test_f_bar_too_large(F5):
    with pytest.raises(TooLarge):
        f_bar_nu_table(3, 2, 0, (1, 0, -1), F5)


@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_f_nu_two_by_two_round_trip(v, r, seed):
    F = get_field(3, 1, 32)
    rng = random.Random(seed)
    one, zero = F.one(), F.zero()
    g = Mat(F, [[one, random_series(F, rng, v, 4)], [zero, one]])
    nu = (r, 0)
    assert f_nu_inverse(f_nu(g, nu), nu).agrees(g)
