"""Twisted conjugation g -> g^{-1} e^nu sigma(g), membership in X_x(e^nu), and
the unipotent map f_nu(g) = g^{-1} e^nu sigma(g) e^{-nu} with its inverse."""
from collections import namedtuple
from itertools import product

from .arith import INF, Series, solve_twisted
from .coset import classify_double_coset
from .errors import InvalidTwist, TooLarge
from .linalg import Mat, in_congruence_subgroup, mat_inv, mat_mul, unipotent_inverse


class Coweight(tuple):
    """Integer coweight; dominance and the sum condition are flags, not rules."""

    def __new__(cls, nu):
        return super().__new__(cls, (int(x) for x in nu))

    @property
    def nu(self):
        return tuple(self)

    def strictly_dominant(self):
        return all(a > b for a, b in zip(self, self[1:]))

    def is_sl(self):
        return sum(self) == 0


def h_map(g, nu):
    """g^{-1} e^nu sigma(g)."""
    F = g.F
    sg = g.sigma()
    twisted = Mat(F, [[x.shift(nu[i]) for x in row] for i, row in enumerate(sg.rows)])
    return mat_mul(mat_inv(g), twisted)


def in_adlv(g, x, nu):
    return classify_double_coset(h_map(g, nu)) == x


ABC = namedtuple("ABC", "alpha beta gamma minor")


def abc_invariants(g, nu):
    """The entries of u^{-1} e^nu sigma(u) for u = [[1,a,b],[0,1,c],[0,0,1]].

    alpha = e^i s(a) - e^j a, gamma = e^j s(c) - e^k c,
    beta = e^i s(b) - e^k b - a gamma,
    minor = e^{i+j} s(b) - e^{k+j} b - e^i s(a) gamma  (equal to beta e^j - alpha gamma).
    """
    i, j, k = nu
    a, b, c = g.rows[0][1], g.rows[0][2], g.rows[1][2]
    sa, sb, sc = a.sigma(), b.sigma(), c.sigma()
    alpha = sa.shift(i) - a.shift(j)
    gamma = sc.shift(j) - c.shift(k)
    beta = sb.shift(i) - b.shift(k) - a * gamma
    minor = sb.shift(i + j) - b.shift(k + j) - (sa * gamma).shift(i)
    return ABC(alpha, beta, gamma, minor)


def _check_dominant(nu):
    if not all(a > b for a, b in zip(nu, nu[1:])):
        raise InvalidTwist(f"coweight {tuple(nu)} is not strictly dominant")


def f_nu(g, nu):
    """f_nu by the entrywise recursion

    f_ij = e^{nu_i - nu_j} s(g_ij) - g_ij - sum_{k=i+1}^{j-1} g_ik f_kj.
    """
    n = g.n
    F = g.F
    one, zero = F.one(), F.zero()
    f = [[one if a == b else zero for b in range(n)] for a in range(n)]
    for span in range(1, n):
        for i in range(n - span):
            j = i + span
            gij = g.rows[i][j]
            acc = gij.sigma().shift(nu[i] - nu[j]) - gij
            for k in range(i + 1, j):
                acc = acc - g.rows[i][k] * f[k][j]
            f[i][j] = acc
    return Mat(F, f)


def f_nu_direct(g, nu):
    """f_nu from its definition g^{-1} e^nu sigma(g) e^{-nu}."""
    F = g.F
    sg = g.sigma()
    n = g.n
    conj = Mat(F, [[sg.rows[i][j].shift(nu[i] - nu[j]) for j in range(n)]
                   for i in range(n)])
    return mat_mul(unipotent_inverse(g), conj)


def f_nu_inverse(h, nu, window=None):
    """The unique unipotent g with f_nu(g) = h, for strictly dominant nu.

    Entries are found by increasing distance from the diagonal from
    e^{nu_i - nu_j} s(g_ij) - g_ij = h_ij + sum_{k=i+1}^{j-1} g_ik h_kj.
    """
    _check_dominant(nu)
    n = h.n
    F = h.F
    one, zero = F.one(), F.zero()
    g = [[one if a == b else zero for b in range(n)] for a in range(n)]
    for span in range(1, n):
        for i in range(n - span):
            j = i + span
            rhs = h.rows[i][j]
            for k in range(i + 1, j):
                rhs = rhs + g[i][k] * h.rows[k][j]
            g[i][j] = solve_twisted(nu[i] - nu[j], rhs, window)
    return Mat(F, g)


def output_precision(g):
    """Smallest absolute precision among the strictly upper entries."""
    n = g.n
    return min((g.rows[i][j].prec for i in range(n) for j in range(i + 1, n)),
               default=INF)


# -- the finite quotient U_N / U_{m,N} -------------------------------------

def _class_key(g, m, N):
    """Entries of g reduced modulo e^{(j-i)N + m}."""
    n = g.n
    key = []
    for i in range(n):
        for j in range(i + 1, n):
            lo, hi = (j - i) * N, (j - i) * N + m
            x = g.rows[i][j]
            key.append(tuple(x.coeff(t).code for t in range(lo, hi)))
    return tuple(key)


def quotient_representatives(n, m, N, F):
    """Unipotent matrices with g_ij a polynomial on exponents (j-i)N .. (j-i)N+m-1."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    one, zero = F.one(), F.zero()
    for digits in product(range(F.q), repeat=m * len(slots)):
        rows = [[one if a == b else zero for b in range(n)] for a in range(n)]
        for s, (i, j) in enumerate(slots):
            coeffs = digits[s * m:(s + 1) * m]
            rows[i][j] = Series.from_codes(F, (j - i) * N, coeffs)
        yield Mat(F, rows)


class FBarTable:
    """The map induced by f_nu on U_N / U_{m,N}, keyed by reduced entries."""

    def __init__(self, n, m, N, nu, F, mapping):
        self.n, self.m, self.N, self.nu, self.F = n, m, N, tuple(nu), F
        self.mapping = mapping

    def __len__(self):
        return len(self.mapping)

    def is_bijection(self):
        return sorted(self.mapping) == sorted(self.mapping.values())


def f_bar_nu_table(n, m, N, nu, F, limit=4096):
    _check_dominant(nu)
    size = F.q ** (n * (n - 1) * m // 2)
    if size > limit:
        raise TooLarge(f"quotient has {size} elements, limit is {limit}")
    mapping = {}
    for g in quotient_representatives(n, m, N, F):
        if not in_congruence_subgroup(g, 0, N):
            raise AssertionError("representative outside U_N")
        mapping[_class_key(g, m, N)] = _class_key(f_nu(g, nu), m, N)
    table = FBarTable(n, m, N, nu, F, mapping)
    if len(mapping) != size or not table.is_bijection():
        raise AssertionError("induced map on the quotient is not a bijection")
    return table


def class_key(g, m, N):
    return _class_key(g, m, N)
