"""Random samplers shared by the tests."""
from iwahori.arith import random_series
from iwahori.linalg import Mat
from iwahori.weyl import AffineWeylElt


def random_entry(F, rng, lo, hi=None, terms=4, zero_rate=0.15):
    if rng.random() < zero_rate:
        return F.zero()
    hi = lo + 4 if hi is None else hi
    return random_series(F, rng, rng.randint(lo, hi), terms)


def random_iwahori(F, rng, n=3, terms=4):
    """Unit diagonal, integral above, divisible by e below."""
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(random_series(F, rng, 0, terms))
            elif i < j:
                row.append(random_entry(F, rng, 0, 3, terms))
            else:
                row.append(random_entry(F, rng, 1, 4, terms))
        rows.append(row)
    return Mat(F, rows)


def random_unipotent(F, rng, n=3, lo=-6, hi=6, terms=4):
    one, zero = F.one(), F.zero()
    return Mat(F, [[one if i == j else zero if i > j else random_entry(F, rng, lo, hi, terms)
                    for j in range(n)] for i in range(n)])


def random_perm(rng, n):
    w = list(range(n))
    rng.shuffle(w)
    return tuple(w)


def random_weyl(rng, n=3, bound=3, sl=False):
    mu = [rng.randint(-bound, bound) for _ in range(n)]
    if sl:
        mu[-1] = -sum(mu[:-1])
    return AffineWeylElt(mu, random_perm(rng, n))


def random_torus(F, rng, n=3, terms=4):
    """Diagonal matrix with unit entries, an element of A(o_L)."""
    zero = F.zero()
    return Mat(F, [[random_series(F, rng, 0, terms) if i == j else zero for j in range(n)]
                   for i in range(n)])
