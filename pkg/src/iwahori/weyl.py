"""Extended affine Weyl group elements e^mu * w as monomial matrices.

A permutation ``w`` is stored 0-based as the tuple of images, ``w[i] = w(i)``,
acting on basis vectors by ``w v_i = v_{w(i)}``.  Its matrix has a 1 at
``(w(i), i)`` and words compose right to left, so ``s1s2 = s1 o s2``.  The
element ``e^mu w`` therefore has ``e^{mu_r}`` in row ``r``, column ``w^{-1}(r)``.
"""
import re
from fractions import Fraction
from functools import lru_cache

from .errors import NotMonomial, SeriesSyntaxError
from .linalg import Mat, mat_inv, mat_mul


def perm_compose(w, v):
    return tuple(w[v[i]] for i in range(len(v)))


def perm_inverse(w):
    out = [0] * len(w)
    for i, wi in enumerate(w):
        out[wi] = i
    return tuple(out)


def perm_act(w, lam):
    """(w lam)_{w(i)} = lam_i."""
    out = [0] * len(w)
    for i, wi in enumerate(w):
        out[wi] = lam[i]
    return tuple(out)


def simple_reflection(n, k):
    """s_k swapping k and k+1 (1-based k)."""
    if not 1 <= k < n:
        raise ValueError(f"no simple reflection s{k} in rank {n}")
    w = list(range(n))
    w[k - 1], w[k] = w[k], w[k - 1]
    return tuple(w)


def word(n, letters):
    """Permutation of a word such as 's1s2' or '1'."""
    w = tuple(range(n))
    for k in re.findall(r"s(\d)", letters):
        w = perm_compose(w, simple_reflection(n, int(k)))
    return w


NAMES3 = ("1", "s1", "s2", "s1s2", "s2s1", "s1s2s1")
ALIASES = {"eta": "s1s2s1", "s2s1s2": "s1s2s1", "id": "1", "e": "1"}


@lru_cache(maxsize=None)
def named_perms(n):
    if n == 3:
        names = NAMES3
    elif n == 2:
        names = ("1", "s1")
    else:
        names = ()
    return {name: word(n, name) for name in names}


def perm_name(w):
    for name, v in named_perms(len(w)).items():
        if v == tuple(w):
            return name
    return "[" + ",".join(str(i + 1) for i in w) + "]"


def perm_from_name(name, n=3):
    name = ALIASES.get(name.strip(), name.strip())
    table = named_perms(n)
    if name in table:
        return table[name]
    if re.fullmatch(r"(s\d)+", name):
        return word(n, name)
    raise ValueError(f"unknown Weyl group element {name!r}")


def W(n=3):
    """The finite Weyl group as the list of named permutations."""
    return list(named_perms(n).values())


def coxeter_length(w):
    """Inversion count, the length in the simple reflections."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


class AffineWeylElt:
    __slots__ = ("mu", "perm")

    def __init__(self, mu, perm):
        self.mu = tuple(int(x) for x in mu)
        self.perm = tuple(perm)
        if sorted(self.perm) != list(range(len(self.mu))):
            raise ValueError("perm must be a permutation of 0..n-1")

    @property
    def n(self):
        return len(self.mu)

    @property
    def w(self):
        return self.perm

    @classmethod
    def identity(cls, n=3):
        return cls((0,) * n, tuple(range(n)))

    @classmethod
    def translation(cls, mu):
        return cls(mu, tuple(range(len(mu))))

    @classmethod
    def from_perm(cls, w):
        return cls((0,) * len(w), w)

    @classmethod
    def named(cls, name, mu=None, n=3):
        w = perm_from_name(name, n)
        return cls(mu if mu is not None else (0,) * n, w)

    def __mul__(self, other):
        return weyl_compose(self, other)

    def inverse(self):
        winv = perm_inverse(self.perm)
        return AffineWeylElt(tuple(-x for x in perm_act(winv, self.mu)), winv)

    def __eq__(self, other):
        return (isinstance(other, AffineWeylElt) and self.mu == other.mu
                and self.perm == other.perm)

    def __hash__(self):
        return hash((self.mu, self.perm))

    def __repr__(self):
        return render_weyl(self)

    def length_of_perm(self):
        return coxeter_length(self.perm)


def weyl_compose(x, y):
    """e^mu w . e^lam v = e^{mu + w(lam)} wv."""
    wl = perm_act(x.perm, y.mu)
    return AffineWeylElt(tuple(a + b for a, b in zip(x.mu, wl)),
                         perm_compose(x.perm, y.perm))


def weyl_to_mat(x, F):
    n = x.n
    zero = F.zero()
    rows = [[zero] * n for _ in range(n)]
    for i, wi in enumerate(x.perm):
        rows[wi][i] = F.eps(x.mu[wi])
    return Mat(F, rows)


def mat_to_weyl(M):
    n = M.n
    perm = [None] * n
    mu = [None] * n
    for j in range(n):
        for i in range(n):
            x = M.rows[i][j]
            if x.is_zero():
                if x.prec != float("inf"):
                    raise NotMonomial("entry is zero only to precision")
                continue
            if not x.is_monomial() or x.c[0] != 1:
                raise NotMonomial(f"entry ({i + 1},{j + 1}) is not a power of e")
            if perm[j] is not None or mu[i] is not None:
                raise NotMonomial("more than one nonzero entry in a row or column")
            perm[j] = i
            mu[i] = x.v
    if None in perm or None in mu:
        raise NotMonomial("a row or column has no nonzero entry")
    return AffineWeylElt(mu, perm)


# -- the order-3 and order-2 automorphisms of SL_3 -----------------------

S1 = word(3, "s1")
S2 = word(3, "s2")
S1S2 = word(3, "s1s2")
S2S1 = word(3, "s2s1")
ETA = word(3, "s1s2s1")


def tau_elt():
    """e^{(-1,0,0)} s1s2, the matrix [[0,0,e^-1],[1,0,0],[0,1,0]]."""
    return AffineWeylElt((-1, 0, 0), S1S2)


def apply_phi(x):
    """phi(e^mu w) = e^{(-1,0,0) + s1s2 w (0,0,1) + s1s2 mu} s1s2 w s2s1."""
    a = perm_act(perm_compose(S1S2, x.perm), (0, 0, 1))
    b = perm_act(S1S2, x.mu)
    mu = tuple(t + u + v for t, u, v in zip((-1, 0, 0), a, b))
    return AffineWeylElt(mu, perm_compose(perm_compose(S1S2, x.perm), S2S1))


def apply_psi(x):
    """psi(e^mu w) = e^{-eta mu} eta w eta."""
    mu = tuple(-t for t in perm_act(ETA, x.mu))
    return AffineWeylElt(mu, perm_compose(perm_compose(ETA, x.perm), ETA))


def apply_phi_mat(g):
    F = g.F
    tau = weyl_to_mat(tau_elt(), F)
    tau_inv = weyl_to_mat(tau_elt().inverse(), F)
    return mat_mul(mat_mul(tau, g), tau_inv)


def apply_psi_mat(g):
    F = g.F
    eta = weyl_to_mat(AffineWeylElt.from_perm(ETA), F)
    return mat_mul(mat_mul(eta, mat_inv(g.transpose())), eta)


# -- the standard apartment ----------------------------------------------

class ApartmentPoint(tuple):
    """Sum-zero triple of exact rationals."""

    def __new__(cls, coords):
        coords = tuple(Fraction(c) for c in coords)
        if sum(coords) != 0:
            raise ValueError("apartment coordinates must sum to zero")
        return super().__new__(cls, coords)

    @property
    def coords(self):
        return tuple(self)

    def __add__(self, other):
        return ApartmentPoint(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return tuple(a - b for a, b in zip(self, other))

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self) + ")"


P0 = ApartmentPoint((Fraction(1, 3), 0, Fraction(-1, 3)))
# the special vertex of the base alcove
ORIGIN = ApartmentPoint((0, 0, 0))


def act_on_point(x, p):
    """p -> mu + w(p)."""
    wp = perm_act(x.perm, tuple(p))
    return ApartmentPoint(m + c for m, c in zip(x.mu, wp))


# -- text format "e^(d,e,f)*w" -------------------------------------------

def render_weyl(x):
    return "e^(" + ",".join(str(m) for m in x.mu) + ")*" + perm_name(x.perm)


_WEYL_RE = re.compile(r"\s*(?:e\^\(\s*([-+\d\s,]*?)\s*\)\s*(?:\*\s*([\w\[\],]+))?|([\w]+))\s*$")


def parse_weyl(text, n=3):
    m = _WEYL_RE.match(text)
    if not m:
        raise SeriesSyntaxError("expected 'e^(d,e,f)*w'", text, 0)
    if m.group(3) is not None:
        w = perm_from_name(m.group(3), n)
        return AffineWeylElt((0,) * len(w), w)
    try:
        mu = tuple(int(t) for t in m.group(1).split(","))
    except ValueError:
        raise SeriesSyntaxError("coweight must be integers separated by commas",
                                text, text.find("(") + 1) from None
    name = m.group(2) or "1"
    if name.startswith("["):
        w = tuple(int(t) - 1 for t in name.strip("[]").split(","))
    else:
        w = perm_from_name(name, len(mu))
    return AffineWeylElt(mu, w)
