"""Matrices over truncated Laurent series.

Indices in the public helpers that mirror the textbook definitions (``triple``,
tuple tables) are 1-based; ``Mat.rows`` is an ordinary 0-based nested tuple.
"""
import json
from functools import lru_cache
from itertools import combinations, permutations

from .arith import INF, Series, TextParser, get_field, render_series
from .errors import IndeterminateValuation, PrecisionExhausted


class Mat:
    __slots__ = ("F", "n", "rows")

    def __init__(self, F, rows):
        self.F = F
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @property
    def entries(self):
        return self.rows

    @classmethod
    def identity(cls, F, n):
        one, zero = F.one(), F.zero()
        return cls(F, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diag_eps(cls, F, nu):
        zero = F.zero()
        n = len(nu)
        return cls(F, [[F.eps(nu[i]) if i == j else zero for j in range(n)]
                       for i in range(n)])

    def __mul__(self, other):
        return mat_mul(self, other)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Mat({render_mat(self)!r})"

    def map(self, fn):
        return Mat(self.F, [[fn(x) for x in row] for row in self.rows])

    def sigma(self):
        if self.F.m == 1:
            return self
        return self.map(lambda s: s.sigma())

    def transpose(self):
        return Mat(self.F, list(zip(*self.rows)))

    def agrees(self, other):
        return all(a.agrees(b) for ra, rb in zip(self.rows, other.rows)
                   for a, b in zip(ra, rb))

    def min_prec(self):
        return min(x.prec for row in self.rows for x in row)


def mat_mul(A, B):
    n, m, k = len(A.rows), len(B.rows), len(B.rows[0])
    zero = A.F.zero()
    out = []
    for i in range(n):
        Ai = A.rows[i]
        row = []
        for j in range(k):
            acc = zero
            for t in range(m):
                a = Ai[t]
                if not a.c and a.prec == INF:
                    continue
                b = B.rows[t][j]
                if not b.c and b.prec == INF:
                    continue
                acc = acc + a * b
            row.append(acc)
        out.append(row)
    return Mat(A.F, out)


def _det(rows, idx_r, idx_c, zero):
    """Laplace expansion along the first listed row."""
    k = len(idx_r)
    if k == 1:
        return rows[idx_r[0]][idx_c[0]]
    if k == 2:
        r0, r1 = rows[idx_r[0]], rows[idx_r[1]]
        c0, c1 = idx_c
        return r0[c0] * r1[c1] - r0[c1] * r1[c0]
    acc = zero
    r0 = rows[idx_r[0]]
    rest = idx_r[1:]
    for pos, c in enumerate(idx_c):
        a = r0[c]
        if not a.c and a.prec == INF:
            continue
        term = a * _det(rows, rest, idx_c[:pos] + idx_c[pos + 1:], zero)
        acc = acc - term if pos % 2 else acc + term
    return acc


def minor(M, rows, cols):
    """Determinant of the submatrix on 0-based row and column index tuples."""
    return _det(M.rows, tuple(rows), tuple(cols), M.F.zero())


def mat_det(M):
    idx = tuple(range(M.n))
    return _det(M.rows, idx, idx, M.F.zero())


def mat_inv(M):
    """Inverse via adjugate over determinant."""
    det = mat_det(M)
    if det.is_zero():
        raise IndeterminateValuation("matrix is singular to precision")
    dinv = det.inverse()
    n = M.n
    if n == 1:
        return Mat(M.F, [[dinv]])
    out = []
    idx = tuple(range(n))
    for i in range(n):
        row = []
        for j in range(n):
            cof = minor(M, idx[:j] + idx[j + 1:], idx[:i] + idx[i + 1:])
            if (i + j) % 2:
                cof = -cof
            row.append(cof * dinv)
        out.append(row)
    # an invertible matrix cannot have an inverse that is zero everywhere
    if all(not x.c for row in out for x in row):
        raise PrecisionExhausted("inverse has an empty precision window")
    return Mat(M.F, out)


def unipotent_inverse(g):
    """Inverse of a unipotent upper-triangular matrix, built column by column.

    (g^{-1})_{ij} = -sum_{k=i+1}^{j} g_{ik} (g^{-1})_{kj} for i < j.
    """
    n = g.n
    F = g.F
    one, zero = F.one(), F.zero()
    inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for j in range(n):
        for i in range(j - 1, -1, -1):
            acc = zero
            for k in range(i + 1, j + 1):
                acc = acc + g.rows[i][k] * inv[k][j]
            inv[i][j] = -acc
    return Mat(F, inv)


@lru_cache(maxsize=None)
def tuples(n, m):
    """Increasing m-tuples of 0..n-1 in lexicographic order."""
    return tuple(combinations(range(n), m))


def exterior_power(M, m):
    idx = tuples(M.n, m)
    if m == 1:
        return M
    zero = M.F.zero()
    return Mat(M.F, [[_det(M.rows, r, c, zero) for c in idx] for r in idx])


class Triple:
    __slots__ = ("v", "d", "c")

    def __init__(self, v, d, c):
        self.v, self.d, self.c = v, d, c

    def __iter__(self):
        return iter((self.v, self.d, self.c))

    def __eq__(self, other):
        return tuple(self) == tuple(other)

    def __hash__(self):
        return hash(tuple(self))

    def __repr__(self):
        return f"Triple(v={self.v}, d={self.d}, c={self.c})"


def triple(M):
    """(v, d, c): minimal valuation, its first diagonal from the bottom left, its
    leftmost column on that diagonal.  Diagonal number of entry (i, j) is
    n + j - i with 1-based indices."""
    n = M.n
    v = None
    unknown = []
    for row in M.rows:
        for x in row:
            if x.c:
                if v is None or x.v < v:
                    v = x.v
            elif x.prec != INF:
                unknown.append(x.prec)
    if v is None:
        raise IndeterminateValuation("every entry is zero to precision")
    if unknown and min(unknown) <= v:
        raise IndeterminateValuation(
            f"an entry known only modulo e^{min(unknown)} may have valuation <= {v}")
    d = None
    for i in range(n):
        for j in range(n):
            x = M.rows[i][j]
            if x.c and x.v == v:
                dd = n + j - i
                if d is None or dd < d:
                    d = dd
    c = None
    for j in range(1, n + 1):
        i = j - d + n
        if 1 <= i <= n:
            x = M.rows[i - 1][j - 1]
            if x.c and x.v == v:
                c = j
                break
    return Triple(v, d, c)


def is_iwahori(M):
    """Unit diagonal, integral above, divisible by e below, unit determinant."""
    for i, row in enumerate(M.rows):
        for j, x in enumerate(row):
            if i == j:
                if not x.c:
                    if x.prec > 0:
                        return False
                    raise IndeterminateValuation("diagonal entry undecidable")
                if x.v != 0:
                    return False
            elif i < j:
                if not x.val_at_least(0):
                    return False
            else:
                if not x.val_at_least(1):
                    return False
    det = mat_det(M)
    if not det.c:
        if det.prec > 0:
            return False
        raise IndeterminateValuation("determinant undecidable")
    return det.v == 0


def is_unipotent_upper(g):
    for i, row in enumerate(g.rows):
        for j, x in enumerate(row):
            if i == j and not (x - 1).is_zero():
                return False
            if i > j and not x.is_zero():
                return False
    return True


def in_congruence_subgroup(g, m, N):
    """Membership in U_{m,N}: val(g_ij) >= (j - i) N + m for i < j (m = 0 gives U_N)."""
    n = g.n
    for i in range(n):
        for j in range(i + 1, n):
            bound = (j - i) * N + m
            x = g.rows[i][j]
            if not x.c and x.prec < bound:
                raise IndeterminateValuation(
                    f"entry ({i + 1},{j + 1}) known only modulo e^{x.prec}, need {bound}")
            if x.c and x.v < bound:
                return False
    return True


# -- text and JSON formats ------------------------------------------------

def render_mat(M):
    return "[" + ",".join(
        "[" + ", ".join(render_series(x) for x in row) + "]" for row in M.rows) + "]"


def parse_mat(text, F=None):
    F = F or get_field()
    p = TextParser(text, F)
    p.expect("[")
    rows = []
    while True:
        p.expect("[")
        row = []
        while True:
            row.append(p.series(stop=",]"))
            if p.peek() == ",":
                p.pos += 1
                continue
            p.expect("]")
            break
        rows.append(row)
        if p.peek() == ",":
            p.pos += 1
            continue
        p.expect("]")
        break
    if not p.at_end():
        p.error("trailing input after matrix")
    n = len(rows)
    if any(len(r) != n for r in rows):
        p.error("matrix must be square")
    return Mat(F, rows)


def series_to_json(s):
    return {"vmin": s.v if s.c else None,
            "coeffs": [s.F.digits(c) for c in s.c],
            "prec": None if s.prec == INF else s.prec}


def series_from_json(obj, F):
    prec = INF if obj["prec"] is None else obj["prec"]
    if obj["vmin"] is None:
        return F.zero(prec)
    return Series.from_codes(F, obj["vmin"], [F.encode(d) for d in obj["coeffs"]], prec)


def mat_to_json(M):
    return {"p": M.F.p, "m": M.F.m, "n": M.n,
            "entries": [[series_to_json(x) for x in row] for row in M.rows]}


def mat_from_json(obj, F=None):
    F = F or get_field(obj["p"], obj["m"])
    return Mat(F, [[series_from_json(x, F) for x in row] for row in obj["entries"]])


def dumps_mat(M):
    return json.dumps(mat_to_json(M), sort_keys=True)


def perm_sign(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
              if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def leibniz_det(M):
    """Determinant by the permutation expansion; an independent check of mat_det."""
    n = M.n
    acc = M.F.zero()
    for perm in permutations(range(n)):
        term = M.F.one()
        for i in range(n):
            term = term * M.rows[i][perm[i]]
        acc = acc + term if perm_sign(perm) > 0 else acc - term
    return acc
