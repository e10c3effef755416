"""Iwahori double coset classification and U'-orbit retraction."""
from math import comb

from .arith import INF
from .errors import InconsistentTuples, IndeterminateValuation
from .linalg import Mat, exterior_power, triple, tuples
from .weyl import AffineWeylElt, perm_inverse


def classify_double_coset(M):
    """The x in the extended affine Weyl group with M in I x I.

    The triple (v_m, d_m, c_m) of the m-th exterior power selects a row tuple
    (index c_m - d_m + C(n, m)) and a column tuple (index c_m).  Consecutive
    tuples differ by one index (i_m, j_m), and x has e^{v_m - v_{m-1}} there.
    """
    n = M.n
    mu = [None] * n
    perm = [None] * n
    prev_rows, prev_cols, prev_v = frozenset(), frozenset(), 0
    for m in range(1, n + 1):
        t = triple(exterior_power(M, m))
        table = tuples(n, m)
        row_idx = t.c - t.d + comb(n, m)
        rows = frozenset(table[row_idx - 1])
        cols = frozenset(table[t.c - 1])
        if not (prev_rows < rows and prev_cols < cols):
            raise InconsistentTuples(
                f"tuples of the exterior power {m} do not extend those of {m - 1}")
        (i,) = rows - prev_rows
        (j,) = cols - prev_cols
        mu[i] = t.v - prev_v
        perm[j] = i
        prev_rows, prev_cols, prev_v = rows, cols, t.v
    return AffineWeylElt(mu, perm)


def _pivot(row, cols):
    """Leftmost entry of minimal valuation among the given columns."""
    best, best_v = None, None
    unknown = INF
    for col in cols:
        x = row[col]
        if x.c:
            if best is None or x.v < best_v:
                best, best_v = col, x.v
        elif x.prec < unknown:
            unknown = x.prec
    if best is None:
        raise IndeterminateValuation("pivot row is zero to precision")
    if unknown <= best_v:
        raise IndeterminateValuation(
            f"an entry known modulo e^{unknown} competes with pivot valuation {best_v}")
    return best, best_v


def _row_order(w):
    """Rows r_i = w^{-1}(i) for i = n, ..., 1."""
    winv = perm_inverse(w)
    return [winv[i] for i in range(len(w) - 1, -1, -1)]


def retract(M, w):
    """The x with M in w^{-1} U_1 w x I.

    Row operations come from U' = w^{-1} U_1 w and may add row b to row a when
    w(a) < w(b); column operations come from I.  Each processed row keeps only
    its pivot, so the elimination reduces to Schur complements on the rows
    still to be processed.
    """
    n = M.n
    rows = [list(r) for r in M.rows]
    live_rows = set(range(n))
    cols = list(range(n))
    mu = [None] * n
    perm = [None] * n
    for r in _row_order(w):
        live_rows.discard(r)
        c, v = _pivot(rows[r], cols)
        mu[r] = v
        perm[c] = r
        cols.remove(c)
        if not live_rows or not cols:
            continue
        pinv = rows[r][c].inverse()
        for b in cols:
            x = rows[r][b]
            if not x.c and x.prec == INF:
                continue
            t = x * pinv
            for a in live_rows:
                y = rows[a][c]
                if not y.c and y.prec == INF:
                    continue
                rows[a][b] = rows[a][b] - y * t
    return AffineWeylElt(mu, perm)


def _elementary(F, n, i, j, coef):
    one, zero = F.one(), F.zero()
    rows = [[one if a == b else zero for b in range(n)] for a in range(n)]
    rows[i][j] = coef
    return rows


def retract_factors(M, w):
    """Return (u, x, k) with M = u x k, u in w^{-1} U_1 w and k in I.

    Slower than :func:`retract`; it records every operation so the result can
    be checked independently.
    """
    F = M.F
    n = M.n
    A = [list(r) for r in M.rows]
    one, zero = F.one(), F.zero()
    Linv = [[one if a == b else zero for b in range(n)] for a in range(n)]
    Rinv = [[one if a == b else zero for b in range(n)] for a in range(n)]
    done_rows, cols = [], list(range(n))
    mu = [None] * n
    perm = [None] * n
    for r in _row_order(w):
        live = [a for a in range(n) if a != r and a not in done_rows]
        c, v = _pivot(A[r], cols)
        mu[r] = v
        perm[c] = r
        pinv = A[r][c].inverse()
        for b in range(n):
            if b == c or A[r][b].is_zero():
                continue
            t = A[r][b] * pinv
            # column b -= t * column c; record the inverse operation on R^{-1}
            for a in range(n):
                A[a][b] = A[a][b] - A[a][c] * t
            for b2 in range(n):
                Rinv[c][b2] = Rinv[c][b2] + t * Rinv[b][b2]
        for a in live:
            if A[a][c].is_zero():
                continue
            s = A[a][c] * pinv
            for b in range(n):
                A[a][b] = A[a][b] - s * A[r][b]
            # inverse of the row operation, accumulated on the right of L^{-1}
            for a2 in range(n):
                Linv[a2][r] = Linv[a2][r] + Linv[a2][a] * s
        done_rows.append(r)
        cols.remove(c)
    x = AffineWeylElt(mu, perm)
    # A is monomial: A[r][c] = e^v * unit; fold the units into k
    units = [None] * n
    for c in range(n):
        r = perm[c]
        units[c] = A[r][c].shift(-mu[r])
    for c in range(n):
        for b in range(n):
            Rinv[c][b] = units[c] * Rinv[c][b]
    return Mat(F, Linv), x, Mat(F, Rinv)
