"""Verification harness for the SL_3 case families and SL_2 stability.

Witnesses g = u w are drawn through the bijection u -> u^{-1} e^nu sigma(u):
a random upper triangular H with diagonal e^nu is kept when w^{-1} H w lies in
I x I, and u is recovered with ``f_nu_inverse``.  Every recorded fact about a
witness (membership, valuations, hexagon, stratum) is then recomputed from g.
"""
import json
import random
from collections import OrderedDict, namedtuple
from functools import lru_cache
from itertools import product

from .adlv import f_nu_inverse, in_adlv
from .arith import INF, get_field, random_series, solve_twisted
from .coset import classify_double_coset, retract
from .errors import (Infeasible, IndeterminateValuation, IwahoriError, NotReducible,
                     PrecisionExhausted)
from .families import (FAMILIES, STATED, STRATIFIED, evaluate, family, get_subcase,
                       table_elements)
from .hexagon import (Hexagon, cone_constraint, convex_hull, hexagon_contains,
                      hexagon_of, is_convex_position, point_in_hull,
                      shares_opposite_vertices, sides_parallel_to_roots, SIDES)
from .linalg import Mat, mat_mul, render_mat
from .weyl import (ETA, NAMES3, AffineWeylElt, apply_phi, apply_phi_mat, apply_psi,
                   apply_psi_mat, coxeter_length, perm_act, perm_from_name,
                   perm_inverse, perm_name, render_weyl, weyl_to_mat, ORIGIN, P0)

Params = namedtuple("Params", "d e f i j k")
Profile = namedtuple("Profile", "va vb vc vbac")

FAMILY_IDS = tuple(FAMILIES) + ("SL2",)
GRID = (-6, 6)


def default_field():
    return get_field(5, 1, 32)


def x_of(fam, p):
    fam = family(fam)
    return AffineWeylElt((p.d, p.e, p.f), perm_from_name(fam.perm))


def nu_of(p):
    return (p.i, p.j, p.k)


def env_of(p, prof=None):
    env = dict(p._asdict())
    if prof is not None:
        env.update(prof._asdict())
    return env


def params_ok(fam, p):
    fam = family(fam)
    return (p.d + p.e + p.f == 0 and p.i + p.j + p.k == 0 and p.i > p.j > p.k
            and evaluate(fam.order, env_of(p)))


@lru_cache(maxsize=None)
def param_grid(fid, lo=GRID[0], hi=GRID[1]):
    """All parameters in [lo, hi] meeting the family's ordering constraints."""
    fam = family(fid)
    out = []
    r = range(lo, hi + 1)
    for d, e, i, j in product(r, r, r, r):
        f, k = -d - e, -i - j
        if lo <= f <= hi and lo <= k <= hi:
            p = Params(d, e, f, i, j, k)
            if params_ok(fam, p):
                out.append(p)
    return tuple(out)


def subcase_grid(fid, name):
    sc = get_subcase(fid, name)
    return tuple(p for p in param_grid(family(fid).id) if evaluate(sc.when, env_of(p)))


def parse_params(text):
    """'d,e,f;i,j,k' or 'd=..,e=..,...' -> Params."""
    text = text.strip()
    if "=" in text:
        kv = dict(item.split("=") for item in text.replace(";", ",").split(","))
        return Params(*(int(kv[name].strip()) for name in Params._fields))
    parts = [int(t) for t in text.replace(";", ",").split(",")]
    if len(parts) != 6:
        raise ValueError("params need six integers: d,e,f;i,j,k")
    return Params(*parts)


# -- witnesses ----------------------------------------------------------------

def unipotent(F, a, b, c):
    one, zero = F.one(), F.zero()
    return Mat(F, [[one, a, b], [zero, one, c], [zero, zero, one]])


def perm_mat(w, F):
    return weyl_to_mat(AffineWeylElt.from_perm(w), F)


def unipotent_part(g, w):
    """u with g = u w for the permutation w."""
    return mat_mul(g, perm_mat(perm_inverse(w), g.F))


def _val(s):
    if s.c:
        return s.v
    if s.prec == INF:
        return INF
    raise IndeterminateValuation("entry is zero only to precision")


def measure(g, w):
    """Valuations of a, b, c and b - ac for g = u w."""
    u = unipotent_part(g, perm_from_name(w) if isinstance(w, str) else w)
    a, b, c = u.rows[0][1], u.rows[0][2], u.rows[1][2]
    return Profile(_val(a), _val(b), _val(c), _val(b - a * c))


def _candidate_vals(p):
    base = {p.d, p.e, p.f, p.i, p.j, p.k}
    base |= {x + y for x in base for y in base}
    return sorted(base)


def _random_pattern(rng, cands):
    """Valuations for (alpha, gamma, third entry) and the branch producing beta.

    Branch 0 prescribes val(beta e^j - alpha gamma), branch 1 val(beta), branch
    2 val(beta + a gamma).  None stands for a zero entry.
    """
    def rv():
        if rng.random() < 0.05:
            return None
        if rng.random() < 0.8:
            return rng.choice(cands) + rng.choice((0, 0, 0, 1, -1, 2))
        return rng.randint(-15, 15)

    u = rng.random()
    branch = 0 if u < 0.4 else 1 if u < 0.8 else 2
    return (branch, rv(), rv(), rv())


def _perturb(rng, pattern, step=1):
    branch, *vals = pattern
    out = [v if v is None or rng.random() < 0.5 else v + rng.randint(-step, step)
           for v in vals]
    return (branch, *out)


def _draw_h(F, rng, p, w, pattern, terms=4):
    """(w^{-1} H w classified, H) for a random H with the pattern's valuations."""
    i, j, k = nu_of(p)
    branch, va, vg, v3 = pattern

    def rs(v):
        return F.zero() if v is None else random_series(F, rng, v, terms)

    alpha, gamma, third = rs(va), rs(vg), rs(v3)
    if branch == 0:
        beta = (alpha * gamma - third).shift(-j)
    elif branch == 1:
        beta = third
    else:
        a = solve_twisted(i - j, alpha.shift(-j), F.prec)
        beta = third - a * gamma
    zero = F.zero()
    H = Mat(F, [[F.eps(i), alpha, beta], [zero, F.eps(j), gamma], [zero, zero, F.eps(k)]])
    W = perm_mat(w, F)
    Winv = perm_mat(perm_inverse(w), F)
    return classify_double_coset(mat_mul(mat_mul(Winv, H), W)), H


def _member_of_h(H, nu, w):
    F = H.F
    j, k = nu[1], nu[2]
    alpha, beta, gamma = H.rows[0][1], H.rows[0][2], H.rows[1][2]
    fH = unipotent(F, alpha.shift(-j), beta.shift(-k), gamma.shift(-k))
    return mat_mul(f_nu_inverse(fH, tuple(nu)), perm_mat(w, F))


def _build_draw(F, rng, p, x, w, pattern, terms=4):
    """g = u w for H with the pattern's valuations, or None if w^{-1} H w is not in I x I."""
    y, H = _draw_h(F, rng, p, w, pattern, terms)
    if y != x:
        return None
    return _member_of_h(H, nu_of(p), w)


def _miss(y, x):
    """How far the double coset of y is from that of x (0 when equal)."""
    return (0 if y.perm == x.perm else 10) + sum(abs(a - b) for a, b in zip(y.mu, x.mu))


def _orbit_draw(F, rng, p, x, w, cands, terms=4):
    """One unguided draw; returns g = u w or None."""
    return _build_draw(F, rng, p, x, w, _random_pattern(rng, cands), terms)


def subcase_of(fam, p, w, prof):
    """Name of the subcase a member in stratum w with these valuations belongs to."""
    fam = family(fam)
    env = env_of(p, prof)
    for sc in fam.subcases:
        if perm_from_name(sc.w) == w and evaluate(sc.when, env) and evaluate(sc.given, env):
            return sc.name
    return None


def _rng(seed, *tags):
    return random.Random("/".join(str(t) for t in (seed,) + tags))


class OrbitSampler:
    """Members of one subcase, drawn through random H with learned valuation patterns.

    Half of the draws use an unguided pattern; the rest perturb a pattern that
    already produced a member of the subcase at the same parameters, with all
    coefficients redrawn.  Acceptance only looks at membership and the measured
    stratum and valuations, never at the expected valuation formulas.
    """

    def __init__(self, fam, subcase=None, seed=0, params=None, F=None,
                 draws_per_params=400, guided=0.5):
        self.fam = family(fam)
        self.sc = get_subcase(self.fam, subcase or self.fam.subcases[0].name)
        self.F = F or default_field()
        self.rng = _rng(seed, self.fam.id, self.sc.name)
        if params is not None:
            params = Params(*params)
            if not params_ok(self.fam, params) or not evaluate(self.sc.when, env_of(params)):
                raise ValueError(f"params {tuple(params)} do not fit "
                                 f"{self.fam.id}/{self.sc.name}")
            self.grid = (params,)
        else:
            self.grid = subcase_grid(self.fam.id, self.sc.name)
            if not self.grid:
                raise Infeasible(f"no grid parameters fit {self.fam.id}/{self.sc.name}")
        self.w = perm_from_name(self.sc.w)
        self.draws_per_params = draws_per_params
        self.guided = guided
        self.pool = {}
        self.draws = 0

    def draw(self, max_draws=None):
        """Returns (g, params); the first member may take a larger budget."""
        if max_draws is None:
            max_draws = 60000 if any(self.pool.values()) else 200000
        rng, fam, w = self.rng, self.fam, self.w
        spent = 0
        while spent < max_draws:
            known = sorted(q for q, pl in self.pool.items() if pl)
            if known and rng.random() < 0.5:
                p = rng.choice(known)
            else:
                p = rng.choice(self.grid)
            x, cands = x_of(fam, p), _candidate_vals(p)
            pool = self.pool.setdefault(p, [])
            for _ in range(self.draws_per_params):
                spent += 1
                if pool and rng.random() < self.guided:
                    pattern = _perturb(rng, rng.choice(pool))
                elif known and rng.random() < self.guided:
                    # a pattern from other parameters, moved a little further
                    pattern = _perturb(rng, rng.choice(self.pool[rng.choice(known)]), 2)
                else:
                    pattern = _random_pattern(rng, cands)
                try:
                    g = _build_draw(self.F, rng, p, x, w, pattern)
                    if g is None:
                        continue
                    prof = measure(g, w)
                except (IndeterminateValuation, PrecisionExhausted):
                    continue
                if subcase_of(fam, p, w, prof) == self.sc.name:
                    if pattern not in pool:
                        pool.append(pattern)
                    self.draws += spent
                    return g, p
        self.draws += spent
        raise Infeasible(f"no witness for {fam.id}/{self.sc.name} after {max_draws} draws")


def sample_g(fam, subcase=None, seed=0, params=None, F=None, max_draws=None,
             method="orbit", profile=None):
    """A member g = u w of the subcase with random coefficients.

    Returns (g, params).  With method="profile", u is drawn directly with the
    valuations in ``profile`` (a Profile) and membership is not enforced.
    """
    sampler = OrbitSampler(fam, subcase, seed, params, F)
    if method == "profile":
        p = params or sampler.rng.choice(sampler.grid)
        return _profile_draw(sampler.F, sampler.rng, profile, sampler.w), Params(*p)
    if method != "orbit":
        raise ValueError(f"unknown sampling method {method!r}")
    return sampler.draw(max_draws)


def _profile_draw(F, rng, prof, w, terms=4, tries=200):
    """u w with val(a), val(b), val(c), val(b - ac) equal to prof."""
    def rs(v):
        return F.zero() if v == INF else random_series(F, rng, v, terms)

    for t in range(tries):
        a, c = rs(prof.va), rs(prof.vc)
        # alternate between prescribing b - ac and prescribing b
        b = a * c + rs(prof.vbac) if t % 2 == 0 else rs(prof.vb)
        if _val(b) == prof.vb and _val(b - a * c) == prof.vbac:
            return mat_mul(unipotent(F, a, b, c), perm_mat(w, F))
    raise Infeasible(f"valuation profile {tuple(prof)} not reached in {tries} tries")


# -- reports ------------------------------------------------------------------

class Report:
    """Per-check pass/fail counts, findings and witnesses; JSON serializable."""

    def __init__(self, name, seed=None, **info):
        self.name = name
        self.seed = seed
        self.info = info
        self.checks = OrderedDict()
        self.findings = []
        self.witnesses = []
        self.children = []

    def record(self, check, ok, **detail):
        counts = self.checks.setdefault(check, [0, 0])
        counts[0 if ok else 1] += 1
        if not ok:
            self.finding("FAILURE", f"check {check} failed", **detail)
        return ok

    def finding(self, kind, message, **data):
        self.findings.append({"kind": kind, "message": message, **data})

    def add(self, child):
        self.children.append(child)
        return child

    @property
    def passed(self):
        return sum(c[0] for c in self.checks.values()) + sum(c.passed for c in self.children)

    @property
    def failed(self):
        return sum(c[1] for c in self.checks.values()) + sum(c.failed for c in self.children)

    @property
    def ok(self):
        return self.failed == 0

    def to_json(self):
        return {
            "name": self.name,
            "seed": self.seed,
            "status": "pass" if self.ok else "fail",
            "passed": self.passed,
            "failed": self.failed,
            "info": self.info,
            "checks": {k: {"pass": v[0], "fail": v[1]} for k, v in self.checks.items()},
            "findings": self.findings,
            "witnesses": self.witnesses,
            "children": [c.to_json() for c in self.children],
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=False, default=str)

    def summary(self, indent=0):
        pad = "  " * indent
        lines = [f"{pad}{'PASS' if self.ok else 'FAIL'} {self.name}: "
                 f"{self.passed} passed, {self.failed} failed"]
        for f in self.findings:
            if f["kind"] != "FAILURE":
                lines.append(f"{pad}  [{f['kind']}] {f['message']}")
        fails = [f for f in self.findings if f["kind"] == "FAILURE"]
        for f in fails[:5]:
            lines.append(f"{pad}  [FAILURE] {f['message']}")
        for c in self.children:
            lines.append(c.summary(indent + 1))
        return "\n".join(lines)


# -- family verification ------------------------------------------------------

EDITORIAL = {
    ("S2S1_D_LE_E_LT_F", "k_le_e.j_le_e_lt_i"):
        "the stated bound on val(c) in this case is ambiguous; tested as "
        "val(c) = j - e <= 0",
    ("S2S1_D_LE_E_LT_F", "k_le_e.e_lt_j"):
        "the hypothesis comparing val(b - ac) with c is read as val(b - ac) < val(c)",
    ("S2S1_D_LE_E_LT_F", "k_le_e.e_ge_i"):
        "boundary e = i is tested inside this subcase (val(b) = d + 2i); "
        "see the e = i witness count",
}


def check_witness(rep, fam, sc, p, g):
    """Run every per-witness check; returns the computed hexagon."""
    fam = family(fam)
    w = perm_from_name(sc.w)
    x, nu = x_of(fam, p), nu_of(p)
    detail = {"params": list(p), "g": render_mat(g)}
    if not rep.record("membership", in_adlv(g, x, nu), **detail):
        return None
    prof = measure(g, w)
    env = env_of(p, prof)
    detail["valuations"] = [None if v == INF else v for v in prof]
    stated = STATED.get((fam.id, sc.name), {})
    for expr in sc.checks:
        ok = rep.record(f"valuation: {expr}", bool(evaluate(expr, env)), **detail)
        if ok and expr in stated and not evaluate(stated[expr], env):
            hits = rep.info.setdefault("boundary", {}).setdefault(stated[expr], [])
            hits.append(detail["valuations"])
    hexagon = hexagon_of(g, ORIGIN)
    expected = Hexagon(table_elements(sc.hexagon, env), ORIGIN)
    rep.record("hexagon table", hexagon == expected, got=repr(hexagon),
               expected=repr(expected), **detail)
    rep.record("stratum", retract(g, (0, 1, 2)).perm == w, **detail)
    rep.record("sides parallel to roots", sides_parallel_to_roots(hexagon), **detail)
    rep.record("convex position", is_convex_position(hexagon), **detail)
    rep.record("120 degree cones", cone_constraint(hexagon), **detail)
    if sc.translated:
        shifted = hexagon.translate((-prof.va, prof.va, 0))
        rep.record("translated hexagon table",
                   shifted == Hexagon(table_elements(sc.translated, env)), **detail)
    at_p0 = hexagon.at(P0)
    rep.info["barycenter_nonconvex"] = (rep.info.get("barycenter_nonconvex", 0)
                                        + (not (is_convex_position(at_p0)
                                                and cone_constraint(at_p0))))
    return hexagon


def verify_subcase(fam, name, trials=50, seed=0, params=None, F=None,
                   profile_trials=None, keep_witnesses=3):
    fam = family(fam)
    sc = get_subcase(fam, name)
    F = F or default_field()
    rep = Report(f"{fam.id}/{sc.name}", seed, w=sc.w, trials=trials,
                 field={"p": F.p, "m": F.m, "prec": F.prec})
    note = EDITORIAL.get((fam.id, sc.name))
    if note:
        rep.finding("EDITORIAL", note)
    profile_trials = trials if profile_trials is None else profile_trials
    hits = suff = tried = e_eq_i = 0
    sampler = OrbitSampler(fam, sc.name, seed, params, F)
    seen_params, seen_profiles = set(), set()
    for t in range(trials):
        try:
            g, p = sampler.draw()
        except Infeasible as exc:
            rep.record("witness found", False, trial=t, error=str(exc))
            continue
        rep.record("witness found", True)
        hits += 1
        e_eq_i += p.e == p.i
        seen_params.add(p)
        seen_profiles.add((p, measure(g, sampler.w)))
        check_witness(rep, fam, sc, p, g)
        if len(rep.witnesses) < keep_witnesses:
            rep.witnesses.append({"trial": t, "params": list(p), "g": render_mat(g)})
        if t < profile_trials:
            prof = measure(g, perm_from_name(sc.w))
            rng = _rng(seed, "profile", fam.id, sc.name, t)
            try:
                u = _profile_draw(F, rng, prof, perm_from_name(sc.w))
            except Infeasible:
                continue
            tried += 1
            suff += in_adlv(u, x_of(fam, p), nu_of(p))
    for strict, vals in rep.info.get("boundary", {}).items():
        rep.finding("BOUNDARY", f"{len(vals)} members violate the strict form {strict} "
                    f"while meeting the tested bound", example=vals[0])
    rep.info["witnesses"] = hits
    rep.info["distinct_params"] = len(seen_params)
    rep.info["distinct_profiles"] = len(seen_profiles)
    rep.info["draws"] = sampler.draws
    if "e_ge_i" in sc.name:
        rep.info["boundary_e_eq_i_witnesses"] = e_eq_i
    if tried:
        rep.info["sufficiency"] = {"samples": tried, "members": suff}
        if suff < tried:
            rep.finding("NECESSITY-ONLY",
                        f"{tried - suff} of {tried} draws with a member's valuations of "
                        f"a, b, c, b - ac are not members")
    return rep


def verify_family(fam, subcase=None, trials=50, seed=0, params=None, F=None,
                  profile_trials=None):
    """Verify one subcase or all subcases of a family (params restrict the grid)."""
    fam = family(fam)
    rep = Report(fam.id, seed, trials=trials)
    names = [subcase] if subcase else [sc.name for sc in fam.subcases]
    for name in names:
        sc = get_subcase(fam, name)
        if params is not None and not evaluate(sc.when, env_of(Params(*params))):
            if subcase:
                raise ValueError(f"params {tuple(params)} do not fit {fam.id}/{name}")
            continue
        rep.add(verify_subcase(fam, name, trials, seed, params, F, profile_trials))
    return rep


# -- claimed-empty strata -----------------------------------------------------

def search_stratum(fam, w, cond="True", samples=10000, seed=0, F=None, keep=8,
                   classify=False):
    """Count members of X_x(e^nu) in U_1 w I among random draws over the grid.

    Half of the draws perturb one of the closest misses seen so far at the
    same parameters (closeness of the double coset of w^{-1} H w to that of x),
    the rest are unguided.  With classify, members whose measured valuations
    fit no subcase of the family are counted as unclassified.
    """
    fam = family(fam)
    F = F or get_field(5, 1, 24)
    w = perm_from_name(w) if isinstance(w, str) else w
    grid = [p for p in param_grid(fam.id) if evaluate(cond, env_of(p))]
    if not grid:
        return {"samples": 0, "members": 0, "params": 0}
    rng = _rng(seed, "empty", fam.id, perm_name(w), cond)
    members = unclassified = 0
    example = stray = None
    near = {}
    for t in range(samples):
        p = grid[t % len(grid)] if t < len(grid) else rng.choice(grid)
        x = x_of(fam, p)
        best = near.setdefault(p, [])
        if best and rng.random() < 0.5:
            pattern = _perturb(rng, rng.choice(best)[1])
        else:
            pattern = _random_pattern(rng, _candidate_vals(p))
        try:
            y, H = _draw_h(F, rng, p, w, pattern)
        except (IndeterminateValuation, PrecisionExhausted):
            continue
        score = _miss(y, x)
        if (score, pattern) not in best:
            best.append((score, pattern))
            best.sort(key=lambda sp: sp[0])
            del best[keep:]
        if score == 0:
            members += 1
            if example is None or classify:
                g = _member_of_h(H, nu_of(p), w)
                example = example or {"params": list(p), "g": render_mat(g)}
            if classify:
                try:
                    prof = measure(g, w)
                except IndeterminateValuation:
                    continue
                if subcase_of(fam, p, w, prof) is None:
                    unclassified += 1
                    stray = stray or {"params": list(p), "valuations": list(prof),
                                      "g": render_mat(g)}
    out = {"samples": samples, "members": members, "params": len(grid), "example": example}
    if classify:
        out["unclassified"] = unclassified
        out["stray"] = stray
    return out


def verify_empty(samples=10000, seed=0, F=None, controls=True, families=None):
    """Random search in every stratum declared empty.

    Each allowed stratum is searched the same way with a third of the budget, as
    a control showing the search does find members where they exist.  Members
    found by the controls must fit one of the family's subcases.
    """
    rep = Report("claimed-empty strata", seed, samples=samples,
                 budget={"samples_per_claim": samples, "q": 5, "prec": 24})
    for fid in families or FAMILIES:
        fam = family(fid)
        for w, cond in fam.empty:
            res = search_stratum(fam, w, cond, samples, seed, F)
            ok = res["members"] == 0
            rep.record(f"{fam.id}: U1 {w} I empty when {cond}", ok, **res)
            if ok and res["samples"]:
                rep.finding("EVIDENCE", f"{fam.id}, w = {w} ({cond}): no member in "
                            f"{res['samples']} draws over {res['params']} parameters")
        if controls:
            for w, cond in fam.strata.items():
                res = search_stratum(fam, w, cond, samples // 3 or 1, seed, F, classify=True)
                rep.info.setdefault("controls", []).append(
                    {"family": fam.id, "w": w, "when": cond, **res})
                rep.record(f"{fam.id}: members in U1 {w} I fit a listed subcase",
                           res["unclassified"] == 0, stray=res["stray"])
                if res["samples"] and not res["members"]:
                    rep.finding("WEAK-SEARCH", f"{fam.id}, w = {w} ({cond}): the same "
                                f"search found no member of this nonempty stratum")
    return rep


# -- closure geometry ---------------------------------------------------------

def nonzero_translates(bound=2):
    r = range(-bound, bound + 1)
    return [(a, b, -a - b) for a in r for b in r
            if abs(a + b) <= bound and (a, b) != (0, 0)]


def no_translate_containment(h1, h2, bound=2):
    for mu in nonzero_translates(bound):
        if hexagon_contains(h1, h2.translate(mu)) or hexagon_contains(h2, h1.translate(mu)):
            return False
    return True


def _stratified_params(fid):
    return [p for p in param_grid(fid) if p.e == p.i]


def collect_stratified(fid, per_subcase=6, seed=0, params=None, F=None, sweep=3,
                       max_draws=4000):
    """Hexagons of the closed stratum, and (delta, hexagon, translated hexagon)
    for the open stratum, at fixed params.

    Patterns that produced open-stratum members are replayed with the valuations
    of alpha and gamma shifted, which reaches other levels delta = val(a); every draw is
    still kept only if it is a measured member of an open subcase.
    """
    w0, open_names, closed_names = STRATIFIED[fid]
    fam = family(fid)
    F = F or default_field()
    w1 = perm_from_name(get_subcase(fam, open_names[0]).w)
    closed, opened = [], []
    patterns = []
    for name in closed_names + open_names:
        sampler = OrbitSampler(fam, name, seed, params, F)
        for t in range(per_subcase):
            try:
                g, _ = sampler.draw(max_draws=max_draws)
            except Infeasible:
                break
            h = hexagon_of(g, ORIGIN)
            if name in closed_names:
                closed.append(h)
            else:
                va = measure(g, w1).va
                opened.append((va, h, h.translate((-va, va, 0))))
        if name in open_names:
            patterns += [pt for pl in sampler.pool.values() for pt in pl]
    if params is not None and sweep:
        p = Params(*params)
        x, w = x_of(fam, p), w1
        rng = _rng(seed, "sweep", fid, tuple(p))
        seen = {va for va, _, _ in opened}
        for branch, v_alpha, vg, v3 in patterns:
            if v_alpha is None:
                continue
            # val(a) + val(c) is pinned in the open stratum, so gamma moves opposite
            shifts = [(s, t - s) for s in range(-2 * sweep, 2 * sweep + 1) for t in (-1, 0, 1)]
            for s_alpha, s_gamma in shifts:
                for _ in range(sweep):
                    vg2 = None if vg is None else vg + s_gamma
                    try:
                        g = _build_draw(F, rng, p, x, w, (branch, v_alpha + s_alpha, vg2, v3))
                        if g is None:
                            continue
                        prof = measure(g, w)
                    except (IndeterminateValuation, PrecisionExhausted):
                        continue
                    if prof.va in seen or subcase_of(fam, p, w, prof) not in open_names:
                        continue
                    seen.add(prof.va)
                    h = hexagon_of(g, ORIGIN)
                    opened.append((prof.va, h, h.translate((-prof.va, prof.va, 0))))
    return closed, opened


def top_vertices(y1, y2, h1, h2, direction=(1, -1, 0)):
    """Labels of the shared vertex that the translation pushes outward.

    y1, y2 are hexagons of two levels and h1, h2 their translates.  A label t
    qualifies when y1 and y2 agree at t and t has a side neighbour r where h1
    and h2 agree, with r lying behind t along the translation direction in y2.
    """
    neighbours = {}
    for a, b in SIDES:
        neighbours.setdefault(a, []).append(b)
        neighbours.setdefault(b, []).append(a)
    out = []
    for t in NAMES3:
        if y1.point(t) != y2.point(t):
            continue
        for r in neighbours[t]:
            if h1.point(r) != h2.point(r):
                continue
            v = y2.point(r) - y2.point(t)
            scale = -v[0] / direction[0]
            if scale > 0 and all(v[n] == -scale * direction[n] for n in range(3)):
                out.append(t)
                break
    return out


def verify_closure(seed=0, F=None, per_subcase=6, min_pairs=20, translate_bound=2):
    rep = Report("closure geometry", seed)
    delta_pairs = set()
    for fid, (w0, _, _) in STRATIFIED.items():
        grid = sorted(_stratified_params(fid), key=lambda p: p.d - p.k if
                      fid.startswith("ETA_D") else p.f - p.k)
        for p in grid:
            closed, opened = collect_stratified(fid, per_subcase, seed, p, F)
            for hc in closed:
                rep.record("120 degree cones", cone_constraint(hc))
            for _, _, hy in opened:
                rep.record("120 degree cones", cone_constraint(hy))
            translated = [hy for _, _, hy in opened]
            pairs = [(a, b) for a in closed for b in closed if a != b]
            pairs += [(a, b) for a in closed for b in translated]
            pairs += [(a, b) for a in translated for b in translated if a != b]
            for a, b in pairs[:60]:
                for w in ("1", "s1", "s2"):
                    if shares_opposite_vertices(a, b, w):
                        rep.record("shared corners: no containing translate",
                                   no_translate_containment(a, b, translate_bound),
                                   params=list(p), h1=repr(a), h2=repr(b))
                        break
            for hy in translated:
                for hc in closed[:1]:
                    rep.record("translated strata share two opposite corners",
                               any(shares_opposite_vertices(hc, hy, w)
                                   for w in ("1", "s1", "s2")), params=list(p))
            for d1, y1, h1 in opened:
                for d2, y2, h2 in opened:
                    if d1 <= d2:
                        continue
                    delta_pairs.add((fid, tuple(p), d1, d2))
                    rep.record("larger delta does not contain smaller",
                               not hexagon_contains(h1, h2), params=list(p), deltas=[d1, d2])
                    top = top_vertices(y1, y2, h1, h2)
                    hull = convex_hull(h1.points())
                    rep.record("top vertex of the smaller delta leaves the hull",
                               bool(top) and not any(point_in_hull(h2.point(w), hull)
                                                     for w in top),
                               params=list(p), deltas=[d1, d2], labels=top)
    rep.info["delta_pairs"] = len(delta_pairs)
    rep.record(f"at least {min_pairs} (delta1, delta2) pairs", len(delta_pairs) >= min_pairs,
               found=len(delta_pairs))
    return rep


# -- SL_2 ---------------------------------------------------------------------

def sl2_g(F, shape, a, k):
    zero = F.zero()
    if shape == 1:
        return Mat(F, [[F.eps(k), a.shift(-k)], [zero, F.eps(-k)]])
    return Mat(F, [[a.shift(-k), F.eps(k)], [F.eps(-k), zero]])


def sl2_offdiag_val(m, a_val, k):
    return a_val - abs(m) - 2 * k


def verify_sl2(m, trials=500, seed=0, F=None):
    """Left multiplication by the torus A(O_L) preserves the double coset of h."""
    from .adlv import h_map
    if m == 0:
        raise ValueError("m must be nonzero")
    F = F or default_field()
    nu = (m, -m)
    rep = Report(f"SL2 m={m}", seed, trials=trials)
    for shape in (1, 2):
        for t in range(trials):
            rng = _rng(seed, "sl2", m, shape, t)
            va, k = rng.randint(-6, 6), rng.randint(-4, 4)
            a = random_series(F, rng, va, 6)
            g = sl2_g(F, shape, a, k)
            unit = random_series(F, rng, 0, 6)
            tau = Mat(F, [[unit, F.zero()], [F.zero(), unit.inverse()]])
            h = h_map(g, nu)
            same = classify_double_coset(h) == classify_double_coset(h_map(mat_mul(tau, g), nu))
            rep.record(f"shape {shape}: torus-stable double coset", same,
                       a=render_mat(g), k=k)
            # the nonzero off-diagonal entry: upper right for shape 1, lower left for 2
            off = h.rows[0][1] if shape == 1 else h.rows[1][0]
            rep.record(f"shape {shape}: off-diagonal valuation",
                       _val(off) == sl2_offdiag_val(m, va, k), val_a=va, k=k)
    return rep


# -- reduction to the canonical families --------------------------------------

Reduction = namedtuple("Reduction", "family x nu params transcript")


def _translation_nu(op, nu):
    return op(AffineWeylElt.translation(nu)).mu


def apply_move(move, x, nu):
    kind = move["move"]
    if kind == "phi":
        return apply_phi(x), _translation_nu(apply_phi, nu)
    if kind == "psi":
        return apply_psi(x), _translation_nu(apply_psi, nu)
    if kind == "left":
        return x, perm_act(perm_from_name(move["w"]), nu)
    raise ValueError(f"unknown move {kind!r}")


def transport(g, move):
    """The image of g under a move, so that membership is preserved."""
    kind = move["move"]
    if kind == "phi":
        return apply_phi_mat(g)
    if kind == "psi":
        return apply_psi_mat(g)
    return mat_mul(perm_mat(perm_from_name(move["w"]), g.F), g)


def replay(x, nu, transcript):
    for move in transcript:
        x, nu = apply_move(move, x, nu)
    return x, nu


def transport_all(g, transcript):
    for move in transcript:
        g = transport(g, move)
    return g


def _eta_family(d, e, f, j):
    if f <= d < e:
        return "ETA_F_LE_D_LT_E"
    if d < f <= e:
        return "ETA_D_LT_F_LE_E"
    if d < e < f and e >= j:
        return "ETA_D_LT_E_LT_F_E_GE_J"
    if f <= e <= d and e >= j:
        return "ETA_F_LE_E_LE_D_E_GE_J"
    return None


def reduce_case(x, nu):
    """Apply phi, psi and left multiplication by W until x, nu is canonical."""
    nu = tuple(int(t) for t in nu)
    if x.n != 3 or len(nu) != 3:
        raise ValueError("reduction is for n = 3")
    if len(set(nu)) != 3:
        raise ValueError(f"coweight {nu} must have distinct entries")
    if sum(nu) != 0 or sum(x.mu) != 0:
        raise ValueError("coweights must sum to zero")
    transcript = []

    def do(move):
        nonlocal x, nu
        x, nu = apply_move(move, x, nu)
        transcript.append(dict(move, x=render_weyl(x), nu=list(nu)))

    def decreasing(mu):
        return list(mu) == sorted(mu, reverse=True)

    length = coxeter_length(x.perm)
    if length == 0:
        # psi keeps an increasing mu increasing, so a strictly increasing mu
        # has no decreasing image under phi and psi
        for _ in range(3):
            if decreasing(x.mu):
                break
            do({"move": "phi"})
        else:
            raise NotReducible(f"no image of {render_weyl(x)} under phi and psi has "
                               f"a decreasing translation part")
    elif length == 2:
        if perm_name(x.perm) == "s1s2":
            do({"move": "psi"})
        for _ in range(3):
            if x.mu[2] > max(x.mu[0], x.mu[1]):
                break
            do({"move": "phi"})
        else:
            raise NotReducible(f"no phi-power of {render_weyl(x)} has mu_3 maximal")
    else:
        for _ in range(3):
            if x.perm == ETA:
                break
            do({"move": "phi"})
    order = sorted(range(3), key=lambda t: -nu[t])
    w = [0] * 3
    for rank, t in enumerate(order):
        w[t] = rank
    w = tuple(w)
    if w != (0, 1, 2):
        do({"move": "left", "w": perm_name(w)})
    (d, e, f), (i, j, k) = x.mu, nu
    if length == 0:
        fid = "TRANSLATION_F_LE_E_LE_D"
    elif length == 2:
        fid = "S2S1_D_LE_E_LT_F" if d <= e else "S2S1_E_LT_D_LT_F"
    else:
        fid = _eta_family(d, e, f, j)
        if fid is None:
            do({"move": "psi"})
            (d, e, f), (i, j, k) = x.mu, nu
            fid = _eta_family(d, e, f, j)
    if fid is None:
        raise NotReducible(f"{render_weyl(x)} with nu = {nu} fits no family")
    p = Params(d, e, f, i, j, k)
    if not params_ok(fid, p):
        raise NotReducible(f"reduced parameters {tuple(p)} violate {fid}")
    return Reduction(fid, x, nu, p, transcript)


def verify_all(trials=50, seed=0, F=None, empty_samples=10000, closure=True, sl2=True,
               profile_trials=None):
    rep = Report("verify-all", seed, trials=trials)
    for fid in FAMILIES:
        rep.add(verify_family(fid, trials=trials, seed=seed, F=F,
                              profile_trials=profile_trials))
    if sl2:
        for m in (1, 2):
            rep.add(verify_sl2(m, trials, seed, F))
    if empty_samples:
        rep.add(verify_empty(empty_samples, seed))
    if closure:
        rep.add(verify_closure(seed, F))
    return rep
