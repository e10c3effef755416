import json
import random

import pytest

from iwahori import harness as H
from iwahori.adlv import h_map, in_adlv
from iwahori.coset import classify_double_coset
from iwahori.errors import NotReducible
from iwahori.families import FAMILIES, STATED, family, get_subcase, parse_vertex
from iwahori.linalg import Mat
from iwahori.weyl import NAMES3, AffineWeylElt, perm_from_name, render_weyl

from util import random_unipotent, random_weyl


def test_family_ids():
    assert set(H.FAMILY_IDS) == {
        "TRANSLATION_F_LE_E_LE_D", "S2S1_D_LE_E_LT_F", "S2S1_E_LT_D_LT_F",
        "ETA_F_LE_D_LT_E", "ETA_D_LT_F_LE_E", "ETA_D_LT_E_LT_F_E_GE_J",
        "ETA_F_LE_E_LE_D_E_GE_J", "SL2"}


@pytest.mark.parametrize("fid", list(FAMILIES))
def test_param_grid_meets_constraints(fid):
    grid = H.param_grid(fid)
    assert grid
    for p in grid:
        assert p.d + p.e + p.f == 0 and p.i + p.j + p.k == 0
        assert p.i > p.j > p.k
        assert all(-6 <= v <= 6 for v in p)
    # every subcase is reachable on the grid
    for sc in family(fid).subcases:
        assert H.subcase_grid(fid, sc.name)


def test_parse_params():
    assert H.parse_params("-3,-3,6;3,-1,-2") == H.Params(-3, -3, 6, 3, -1, -2)
    assert H.parse_params("d=1,e=0,f=-1,i=1,j=0,k=-1") == H.Params(1, 0, -1, 1, 0, -1)
    with pytest.raises(ValueError):
        H.parse_params("1,2,3")


def test_parse_vertex():
    env = {"d": -3, "j": -1}
    assert parse_vertex(". d-j . / j-d . . / . . 0", env) == \
        AffineWeylElt((-2, 2, 0), perm_from_name("s1"))
    with pytest.raises(ValueError):
        parse_vertex(". 1 1 / 1 . . / . . 0", env)


def test_sample_family2_profile():
    p = H.Params(-3, -3, 6, 3, -1, -2)
    g, q = H.sample_g("S2S1_D_LE_E_LT_F", "k_gt_e", seed=0, params=p)
    assert q == p
    assert H.measure(g, "1") == H.Profile(-2, -3, -1, -2)
    assert in_adlv(g, H.x_of("S2S1_D_LE_E_LT_F", p), H.nu_of(p))


def test_sample_translation_family(F5):
    p = H.Params(1, 0, -1, 1, 0, -1)
    x, nu = H.x_of("TRANSLATION_F_LE_E_LE_D", p), H.nu_of(p)
    for seed in range(5):
        g, _ = H.sample_g("TRANSLATION_F_LE_E_LE_D", "main", seed=seed, params=p,
                          method="profile", profile=H.Profile(1 + seed, 2, 1, 2))
        prof = H.measure(g, "1")
        assert prof.va > 0 and prof.vb > 0 and prof.vc > 0
        assert in_adlv(g, x, nu)
        g, _ = H.sample_g("TRANSLATION_F_LE_E_LE_D", "main", seed=seed, params=p)
        prof = H.measure(g, "1")
        assert prof.va >= 0 and prof.vb >= 0 and prof.vc >= 0


def test_translation_member_with_unit_b(F5):
    # val(b) = 0 still gives a member, so only val(b) >= 0 is necessary
    g = H.unipotent(F5, F5.zero(), F5.one(), F5.zero())
    assert in_adlv(g, AffineWeylElt.translation((1, 0, -1)), (1, 0, -1))


def test_sampling_is_deterministic():
    a = H.sample_g("ETA_F_LE_D_LT_E", seed=11)
    b = H.sample_g("ETA_F_LE_D_LT_E", seed=11)
    assert a[0] == b[0] and a[1] == b[1]
    c = H.sample_g("ETA_F_LE_D_LT_E", seed=12)
    assert c[0] != a[0]


def test_profile_sampler_hits_valuations(F5):
    rng = random.Random(3)
    prof = H.Profile(-2, -3, -1, -2)
    g = H._profile_draw(F5, rng, prof, perm_from_name("1"))
    assert H.measure(g, "1") == prof


@pytest.mark.parametrize("fid", list(FAMILIES))
def test_verify_family_small(fid):
    rep = H.verify_family(fid, trials=4, seed=1)
    assert rep.ok, rep.summary()
    assert rep.passed > 0
    assert all(child.info["witnesses"] == 4 for child in rep.children)


def test_translation_report_is_a_point():
    rep = H.verify_family("TRANSLATION_F_LE_E_LE_D", trials=6, seed=2)
    assert rep.ok
    sc = get_subcase("TRANSLATION_F_LE_E_LE_D", rep.children[0].name.split("/")[1])
    env = {"d": 1, "e": 0, "f": -1, "i": 1, "j": 0, "k": -1}
    elts = {parse_vertex(v, env) for v in sc.hexagon}
    assert len(elts) == 1


def test_eta_only_one_stratum():
    sc_names = [sc.w for sc in family("ETA_F_LE_D_LT_E").subcases]
    assert set(sc_names) == {"s2s1"}


def test_report_json_round_trip():
    rep = H.verify_family("ETA_F_LE_D_LT_E", trials=3, seed=5)
    data = json.loads(rep.dumps())
    assert data["status"] == "pass"
    assert data["passed"] == rep.passed and data["failed"] == 0
    assert data["children"][0]["checks"]["membership"]["pass"] == 3


def test_report_counts_failures():
    rep = H.Report("r")
    rep.record("c", True)
    rep.record("c", False, why="x")
    assert not rep.ok and rep.passed == 1 and rep.failed == 1
    assert rep.findings[0]["kind"] == "FAILURE"
    assert "FAIL r" in rep.summary()


def test_sl2_offdiag_value():
    assert H.sl2_offdiag_val(1, -2, 0) == -3


@pytest.mark.parametrize("m", [1, -1, 2])
def test_sl2_small(m):
    rep = H.verify_sl2(m, trials=30, seed=4)
    assert rep.ok, rep.summary()


def test_sl2_identity_torus(F5):
    for shape in (1, 2):
        g = H.sl2_g(F5, shape, F5.eps(-2), 1)
        h = h_map(g, (1, -1))
        assert classify_double_coset(h) == classify_double_coset(h_map(Mat.identity(F5, 2) * g, (1, -1)))


def test_reduce_translation_example():
    r = H.reduce_case(AffineWeylElt.translation((0, -1, 1)), (1, 0, -1))
    assert r.family == "TRANSLATION_F_LE_E_LE_D"
    assert list(r.x.mu) == sorted(r.x.mu, reverse=True)
    assert H.replay(AffineWeylElt.translation((0, -1, 1)), (1, 0, -1), r.transcript) == (r.x, r.nu)


def test_reduce_s1_goes_to_eta():
    r = H.reduce_case(AffineWeylElt((1, -2, 1), perm_from_name("s1")), (2, 0, -2))
    assert r.x.perm == perm_from_name("s1s2s1")
    assert r.transcript[0]["move"] == "phi"
    assert r.family.startswith("ETA")


def test_reduce_s1s2_goes_to_s2s1():
    r = H.reduce_case(AffineWeylElt((2, 1, -3), perm_from_name("s1s2")), (1, 0, -1))
    assert r.transcript[0]["move"] == "psi"
    assert r.x.perm == perm_from_name("s2s1")
    assert r.x.mu[2] > max(r.x.mu[:2])
    assert r.family.startswith("S2S1")


def test_strictly_increasing_translation_is_not_reducible(F5):
    x, nu = AffineWeylElt.translation((-2, 0, 2)), (2, 0, -2)
    with pytest.raises(NotReducible):
        H.reduce_case(x, nu)
    # yet the variety is not empty: a witness exists through the s1s2s1 stratum
    g = H.perm_mat(perm_from_name("s1s2s1"), F5)
    assert in_adlv(g, x, nu)


def test_reduction_is_sound(F5):
    rng = random.Random(99)
    reduced = 0
    for _ in range(150):
        nu = tuple(rng.sample([3, 1, 0, -1, -3, 2, -2], 2))
        nu = (nu[0], nu[1], -nu[0] - nu[1])
        if len(set(nu)) < 3:
            continue
        g = random_unipotent(F5, rng, lo=-3, hi=3)
        x = classify_double_coset(h_map(g, nu))
        try:
            r = H.reduce_case(x, nu)
        except NotReducible:
            continue
        reduced += 1
        assert H.params_ok(r.family, r.params)
        assert H.replay(x, nu, r.transcript) == (r.x, r.nu)
        g2 = H.transport_all(g, r.transcript)
        assert in_adlv(g2, r.x, r.nu)
        # a different element is not reached by either side
        y = AffineWeylElt(x.mu, perm_from_name("s1")) if x.perm != perm_from_name("s1") \
            else AffineWeylElt(x.mu, perm_from_name("1"))
        y2, nu2 = H.replay(y, nu, r.transcript)
        assert not in_adlv(g, y, nu) and not in_adlv(g2, y2, nu2)
    assert reduced > 50


def test_reduce_rejects_bad_input():
    with pytest.raises(ValueError):
        H.reduce_case(AffineWeylElt.identity(), (1, 1, -2))
    with pytest.raises(ValueError):
        H.reduce_case(AffineWeylElt.identity(), (2, 0, -1))


def test_stated_strict_forms_refer_to_checks():
    for (fid, name), table in STATED.items():
        sc = get_subcase(fid, name)
        assert set(table) <= set(sc.checks)


def test_search_stratum_finds_and_classifies_members():
    res = H.search_stratum("TRANSLATION_F_LE_E_LE_D", "1", "d == i and e == j and f == k",
                           samples=60, seed=1, classify=True)
    assert res["members"] > 0
    assert res["unclassified"] == 0 and res["stray"] is None


def test_search_stratum_empty_claim():
    res = H.search_stratum("ETA_F_LE_D_LT_E", "s1s2", samples=200, seed=1)
    assert res["samples"] == 200 and res["members"] == 0


def test_verify_empty_small_budget():
    rep = H.verify_empty(samples=150, seed=2, families=["TRANSLATION_F_LE_E_LE_D"])
    assert rep.ok, rep.summary()
    assert any(c["members"] for c in rep.info["controls"])
