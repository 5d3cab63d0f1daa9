"""Acceptance gate: one test per criterion, each printing a single
ACCEPTANCE line.  Census-scale criteria need the vendored census files
(data/census_le6.jsonl[.gz], data/census_le9.jsonl[.gz]); when those are
absent the corresponding tests fail with a blocking diagnostic rather than
being skipped or weakened.
"""

import json
import random
import time
from fractions import Fraction

import mpmath
import pytest

from conftest import DATA
from oracles import poly_from_roots, sylvester_resultant
from volcheck.census import load_census
from volcheck.dilog import CP1Point, bloch_wigner, rep_volume, v0
from volcheck.groebner import (
    AlgebraBudget,
    BudgetExceeded,
    PolyIdeal,
    buchberger,
    eliminate,
    normal_form,
    s_poly,
)
from volcheck.idealpoints import ideal_point_volumes
from volcheck.pipeline import (
    REPORT_FILENAME,
    RunConfig,
    report_body_without_timings,
    run_pipeline,
)
from volcheck.poly import GREVLEX, LEX, MultiPoly
from volcheck.roots import aberth_roots
from volcheck.screening import test1 as stage1
from volcheck.tropical import build_tropical_system, satisfies_system
from volcheck.tropical import test2 as stage2

PREC = 192

CENSUS_LE6 = next(
    (p for p in (DATA / "census_le6.jsonl", DATA / "census_le6.jsonl.gz") if p.exists()),
    None,
)
CENSUS_LE9 = next(
    (p for p in (DATA / "census_le9.jsonl", DATA / "census_le9.jsonl.gz") if p.exists()),
    None,
)
CENSUS_BLOCKED = (
    "vendored census file missing (data/census_le6.jsonl[.gz]); the exporter "
    "needs SnapPy, which is unavailable on the package mirror in this "
    "environment, so census-scale criteria cannot run"
)


def _accept(name, ok, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    if not ok:
        pytest.fail(f"{name}: {detail}", pytrace=False)


def test_acceptance_v0():
    t0 = time.monotonic()
    val = v0(PREC).value
    with mpmath.workprec(PREC):
        # independent route: D(e^{i pi/3}) = Im Li2 on the unit circle
        oracle = mpmath.polylog(2, mpmath.exp(mpmath.mpc(0, mpmath.pi / 3))).imag
        err = abs(val - mpmath.mpf("1.0149416064096536"))
        err_oracle = abs(val - oracle)
    dt = time.monotonic() - t0
    _accept(
        "v0",
        err < 1e-12 and err_oracle < mpmath.mpf("1e-40") and dt < 1.0,
        f"|v0 - 1.0149416064096536| = {mpmath.nstr(err, 3)}, "
        f"oracle diff {mpmath.nstr(err_oracle, 3)}, {dt:.3f}s",
    )


def test_acceptance_dilog_identities():
    t0 = time.monotonic()
    rng = random.Random(20)
    tol = mpmath.mpf("1e-20")
    worst = mpmath.mpf(0)
    n = 0
    with mpmath.workprec(PREC):
        for _ in range(1000):
            z = mpmath.mpc(rng.uniform(-3, 3), rng.uniform(0.01, 3))
            D = lambda w: bloch_wigner(CP1Point.of(w), PREC).value
            # antisymmetry, six-fold symmetry, five-term relation
            worst = max(worst, abs(D(z) + D(mpmath.conj(z))))
            worst = max(worst, abs(D(z) - D(1 - 1 / z)))
            worst = max(worst, abs(D(z) - D(1 / (1 - z))))
            worst = max(worst, abs(D(z) + D(1 / z)))
            worst = max(worst, abs(D(z) + D(1 - z)))
            w = mpmath.mpc(rng.uniform(-3, 3), rng.uniform(0.01, 3))
            five = (
                D(z) + D(w) + D((1 - z) / (1 - z * w))
                + D(1 - z * w) + D((1 - w) / (1 - z * w))
            )
            worst = max(worst, abs(five))
            n += 3
    dt = time.monotonic() - t0
    _accept(
        "dilog-identities",
        worst < tol and dt < 30 and n >= 1000,
        f"worst deviation {mpmath.nstr(worst, 3)} over {n} samples, {dt:.1f}s",
    )


def test_acceptance_shape_crosscheck(mini_census, fixtures_census):
    records = mini_census + fixtures_census
    source = "mini census + fixtures"
    if CENSUS_LE6 is not None:
        records = load_census(CENSUS_LE6)
        source = CENSUS_LE6.name
    worst = mpmath.mpf(0)
    checked = 0
    with mpmath.workprec(PREC):
        for rec in records:
            if rec.shapes is None:
                continue
            checked += 1
            dv = abs(rep_volume(rec.shapes_mpc(PREC)).value - rec.volume_mpf(PREC))
            worst = max(worst, dv)
    full_scale = CENSUS_LE6 is not None
    _accept(
        "shape-crosscheck",
        checked > 0 and worst < mpmath.mpf("1e-9") and full_scale,
        f"{checked} records from {source}, worst |sum D - V| = "
        f"{mpmath.nstr(worst, 3)}"
        + ("" if full_scale else f"; BLOCKED at census scale: {CENSUS_BLOCKED}"),
    )


def test_acceptance_test1_counts():
    if CENSUS_LE6 is None or CENSUS_LE9 is None:
        _accept("test1-counts", False, f"BLOCKED: {CENSUS_BLOCKED}")
    for path, expect_pass, expect_total in (
        (CENSUS_LE6, 1144, 1263),
        (CENSUS_LE9, 25986, 61911),
    ):
        t0 = time.monotonic()
        census = load_census(path)
        passes = sum(1 for r in census if stage1(r, PREC).verdict == "PASS")
        dt = time.monotonic() - t0
        _accept(
            f"test1-counts[{path.name}]",
            len(census) == expect_total and passes == expect_pass and dt < 60,
            f"{passes}/{len(census)} PASS (expected {expect_pass}/{expect_total}), {dt:.1f}s",
        )


def test_acceptance_test2_survivors():
    if CENSUS_LE6 is None:
        _accept("test2-survivors", False, f"BLOCKED: {CENSUS_BLOCKED}")
    census = load_census(CENSUS_LE6)
    survivors = [
        (r, stage1(r, PREC).payload["k"])
        for r in census
        if stage1(r, PREC).verdict != "PASS"
    ]
    passes = 0
    for rec, k in survivors:
        out = stage2(rec, k)
        if out.verdict != "PASS":
            continue
        passes += 1
        sys = build_tropical_system(rec)
        if not out.payload["prevariety_trivial"]:
            w = [Fraction(x) for x in out.payload["witness"]]
            assert satisfies_system(sys, w), f"{rec.name}: unsound witness"
    _accept(
        "test2-survivors",
        len(survivors) == 119 and passes <= 47,
        f"{passes} of {len(survivors)} survivors pass (paper: 47 of 119)",
    )


def test_acceptance_test3_desk_scale(mini_census, fixtures_census):
    names = ["m004", "m003", "fx-reg1", "fx-sqr2", "fx-reg3"]
    by_name = {r.name: r for r in mini_census + fixtures_census}
    worst_res = mpmath.mpf(0)
    worst_vol = mpmath.mpf(0)
    slowest = 0.0
    for name in names:
        t0 = time.monotonic()
        run = ideal_point_volumes(by_name[name], prec=PREC)
        dt = time.monotonic() - t0
        slowest = max(slowest, dt)
        assert run.clean, f"{name}: {run.budget_failures + run.solve_failures}"
        for s in run.solutions:
            worst_res = max(worst_res, s.residual)
            worst_vol = max(worst_vol, s.volume.value + s.volume.err)
    _accept(
        "test3-desk-scale",
        worst_res < mpmath.mpf("1e-25") and worst_vol < mpmath.mpf("1e-6")
        and slowest < 300,
        f"{len(names)} manifolds, worst residual {mpmath.nstr(worst_res, 3)}, "
        f"worst ideal-point volume {mpmath.nstr(worst_vol, 3)}, "
        f"slowest {slowest:.1f}s",
    )


def test_acceptance_test3_census_scale():
    if CENSUS_LE6 is None:
        _accept("test3-census-scale", False, f"BLOCKED: {CENSUS_BLOCKED}")
    census = load_census(CENSUS_LE6)
    tallies = {"PASS": 0, "FAIL": 0, "FAIL-DIMENSION": 0, "INCONCLUSIVE": 0}
    cfg = RunConfig()
    from volcheck.idealpoints import test3

    for rec in census:
        o1 = stage1(rec, PREC)
        if o1.verdict == "PASS":
            continue
        if stage2(rec, o1.payload["k"]).verdict == "PASS":
            continue
        if rec.nu > 6:
            continue
        out = test3(rec, prec=PREC, budget=cfg.budget())
        tallies[out.verdict] += 1
    _accept(
        "test3-census-scale",
        tallies["PASS"] >= 15,
        f"tallies {tallies} (paper: 29 PASS of 72, 42 unresolved)",
    )


def _rand_poly(rng, n, deg, terms):
    d = {}
    for _ in range(terms):
        e = [0] * n
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(n)] += 1
        d[tuple(e)] = Fraction(rng.randint(-3, 3))
    return MultiPoly(n, d)


def test_acceptance_algebra_oracles():
    t0 = time.monotonic()
    rng = random.Random(30)

    gb_checked = 0
    attempts = 0
    while gb_checked < 500 and attempts < 1500:
        attempts += 1
        gens = [g for g in (_rand_poly(rng, 3, 3, 3) for _ in range(2)) if not g.is_zero()]
        if not gens:
            continue
        try:
            G = buchberger(gens, GREVLEX, AlgebraBudget(max_pairs=2000, max_degree=25))
        except BudgetExceeded:
            continue
        gb_checked += 1
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                assert normal_form(s_poly(G[i], G[j], GREVLEX), G, GREVLEX).is_zero()
        for g in gens:
            assert normal_form(g, G, GREVLEX).is_zero()

    elim_checked = 0
    attempts = 0
    while elim_checked < 200 and attempts < 800:
        attempts += 1
        p = _rand_poly(rng, 2, 3, 3)
        q = _rand_poly(rng, 2, 3, 3)
        if p.is_zero() or q.is_zero() or 1 not in p.support_vars() | q.support_vars():
            continue
        res = sylvester_resultant(p, q, elim_var=1, keep_var=0)
        if all(c == 0 for c in res):
            continue
        res_poly = MultiPoly(2, {(i, 0): c for i, c in enumerate(res)})
        E = eliminate(PolyIdeal([p, q]), {0})
        gens = [g for g in E.generators if not g.is_zero()]
        if gens:
            assert normal_form(res_poly, buchberger(gens, LEX), LEX).is_zero()
        elim_checked += 1

    worst_aberth = mpmath.mpf(0)
    with mpmath.workprec(PREC + 32):
        for _ in range(100):
            n = rng.randint(2, 25)
            roots = [mpmath.mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
            r = aberth_roots(poly_from_roots(roots, PREC + 32), prec=PREC)
            worst_aberth = max(worst_aberth, max(r.residuals))

    dt = time.monotonic() - t0
    _accept(
        "algebra-oracles",
        gb_checked >= 500 and elim_checked >= 200
        and worst_aberth < mpmath.mpf("1e-30") and dt < 300,
        f"{gb_checked} ideals, {elim_checked} resultant pairs, "
        f"worst Aberth residual {mpmath.nstr(worst_aberth, 3)}, {dt:.1f}s",
    )


def test_acceptance_determinism(mini_census, fixtures_census, tmp_path):
    census = mini_census + fixtures_census
    cfg = RunConfig(seed=5)
    run_pipeline(census, cfg, tmp_path / "a")
    run_pipeline(census, cfg, tmp_path / "b")
    bodies = []
    for d in ("a", "b"):
        with open(tmp_path / d / REPORT_FILENAME, encoding="utf-8") as fh:
            body = report_body_without_timings(json.load(fh))
        bodies.append(json.dumps(body, sort_keys=True).encode())
    _accept(
        "determinism",
        bodies[0] == bodies[1],
        f"reports byte-identical after stripping wall-clock timings "
        f"({len(bodies[0])} bytes)",
    )
