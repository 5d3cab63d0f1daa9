import json

import mpmath
import pytest

from volcheck.census import record_from_obj
from volcheck.dilog import v0
from volcheck.screening import degeneracy_threshold
from volcheck.screening import test1 as stage1

PREC = 192


def _rec(nu, volume):
    return record_from_obj({
        "name": f"syn-nu{nu}",
        "nu": nu,
        "cusps": 1,
        "volume": volume,
        "gluing": [{"a": [1] * nu, "b": [0] * nu, "c": 1}],
    })


def _dec(x, digits=25):
    return mpmath.nstr(x, digits)


def test_m004_threshold(m004):
    thr = degeneracy_threshold(m004, PREC)
    assert thr.k == 1
    assert thr.ambiguous  # V = 2 v0 exactly
    assert abs(thr.ratio - 2) < mpmath.mpf("1e-9")
    # soundness: (nu - k) v0 < V
    assert (m004.nu - thr.k) * v0(PREC).value < m004.volume_mpf(PREC)


def test_just_below_integer_ratio():
    with mpmath.workprec(PREC):
        vol = 9 * v0(PREC).value - mpmath.mpf("1e-5")
    rec = _rec(9, _dec(vol))
    thr = degeneracy_threshold(rec, PREC)
    assert thr.k == 1 and not thr.ambiguous


def test_mid_ratio():
    rec = _rec(6, "3.2")
    thr = degeneracy_threshold(rec, PREC)
    assert abs(thr.ratio - mpmath.mpf("3.1529")) < 1e-3
    assert thr.k == 3 and not thr.ambiguous


def test_near_integer_takes_smaller_ceiling():
    # within 1e-9 above an integer: conservative rule keeps the larger k
    with mpmath.workprec(PREC):
        vol = 3 * v0(PREC).value + mpmath.mpf("1e-12")
    rec = _rec(5, _dec(vol))
    thr = degeneracy_threshold(rec, PREC)
    assert thr.ambiguous and thr.k == 5 - 3 + 1


def test_k_at_most_nu(mini_census, fixtures_census):
    for rec in mini_census + fixtures_census:
        thr = degeneracy_threshold(rec, PREC)
        assert thr.k <= rec.nu


def test_soundness_certificate_on_pass(mini_census, fixtures_census):
    for rec in mini_census + fixtures_census:
        out = stage1(rec, PREC)
        if out.verdict == "PASS":
            assert out.payload["k"] <= 2
            margin = rec.volume_mpf(PREC) - (rec.nu - 2) * v0(PREC).value
            assert margin > mpmath.mpf("1e-9")


def test_monotone_in_volume():
    # raising V (fixed nu) never turns a PASS into FAIL
    with mpmath.workprec(PREC):
        vols = [mpmath.mpf("0.5") + mpmath.mpf("0.37") * i for i in range(20)]
    prev_pass = None
    for vol in vols:
        out = stage1(_rec(6, _dec(vol)), PREC)
        if prev_pass:
            assert out.verdict == "PASS"
        prev_pass = out.verdict == "PASS"


def test_double_precision_agreement(mini_census, fixtures_census):
    for rec in mini_census + fixtures_census:
        assert degeneracy_threshold(rec, PREC).k == degeneracy_threshold(rec, 2 * PREC).k


def test_outcome_payload(m004):
    out = stage1(m004, PREC)
    assert out.verdict == "PASS" and out.stage == 1
    assert out.payload["k"] == 1 and out.payload["margin"] > 0
