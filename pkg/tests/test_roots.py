import random

import mpmath
import pytest

from oracles import poly_from_roots
from volcheck.roots import RootFindingError, UnivariateRoots, aberth_roots

PREC = 192


def _match(found, true, tol):
    used = set()
    for r in found:
        best, besti = None, None
        for i, t in enumerate(true):
            if i in used:
                continue
            d = abs(r - t)
            if best is None or d < best:
                best, besti = d, i
        assert best < tol, f"root {r} unmatched (closest {best})"
        used.add(besti)


def test_quadratic():
    r = aberth_roots([1, 0, -2], prec=PREC)
    vals = sorted([x.real for x in r.roots])
    with mpmath.workprec(PREC):
        s = mpmath.sqrt(2)
    assert abs(vals[0] + s) < 1e-40 and abs(vals[1] - s) < 1e-40


def test_root_count_equals_degree():
    r = aberth_roots([2, 1, 1, 1], prec=PREC)
    assert len(r.roots) == 3


def test_roots_at_origin_exact():
    # x^3 - x^2 = x^2 (x - 1)
    r = aberth_roots([1, -1, 0, 0], prec=PREC)
    zeros = [z for z in r.roots if z == 0]
    assert len(zeros) == 2
    assert any(abs(z - 1) < 1e-40 for z in r.roots)


def test_zero_polynomial_rejected():
    with pytest.raises(RootFindingError):
        aberth_roots([0, 0], prec=PREC)


def test_constructed_roots_random():
    rng = random.Random(12)
    with mpmath.workprec(PREC + 32):
        for trial in range(20):
            n = rng.randint(2, 40)
            true = [
                mpmath.mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)
            ]
            coeffs = poly_from_roots(true, prec=PREC + 32)
            r = aberth_roots(coeffs, prec=PREC)
            assert len(r.roots) == n
            assert max(r.residuals) < mpmath.mpf("1e-30")


def test_residuals_and_separations_reported():
    r = aberth_roots([1, 0, -2], prec=PREC)
    assert all(res < mpmath.mpf("1e-40") for res in r.residuals)
    with mpmath.workprec(PREC):
        assert abs(r.separations[0] - 2 * mpmath.sqrt(2)) < 1e-30


def test_deterministic():
    a = aberth_roots([1, 2, 3, 4, 5], prec=PREC)
    b = aberth_roots([1, 2, 3, 4, 5], prec=PREC)
    assert [mpmath.nstr(z, 40) for z in a.roots] == [mpmath.nstr(z, 40) for z in b.roots]
