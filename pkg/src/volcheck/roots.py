"""Simultaneous complex root finding by Aberth-Ehrlich iteration (mpmath)."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpc, mpf


class RootFindingError(RuntimeError):
    pass


@dataclass(frozen=True)
class UnivariateRoots:
    coeffs: tuple  # monic, highest degree first, mpc entries
    roots: tuple  # mpc, one per degree with multiplicity
    residuals: tuple  # |p(root)| per root
    separations: tuple  # distance to nearest other root, per root


def _horner(coeffs, z):
    acc = mpc(0)
    for c in coeffs:
        acc = acc * z + c
    return acc


def _horner_deriv(coeffs, z):
    n = len(coeffs) - 1
    acc = mpc(0)
    for i, c in enumerate(coeffs[:-1]):
        acc = acc * z + c * (n - i)
    return acc


def aberth_roots(
    coeffs,
    prec: int = 192,
    max_iter: int = 300,
    tol=None,
) -> UnivariateRoots:
    """All complex roots of a polynomial (coefficients highest-first).

    Coefficients may be any mpmath-convertible numbers; the polynomial is
    normalized to monic.  Deterministic: fixed initial configuration on a
    slightly perturbed circle.
    """
    with mpmath.workprec(prec + 32):
        c = [mpc(mpmath.mpmathify(x)) for x in coeffs]
        # strip leading zeros
        while c and abs(c[0]) == 0:
            c.pop(0)
        if not c:
            raise RootFindingError("zero polynomial")
        lead = c[0]
        c = [x / lead for x in c]
        # factor out roots at the origin exactly
        zero_roots = 0
        while len(c) > 1 and c[-1] == 0:
            c.pop()
            zero_roots += 1
        n = len(c) - 1
        if tol is None:
            tol = mpf(2) ** (-(prec - 8))
        if n == 0:
            roots = [mpc(0)] * zero_roots
            return _package(c, roots, tol)
        # Cauchy-style radius for initial guesses
        radius = 1 + max(abs(x) for x in c[1:])
        roots = []
        twopi = 2 * mpmath.pi
        for i in range(n):
            theta = twopi * i / n + mpf(1) / (2 * n) + mpf("0.25")
            roots.append(radius * mpmath.exp(mpc(0, 1) * theta) * (1 + mpf(i + 1) / (97 * n)))
        for _ in range(max_iter):
            moved = mpf(0)
            for i in range(n):
                z = roots[i]
                p = _horner(c, z)
                if abs(p) == 0:
                    continue
                dp = _horner_deriv(c, z)
                if abs(dp) == 0:
                    roots[i] = z * (1 + mpf("1e-12")) + mpf("1e-12")
                    moved = max(moved, abs(roots[i] - z))
                    continue
                newton = p / dp
                s = mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (z - roots[j])
                denom = 1 - newton * s
                step = newton / denom if abs(denom) != 0 else newton
                roots[i] = z - step
                moved = max(moved, abs(step))
            if moved < tol:
                break
        else:
            res = max(abs(_horner(c, r)) for r in roots)
            if res > tol * 1000:
                raise RootFindingError(f"Aberth did not converge (max residual {res})")
        roots = [mpc(0)] * zero_roots + roots
        full = c + [mpc(0)] * zero_roots
        return _package(full, roots, tol)


def _package(coeffs, roots, tol) -> UnivariateRoots:
    residuals = tuple(abs(_horner(coeffs, r)) for r in roots)
    seps = []
    for i, r in enumerate(roots):
        others = [abs(r - s) for j, s in enumerate(roots) if j != i]
        seps.append(min(others) if others else mpf("inf"))
    return UnivariateRoots(
        coeffs=tuple(coeffs),
        roots=tuple(roots),
        residuals=residuals,
        separations=tuple(seps),
    )


def newton_refine_system(polys, point, prec: int = 192, steps: int = 50, tol=None):
    """Gauss-Newton refinement of a point against a list of MultiPoly
    generators (least-squares via normal equations), at working precision."""
    with mpmath.workprec(prec + 32):
        n = len(point)
        x = [mpc(p) for p in point]
        if tol is None:
            tol = mpf(2) ** (-(prec - 8))
        grads = [[_partial(p, i) for i in range(n)] for p in polys]
        for _ in range(steps):
            F = mpmath.matrix([[p.evaluate(x)] for p in polys])
            if max(abs(F[i, 0]) for i in range(len(polys))) < tol:
                break
            J = mpmath.matrix(len(polys), n)
            for r, row in enumerate(grads):
                for cidx in range(n):
                    J[r, cidx] = row[cidx].evaluate(x)
            try:
                JH = J.H
                delta = mpmath.lu_solve(JH * J, JH * F)
            except ZeroDivisionError:
                break
            for i in range(n):
                x[i] -= delta[i, 0]
            if max(abs(delta[i, 0]) for i in range(n)) < tol:
                break
        return x


def _partial(p, i):
    from fractions import Fraction

    from .poly import MultiPoly

    out = {}
    for e, c in p.coeffs.items():
        if e[i]:
            ne = tuple(x - 1 if j == i else x for j, x in enumerate(e))
            out[ne] = out.get(ne, Fraction(0)) + c * e[i]
    return MultiPoly(p.nvars, out)
