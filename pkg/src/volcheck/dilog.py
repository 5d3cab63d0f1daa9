"""Bloch-Wigner dilogarithm at high precision, extended continuously to CP^1.

D(z) is computed through the Lobachevsky function: for Im z > 0 the three
cross-ratio representatives z, 1/(1-z), (z-1)/z are the angles of the triangle
(0, 1, z), and D(z) = L(arg z) + L(arg 1/(1-z)) + L(arg (z-1)/z) with
L(t) = Cl2(2t)/2 evaluated by the Bernoulli series.  The independent oracle
used in the tests goes through Im Li2(z) + arg(1-z) log|z| instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mpf, mpc

DEFAULT_PREC = 192
_GUARD = 24


@dataclass(frozen=True)
class CP1Point:
    """A point of CP^1: a finite complex value or the point at infinity."""

    value: object = None  # mpmath.mpc, or None for infinity

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    @staticmethod
    def infinity() -> "CP1Point":
        return CP1Point(None)

    @staticmethod
    def of(z) -> "CP1Point":
        return CP1Point(mpc(z))

    def boundary_class(self, tol=1e-20) -> str:
        """Which degeneration this point is at: '0', '1', 'inf' or 'finite'."""
        if self.is_infinity:
            return "inf"
        if abs(self.value) < tol:
            return "0"
        if abs(self.value - 1) < tol:
            return "1"
        return "finite"


@dataclass(frozen=True)
class Volume:
    """High-precision real volume with a conservative evaluation-error bound."""

    value: object  # mpmath.mpf
    err: object  # mpmath.mpf, >= 0

    def __post_init__(self):
        if not (self.err >= 0 and mpmath.isfinite(self.err)):
            raise ValueError("error bound must be finite and nonnegative")

    def __add__(self, other: "Volume") -> "Volume":
        return Volume(self.value + other.value, self.err + other.err)

    def __neg__(self) -> "Volume":
        return Volume(-self.value, self.err)


def clausen2(x, prec: int = DEFAULT_PREC):
    """Cl2(x) for |x| <= pi via the Bernoulli series."""
    with mpmath.workprec(prec + _GUARD):
        x = mpf(x)
        if x == 0:
            return mpf(0)
        if abs(x) > mpmath.pi * (1 + mpf(2) ** (-prec)):
            raise ValueError("clausen2 expects |x| <= pi")
        eps = mpf(2) ** (-(prec + _GUARD))
        total = x - x * mpmath.log(abs(x))
        x2 = x * x
        pow_x = x  # x^(2n+1) running power
        n = 1
        while True:
            pow_x *= x2
            term = abs(mpmath.bernoulli(2 * n)) * pow_x / (2 * n * (2 * n + 1) * mpmath.factorial(2 * n))
            total += term
            if abs(term) < eps * (1 + abs(total)):
                break
            n += 1
            if n > 4 * (prec + _GUARD):
                raise RuntimeError("clausen2 series failed to converge")
        return +total


def lobachevsky(theta, prec: int = DEFAULT_PREC):
    """Lobachevsky function L(t) = Cl2(2t)/2; odd, pi-periodic."""
    with mpmath.workprec(prec + _GUARD):
        t = mpf(theta)
        pi = +mpmath.pi
        # reduce mod pi into (-pi/2, pi/2]
        t = t - mpmath.floor(t / pi + mpf(1) / 2) * pi
        return clausen2(2 * t, prec) / 2


def bloch_wigner(z: CP1Point | complex, prec: int = DEFAULT_PREC) -> Volume:
    """Extended Bloch-Wigner dilogarithm D on CP^1; exactly 0 at 0, 1, infinity."""
    if isinstance(z, CP1Point):
        if z.is_infinity:
            return Volume(mpf(0), mpf(0))
        z = z.value
    with mpmath.workprec(prec + _GUARD):
        z = mpc(z)
        if z.imag == 0:
            # real axis, including the degenerate points 0 and 1
            return Volume(mpf(0), mpf(0))
        if z.imag < 0:
            v = bloch_wigner(CP1Point.of(mpmath.conj(z)), prec)
            return Volume(-v.value, v.err)
        a1 = mpmath.arg(z)
        a2 = -mpmath.arg(1 - z)
        a3 = +mpmath.pi - a1 - a2
        val = lobachevsky(a1, prec) + lobachevsky(a2, prec) + lobachevsky(a3, prec)
        err = mpf(2) ** (-(prec - 8)) * (1 + abs(val))
        return Volume(+val, err)


_V0_CACHE: dict[int, Volume] = {}


def v0(prec: int = DEFAULT_PREC) -> Volume:
    """Volume of the regular ideal tetrahedron: D(exp(i pi/3)) = 3 L(pi/3)."""
    if prec not in _V0_CACHE:
        with mpmath.workprec(prec + _GUARD):
            z = mpmath.exp(mpmath.mpc(0, 1) * mpmath.pi / 3)
            _V0_CACHE[prec] = bloch_wigner(CP1Point.of(z), prec)
    return _V0_CACHE[prec]


def rep_volume(shapes: list, prec: int = DEFAULT_PREC) -> Volume:
    """Sum of tetrahedron volumes over a shape list (CP1Points or complexes)."""
    if not shapes:
        raise ValueError("need at least one shape")
    with mpmath.workprec(prec + _GUARD):
        total = Volume(mpf(0), mpf(0))
        for z in shapes:
            total = total + bloch_wigner(z, prec)
        return Volume(+total.value, +total.err)


def parse_decimal(s: str, prec: int = DEFAULT_PREC):
    """Decimal string -> mpf at working precision."""
    with mpmath.workprec(prec + _GUARD):
        return +mpf(s)


def parse_complex_pair(re_s: str, im_s: str, prec: int = DEFAULT_PREC):
    with mpmath.workprec(prec + _GUARD):
        return mpc(mpf(re_s), mpf(im_s))
