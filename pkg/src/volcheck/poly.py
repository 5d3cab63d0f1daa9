"""Sparse multivariate polynomials over the rationals, with pluggable monomial orders."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    """Admissible order on exponent vectors.

    kind: "grevlex", "lex", or "block" (eliminate the first `block` variables,
    grevlex within each block).  `perm` maps comparison position -> variable
    index, so perm=(2,0,1) compares variable 2 first.
    """

    kind: str = "grevlex"
    block: int = 0
    perm: tuple[int, ...] | None = None

    def _permuted(self, exp: Exponent) -> Exponent:
        if self.perm is None:
            return exp
        return tuple(exp[i] for i in self.perm)

    def key(self, exp: Exponent):
        """Sort key: larger key = larger monomial."""
        e = self._permuted(exp)
        if self.kind == "lex":
            return e
        if self.kind == "grevlex":
            return _grevlex_key(e)
        if self.kind == "block":
            return (_grevlex_key(e[: self.block]), _grevlex_key(e[self.block :]))
        raise ValueError(f"unknown order kind {self.kind!r}")


def _grevlex_key(e: Exponent):
    return (sum(e), tuple(-x for x in reversed(e)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_elim_order(elim: list[int], nvars: int) -> MonomialOrder:
    """Order eliminating the given variables (they sort in front)."""
    elim = sorted(elim)
    keep = [i for i in range(nvars) if i not in set(elim)]
    return MonomialOrder("block", block=len(elim), perm=tuple(elim + keep))


def _mono_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


class MultiPoly:
    """Immutable sparse polynomial: map exponent tuple -> nonzero Fraction."""

    __slots__ = ("nvars", "coeffs", "_hash")

    def __init__(self, nvars: int, coeffs: dict[Exponent, Fraction] | None = None):
        self.nvars = nvars
        clean = {}
        for exp, c in (coeffs or {}).items():
            c = Fraction(c)
            if c != 0:
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length (nvars={nvars})")
                clean[tuple(int(x) for x in exp)] = c
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutability guard
        if a[0] in ("nvars", "coeffs", "_hash") and not hasattr(self, "_hash"):
            object.__setattr__(self, *a)
        else:
            raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars, {})

    @staticmethod
    def const(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def var(i: int, nvars: int) -> "MultiPoly":
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return MultiPoly(nvars, {exp: Fraction(1)})

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.coeffs)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def support_vars(self) -> set[int]:
        out = set()
        for e in self.coeffs:
            for i, x in enumerate(e):
                if x:
                    out.add(i)
        return out

    def terms_sorted(self, order: MonomialOrder):
        return sorted(self.coeffs.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading(self, order: MonomialOrder) -> tuple[Exponent, Fraction]:
        exp = max(self.coeffs, key=order.key)
        return exp, self.coeffs[exp]

    def monic(self, order: MonomialOrder) -> "MultiPoly":
        if self.is_zero():
            return self
        _, c = self.leading(order)
        return self.scale(Fraction(1) / c)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) - c
        return MultiPoly(self.nvars, out)

    def __neg__(self) -> "MultiPoly":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly(self.nvars, {e: x * c for e, x in self.coeffs.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = _mono_mul(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    def term_mul(self, exp: Exponent, c: Fraction) -> "MultiPoly":
        return MultiPoly(
            self.nvars, {_mono_mul(e, exp): x * c for e, x in self.coeffs.items()}
        )

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            h = hash((self.nvars, frozenset(self.coeffs.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- evaluation & substitution ----------------------------------------

    def evaluate(self, point):
        """Evaluate at a point (any ring with +,*; e.g. mpmath.mpc, Fraction)."""
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        total = None
        for e, c in self.coeffs.items():
            term = 1 * c  # promote
            for i, p in enumerate(e):
                if p:
                    term = term * point[i] ** p
            total = term if total is None else total + term
        return 0 if total is None else total

    def substitute(self, i: int, value: "MultiPoly") -> "MultiPoly":
        """Replace variable i by a polynomial (same arity)."""
        self._check(value)
        out = MultiPoly.zero(self.nvars)
        powers = {0: MultiPoly.const(self.nvars, 1)}
        for e, c in self.coeffs.items():
            p = e[i]
            if p not in powers:
                powers[p] = value**p
            rest = tuple(0 if j == i else x for j, x in enumerate(e))
            out = out + powers[p].term_mul(rest, c)
        return out

    def extend(self, new_nvars: int) -> "MultiPoly":
        """Same polynomial viewed with trailing extra variables."""
        if new_nvars < self.nvars:
            raise ValueError("cannot shrink arity")
        pad = (0,) * (new_nvars - self.nvars)
        return MultiPoly(new_nvars, {e + pad: c for e, c in self.coeffs.items()})

    def contract(self, new_nvars: int) -> "MultiPoly":
        """Drop trailing variables (they must not occur)."""
        for e in self.coeffs:
            if any(e[new_nvars:]):
                raise ValueError("polynomial uses a dropped variable")
        return MultiPoly(new_nvars, {e[:new_nvars]: c for e, c in self.coeffs.items()})

    # -- display -----------------------------------------------------------

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.terms_sorted(GREVLEX):
            mono = "*".join(
                f"x{i}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(e) if p
            )
            if mono:
                parts.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                parts.append(str(c))
        return " + ".join(parts)


def poly_content_free(f: MultiPoly) -> MultiPoly:
    """Scale to integer coefficients with gcd 1 and positive leading (grevlex) coeff."""
    if f.is_zero():
        return f
    from math import gcd

    den = 1
    for c in f.coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    num_gcd = 0
    for c in f.coeffs.values():
        num_gcd = gcd(num_gcd, abs(c.numerator * den // c.denominator))
    scale = Fraction(den, num_gcd or 1)
    g = f.scale(scale)
    if g.leading(GREVLEX)[1] < 0:
        g = -g
    return g
