"""Buchberger's algorithm, elimination and saturation over the rationals."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import (
    LEX,
    MonomialOrder,
    MultiPoly,
    _mono_div,
    _mono_divides,
    _mono_lcm,
    _mono_mul,
    block_elim_order,
)


class BudgetExceeded(Exception):
    """A configured algebra budget was hit; carries which cap fired."""

    def __init__(self, cap: str):
        super().__init__(f"algebra budget exceeded: {cap}")
        self.cap = cap


@dataclass(frozen=True)
class AlgebraBudget:
    max_pairs: int = 20000
    max_degree: int = 60
    timeout_s: float = 300.0

    def start(self) -> "_BudgetClock":
        return _BudgetClock(self)


class _BudgetClock:
    def __init__(self, budget: AlgebraBudget):
        self.budget = budget
        self.t0 = time.monotonic()
        self.pairs = 0

    def tick_pair(self):
        self.pairs += 1
        if self.pairs > self.budget.max_pairs:
            raise BudgetExceeded(f"max_pairs={self.budget.max_pairs}")
        if time.monotonic() - self.t0 > self.budget.timeout_s:
            raise BudgetExceeded(f"timeout_s={self.budget.timeout_s}")

    def check_degree(self, f: MultiPoly):
        if f.total_degree() > self.budget.max_degree:
            raise BudgetExceeded(f"max_degree={self.budget.max_degree}")


def normal_form(f: MultiPoly, G: list[MultiPoly], order: MonomialOrder) -> MultiPoly:
    """Remainder of f on division by G; no monomial of the result is divisible
    by a leading monomial of G."""
    if not G:
        raise ValueError("empty divisor list")
    for g in G:
        if g.nvars != f.nvars:
            raise ValueError("arity mismatch in normal_form")
    divisors = [(g.leading(order), g) for g in G if not g.is_zero()]
    rem: dict = {}
    work = f
    while not work.is_zero():
        exp, c = work.leading(order)
        hit = None
        for (lexp, lc), g in divisors:
            if _mono_divides(lexp, exp):
                hit = (lexp, lc, g)
                break
        if hit is None:
            rem[exp] = rem.get(exp, Fraction(0)) + c
            work = work - MultiPoly(f.nvars, {exp: c})
        else:
            lexp, lc, g = hit
            work = work - g.term_mul(_mono_div(exp, lexp), c / lc)
    return MultiPoly(f.nvars, rem)


def s_poly(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    (ef, cf) = f.leading(order)
    (eg, cg) = g.leading(order)
    l = _mono_lcm(ef, eg)
    return f.term_mul(_mono_div(l, ef), Fraction(1) / cf) - g.term_mul(
        _mono_div(l, eg), Fraction(1) / cg
    )


def buchberger(
    gens: list[MultiPoly],
    order: MonomialOrder,
    budget: AlgebraBudget | None = None,
) -> list[MultiPoly]:
    """Reduced Groebner basis of the ideal generated by gens.

    Normal selection strategy (smallest lcm first) with the coprimality and
    chain criteria.  Raises BudgetExceeded when a configured cap is hit.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    nvars = gens[0].nvars
    for g in gens:
        if g.nvars != nvars:
            raise ValueError("arity mismatch in buchberger")
    clock = (budget or AlgebraBudget()).start()

    basis = []
    for g in gens:
        r = normal_form(g, basis, order) if basis else g
        if not r.is_zero():
            basis.append(r.monic(order))

    lead = [g.leading(order)[0] for g in basis]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def lcm_key(p):
        i, j = p
        return order.key(_mono_lcm(lead[i], lead[j]))

    while pairs:
        i, j = min(pairs, key=lambda p: (lcm_key(p), p))
        pairs.discard((i, j))
        clock.tick_pair()
        l = _mono_lcm(lead[i], lead[j])
        # coprime leading monomials: S-poly reduces to zero
        if l == _mono_mul(lead[i], lead[j]):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (
                _mono_divides(lead[k], l)
                and (min(i, k), max(i, k)) not in pairs
                and (min(j, k), max(j, k)) not in pairs
            ):
                skip = True
                break
        if skip:
            continue
        s = s_poly(basis[i], basis[j], order)
        r = normal_form(s, basis, order)
        if r.is_zero():
            continue
        clock.check_degree(r)
        r = r.monic(order)
        basis.append(r)
        lead.append(r.leading(order)[0])
        t = len(basis) - 1
        for k in range(t):
            pairs.add((k, t))

    return _reduce_basis(basis, order)


def _reduce_basis(basis: list[MultiPoly], order: MonomialOrder) -> list[MultiPoly]:
    # drop members whose leading monomial is divisible by another's
    lead = [g.leading(order)[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(
            j != i
            and _mono_divides(lead[j], lead[i])
            and (lead[j] != lead[i] or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    # tail-reduce each against the others
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero():
            out.append(r.monic(order))
    out.sort(key=lambda g: order.key(g.leading(order)[0]))
    return out


@dataclass
class PolyIdeal:
    """Ideal given by generators, with cached Groebner bases per order."""

    generators: list[MultiPoly]
    _bases: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars

    def groebner(
        self, order: MonomialOrder, budget: AlgebraBudget | None = None
    ) -> list[MultiPoly]:
        key = (order.kind, order.block, order.perm)
        if key not in self._bases:
            self._bases[key] = buchberger(self.generators, order, budget)
        return self._bases[key]

    def contains(
        self, f: MultiPoly, order: MonomialOrder | None = None,
        budget: AlgebraBudget | None = None,
    ) -> bool:
        order = order or MonomialOrder("grevlex")
        return normal_form(f, self.groebner(order, budget), order).is_zero()

    def is_trivial(self, budget: AlgebraBudget | None = None) -> bool:
        G = self.groebner(MonomialOrder("grevlex"), budget)
        return any(g.is_constant() and not g.is_zero() for g in G)

    def same_ideal(self, other: "PolyIdeal", budget: AlgebraBudget | None = None) -> bool:
        return all(self.contains(g, budget=budget) for g in other.generators) and all(
            other.contains(g, budget=budget) for g in self.generators
        )


def eliminate(
    ideal: PolyIdeal,
    keep: set[int],
    budget: AlgebraBudget | None = None,
) -> PolyIdeal:
    """Generators of the contraction of the ideal to the keep-variables."""
    if not keep:
        raise ValueError("keep set must be nonempty")
    n = ideal.nvars
    elim = [i for i in range(n) if i not in keep]
    if not elim:
        return PolyIdeal(list(ideal.generators))
    order = block_elim_order(elim, n)
    G = buchberger(ideal.generators, order, budget)
    kept = [g for g in G if g.support_vars() <= keep]
    if not kept:
        kept = [MultiPoly.zero(n)]
    return PolyIdeal(kept)


def saturate(
    ideal: PolyIdeal,
    f: MultiPoly,
    budget: AlgebraBudget | None = None,
) -> PolyIdeal:
    """I : f^infinity via the auxiliary variable t, adding t*f - 1 and eliminating t."""
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    n = ideal.nvars
    if f.is_constant():
        return PolyIdeal(list(ideal.generators))
    t = MultiPoly.var(n, n + 1)
    gens = [g.extend(n + 1) for g in ideal.generators]
    gens.append(t * f.extend(n + 1) - MultiPoly.const(n + 1, 1))
    order = block_elim_order([n], n + 1)
    G = buchberger(gens, order, budget)
    kept = [g.contract(n) for g in G if n not in g.support_vars()]
    if not kept:
        kept = [MultiPoly.zero(n)]
    return PolyIdeal(kept)


def is_zero_dimensional(G: list[MultiPoly], order: MonomialOrder) -> bool:
    """True iff every variable has some basis leading monomial that is a pure
    power of it (finite staircase)."""
    if not G:
        return False
    if any(g.is_constant() and not g.is_zero() for g in G):
        return True  # trivial ideal: empty variety
    n = G[0].nvars
    covered = set()
    for g in G:
        e = g.leading(order)[0]
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            covered.add(nz[0])
        elif len(nz) == 0:
            return True
    return covered == set(range(n))
