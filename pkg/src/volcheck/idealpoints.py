"""Test 3: explicit ideal points of the deformation variety in (CP^1)^nu and
the extended volume at each.

The multi-projective closure is handled chart by chart: sigma picks, per
coordinate, the affine chart w = z or the inverted chart w = 1/z.  In a chart
the gluing rows stay of monomial-binomial shape, so the substituted generators
are built directly from the exponent data.  The chart ideal is saturated by
every w_j and (1 - w_j) to cut away the degeneracy locus before boundary
values are pinned.
"""

from __future__ import annotations

import itertools
import random
import zlib
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpc, mpf

from . import dilog
from .census import ManifoldRecord
from .dilog import CP1Point, Volume
from .groebner import (
    AlgebraBudget,
    BudgetExceeded,
    PolyIdeal,
    buchberger,
    is_zero_dimensional,
    normal_form,
    saturate,
)
from .poly import GREVLEX, LEX, MultiPoly
from .roots import RootFindingError, aberth_roots, newton_refine_system

DEDUP_TOL = mpf("1e-20")


class NotZeroDimensional(Exception):
    pass


class ShapePositionError(Exception):
    pass


@dataclass
class ChartSystem:
    sigma: tuple[bool, ...]  # True = inverted chart (w = 1/z)
    ideal: PolyIdeal
    saturations: list[str] = field(default_factory=list)


@dataclass
class BoundaryIdeal:
    chart: ChartSystem
    pinned: tuple[int, int]  # (variable index, boundary value 0 or 1)
    ideal: PolyIdeal


@dataclass
class IdealPointSolution:
    coords: tuple[CP1Point, ...]
    boundary_pattern: tuple[str, ...]  # per coordinate: '0', '1', 'inf', 'finite'
    sigma: tuple[bool, ...]
    residual: object  # mpf
    volume: Volume

    def key(self):
        return self.boundary_pattern


def _cleared_row_poly(n: int, A, B, c: int) -> MultiPoly:
    """Polynomial for prod w^A (1-w)^B = c with negative exponents cleared."""
    one = MultiPoly.const(n, 1)
    pos = one
    neg = one
    for j in range(n):
        wj = MultiPoly.var(j, n)
        omw = one - wj
        if A[j] > 0:
            pos = pos * wj ** A[j]
        elif A[j] < 0:
            neg = neg * wj ** (-A[j])
        if B[j] > 0:
            pos = pos * omw ** B[j]
        elif B[j] < 0:
            neg = neg * omw ** (-B[j])
    return pos - neg.scale(Fraction(c))


def chart_generators(rec: ManifoldRecord, sigma: tuple[bool, ...]) -> list[MultiPoly]:
    n = rec.nu
    polys = []
    for row in rec.gluing.rows:
        A = []
        sign = 1
        for j in range(n):
            if sigma[j]:
                A.append(-row.a[j] - row.b[j])
                if row.b[j] % 2:
                    sign = -sign  # (w-1)^b = (-1)^b (1-w)^b
            else:
                A.append(row.a[j])
        polys.append(_cleared_row_poly(n, A, list(row.b), row.c * sign))
    return polys


def chart_systems(
    rec: ManifoldRecord, budget: AlgebraBudget | None = None
) -> list[ChartSystem]:
    """The 2^nu chart ideals, each saturated by all w_j and (1 - w_j)."""
    n = rec.nu
    out = []
    for sigma in itertools.product((False, True), repeat=n):
        gens = chart_generators(rec, sigma)
        ideal = PolyIdeal(gens)
        sats = []
        for j in range(n):
            wj = MultiPoly.var(j, n)
            for f, tag in ((wj, f"w{j}"), (MultiPoly.const(n, 1) - wj, f"1-w{j}")):
                ideal = saturate(ideal, f, budget)
                sats.append(tag)
        out.append(ChartSystem(sigma=sigma, ideal=ideal, saturations=sats))
    return out


def boundary_ideals(
    cs: ChartSystem, budget: AlgebraBudget | None = None
) -> list[BoundaryIdeal]:
    """Pin each visible boundary value w_j in {0, 1}; keep consistent ideals.

    Multi-degenerate ideal points are legitimate (several coordinates hit the
    boundary at once), so no further saturation is applied here; duplicates
    across walls are merged at the solution level.
    """
    n = cs.ideal.nvars
    out = []
    seen = []
    for j in range(n):
        for beta in (0, 1):
            pin = MultiPoly.var(j, n) - MultiPoly.const(n, beta)
            ideal = PolyIdeal(list(cs.ideal.generators) + [pin])
            G = ideal.groebner(GREVLEX, budget)
            if any(g.is_constant() and not g.is_zero() for g in G):
                continue  # inconsistent: no ideal point on this wall
            key = frozenset(G)
            if key in seen:
                continue
            seen.append(key)
            out.append(BoundaryIdeal(chart=cs, pinned=(j, beta), ideal=ideal))
    return out


# -- zero-dimensional solving ------------------------------------------------


def _univariate_coeffs(p: MultiPoly, var: int, assign: dict):
    """Coefficient list (highest first) of p as a univariate in `var`, after
    substituting the assigned values; requires support within assign+var."""
    deg = max((e[var] for e in p.coeffs), default=0)
    coeffs = [mpc(0)] * (deg + 1)
    for e, c in p.coeffs.items():
        term = mpc(1) * c
        for i, x in enumerate(e):
            if i == var or x == 0:
                continue
            term *= assign[i] ** x
        coeffs[deg - e[var]] += term
    return coeffs


def _squarefree_rational(coeffs: list[Fraction]) -> list[Fraction]:
    """Squarefree part of a rational univariate polynomial (highest first)."""
    n = len(coeffs) - 1
    if n <= 1:
        return coeffs
    deriv = [coeffs[i] * (n - i) for i in range(n)]
    g = _poly_gcd(coeffs, deriv)
    if len(g) <= 1:
        return coeffs
    q, _ = _poly_divmod(coeffs, g)
    return q


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    out = []
    while len(a) >= len(b) and any(x != 0 for x in a):
        if a[0] == 0:
            a.pop(0)
            continue
        f = a[0] / b[0]
        out.append(f)
        for i in range(len(b)):
            a[i] -= f * b[i]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return out, a


def _poly_gcd(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while b and any(x != 0 for x in b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    return [x / a[0] for x in a]


def solve_zero_dim(
    ideal: PolyIdeal,
    prec: int = dilog.DEFAULT_PREC,
    budget: AlgebraBudget | None = None,
    rng: random.Random | None = None,
    max_retries: int = 3,
):
    """All complex solutions of a zero-dimensional ideal.

    Lex triangularization with back-substitution variable by variable,
    Aberth roots for the eliminant, Gauss-Newton polish of each candidate.
    On non-shape bases a random small-integer linear form is adjoined as a
    new last variable and the solve is retried.
    """
    rng = rng or random.Random(0)
    G = ideal.groebner(LEX, budget)
    if any(g.is_constant() and not g.is_zero() for g in G):
        return []
    if not is_zero_dimensional(G, LEX):
        raise NotZeroDimensional("ideal is not zero-dimensional under lex")
    n = ideal.nvars
    for attempt in range(max_retries + 1):
        try:
            if attempt == 0:
                return _solve_triangular(G, ideal, n, prec)
            # adjoin u = random linear form as new last variable
            coeffs = [rng.randint(-5, 5) for _ in range(n)]
            if all(c == 0 for c in coeffs):
                coeffs[0] = 1
            u = MultiPoly.var(n, n + 1)
            lin = u - sum(
                (MultiPoly.var(i, n + 1).scale(c) for i, c in enumerate(coeffs)),
                MultiPoly.zero(n + 1),
            )
            ext = PolyIdeal([g.extend(n + 1) for g in ideal.generators] + [lin])
            Gx = ext.groebner(LEX, budget)
            sols = _solve_triangular(Gx, ext, n + 1, prec)
            return [s[:n] for s in sols]
        except ShapePositionError:
            if attempt == max_retries:
                raise
    return []


def _solve_triangular(G, ideal: PolyIdeal, n: int, prec: int):
    with mpmath.workprec(prec + 32):
        tol_stage = mpf(10) ** (-(prec // 8))
        partial = [{}]  # list of assignment dicts, filled from var n-1 down
        for var in range(n - 1, -1, -1):
            allowed = set(range(var, n))
            cands = [g for g in G if g.support_vars() <= allowed and var in g.support_vars()]
            if not cands:
                raise ShapePositionError(f"no basis element introduces variable {var}")
            nxt = []
            for assign in partial:
                coeff_lists = []
                for g in cands:
                    if var == n - 1:
                        # exact univariate eliminant: take its squarefree part
                        deg = g.total_degree()
                        exact = [
                            Fraction(g.coeffs.get(_pure_exp(n, var, deg - i), 0))
                            for i in range(deg + 1)
                        ]
                        c = [mpmath.mpmathify(x) for x in _squarefree_rational(exact)]
                    else:
                        c = _univariate_coeffs(g, var, assign)
                    coeff_lists.append(c)
                # pick a candidate with nonvanishing leading coefficient
                picked = None
                for c in sorted(coeff_lists, key=len):
                    trimmed = _trim_leading(c, tol_stage)
                    if len(trimmed) > 1:
                        picked = trimmed
                        break
                if picked is None:
                    raise ShapePositionError(
                        f"all candidates for variable {var} degenerate numerically"
                    )
                try:
                    roots = aberth_roots(picked, prec=prec)
                except RootFindingError as e:
                    raise ShapePositionError(str(e)) from None
                for r in roots.roots:
                    a = dict(assign)
                    a[var] = r
                    # prune against the other candidate polynomials
                    ok = True
                    for c in coeff_lists:
                        val = _horner_list(c, r)
                        scale = 1 + max(abs(x) for x in c)
                        if abs(val) > tol_stage * scale:
                            ok = False
                            break
                    if ok:
                        nxt.append(a)
            partial = nxt
            if not partial:
                return []
        sols = []
        for assign in partial:
            point = [assign[i] for i in range(n)]
            point = newton_refine_system(ideal.generators, point, prec=prec)
            sols.append(tuple(point))
        return _dedup_points(sols)


def _pure_exp(n, var, p):
    return tuple(p if i == var else 0 for i in range(n))


def _trim_leading(coeffs, tol):
    scale = 1 + max(abs(x) for x in coeffs)
    out = list(coeffs)
    while out and abs(out[0]) < tol * scale:
        out.pop(0)
    return out


def _horner_list(coeffs, z):
    acc = mpc(0)
    for c in coeffs:
        acc = acc * z + c
    return acc


def _dedup_points(points, tol=None):
    tol = tol or DEDUP_TOL
    out = []
    for p in points:
        if not any(
            all(abs(a - b) < mpf("1e-12") * (1 + abs(a)) for a, b in zip(p, q))
            for q in out
        ):
            out.append(p)
    return out


def max_residual(ideal: PolyIdeal, point) -> object:
    return max(abs(g.evaluate(list(point))) for g in ideal.generators)


# -- full chain --------------------------------------------------------------


def _chart_to_cp1(w, inverted: bool, tol) -> CP1Point:
    if inverted:
        if abs(w) < tol:
            return CP1Point.infinity()
        return CP1Point.of(1 / w)
    return CP1Point.of(w)


def _chordal(a: CP1Point, b: CP1Point):
    if a.is_infinity and b.is_infinity:
        return mpf(0)
    if a.is_infinity or b.is_infinity:
        z = b.value if a.is_infinity else a.value
        return 1 / mpmath.sqrt(1 + abs(z) ** 2)
    za, zb = a.value, b.value
    return abs(za - zb) / mpmath.sqrt((1 + abs(za) ** 2) * (1 + abs(zb) ** 2))


@dataclass
class IdealPointRun:
    solutions: list[IdealPointSolution]
    dimension_failures: int  # boundary ideals that were not zero-dimensional
    budget_failures: list[str]
    solve_failures: list[str]

    @property
    def clean(self) -> bool:
        return not (self.dimension_failures or self.budget_failures or self.solve_failures)


def ideal_point_volumes(
    rec: ManifoldRecord,
    prec: int = dilog.DEFAULT_PREC,
    budget: AlgebraBudget | None = None,
    seed: int = 0,
    residual_tol=None,
) -> IdealPointRun:
    """Charts -> boundary ideals -> zero-dimensional solving -> volumes."""
    residual_tol = residual_tol or mpf("1e-25")
    boundary_tol = mpf(10) ** (-(prec // 8))
    rng = random.Random((seed << 32) ^ zlib.crc32(rec.name.encode()))
    solutions: list[IdealPointSolution] = []
    dim_failures = 0
    budget_failures: list[str] = []
    solve_failures: list[str] = []
    try:
        charts = chart_systems(rec, budget)
    except BudgetExceeded as e:
        return IdealPointRun([], 0, [f"charts: {e}"], [])
    for cs in charts:
        if cs.ideal.generators[0].is_zero():
            continue
        if cs.ideal.is_trivial(budget):
            continue
        try:
            bids = boundary_ideals(cs, budget)
        except BudgetExceeded as e:
            budget_failures.append(f"chart {cs.sigma}: {e}")
            continue
        for bid in bids:
            try:
                points = solve_zero_dim(bid.ideal, prec, budget, rng)
            except NotZeroDimensional:
                dim_failures += 1
                continue
            except BudgetExceeded as e:
                budget_failures.append(f"boundary {cs.sigma}/{bid.pinned}: {e}")
                continue
            except (ShapePositionError, RootFindingError) as e:
                solve_failures.append(f"boundary {cs.sigma}/{bid.pinned}: {e}")
                continue
            for pt in points:
                res = max_residual(bid.ideal, pt)
                if res > residual_tol:
                    solve_failures.append(
                        f"boundary {cs.sigma}/{bid.pinned}: residual {mpmath.nstr(res, 5)}"
                    )
                    continue
                solutions.append(_package_solution(pt, cs.sigma, res, boundary_tol, prec))
    solutions = _dedup_solutions(solutions)
    return IdealPointRun(solutions, dim_failures, budget_failures, solve_failures)


def _package_solution(pt, sigma, res, boundary_tol, prec) -> IdealPointSolution:
    with mpmath.workprec(prec + 32):
        coords = []
        pattern = []
        for w, inv in zip(pt, sigma):
            c = _chart_to_cp1(w, inv, boundary_tol)
            cls = c.boundary_class(boundary_tol)
            # snap near-boundary coordinates exactly
            if cls == "0":
                c = CP1Point.of(0)
            elif cls == "1":
                c = CP1Point.of(1)
            coords.append(c)
            pattern.append(cls)
        vol = Volume(mpf(0), mpf(0))
        for c, cls in zip(coords, pattern):
            if cls == "finite":
                vol = vol + dilog.bloch_wigner(c, prec)
        return IdealPointSolution(
            coords=tuple(coords),
            boundary_pattern=tuple(pattern),
            sigma=tuple(sigma),
            residual=res,
            volume=vol,
        )


def _dedup_solutions(sols: list[IdealPointSolution]) -> list[IdealPointSolution]:
    out: list[IdealPointSolution] = []
    for s in sols:
        dup = False
        for t in out:
            if all(_chordal(a, b) < mpf("1e-12") for a, b in zip(s.coords, t.coords)):
                dup = True
                # keep the smaller residual representative
                if s.residual < t.residual:
                    out[out.index(t)] = s
                break
        if not dup:
            out.append(s)
    out.sort(key=lambda s: (s.boundary_pattern, s.sigma))
    return out


def test3(
    rec: ManifoldRecord,
    prec: int = dilog.DEFAULT_PREC,
    budget: AlgebraBudget | None = None,
    seed: int = 0,
    margin=None,
):
    """PASS iff every boundary ideal solved and max ideal-point volume stays
    below V_M by the configured margin."""
    from .outcome import TestOutcome

    margin = mpf(margin if margin is not None else "1e-3")
    run = ideal_point_volumes(rec, prec=prec, budget=budget, seed=seed)
    payload = {
        "ideal_points": len(run.solutions),
        "dimension_failures": run.dimension_failures,
        "budget_failures": run.budget_failures,
        "solve_failures": run.solve_failures,
    }
    if run.dimension_failures:
        return TestOutcome(rec.name, 3, "FAIL-DIMENSION", payload)
    if run.budget_failures or run.solve_failures:
        return TestOutcome(rec.name, 3, "INCONCLUSIVE", payload)
    with mpmath.workprec(prec):
        vm = rec.volume_mpf(prec)
        vmax = max((s.volume.value + s.volume.err for s in run.solutions), default=mpf(0))
        payload["max_ideal_point_volume"] = float(vmax)
        payload["volume_margin"] = float(vm - vmax)
        if vmax < vm - margin:
            return TestOutcome(rec.name, 3, "PASS", payload)
    return TestOutcome(rec.name, 3, "FAIL", payload)
