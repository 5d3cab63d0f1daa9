"""Test 2: tropical prevariety of the gluing system and the minimal number of
degenerating tetrahedra over nonzero directions.

Coordinates: per tetrahedron j the triple (X_j, X'_j, X''_j) at indices
(3j, 3j+1, 3j+2), min-plus convention.  Constraints:
  edge row (a, b, c):   sum_j a_j X_j - b_j X'_j = 0        (1-z = 1/z')
  per tetrahedron:      X_j + X'_j + X''_j = 0              (z z' z'' = -1)
  per tetrahedron:      min(X_j + X''_j, X_j, 0) attained at least twice
                                                            (z z'' - z + 1 = 0)
All arithmetic is exact rational; no floating point in this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .census import ManifoldRecord
from .simplex import check_point, feasible_point

Vec = tuple[int, ...]


class SearchBudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class TropicalSystem:
    nu: int
    equalities: tuple[Vec, ...]  # L . x = 0
    trinomials: tuple[tuple[Vec, Vec, Vec], ...]  # min attained at least twice

    @property
    def dim(self) -> int:
        return 3 * self.nu


@dataclass
class Cone:
    """A cell of the prevariety: equalities plus weak inequalities (L.x <= 0
    meaning lhs minus rhs), with a rational feasibility witness."""

    equalities: list[Vec]
    inequalities: list[Vec]  # L . x <= 0
    witness: list[Fraction] | None  # None = infeasible

    def contains(self, x: list[Fraction]) -> bool:
        dot = lambda L: sum(Fraction(c) * xi for c, xi in zip(L, x))
        return all(dot(L) == 0 for L in self.equalities) and all(
            dot(L) <= 0 for L in self.inequalities
        )


@dataclass(frozen=True)
class DegenerationBound:
    l: int | None  # None means the prevariety is {0}
    witness: tuple[Fraction, ...] | None

    @property
    def prevariety_trivial(self) -> bool:
        return self.l is None


def _unit(dim: int, *idx: int) -> Vec:
    v = [0] * dim
    for i in idx:
        v[i] += 1
    return tuple(v)


def _sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def build_tropical_system(rec: ManifoldRecord) -> TropicalSystem:
    nu = rec.nu
    dim = 3 * nu
    eqs = []
    for row in rec.gluing.rows:
        v = [0] * dim
        for j in range(nu):
            v[3 * j] += row.a[j]
            v[3 * j + 1] -= row.b[j]
        eqs.append(tuple(v))
    for j in range(nu):
        eqs.append(_unit(dim, 3 * j, 3 * j + 1, 3 * j + 2))
    tris = []
    zero = (0,) * dim
    for j in range(nu):
        tris.append((_unit(dim, 3 * j, 3 * j + 2), _unit(dim, 3 * j), zero))
    return TropicalSystem(nu=nu, equalities=tuple(eqs), trinomials=tuple(tris))


def satisfies_system(sys: TropicalSystem, x: list[Fraction]) -> bool:
    """Exact check that x lies in the prevariety."""
    dot = lambda L: sum(Fraction(c) * xi for c, xi in zip(L, x))
    if any(dot(L) != 0 for L in sys.equalities):
        return False
    for tri in sys.trinomials:
        vals = sorted(dot(L) for L in tri)
        if vals[0] != vals[1]:
            return False
    return True


# pattern value m in {0,1,2}: the two forms other than tri[m] are equal and
# <= tri[m]
def _cone_for_pattern(sys: TropicalSystem, pattern: tuple[int, ...]) -> Cone:
    eqs = [tuple(L) for L in sys.equalities]
    ineqs = []
    for tri, m in zip(sys.trinomials, pattern):
        pair = [i for i in range(3) if i != m]
        eqs.append(_sub(tri[pair[0]], tri[pair[1]]))
        ineqs.append(_sub(tri[pair[0]], tri[m]))
    return Cone(equalities=eqs, inequalities=ineqs, witness=None)


def enumerate_cells(sys: TropicalSystem) -> list[Cone]:
    """The 3^nu cells of the prevariety, feasible ones only, each carrying an
    exact witness.  (Homogeneous systems always admit 0, so for gluing-derived
    systems every cell is feasible with the zero witness.)"""
    out = []
    for pattern in itertools.product(range(3), repeat=len(sys.trinomials)):
        cone = _cone_for_pattern(sys, pattern)
        w = feasible_point(
            sys.dim,
            [(list(map(Fraction, L)), Fraction(0)) for L in cone.equalities],
            [(list(map(Fraction, L)), Fraction(0)) for L in cone.inequalities],
        )
        if w is not None:
            cone.witness = w
            assert cone.contains(w)
            out.append(cone)
    return out


def _nonzero_point_in_restriction(
    sys: TropicalSystem, support: tuple[int, ...]
) -> list[Fraction] | None:
    """A nonzero prevariety point whose nonzero triples lie within the given
    tetrahedron subset, or None.  Deterministic tie-break: first feasible
    (pattern, coordinate, sign) in iteration order."""
    dim = sys.dim
    forced_zero = [
        3 * j + t for j in range(sys.nu) if j not in support for t in range(3)
    ]
    base_eqs = [(list(map(Fraction, L)), Fraction(0)) for L in sys.equalities]
    for i in forced_zero:
        e = [Fraction(0)] * dim
        e[i] = Fraction(1)
        base_eqs.append((e, Fraction(0)))
    active = [3 * j + t for j in sorted(support) for t in range(3)]
    # patterns only matter on the supported tetrahedra
    for pat_active in itertools.product(range(3), repeat=len(support)):
        pattern = [0] * sys.nu
        for j, m in zip(sorted(support), pat_active):
            pattern[j] = m
        cone = _cone_for_pattern(sys, tuple(pattern))
        eqs = base_eqs + [
            (list(map(Fraction, L)), Fraction(0))
            for L in cone.equalities[len(sys.equalities):]
        ]
        ineqs = [(list(map(Fraction, L)), Fraction(0)) for L in cone.inequalities]
        for i in active:
            for sign in (1, -1):
                pin = [Fraction(0)] * dim
                pin[i] = Fraction(1)
                w = feasible_point(dim, eqs + [(pin, Fraction(sign))], ineqs)
                if w is not None:
                    assert satisfies_system(sys, w)
                    return w
    return None


def min_degeneration_count(
    sys: TropicalSystem, max_subsets: int = 100000
) -> DegenerationBound:
    """Minimal number of tetrahedra with nonzero coordinate triple over all
    nonzero prevariety points, with an exact witness; ascending-cardinality
    subset search."""
    visited = 0
    for size in range(1, sys.nu + 1):
        for support in itertools.combinations(range(sys.nu), size):
            visited += 1
            if visited > max_subsets:
                raise SearchBudgetExceeded(f"max_subsets={max_subsets}")
            w = _nonzero_point_in_restriction(sys, support)
            if w is not None:
                return DegenerationBound(l=size, witness=tuple(w))
    return DegenerationBound(l=None, witness=None)


def witness_support_size(sys: TropicalSystem, witness) -> int:
    return sum(
        1
        for j in range(sys.nu)
        if any(witness[3 * j + t] != 0 for t in range(3))
    )


def test2(rec: ManifoldRecord, k: int, max_subsets: int = 100000):
    """PASS iff the prevariety is {0} or l >= k."""
    from .outcome import TestOutcome

    sys = build_tropical_system(rec)
    try:
        bound = min_degeneration_count(sys, max_subsets=max_subsets)
    except SearchBudgetExceeded as e:
        return TestOutcome(
            name=rec.name, stage=2, verdict="INCONCLUSIVE",
            payload={"k": k, "reason": str(e)},
        )
    if bound.prevariety_trivial:
        return TestOutcome(
            name=rec.name, stage=2, verdict="PASS",
            payload={"k": k, "l": None, "prevariety_trivial": True},
        )
    payload = {
        "k": k,
        "l": bound.l,
        "witness": [str(x) for x in bound.witness],
    }
    verdict = "PASS" if bound.l >= k else "FAIL"
    return TestOutcome(name=rec.name, stage=2, verdict=verdict, payload=payload)
