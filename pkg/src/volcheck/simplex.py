"""Exact rational linear programming: phase-1 simplex with Bland's rule.

Only feasibility is needed by the tropical engine, so the interface is a
feasibility check over free variables with equality and <= constraints,
returning an exact rational witness.
"""

from __future__ import annotations

from fractions import Fraction

Row = list[Fraction]


def _simplex_phase1(A: list[Row], b: list[Fraction], n: int) -> list[Fraction] | None:
    """Find x >= 0 with A x = b (b >= 0 assumed), or None.  Bland's rule."""
    m = len(A)
    if m == 0:
        return [Fraction(0)] * n
    # tableau columns: n structural + m artificial, rhs separate
    T = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(m)] for i, row in enumerate(A)]
    rhs = b[:]
    basis = [n + i for i in range(m)]
    # objective: minimize sum of artificials -> reduced costs
    cost = [Fraction(0)] * (n + m)
    for j in range(n):
        cost[j] = -sum(T[i][j] for i in range(m))
    z = -sum(rhs)

    while True:
        enter = -1
        # Bland: smallest eligible index; artificials never re-enter
        for j in range(n):
            if cost[j] < 0 and j not in basis:
                enter = j
                break
        if enter == -1:
            break
        # ratio test, Bland: smallest index among ties
        leave = -1
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = rhs[i] / T[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave == -1:
            # unbounded phase-1 objective cannot happen (bounded below by 0)
            return None
        # pivot
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        rhs[leave] /= piv
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
                rhs[i] -= f * rhs[leave]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, T[leave])]
        z -= f * rhs[leave]
        basis[leave] = enter

    if z != 0:
        return None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = rhs[i]
        elif rhs[i] != 0:
            # degenerate artificial stuck in basis at nonzero level
            return None
    return x


def feasible_point(
    n: int,
    equalities: list[tuple[Row, Fraction]],
    inequalities: list[tuple[Row, Fraction]],
) -> list[Fraction] | None:
    """Exact witness x in Q^n with a.x = b for equalities and a.x <= b for
    inequalities, or None if infeasible.  Variables are free."""
    A: list[Row] = []
    rhs: list[Fraction] = []
    nslack = len(inequalities)
    width = 2 * n + nslack
    for a, b in equalities:
        row = [Fraction(x) for x in a] + [-Fraction(x) for x in a] + [Fraction(0)] * nslack
        A.append(row)
        rhs.append(Fraction(b))
    for k, (a, b) in enumerate(inequalities):
        row = [Fraction(x) for x in a] + [-Fraction(x) for x in a] + [
            Fraction(1) if j == k else Fraction(0) for j in range(nslack)
        ]
        A.append(row)
        rhs.append(Fraction(b))
    # normalize to b >= 0
    for i in range(len(A)):
        if rhs[i] < 0:
            A[i] = [-x for x in A[i]]
            rhs[i] = -rhs[i]
    sol = _simplex_phase1(A, rhs, width)
    if sol is None:
        return None
    return [sol[j] - sol[n + j] for j in range(n)]


def check_point(
    x: list[Fraction],
    equalities: list[tuple[Row, Fraction]],
    inequalities: list[tuple[Row, Fraction]],
) -> bool:
    """Exact re-verification of a witness."""
    dot = lambda a: sum(Fraction(c) * xi for c, xi in zip(a, x))
    return all(dot(a) == b for a, b in equalities) and all(
        dot(a) <= b for a, b in inequalities
    )
