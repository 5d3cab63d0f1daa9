"""Test 1: the volume-count screen k = nu - ceil(V/v0) + 1, pass iff k <= 2."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from . import dilog
from .census import ManifoldRecord

NEAR_INTEGER_TOL = mpmath.mpf("1e-9")


@dataclass(frozen=True)
class DegeneracyThreshold:
    k: int
    ratio: object  # mpf, V / v0
    ambiguous: bool  # ratio within tolerance of an integer


def degeneracy_threshold(
    rec: ManifoldRecord, prec: int = dilog.DEFAULT_PREC
) -> DegeneracyThreshold:
    """k such that the degeneration of k tetrahedra forces volume < V.

    If V/v0 sits within 1e-9 of an integer m we take ceil = m (the smaller
    ceiling, hence the larger, conservative k) and flag the record ambiguous:
    exact multiples of v0 occur in the census and must not shrink k by a
    rounding accident.
    """
    with mpmath.workprec(prec):
        ratio = rec.volume_mpf(prec) / dilog.v0(prec).value
        nearest = mpmath.nint(ratio)
        if abs(ratio - nearest) < NEAR_INTEGER_TOL:
            ceil = int(nearest)
            ambiguous = True
        else:
            ceil = int(mpmath.ceil(ratio))
            ambiguous = False
        k = rec.nu - ceil + 1
        return DegeneracyThreshold(k=k, ratio=+ratio, ambiguous=ambiguous)


def test1(rec: ManifoldRecord, prec: int = dilog.DEFAULT_PREC):
    """PASS iff k <= 2; carries k and the certified margin V - (nu-2) v0."""
    from .outcome import TestOutcome

    thr = degeneracy_threshold(rec, prec)
    with mpmath.workprec(prec):
        margin = rec.volume_mpf(prec) - (rec.nu - 2) * dilog.v0(prec).value
    if thr.k <= 2:
        return TestOutcome(
            name=rec.name,
            stage=1,
            verdict="PASS",
            payload={
                "k": thr.k,
                "ambiguous": thr.ambiguous,
                "margin": float(margin),
            },
        )
    return TestOutcome(
        name=rec.name,
        stage=1,
        verdict="FAIL",
        payload={"k": thr.k, "ambiguous": thr.ambiguous},
    )
