#!/usr/bin/env python3
"""One-shot census export into the JSONL schema consumed by the verifier.

For every orientable cusped census manifold with at most --max-tets
tetrahedra, emit one line with name, tetrahedron count, cusp count, volume,
the edge gluing equations in rect form (prod z^a (1-z)^b = c), and the
geometric shapes.  Volumes and shapes are printed to --digits digits.

Needs SnapPy; the output is meant to be produced once and vendored (gzipped)
as data/census_le6.jsonl.gz / data/census_le9.jsonl.gz so the verifier's
test suite runs standalone.
"""

import argparse
import json
import sys


def manifold_record(M, digits):
    name = M.name()
    nu = M.num_tetrahedra()
    try:
        H = M.high_precision()
    except AttributeError:
        H = M
    volume = H.volume()
    shapes = H.tetrahedra_shapes(part="rect")
    # rect rows: edge equations first, then cusp equations; keep the nu edges
    rows = M.gluing_equations(form="rect")[:nu]
    gluing = []
    for a, b, c in rows:
        if int(c) not in (1, -1):
            raise ValueError(f"{name}: non-unit right-hand side {c}")
        gluing.append({"a": [int(x) for x in a],
                       "b": [int(x) for x in b],
                       "c": int(c)})

    def dec(x):
        return _nstr(x, digits)

    return {
        "name": name,
        "nu": nu,
        "cusps": M.num_cusps(),
        "volume": dec(volume),
        "gluing": gluing,
        "shapes": [{"re": dec(z.real()), "im": dec(z.imag())} for z in shapes],
    }


def _nstr(x, digits):
    # snappy numbers support str() at full working precision; reformat
    from decimal import Decimal, getcontext

    getcontext().prec = digits + 10
    return str(+Decimal(str(x)).normalize())[: digits + 5]


def export(snappy, max_tets, out, digits, log=sys.stderr):
    written = 0
    skipped = []
    with open(out, "w", encoding="utf-8") as fh:
        for M in snappy.OrientableCuspedCensus():
            if M.num_tetrahedra() > max_tets:
                continue
            try:
                obj = manifold_record(M, digits)
            except Exception as e:
                skipped.append(M.name())
                print(f"skipped {M.name()}: {e}", file=log)
                continue
            fh.write(json.dumps(obj) + "\n")
            written += 1
    return written, skipped


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-tets", type=int, default=9)
    ap.add_argument("--out", default="census.jsonl")
    ap.add_argument("--digits", type=int, default=30)
    args = ap.parse_args(argv)
    if not 1 <= args.max_tets <= 9:
        ap.error("--max-tets must be in [1, 9]")

    try:
        import snappy
    except ImportError:
        print(
            "error: SnapPy is not installed; the exporter needs the census "
            "software (pip install snappy-manifolds snappy).",
            file=sys.stderr,
        )
        return 1

    written, skipped = export(snappy, args.max_tets, args.out, args.digits)
    print(f"wrote {written} records to {args.out}"
          + (f", skipped {len(skipped)}: {skipped}" if skipped else ""))
    return 0


if __name__ == "__main__":
    sys.exit(main())
