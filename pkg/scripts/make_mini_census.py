#!/usr/bin/env python3
"""Build the vendored mini census and the synthetic solvable fixtures.

m003 and m004 are the two census manifolds glued from two regular ideal
tetrahedra; their edge rows below are the rectangular form of the standard
gluing data (m003's is the matrix [[2,1,0,1,0,2],[0,1,2,1,2,0]] in
(A|B|C)-per-tetrahedron coordinates, m004's is the classic
z1 z2 (1-z1)(1-z2) = 1 together with its reciprocal).  Everything written is
re-verified here: shapes must satisfy every row to 1e-40 and the dilogarithm
sum must reproduce the volume string.
"""

import json
import sys
from pathlib import Path

import mpmath

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from volcheck.census import parse_census  # noqa: E402
from volcheck.dilog import bloch_wigner, rep_volume  # noqa: E402

PREC = 256
DIGITS = 30


def dec(x):
    return mpmath.nstr(x, DIGITS, strip_zeros=False)


def shape_obj(z):
    return {"re": dec(z.real), "im": dec(z.imag)}


def record(name, nu, cusps, rows, shapes):
    vol = rep_volume(shapes, prec=PREC).value
    return {
        "name": name,
        "nu": nu,
        "cusps": cusps,
        "volume": dec(vol),
        "gluing": [{"a": a, "b": b, "c": c} for a, b, c in rows],
        "shapes": [shape_obj(z) for z in shapes],
    }


def verify(obj):
    shapes = [mpmath.mpc(mpmath.mpf(s["re"]), mpmath.mpf(s["im"])) for s in obj["shapes"]]
    for row in obj["gluing"]:
        prod = mpmath.mpc(1)
        for j, z in enumerate(shapes):
            prod *= z ** row["a"][j] * (1 - z) ** row["b"][j]
        res = abs(prod - row["c"])
        assert res < mpmath.mpf("1e-25"), (obj["name"], row, res)
    dv = abs(sum(bloch_wigner(z, PREC).value for z in shapes) - mpmath.mpf(obj["volume"]))
    assert dv < mpmath.mpf("1e-25"), (obj["name"], dv)


def main():
    mpmath.mp.prec = PREC
    data_dir = Path(__file__).resolve().parents[1] / "data"
    data_dir.mkdir(exist_ok=True)

    reg = mpmath.exp(mpmath.mpc(0, 1) * mpmath.pi / 3)
    onepi = mpmath.mpc(1, 1)

    census = [
        record(
            "m003", 2, 1,
            [([2, -1], [-1, 2], 1), ([-2, 1], [1, -2], 1)],
            [reg, reg],
        ),
        record(
            "m004", 2, 1,
            [([1, 1], [1, 1], 1), ([-1, -1], [-1, -1], 1)],
            [reg, reg],
        ),
    ]
    fixtures = [
        record("fx-reg1", 1, 1, [([2], [2], 1)], [reg]),
        record("fx-sqr2", 2, 1, [([0, 0], [1, 1], -1)], [onepi, onepi]),
        record(
            "fx-reg3", 3, 1,
            [
                ([1, 1, 0], [1, 1, 0], 1),
                ([0, 1, 1], [0, 1, 1], 1),
                ([1, 0, 1], [1, 0, 1], 1),
            ],
            [reg, reg, reg],
        ),
    ]

    for path, objs in ((data_dir / "mini_census.jsonl", census),
                       (data_dir / "fixtures.jsonl", fixtures)):
        for obj in objs:
            verify(obj)
        lines = [json.dumps(obj) for obj in objs]
        parse_census(lines)  # schema round-trip check
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {path} ({len(objs)} records)")


if __name__ == "__main__":
    main()
