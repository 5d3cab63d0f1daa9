"""Census records and their gluing-equation polynomial presentation.

File format: UTF-8 JSONL, one manifold per line:
  {"name": str, "nu": int, "cusps": int, "volume": "decimal string",
   "gluing": [{"a": [int]*nu, "b": [int]*nu, "c": +-1}, ...],
   "shapes": [{"re": str, "im": str}, ...]}        (shapes optional)

A gluing row (a, b, c) encodes prod_j z_j^a_j (1-z_j)^b_j = c.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import dilog
from .poly import MultiPoly

MAX_EXPONENT = 64  # sanity bound on census exponent entries


class CensusError(ValueError):
    pass


@dataclass(frozen=True)
class GluingRow:
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: int


@dataclass(frozen=True)
class GluingSystem:
    rows: tuple[GluingRow, ...]


@dataclass(frozen=True)
class ManifoldRecord:
    name: str
    nu: int
    cusps: int
    volume: str  # decimal string, parsed on demand
    gluing: GluingSystem
    shapes: tuple[tuple[str, str], ...] | None = None  # (re, im) decimal strings

    def volume_mpf(self, prec: int = dilog.DEFAULT_PREC):
        return dilog.parse_decimal(self.volume, prec)

    def shapes_mpc(self, prec: int = dilog.DEFAULT_PREC):
        if self.shapes is None:
            return None
        return [dilog.parse_complex_pair(re, im, prec) for re, im in self.shapes]


def _validate(rec: ManifoldRecord) -> None:
    if rec.nu < 1:
        raise CensusError(f"{rec.name}: nu must be positive")
    if rec.cusps < 1:
        raise CensusError(f"{rec.name}: cusps must be positive")
    try:
        vol = float(rec.volume)
    except ValueError:
        raise CensusError(f"{rec.name}: volume does not parse") from None
    if not vol > 0:
        raise CensusError(f"{rec.name}: volume must be positive")
    for k, row in enumerate(rec.gluing.rows):
        if len(row.a) != rec.nu or len(row.b) != rec.nu:
            raise CensusError(f"{rec.name}: row {k} width mismatch (expected 2*nu+1)")
        if row.c not in (1, -1):
            raise CensusError(f"{rec.name}: row {k} sign must be +-1")
        for entry in list(row.a) + list(row.b):
            if abs(entry) > MAX_EXPONENT:
                raise CensusError(f"{rec.name}: row {k} exponent {entry} out of range")
    if rec.shapes is not None:
        if len(rec.shapes) != rec.nu:
            raise CensusError(f"{rec.name}: expected {rec.nu} shapes")
        for j, (re_s, im_s) in enumerate(rec.shapes):
            try:
                im = float(im_s)
                float(re_s)
            except ValueError:
                raise CensusError(f"{rec.name}: shape {j} does not parse") from None
            if not im > 0:
                raise CensusError(
                    f"{rec.name}: shape {j} must have positive imaginary part"
                )


def record_from_obj(obj: dict) -> ManifoldRecord:
    try:
        rows = tuple(
            GluingRow(tuple(r["a"]), tuple(r["b"]), int(r["c"])) for r in obj["gluing"]
        )
        shapes = None
        if obj.get("shapes") is not None:
            shapes = tuple((s["re"], s["im"]) for s in obj["shapes"])
        rec = ManifoldRecord(
            name=str(obj["name"]),
            nu=int(obj["nu"]),
            cusps=int(obj["cusps"]),
            volume=str(obj["volume"]),
            gluing=GluingSystem(rows),
            shapes=shapes,
        )
    except (KeyError, TypeError) as e:
        raise CensusError(f"malformed record: {e}") from None
    _validate(rec)
    return rec


def record_to_obj(rec: ManifoldRecord) -> dict:
    obj = {
        "name": rec.name,
        "nu": rec.nu,
        "cusps": rec.cusps,
        "volume": rec.volume,
        "gluing": [
            {"a": list(r.a), "b": list(r.b), "c": r.c} for r in rec.gluing.rows
        ],
    }
    if rec.shapes is not None:
        obj["shapes"] = [{"re": re, "im": im} for re, im in rec.shapes]
    return obj


def parse_census(stream) -> list[ManifoldRecord]:
    """Parse a JSONL byte/text stream into validated records."""
    out = []
    for lineno, raw in enumerate(stream, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise CensusError(f"line {lineno}: malformed JSON ({e.msg})") from None
        try:
            out.append(record_from_obj(obj))
        except CensusError as e:
            raise CensusError(f"line {lineno}: {e}") from None
    return out


def load_census(path) -> list[ManifoldRecord]:
    import gzip

    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rt", encoding="utf-8") as fh:
        return parse_census(fh)


def gluing_polynomials(rec: ManifoldRecord) -> list[MultiPoly]:
    """Integer polynomials cut out by the gluing rows after clearing denominators.

    Row (a, b, c) becomes
      prod_{a_j>0} z_j^a_j prod_{b_j>0} (1-z_j)^b_j
        - c * prod_{a_j<0} z_j^-a_j prod_{b_j<0} (1-z_j)^-b_j.
    """
    n = rec.nu
    one = MultiPoly.const(n, 1)
    polys = []
    for row in rec.gluing.rows:
        pos = one
        neg = one
        for j in range(n):
            zj = MultiPoly.var(j, n)
            omz = one - zj
            if row.a[j] > 0:
                pos = pos * zj ** row.a[j]
            elif row.a[j] < 0:
                neg = neg * zj ** (-row.a[j])
            if row.b[j] > 0:
                pos = pos * omz ** row.b[j]
            elif row.b[j] < 0:
                neg = neg * omz ** (-row.b[j])
        polys.append(pos - neg.scale(Fraction(row.c)))
    return polys


def shape_residual(rec: ManifoldRecord, prec: int = dilog.DEFAULT_PREC):
    """Max modulus of the gluing polynomials at the record's shapes."""
    shapes = rec.shapes_mpc(prec)
    if shapes is None:
        raise CensusError(f"{rec.name}: no shapes recorded")
    import mpmath

    with mpmath.workprec(prec):
        return max(abs(p.evaluate(shapes)) for p in gluing_polynomials(rec))
