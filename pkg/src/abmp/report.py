"""Run records and their CSV rendering."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Optional, TextIO

CSV_COLUMNS = [
    "instance_id",
    "algorithm",
    "params",
    "value_frac",
    "value_dec",
    "oracle_frac",
    "ratio_frac",
    "ratio_dec",
    "time_ms",
]

SIG_DIGITS = 15


def decimal_str(x: Fraction, digits: int = SIG_DIGITS) -> str:
    """``x`` with ``digits`` significant digits, trailing zeros kept, no exponent."""
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
        d = d.quantize(Decimal(1).scaleb(d.adjusted() - digits + 1))
        return format(d, "f")


@dataclass
class RunRecord:
    instance_id: str
    algorithm: str
    params: str
    value: Fraction
    oracle: Optional[Fraction] = None
    time_ms: float = 0.0

    @property
    def ratio(self) -> Optional[Fraction]:
        if self.oracle is None or self.oracle == 0:
            return None
        return self.value / self.oracle

    def row(self) -> dict:
        ratio = self.ratio
        return {
            "instance_id": self.instance_id,
            "algorithm": self.algorithm,
            "params": self.params,
            "value_frac": str(self.value),
            "value_dec": decimal_str(self.value),
            "oracle_frac": "" if self.oracle is None else str(self.oracle),
            "ratio_frac": "" if ratio is None else str(ratio),
            "ratio_dec": "" if ratio is None else decimal_str(ratio),
            "time_ms": f"{self.time_ms:.3f}",
        }


def summary_rows(records: Iterable[RunRecord]) -> list[dict]:
    """One row per algorithm holding its minimum ratio."""
    mins: dict[str, Fraction] = {}
    for rec in records:
        if rec.ratio is not None:
            cur = mins.get(rec.algorithm)
            mins[rec.algorithm] = rec.ratio if cur is None else min(cur, rec.ratio)
    return [
        {
            "instance_id": "SUMMARY",
            "algorithm": alg,
            "params": "min_ratio",
            "value_frac": "",
            "value_dec": "",
            "oracle_frac": "",
            "ratio_frac": str(r),
            "ratio_dec": decimal_str(r),
            "time_ms": "",
        }
        for alg, r in mins.items()
    ]


def write_csv(rows: Iterable[dict], out: TextIO, columns: list[str] = CSV_COLUMNS) -> None:
    writer = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def csv_text(rows: Iterable[dict], columns: list[str] = CSV_COLUMNS) -> str:
    buf = io.StringIO()
    write_csv(rows, buf, columns)
    return buf.getvalue()
