"""Plain-text instance format.

::

    n m
    <n lines of m characters from {0,1}>
    <m probabilities: "a/b" or exact decimals>   | uniform
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from abmp.core import Instance
from abmp.errors import BadInstanceFile, InvalidInstance


def parse_instance(text: str) -> Instance:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise BadInstanceFile("empty instance file")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise BadInstanceFile(f"bad header line {lines[0]!r}; expected 'n m'") from None
    if n < 0 or m < 0:
        raise BadInstanceFile("negative dimensions")
    if len(lines) != n + 2:
        raise BadInstanceFile(f"expected {n + 2} non-empty lines, found {len(lines)}")
    rows = []
    for k, ln in enumerate(lines[1 : n + 1]):
        ln = ln.replace(" ", "")
        if len(ln) != m or set(ln) - {"0", "1"}:
            raise BadInstanceFile(f"matrix row {k + 1} must be {m} characters from {{0,1}}")
        rows.append(tuple(int(c) for c in ln))
    last = lines[-1]
    if last.lower() == "uniform":
        p = (Fraction(1, m),) * m
    else:
        toks = last.split()
        if len(toks) != m:
            raise BadInstanceFile(f"expected {m} probabilities, found {len(toks)}")
        try:
            p = tuple(Fraction(tok) for tok in toks)
        except (ValueError, ZeroDivisionError):
            raise BadInstanceFile(f"unparseable probability line {last!r}") from None
    try:
        return Instance(tuple(rows), p)
    except InvalidInstance as exc:
        raise BadInstanceFile(str(exc)) from None


def format_instance(inst: Instance) -> str:
    lines = [f"{inst.n} {inst.m}"]
    lines += ["".join(str(v) for v in row) for row in inst.A]
    lines.append(" ".join(str(x) for x in inst.p))
    return "\n".join(lines) + "\n"


def read_instance(path: str | Path) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise BadInstanceFile(f"cannot read {path}: {exc}") from None
    return parse_instance(text)


def write_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(format_instance(inst))
