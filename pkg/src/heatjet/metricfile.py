"""JSON metric files.

Schema::

    {"dimension": d, "order": N, "normal_form": bool,
     "entries": [{"i": 1, "j": 2, "monomial": [1, 1], "coeff": "-1/3"}, ...]}

``1 <= i <= j <= d`` (1-based).  Entries not listed are ``delta_ij`` at
the zero monomial and zero elsewhere.  The canonical form written by
:func:`dumps` lists only non-default entries, sorted by ``(i, j, monomial)``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd

from .jet import Jet
from .laplacian import MetricError, MetricJet

_COEFF = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class MetricFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_coeff(text, line=None) -> Fraction:
    if not isinstance(text, str):
        raise MetricFileError(f"coeff must be a string like \"p\" or \"p/q\", got {text!r}", line)
    m = _COEFF.match(text.strip())
    if not m:
        raise MetricFileError(f"malformed coeff {text!r}", line)
    p = int(m.group(1))
    if m.group(2) is None:
        return Fraction(p)
    q = int(m.group(2))
    if q == 0:
        raise MetricFileError(f"zero denominator in coeff {text!r}", line)
    if q == 1 or gcd(p, q) != 1:
        raise MetricFileError(f"coeff {text!r} is not in lowest terms", line)
    return Fraction(p, q)


def format_coeff(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _entry_lines(text: str) -> list[int]:
    """Line number of each object in the top-level ``entries`` array."""
    m = re.search(r'"entries"\s*:\s*\[', text)
    if not m:
        return []
    decoder = json.JSONDecoder()
    lines = []
    idx = m.end()
    while True:
        while idx < len(text) and text[idx] in " \t\r\n,":
            idx += 1
        if idx >= len(text) or text[idx] == "]":
            return lines
        lines.append(text.count("\n", 0, idx) + 1)
        try:
            _, idx = decoder.raw_decode(text, idx)
        except json.JSONDecodeError:
            return lines


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def loads(text: str) -> MetricJet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MetricFileError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict):
        raise MetricFileError("top level must be a JSON object", 1)
    for key in ("dimension", "order", "normal_form", "entries"):
        if key not in data:
            raise MetricFileError(f"missing key {key!r}", 1)
    d, order, normal_form, entries = data["dimension"], data["order"], data["normal_form"], data["entries"]
    if not _is_int(d) or d < 1:
        raise MetricFileError("dimension must be a positive integer", 1)
    if not _is_int(order) or order < 0:
        raise MetricFileError("order must be a nonnegative integer", 1)
    if not isinstance(normal_form, bool):
        raise MetricFileError("normal_form must be true or false", 1)
    if not isinstance(entries, list):
        raise MetricFileError("entries must be a list", 1)
    lines = _entry_lines(text)

    tables = {(i, j): {(0,) * d: Fraction(1 if i == j else 0)} for i in range(d) for j in range(i, d)}
    seen = set()
    for n, entry in enumerate(entries):
        line = lines[n] if n < len(lines) else None
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "monomial", "coeff"}:
            raise MetricFileError("entry must have exactly the keys i, j, monomial, coeff", line)
        i, j, mono = entry["i"], entry["j"], entry["monomial"]
        if not (_is_int(i) and _is_int(j) and 1 <= i <= j <= d):
            raise MetricFileError(f"need 1 <= i <= j <= {d}, got i={i!r}, j={j!r}", line)
        if not (isinstance(mono, list) and len(mono) == d and all(_is_int(e) and e >= 0 for e in mono)):
            raise MetricFileError(f"monomial must be a list of {d} nonnegative integers", line)
        if sum(mono) > order:
            raise MetricFileError(f"monomial {mono} has degree above order {order}", line)
        key = (i - 1, j - 1, tuple(mono))
        if key in seen:
            raise MetricFileError(f"duplicate entry for g_{i}{j} at {mono}", line)
        seen.add(key)
        tables[(i - 1, j - 1)][tuple(mono)] = parse_coeff(entry["coeff"], line)

    rows = [[None] * d for _ in range(d)]
    for (i, j), coeffs in tables.items():
        rows[i][j] = rows[j][i] = Jet(d, order, coeffs)
    try:
        return MetricJet(rows, normal_form=True if normal_form else False)
    except MetricError as exc:
        raise MetricFileError(str(exc), 1) from None


def load(path) -> MetricJet:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(g: MetricJet) -> str:
    d = g.dim
    entries = []
    for i in range(d):
        for j in range(i, d):
            for alpha, c in sorted(g[i, j].coefficients().items()):
                default = 1 if (i == j and not any(alpha)) else 0
                if c != default:
                    entries.append({"i": i + 1, "j": j + 1, "monomial": list(alpha), "coeff": format_coeff(c)})
    head = [
        "{",
        f'  "dimension": {d},',
        f'  "order": {g.order},',
        f'  "normal_form": {json.dumps(bool(g.normal_form))},',
    ]
    if not entries:
        return "\n".join(head + ['  "entries": []', "}"]) + "\n"
    body = ",\n".join("    " + json.dumps(e) for e in entries)
    return "\n".join(head + ['  "entries": [', body, "  ]", "}"]) + "\n"


def dump(g: MetricJet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g))
