"""CSV, JSON and LaTeX renderings of exact matrices.

Rationals are written as ``a/b`` (bare ``a`` when the denominator is 1) in
CSV and JSON, and as ``\\frac{a}{b}`` in LaTeX.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .exactmat import ExactMatrix

FORMATS = ("csv", "json", "latex")


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def latex_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def matrix_to_csv(m: ExactMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in m.rows:
        writer.writerow(format_rational(x) for x in row)
    return buf.getvalue()


def matrix_from_csv(text: str) -> ExactMatrix:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    return ExactMatrix([[parse_rational(x) for x in row] for row in rows])


def matrix_to_json_obj(m: ExactMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.rows]


def matrix_to_json(m: ExactMatrix) -> str:
    return json.dumps(matrix_to_json_obj(m))


def matrix_from_json(text_or_obj) -> ExactMatrix:
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    return ExactMatrix([[parse_rational(str(x)) for x in row] for row in obj])


def matrix_to_latex(m: ExactMatrix) -> str:
    cols = "c" * m.n
    lines = ["\\left[", f"\\begin{{array}}{{{cols}}}"]
    for row in m.rows:
        lines.append("&".join(latex_rational(x) for x in row) + "\\\\")
    lines += ["\\end{array}", "\\right]"]
    return "\n".join(lines) + "\n"


def render_matrix(m: ExactMatrix, fmt: str) -> str:
    if fmt == "csv":
        return matrix_to_csv(m)
    if fmt == "json":
        return matrix_to_json(m) + "\n"
    if fmt == "latex":
        return matrix_to_latex(m)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def render_named_matrices(named: list[tuple[str, ExactMatrix]], fmt: str) -> str:
    """Render an ordered list of (name, matrix) pairs, e.g. a factorization."""
    if fmt == "json":
        return json.dumps([{"name": k, "matrix": matrix_to_json_obj(v)} for k, v in named]) + "\n"
    if fmt == "csv":
        return "\n".join(f"# {k}\n{matrix_to_csv(v)}" for k, v in named)
    if fmt == "latex":
        return "\n".join(f"% {k}\n{matrix_to_latex(v)}" for k, v in named)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
