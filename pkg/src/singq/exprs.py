"""Tiny formula evaluator for structures defined by expressions mod n.

Finite structures are often written as integer-polynomial formulas such as
``5x+4y`` or ``6+5x+6xy``; this turns such a formula into an operation
table.  Parsing is delegated to sympy with implicit multiplication enabled,
restricted to integer-polynomial expressions in the declared variables.
"""

from __future__ import annotations

from typing import Sequence

import sympy
from sympy.parsing.sympy_parser import (
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)


class ExpressionError(ValueError):
    pass


_TRANSFORMS = standard_transformations + (implicit_multiplication_application,)


def parse_formula(text: str, var_names: Sequence[str]):
    symbols = {name: sympy.Symbol(name) for name in var_names}
    try:
        expr = parse_expr(text.replace("−", "-"), local_dict=symbols,
                          transformations=_TRANSFORMS, evaluate=True)
    except Exception as exc:
        raise ExpressionError(f"cannot parse formula {text!r}: {exc}") from exc
    extra = expr.free_symbols - set(symbols.values())
    if extra:
        raise ExpressionError(
            f"formula {text!r} uses unknown variable(s) {sorted(map(str, extra))}")
    if not expr.is_polynomial(*symbols.values()):
        raise ExpressionError(f"formula {text!r} is not polynomial")
    return expr, [symbols[name] for name in var_names]


def eval_table(text: str, modulus: int, var_names: Sequence[str],
               rows: int | None = None, cols: int | None = None) -> list:
    """Tabulate ``text`` over ``rows x cols`` inputs, reduced mod ``modulus``."""
    if modulus < 1:
        raise ExpressionError("modulus must be >= 1")
    expr, syms = parse_formula(text, var_names)
    fn = sympy.lambdify(syms, expr, modules="math")
    rows = modulus if rows is None else rows
    cols = modulus if cols is None else cols
    table = []
    for i in range(rows):
        row = []
        for j in range(cols):
            value = fn(i, j)
            row.append(int(round(value)) % modulus)
        table.append(row)
    return table
