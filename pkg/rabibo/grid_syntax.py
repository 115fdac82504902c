from pyparsing import (
    ParseException,
    Suppress,
    StringEnd,
    delimitedList,
    pyparsing_common,
)

import numpy as np

from .exceptions import UsageError

# Grid values on the command line and in config files:
#   1.5                single value
#   5,10,20,30         explicit list
#   0:1.5:31           `count` evenly spaced values from start to stop inclusive
_number = pyparsing_common.fnumber
_count = pyparsing_common.integer
_colon = Suppress(":")

_range = (_number + _colon + _number + _colon + _count).setParseAction(
    lambda t: [("range", t[0], t[1], t[2])]
)
_values = delimitedList(_number).setParseAction(lambda t: [("list", list(t))])
_grid = (_range | _values) + StringEnd()

_integers = delimitedList(_count) + StringEnd()


def parse_grid(text) -> list[float]:
    if isinstance(text, (int, float)):
        return [float(text)]
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    try:
        kind, *rest = _grid.parseString(str(text).strip(), parseAll=True)[0]
    except ParseException as e:
        raise UsageError(
            f"Cannot parse grid '{text}'; expected a number, a comma list, or start:stop:count ({e.msg})."
        ) from e

    if kind == "list":
        return [float(x) for x in rest[0]]
    start, stop, count = rest
    if count < 1:
        raise UsageError(f"Grid '{text}' has count {count}; must be at least 1.")
    if count == 1:
        return [float(start)]
    return [float(x) for x in np.linspace(start, stop, count)]


def parse_int_list(text) -> list[int]:
    if isinstance(text, int):
        return [text]
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    try:
        return [int(x) for x in _integers.parseString(str(text).strip(), parseAll=True)]
    except ParseException as e:
        raise UsageError(f"Cannot parse integer list '{text}' ({e.msg}).") from e
