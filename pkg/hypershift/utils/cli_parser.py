from fractions import Fraction

import click


def parse_number(token: str) -> float:
    """Parse a decimal or a rational literal such as ``1/4``."""
    token = token.strip()
    if '/' in token:
        return float(Fraction(token))
    return float(token)


def parse_float_list(text: str, length: int = None) -> tuple:
    values = tuple(parse_number(t) for t in text.split(',') if t.strip() != '')
    if length is not None and len(values) != length:
        raise ValueError(f'expected {length} comma-separated values, got {len(values)}')
    return values


class FloatList(click.ParamType):
    """Comma-separated numbers, e.g. ``--k 1,2,4,4`` or ``--x0 1/4,1/4,1/4,1/4``."""

    name = 'floats'

    def __init__(self, length: int = None):
        self.length = length

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return parse_float_list(value, self.length)
        except (ValueError, ZeroDivisionError) as e:
            self.fail(f'{value!r}: {e}', param, ctx)
