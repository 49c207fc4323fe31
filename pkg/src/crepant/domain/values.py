from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Tuple, Union

from .errors import DimensionMismatchError

# Value types
#
# A RatVector is a plain tuple of Fractions. Canonical ray and normal forms
# are tuples of ints, which compare and hash equal to the Fraction tuples.

Rational = Union[int, Fraction]
RatVector = Tuple[Rational, ...]
IntVector = Tuple[int, ...]


def as_vector(values: Iterable[Union[int, str, Fraction]]) -> Tuple[Fraction, ...]:
    """ Converts ints, Fractions or "p/q" strings to a tuple of Fractions. """
    return tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in values)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(value: Rational) -> str:
    """ "p/q" string, or "p" for integers. """
    return str(Fraction(value))


def dot(a: Sequence[Rational], b: Sequence[Rational]) -> Rational:
    if len(a) != len(b):
        raise DimensionMismatchError(f"dot product of vectors of length {len(a)} and {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def unit(n: int, i: int) -> IntVector:
    """ The i-th standard basis vector e_i of Q^n (i counted from 1). """
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def primitive(vector: Sequence[Rational]) -> IntVector:
    """
    Clears denominators and divides by the gcd of the entries.
    Positive scaling only, so the ray is unchanged. The zero vector maps to itself.
    """
    fracs = [Fraction(v) for v in vector]
    denominator = reduce(lcm, (f.denominator for f in fracs), 1)
    ints = [int(f * denominator) for f in fracs]
    divisor = reduce(gcd, ints, 0)
    if divisor == 0:
        return tuple(ints)
    return tuple(v // divisor for v in ints)


def canonical_normal(vector: Sequence[Rational]) -> IntVector:
    """ Primitive integer vector whose first nonzero entry is positive. """
    ints = primitive(vector)
    for v in ints:
        if v != 0:
            return ints if v > 0 else tuple(-x for x in ints)
    return ints


def scale_to_integers(row: Sequence[Rational]) -> IntVector:
    """ Multiplies by the lcm of denominators; keeps the common gcd (unlike primitive). """
    fracs = [Fraction(v) for v in row]
    denominator = reduce(lcm, (f.denominator for f in fracs), 1)
    return tuple(int(f * denominator) for f in fracs)


def is_zero(vector: Sequence[Rational]) -> bool:
    return all(v == 0 for v in vector)
