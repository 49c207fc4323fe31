import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatchError, SelfCheckError
from .values import Rational, scale_to_integers

logger = logging.getLogger(__name__)

# Exact phase-I simplex
#
# The tableau is kept fraction-free: every entry is an integer equal to the
# true entry times `det`, the determinant of the current basis. Pivoting on
# (r, c) with p = T[r][c] sets T[i][j] = (p*T[i][j] - T[i][c]*T[r][j]) / det
# for i != r, and that division is always exact. Pivot choice follows Bland's
# rule, so results do not depend on anything but the input.

FracVector = Tuple[Fraction, ...]


def find_nonnegative(a: Sequence[Sequence[Rational]], b: Sequence[Rational]) -> Optional[FracVector]:
    """
    Returns some z >= 0 with A z = b, or None when no such z exists.
    A is given as a list of rows; every row must have the same length.
    """
    m = len(a)
    if len(b) != m:
        raise DimensionMismatchError(f"{m} constraint rows but {len(b)} right-hand sides")
    k = len(a[0]) if m else 0
    for row in a:
        if len(row) != k:
            raise DimensionMismatchError("constraint rows of different lengths")
    if m == 0:
        return tuple(Fraction(0) for _ in range(k))

    rows: List[List[int]] = []
    for row, rhs in zip(a, b):
        ints = list(scale_to_integers(list(row) + [rhs]))
        if ints[-1] < 0:
            ints = [-v for v in ints]
        rows.append(ints)

    width = k + m + 1
    tableau: List[List[int]] = []
    for i, ints in enumerate(rows):
        line = ints[:k] + [0] * m + [ints[-1]]
        line[k + i] = 1
        tableau.append(line)
    objective = [-sum(rows[i][j] for i in range(m)) for j in range(k)] + [0] * m
    objective.append(-sum(r[-1] for r in rows))
    tableau.append(objective)

    basis = [k + i for i in range(m)]
    det = 1
    pivots = 0
    while True:
        entering = next((j for j in range(width - 1) if tableau[m][j] < 0), None)
        if entering is None:
            break
        leaving = None
        for i in range(m):
            coef = tableau[i][entering]
            if coef <= 0:
                continue
            if leaving is None:
                leaving = i
                continue
            lhs = tableau[i][-1] * tableau[leaving][entering]
            rhs = tableau[leaving][-1] * coef
            if lhs < rhs or (lhs == rhs and basis[i] < basis[leaving]):
                leaving = i
        if leaving is None:
            # phase I is bounded below by zero, so this cannot happen on valid input
            raise SelfCheckError("phase I reported an unbounded direction")
        _pivot(tableau, leaving, entering, det)
        det = tableau[leaving][entering]
        basis[leaving] = entering
        pivots += 1

    logger.debug("phase I finished after %d pivots (%d rows, %d columns)", pivots, m, k)
    if tableau[m][-1] != 0:
        return None

    z = [Fraction(0)] * k
    for i, var in enumerate(basis):
        if var < k:
            z[var] = Fraction(tableau[i][-1], det)
    for row, rhs in zip(a, b):
        if sum(Fraction(c) * v for c, v in zip(row, z)) != rhs:
            raise SelfCheckError("phase I solution does not satisfy the constraints")
    return tuple(z)


def _pivot(tableau: List[List[int]], r: int, c: int, det: int) -> None:
    p = tableau[r][c]
    pivot_row = tableau[r]
    for i, line in enumerate(tableau):
        if i == r:
            continue
        factor = line[c]
        tableau[i] = [(p * v - factor * w) // det for v, w in zip(line, pivot_row)]


def find_strict(g: Sequence[Sequence[Rational]], dim: int) -> Optional[FracVector]:
    """
    Returns x with g.x >= 1 for every row g, hence g.x > 0, or None.
    By scaling, such x exists iff the open system g.x > 0 is solvable.
    """
    if not g:
        return tuple(Fraction(0) for _ in range(dim))
    m = len(g)
    for row in g:
        if len(row) != dim:
            raise DimensionMismatchError(f"row of length {len(row)} in dimension {dim}")
    # x = x_plus - x_minus, G x_plus - G x_minus - s = 1
    a = []
    for i, row in enumerate(g):
        slack = [0] * m
        slack[i] = -1
        a.append(list(row) + [-v for v in row] + slack)
    z = find_nonnegative(a, [1] * m)
    if z is None:
        return None
    return tuple(z[j] - z[dim + j] for j in range(dim))
