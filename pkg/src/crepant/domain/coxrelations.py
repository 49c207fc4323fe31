import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.polys.monomials import Monomial

from .errors import DegenerateSampleError, InhomogeneousError, PreconditionError, RangeError
from .values import IntVector

logger = logging.getLogger(__name__)

MAX_SAMPLE_ATTEMPTS = 16
NUMERATOR_RANGE = 50
DENOMINATOR_RANGE = 9
COMBINATION_RANGE = 9
SEED_MASK = 2 ** 64 - 1

# Degrees in Z^n: phi_{i,j} -> e_i + e_j, c_k -> -2 e_k, x_i and y_i -> e_i, z_i and w_i -> -e_i.
_UNIT_DEGREES = {"c": -2, "x": 1, "y": 1, "z": -1, "w": -1}


@dataclass(frozen=True)
class GradedVar:
    kind: str
    indices: Tuple[int, ...]
    degree: IntVector

    @property
    def name(self) -> str:
        return "_".join([self.kind] + [str(i) for i in self.indices])

    @property
    def symbol(self) -> sympy.Symbol:
        return sympy.Symbol(self.name)


def graded_var(n: int, kind: str, *indices: int) -> GradedVar:
    if any(not 1 <= i <= n for i in indices):
        raise RangeError(f"indices {indices} outside 1..{n}")
    degree = [0] * n
    if kind == "phi":
        i, j = indices
        if not i < j:
            raise PreconditionError(f"phi variables are stored with i < j, got ({i}, {j})")
        degree[i - 1] += 1
        degree[j - 1] += 1
    elif kind in _UNIT_DEGREES and len(indices) == 1:
        degree[indices[0] - 1] = _UNIT_DEGREES[kind]
    else:
        raise PreconditionError(f"unknown variable {kind}{indices}")
    return GradedVar(kind, tuple(indices), tuple(degree))


def _var_of_symbol(symbol: sympy.Symbol, n: int) -> GradedVar:
    kind, *indices = symbol.name.split("_")
    return graded_var(n, kind, *(int(i) for i in indices))


@lru_cache(maxsize=None)
def ring_variables(n: int) -> Tuple[GradedVar, ...]:
    """ phi_{i,j} (i < j), c_k, then x, y, z, w: the generators every relation is written over. """
    out = [graded_var(n, "phi", i, j) for i, j in combinations(range(1, n + 1), 2)]
    for kind in ("c", "x", "y", "z", "w"):
        out += [graded_var(n, kind, i) for i in range(1, n + 1)]
    return tuple(out)


def ring_gens(n: int) -> Tuple[sympy.Symbol, ...]:
    return tuple(v.symbol for v in ring_variables(n))


def phi(n: int, i: int, j: int) -> sympy.Expr:
    """ phi_{i,j} with phi_{j,i} = -phi_{i,j} and phi_{i,i} = 0. """
    if i == j:
        return sympy.Integer(0)
    if i > j:
        return -graded_var(n, "phi", j, i).symbol
    return graded_var(n, "phi", i, j).symbol


def _sym(n: int, kind: str, i: int) -> sympy.Symbol:
    return graded_var(n, kind, i).symbol


def to_poly(expr: sympy.Expr, n: int) -> sympy.Poly:
    return sympy.Poly(expr, *ring_gens(n), domain="QQ")


def _check_n(n: int, low: int) -> None:
    if n < low:
        raise RangeError(f"n must be at least {low}, got {n}")


# Relations

def plucker_relations(n: int) -> List[sympy.Poly]:
    """ phi_ij phi_kl - phi_ik phi_jl + phi_il phi_jk for i < j < k < l. """
    _check_n(n, 4)
    out = []
    for i, j, k, l in combinations(range(1, n + 1), 4):
        expr = phi(n, i, j) * phi(n, k, l) - phi(n, i, k) * phi(n, j, l) + phi(n, i, l) * phi(n, j, k)
        out.append(to_poly(expr, n))
    return out


def sigma_relations(n: int) -> List[sympy.Poly]:
    """ sum over k of phi_ik phi_jk c_k for i <= j; the k = i and k = j terms vanish. """
    _check_n(n, 4)
    out = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            expr = sum(phi(n, i, k) * phi(n, j, k) * _sym(n, "c", k) for k in range(1, n + 1))
            out.append(to_poly(expr, n))
    return out


def _monomial_degree(monomial: Sequence[int], variables: Sequence[GradedVar], n: int) -> IntVector:
    degree = [0] * n
    for exponent, var in zip(monomial, variables):
        if exponent:
            for k in range(n):
                degree[k] += exponent * var.degree[k]
    return tuple(degree)


def degree_of(p: sympy.Poly, n: Optional[int] = None) -> Optional[IntVector]:
    """
    The common Z^n-degree of the monomials of p, None for the zero polynomial.
    n defaults to the largest index among the generators of p.
    Raises InhomogeneousError naming two monomials of different degree.
    """
    if p.is_zero:
        return None
    if n is None:
        n = max(max(int(i) for i in g.name.split("_")[1:]) for g in p.gens)
    variables = [_var_of_symbol(g, n) for g in p.gens]
    first = None
    first_degree = None
    for monomial in p.monoms():
        degree = _monomial_degree(monomial, variables, n)
        if first_degree is None:
            first, first_degree = monomial, degree
        elif degree != first_degree:
            raise InhomogeneousError(
                Monomial(first, p.gens).as_expr(), Monomial(monomial, p.gens).as_expr()
            )
    return first_degree


# Moment map, J and the substitution iota

def mu_generators(n: int) -> List[Tuple[str, sympy.Expr]]:
    """ Generators of the moment-map ideal, each labelled by its family. """
    _check_n(n, 4)
    x = [_sym(n, "x", i) for i in range(1, n + 1)]
    y = [_sym(n, "y", i) for i in range(1, n + 1)]
    z = [_sym(n, "z", i) for i in range(1, n + 1)]
    w = [_sym(n, "w", i) for i in range(1, n + 1)]
    out = [
        ("sum_yz", sum(a * b for a, b in zip(y, z))),
        ("sum_xw", sum(a * b for a, b in zip(x, w))),
        ("sum_xz", sum(a * b for a, b in zip(x, z))),
        ("sum_yw", sum(a * b for a, b in zip(y, w))),
        ("sum_xz_minus_yw", sum(a * b - c * d for a, b, c, d in zip(x, z, y, w))),
    ]
    out += [(f"xz_plus_yw_{i + 1}", x[i] * z[i] + y[i] * w[i]) for i in range(n)]
    return out


def j_generators(n: int) -> List[Tuple[str, sympy.Expr]]:
    """ sum c_i x_i^2, sum c_i x_i y_i, sum c_i y_i^2. """
    _check_n(n, 4)
    terms = [(_sym(n, "c", i), _sym(n, "x", i), _sym(n, "y", i)) for i in range(1, n + 1)]
    return [
        ("cxx", sum(c * x * x for c, x, _ in terms)),
        ("cxy", sum(c * x * y for c, x, y in terms)),
        ("cyy", sum(c * y * y for c, _, y in terms)),
    ]


def iota(n: int, expr: sympy.Expr) -> sympy.Expr:
    """ x_i -> x_i, y_i -> y_i, z_i -> c_i y_i, w_i -> -c_i x_i. """
    mapping = {}
    for i in range(1, n + 1):
        mapping[_sym(n, "z", i)] = _sym(n, "c", i) * _sym(n, "y", i)
        mapping[_sym(n, "w", i)] = -_sym(n, "c", i) * _sym(n, "x", i)
    return sympy.expand(expr.xreplace(mapping))


def iota_images(n: int) -> List[Tuple[str, sympy.Expr, sympy.Expr]]:
    """ (family, iota of the generator, the expected element of J) for every mu generator. """
    j = dict(j_generators(n))
    expected = {
        "sum_yz": j["cyy"],
        "sum_xw": -j["cxx"],
        "sum_xz": j["cxy"],
        "sum_yw": -j["cxy"],
        "sum_xz_minus_yw": 2 * j["cxy"],
    }
    return [
        (name, iota(n, generator), sympy.expand(expected.get(name, sympy.Integer(0))))
        for name, generator in mu_generators(n)
    ]


def iota_substitution_identities(n: int) -> bool:
    """ True iff iota maps every mu generator to its expected element of J, exactly. """
    ok = True
    for name, image, expected in iota_images(n):
        if sympy.expand(image - expected) != 0:
            logger.error("iota identity %s fails for n=%d: %s != %s", name, n, image, expected)
            ok = False
    return ok


# Points of X

@dataclass(frozen=True)
class XPoint:
    n: int
    x: Tuple[Fraction, ...]
    y: Tuple[Fraction, ...]
    c: Tuple[Fraction, ...]

    def __post_init__(self):
        for name in ("x", "y", "c"):
            values = tuple(Fraction(v) for v in getattr(self, name))
            if len(values) != self.n:
                raise PreconditionError(f"{name} has {len(values)} entries for n={self.n}")
            object.__setattr__(self, name, values)

    def j_residuals(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (
            sum(c * x * x for c, x in zip(self.c, self.x)),
            sum(c * x * y for c, x, y in zip(self.c, self.x, self.y)),
            sum(c * y * y for c, y in zip(self.c, self.y)),
        )

    def satisfies_J(self) -> bool:
        return all(r == 0 for r in self.j_residuals())

    def phi_value(self, i: int, j: int) -> Fraction:
        return self.x[i - 1] * self.y[j - 1] - self.x[j - 1] * self.y[i - 1]


def _draw_rational(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(-NUMERATOR_RANGE, NUMERATOR_RANGE + 1)), int(rng.integers(1, DENOMINATOR_RANGE + 1)))


def _pairwise_independent(x: Sequence[Fraction], y: Sequence[Fraction]) -> bool:
    return all(x[i] * y[j] != x[j] * y[i] for i, j in combinations(range(len(x)), 2))


def _kernel_basis(x: Sequence[Fraction], y: Sequence[Fraction]) -> List[List[Fraction]]:
    """ Basis of {c : sum c x^2 = sum c x y = sum c y^2 = 0}. """
    rows = [[a * a for a in x], [a * b for a, b in zip(x, y)], [b * b for b in y]]
    matrix = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in rows])
    return [[Fraction(int(e.p), int(e.q)) for e in vec] for vec in matrix.nullspace()]


def _try_sample(n: int, seed: int) -> Optional[XPoint]:
    # signed 64-bit seeds map onto the unsigned range numpy accepts
    rng = np.random.default_rng(seed & SEED_MASK)
    x = [_draw_rational(rng) for _ in range(n)]
    y = [_draw_rational(rng) for _ in range(n)]
    if not _pairwise_independent(x, y):
        return None
    basis = _kernel_basis(x, y)
    if len(basis) != n - 3:
        return None
    weights = [int(v) for v in rng.integers(1, COMBINATION_RANGE + 1, size=len(basis))]
    signs = [1 if s else -1 for s in rng.integers(0, 2, size=len(basis))]
    c = [sum(s * wt * vec[k] for s, wt, vec in zip(signs, weights, basis)) for k in range(n)]
    if all(v == 0 for v in c):
        return None
    return XPoint(n, tuple(x), tuple(y), tuple(c))


def sample_X_point(n: int, seed: int = 0) -> XPoint:
    """
    A point of X with rational coordinates: (x_i, y_i) drawn pairwise independent,
    c a nonzero combination of a kernel basis of the three J equations.
    A degenerate draw is retried with the next seed.
    """
    _check_n(n, 5)
    for attempt in range(MAX_SAMPLE_ATTEMPTS):
        point = _try_sample(n, seed + attempt)
        if point is None:
            logger.warning("degenerate sample for n=%d seed=%d, retrying", n, seed + attempt)
            continue
        if not point.satisfies_J():
            raise DegenerateSampleError(f"sample for seed {seed + attempt} misses the J equations")
        return point
    raise DegenerateSampleError(f"no usable sample for n={n} after {MAX_SAMPLE_ATTEMPTS} seeds from {seed}")


def mutate(pt: XPoint, k: int = 1) -> XPoint:
    """ The same point with c_k raised by one; no longer on X. """
    if not 1 <= k <= pt.n:
        raise RangeError(f"index {k} outside 1..{pt.n}")
    c = list(pt.c)
    c[k - 1] += 1
    return replace(pt, c=tuple(c))


def _values_at(pt: XPoint) -> Dict[sympy.Symbol, Fraction]:
    values = {}
    for i, j in combinations(range(1, pt.n + 1), 2):
        values[graded_var(pt.n, "phi", i, j).symbol] = pt.phi_value(i, j)
    for k in range(1, pt.n + 1):
        values[_sym(pt.n, "c", k)] = pt.c[k - 1]
        values[_sym(pt.n, "x", k)] = pt.x[k - 1]
        values[_sym(pt.n, "y", k)] = pt.y[k - 1]
    return values


def evaluate(p: sympy.Poly, values: Dict[sympy.Symbol, Fraction]) -> Fraction:
    """ Exact value of p; generators missing from values count as 0. """
    point = [values.get(g, Fraction(0)) for g in p.gens]
    total = Fraction(0)
    for monomial, coefficient in p.terms():
        term = Fraction(int(coefficient.p), int(coefficient.q))
        for value, exponent in zip(point, monomial):
            if exponent:
                term *= value ** exponent
        total += term
    return total


@lru_cache(maxsize=None)
def _relations(n: int) -> Tuple[sympy.Poly, ...]:
    return tuple(plucker_relations(n) + sigma_relations(n))


def verify_relations_vanish(pt: XPoint) -> bool:
    """ Every Pluecker and sigma relation is exactly 0 at phi_ij = x_i y_j - x_j y_i. """
    values = _values_at(pt)
    return all(evaluate(p, values) == 0 for p in _relations(pt.n))
