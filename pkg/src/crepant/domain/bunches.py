import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence

from .complexes import Complex, is_full, is_maximal_biconnected
from .errors import NonGenericError, NotFreeError, PreconditionError, SelfCheckError
from .lp import find_nonnegative
from .polygon_cones import PolygonCone, free_partitions, in_omega_Y_free, v_functional
from .subsets import Mask, Partition, format_subset, full_mask, is_subset, refinements, size
from .values import IntVector, Rational, dot, primitive

logger = logging.getLogger(__name__)


# Bunches of free polygon orbit cones

@dataclass(frozen=True)
class Bunch:
    """ A set of free polygon orbit cones, each named by its partition of [n]. """
    n: int
    partitions: FrozenSet[Partition]

    def __post_init__(self):
        object.__setattr__(self, "partitions", frozenset(self.partitions))
        for p in self.partitions:
            if p.n != self.n:
                raise PreconditionError(f"partition {p} lives on [{p.n}], bunch on [{self.n}]")
            if not in_omega_Y_free(p):
                raise NotFreeError(f"bunch member {p} is not a free cone")

    @classmethod
    def of(cls, n: int, partitions: Iterable[Partition]) -> 'Bunch':
        return cls(n, frozenset(partitions))

    @property
    def cones(self) -> List[PolygonCone]:
        return [PolygonCone(self.n, p) for p in self.members]

    @property
    def members(self) -> List[Partition]:
        """ Members in a stable order: by their part lists. """
        return sorted(self.partitions, key=lambda p: p.as_lists())

    def __len__(self) -> int:
        return len(self.partitions)

    def __contains__(self, p: Partition) -> bool:
        return p in self.partitions


def _disjoint_interiors(p: Partition, q: Partition) -> bool:
    top = full_mask(p.n)
    return any(a | b == top for a in p.parts for b in q.parts)


def is_bunch(phi: Bunch) -> bool:
    """ Nonempty, pairwise meeting interiors, and closed under passing to refinements. """
    if not phi.partitions:
        return False
    members = phi.members
    for i, p in enumerate(members):
        for q in members[i:]:
            if _disjoint_interiors(p, q):
                return False
    return all(q in phi for p in members for q in refinements(p))


def _faces_of(phi: Bunch) -> List[Mask]:
    return sorted({part for p in phi.partitions for part in p.parts})


def _complex_of(phi: Bunch) -> Complex:
    return Complex.from_masks(phi.n, _faces_of(phi))


def _partitions_with_parts_in(n: int, is_face) -> FrozenSet[Partition]:
    return frozenset(p for p in free_partitions(n) if all(is_face(part) for part in p.parts))


def phi_from_complex(d: Complex) -> Bunch:
    """ All free partitions of [n] whose parts are faces of d. """
    if not is_full(d) or not is_maximal_biconnected(d):
        raise PreconditionError(f"{d} is not a full maximally-biconnected complex")
    return Bunch(d.n, _partitions_with_parts_in(d.n, d.contains))


def is_maximal_bunch(phi: Bunch) -> bool:
    if not is_bunch(phi):
        raise PreconditionError("not a bunch of orbit cones")
    d = _complex_of(phi)
    if not is_full(d) or not is_maximal_biconnected(d):
        return False
    return phi_from_complex(d) == phi


def complex_from_bunch(phi: Bunch, validate: bool = True) -> Complex:
    """ The complex generated by all parts of all members. """
    if validate and not is_maximal_bunch(phi):
        raise PreconditionError("complex_from_bunch needs a maximal bunch")
    return _complex_of(phi)


def check_generic(theta: Sequence[Rational]) -> None:
    """ Raises NonGenericError if theta lies on a coordinate hyperplane or on some H_I. """
    n = len(theta)
    for i, t in enumerate(theta):
        if t == 0:
            raise NonGenericError(f"theta_{i + 1} = 0")
    for mask in range(1 << (n - 1)):
        if dot(v_functional(n, mask), theta) == 0:
            raise NonGenericError(f"theta lies on the hyperplane H_{format_subset(mask)}")


def positive_faces(theta: Sequence[Rational]) -> FrozenSet[Mask]:
    """ Nonempty subsets I with v_I(theta) > 0. """
    n = len(theta)
    return frozenset(m for m in range(1, 1 << n) if dot(v_functional(n, m), theta) > 0)


def bunch_from_theta(theta: Sequence[Rational]) -> Bunch:
    """ The free cones whose interior contains a generic theta in the interior of F and C_0. """
    n = len(theta)
    check_generic(theta)
    if any(t < 0 for t in theta):
        raise PreconditionError("theta is not in the positive orthant")
    faces = positive_faces(theta)
    if any((1 << i) not in faces for i in range(n)):
        raise PreconditionError("theta is not in the interior of C_0")
    return Bunch(n, _partitions_with_parts_in(n, faces.__contains__))


# Projectivity

def _witness_for_faces(n: int, faces: Iterable[Mask]) -> Optional[IntVector]:
    """
    Solves theta_i >= 1 and v_J(theta) >= 1 for every face J, written with
    theta = 1 + t, t >= 0, so that find_nonnegative applies.
    """
    rows = []
    rhs = []
    faces = list(faces)
    for k, face in enumerate(faces):
        v = v_functional(n, face)
        slack = [0] * len(faces)
        slack[k] = -1
        rows.append(list(v) + slack)
        rhs.append(1 - sum(v))
    if not rows:
        return tuple([1] * n)
    z = find_nonnegative(rows, rhs)
    if z is None:
        return None
    return primitive([1 + z[i] for i in range(n)])


def _maximal(masks: Iterable[Mask]) -> List[Mask]:
    masks = sorted(set(masks), key=lambda m: (-size(m), m))
    out: List[Mask] = []
    for m in masks:
        if not any(is_subset(m, big) for big in out):
            out.append(m)
    return out


def projective_witness(phi: Bunch) -> Optional[IntVector]:
    """
    A generic theta with bunch_from_theta(theta) == phi, or None when phi is
    not the bunch of any chamber. phi must be a maximal bunch.
    """
    theta = _witness_for_faces(phi.n, _maximal(_faces_of(phi)))
    if theta is None:
        return None
    if bunch_from_theta(theta) != phi:
        raise SelfCheckError(f"witness {theta} does not reproduce the bunch")
    return theta


def is_projective(phi: Bunch, validate: bool = False) -> bool:
    if validate and not is_maximal_bunch(phi):
        raise PreconditionError("is_projective needs a maximal bunch")
    return projective_witness(phi) is not None


def complex_projective_witness(d: Complex) -> Optional[IntVector]:
    """
    Projectivity of Phi_d read straight off the maximal faces of a full
    maximally-biconnected complex, without building the bunch.
    """
    theta = _witness_for_faces(d.n, d.maximal_faces)
    if theta is None:
        return None
    if any(t <= 0 for t in theta) or any(dot(v_functional(d.n, f), theta) <= 0 for f in d.maximal_faces):
        raise SelfCheckError(f"witness {theta} fails the chamber inequalities of {d}")
    return theta
