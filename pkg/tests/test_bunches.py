import pytest

from crepant.domain.bunches import (
    Bunch, bunch_from_theta, check_generic, complex_from_bunch, complex_projective_witness, is_bunch,
    is_maximal_bunch, is_projective, phi_from_complex, positive_faces, projective_witness,
)
from crepant.domain.complexes import Complex, enumerate_max_biconnected, is_full
from crepant.domain.errors import NonGenericError, NotFreeError, PreconditionError
from crepant.domain.polygon_cones import v_functional
from crepant.domain.subsets import Partition, mask_of, refines
from crepant.domain.values import dot

def test_bunch_at_the_balanced_point(balanced_theta, small_full_complex):
    phi = bunch_from_theta(balanced_theta)
    # types 2+2+1 (15), 2+1+1+1 (10) and 1+1+1+1+1 (1)
    assert len(phi) == 26
    assert is_bunch(phi)
    assert is_maximal_bunch(phi)
    assert complex_from_bunch(phi) == small_full_complex
    assert phi_from_complex(small_full_complex) == phi

def test_positive_faces(balanced_theta):
    faces = positive_faces(balanced_theta)
    # v_I(1) = 5 - 2|I| > 0 exactly for |I| <= 2
    assert len(faces) == 15
    assert mask_of([1, 2]) in faces
    assert mask_of([1, 2, 3]) not in faces

@pytest.mark.parametrize(
    "theta",
    [
        # Case 1: on a coordinate hyperplane
        (0, 1, 1, 1, 1),
        # Case 2: on H_{1}: 4 = 1 + 1 + 1 + 1
        (4, 1, 1, 1, 1),
        # Case 3: on H_{1,2} for n = 4
        (1, 1, 1, 1),
    ]
)
def test_check_generic_rejects_walls(theta):
    with pytest.raises(NonGenericError):
        check_generic(theta)

def test_bunch_from_theta_needs_the_balanced_cone():
    # theta_1 outweighs the rest: {1} is not a positive face
    with pytest.raises(PreconditionError):
        bunch_from_theta((7, 1, 1, 1, 1))

def test_bunch_members_must_be_free():
    with pytest.raises(NotFreeError):
        Bunch.of(4, [Partition.of(4, [[1, 2], [3, 4]])])

def test_not_a_bunch():
    # {1,2,3}|{4}|{5} and {1}|{2}|{3,4,5} have disjoint interiors
    phi = Bunch.of(5, [Partition.of(5, [[1, 2, 3], [4], [5]]), Partition.of(5, [[1], [2], [3, 4, 5]])])
    assert not is_bunch(phi)
    assert not is_bunch(Bunch.of(5, []))

def test_upward_closure_is_required():
    # missing the refinement into singletons
    phi = Bunch.of(5, [Partition.of(5, [[1, 2], [3], [4], [5]])])
    assert not is_bunch(phi)

def test_phi_from_complex_rejects_non_full():
    d = Complex.from_faces(5, [[2, 3, 4, 5]])
    with pytest.raises(PreconditionError):
        phi_from_complex(d)

@pytest.mark.slow
@pytest.mark.parametrize("n", [5, 6])
def test_complex_bunch_round_trip(n):
    for d in enumerate_max_biconnected(n, full_only=True):
        phi = phi_from_complex(d)
        assert is_maximal_bunch(phi)
        assert complex_from_bunch(phi) == d

def _minimal_members(phi):
    """ Members whose cone holds no other member, i.e. no other member is coarser. """
    return [p for p in phi.members if not any(q != p and refines(p, q) for q in phi.members)]

@pytest.mark.parametrize(
    "n",
    [
        # Case 1: every full complex on [5]
        5,
        # Case 2: every full complex on [6]
        pytest.param(6, marks=pytest.mark.slow),
    ]
)
def test_dropping_a_minimal_cone_breaks_maximality(n):
    for d in enumerate_max_biconnected(n, full_only=True):
        phi = phi_from_complex(d)
        minimal = _minimal_members(phi)
        assert minimal
        for p in minimal:
            smaller = Bunch(n, phi.partitions - {p})
            assert is_bunch(smaller)
            assert not is_maximal_bunch(smaller)

def test_projective_witness(balanced_theta, small_full_complex):
    phi = bunch_from_theta(balanced_theta)
    theta = projective_witness(phi)
    assert theta is not None
    assert bunch_from_theta(theta) == phi
    assert is_projective(phi, validate=True)
    witness = complex_projective_witness(small_full_complex)
    assert all(t > 0 for t in witness)
    assert all(dot(v_functional(5, f), witness) > 0 for f in small_full_complex.maximal_faces)

def test_every_full_complex_on_five_is_projective():
    full = [d for d in enumerate_max_biconnected(5) if is_full(d)]
    assert len(full) == 76
    assert all(complex_projective_witness(d) is not None for d in full)
