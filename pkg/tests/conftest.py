import pytest

from crepant.adapters.executors import SerialExecutor
from crepant.domain.arrangements import build_A, build_B
from crepant.domain.complexes import Complex
from crepant.domain.subsets import Partition
from crepant.services.catalog import ComplexCatalogService
from crepant.services.census import CensusService
from crepant.services.chambers import ChamberService
from crepant.services.classification import BunchClassificationService
from crepant.services.cox import CoxVerificationService
from crepant.services.crosscheck import OracleCrosscheckService

# --- Executors and Services ---

@pytest.fixture
def executor():
    """ SerialExecutor (runs everything in-process, in order). """
    return SerialExecutor()

@pytest.fixture
def catalog_service(executor):
    """ A ComplexCatalogService on the serial executor. """
    return ComplexCatalogService(executor)

@pytest.fixture
def census_service(executor):
    """ A CensusService on the serial executor. """
    return CensusService(executor)

@pytest.fixture
def chamber_service(executor):
    """ A ChamberService on the serial executor. """
    return ChamberService(executor)

@pytest.fixture
def classification_service(executor):
    """ A BunchClassificationService on the serial executor. """
    return BunchClassificationService(executor)

@pytest.fixture
def crosscheck_service(executor):
    """ An OracleCrosscheckService on the serial executor. """
    return OracleCrosscheckService(executor)

@pytest.fixture
def cox_service(executor):
    """ A CoxVerificationService on the serial executor. """
    return CoxVerificationService(executor)

# --- Data Fixtures ---

@pytest.fixture
def arrangement_a5():
    """ A(5): 16 hyperplanes H_I plus the 5 coordinate hyperplanes. """
    return build_A(5)

@pytest.fixture
def arrangement_b63():
    """ B(6, 3): the ten 3-subsets of [5]. """
    return build_B(6, 3)

@pytest.fixture
def balanced_theta():
    """ theta = (1, 1, 1, 1, 1): generic for n = 5 and inside C_0. """
    return (1, 1, 1, 1, 1)

@pytest.fixture
def small_full_complex():
    """ The full complex on [5] generated by every pair (all 2-sets are faces, no 3-set is). """
    return Complex.from_faces(5, [[i, j] for i in range(1, 6) for j in range(i + 1, 6)])

@pytest.fixture
def three_part_partition():
    """ {1,2} | {3} | {4,5} on [5]. """
    return Partition.of(5, [[1, 2], [3], [4, 5]])
