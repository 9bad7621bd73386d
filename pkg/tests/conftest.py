import os
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from wshift.shifts import Recursive, WeightSequence, bergman_shift, perturb

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("repo", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("repo")

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


def perturbed_bergman(x) -> WeightSequence:
    """Bergman shift with alpha_1^2 replaced by x."""
    return perturb(bergman_shift(), 1, x)


def recursive_tail(x) -> WeightSequence:
    """alpha^2 = 1/2, x, 3, 10/3, 17/5, ... (tail of the (1,2,3) recursion)."""
    return WeightSequence([Fraction(1, 2), x, 3, Fraction(10, 3)], Recursive((-2, 4)))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def bergman():
    return bergman_shift()
