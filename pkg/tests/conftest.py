from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from nonpowers.family import FamilyParams  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# smallest sieve outputs, frozen as golden values
GOLDEN_P2 = {"p": 2, "field": "Q", "a": "89", "b": "41", "c": "35"}
GOLDEN_P3 = {"p": 3, "field": "Q(zeta3)", "a": "-35-18ζ", "b": "1-27ζ", "c": "92"}


@pytest.fixture(scope="session")
def golden2() -> FamilyParams:
    return FamilyParams.from_json(GOLDEN_P2)


@pytest.fixture(scope="session")
def golden3() -> FamilyParams:
    return FamilyParams.from_json(GOLDEN_P3)
