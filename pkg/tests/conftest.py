import os
import sys

import hypothesis
import pytest

sys.path.insert(0, os.path.dirname(__file__))

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=1000, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


GRID_MAX = 5000
GRID_G = (2, 3, 4, 5)


@pytest.fixture(scope="session")
def exact_grid():
    """l_g(d) for d <= GRID_MAX and each g in GRID_G, computed once per session."""
    from gchain.optimal import l_g_exact

    return {g: {d: l_g_exact(d, g).l for d in range(1, GRID_MAX + 1)} for g in GRID_G}
