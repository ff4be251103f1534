import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@pytest.fixture
def three_ray_instance():
    """opt 4 via rays {0, 1}; the heavy target on ray 2 is far."""
    from starsearch.core import Instance

    return Instance.from_pairs([(1, 1), (2, 1), (10, 5)], W=2)


# acceptance verdicts, one line per criterion, echoed after the run
VERDICTS = {}


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
