import sys
from pathlib import Path

from hypothesis import settings, strategies as st

from singtwin.scalar import Scalar

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def gaussians(draw, nonzero=False):
    z = Scalar(draw(rationals), draw(rationals))
    if nonzero and not z:
        z = Scalar(1)
    return z


@st.composite
def extended(draw, D=-3):
    return Scalar(draw(rationals), draw(rationals), draw(rationals), draw(rationals), root_square=D)


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
