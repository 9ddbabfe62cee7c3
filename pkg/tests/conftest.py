import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from langdist.asjp import ASJP_CONSONANTS, ASJP_VOWELS

BASE_SYMBOLS = sorted(ASJP_VOWELS | ASJP_CONSONANTS)

asjp_forms = st.text(alphabet=BASE_SYMBOLS, min_size=0, max_size=12)


def random_form(rng: random.Random, lo=1, hi=8) -> str:
    return "".join(rng.choice(BASE_SYMBOLS) for _ in range(rng.randint(lo, hi)))


@pytest.fixture
def demo_dir() -> Path:
    return Path(__file__).resolve().parents[1] / "src" / "langdist" / "data" / "demo"


ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome for the summary lines."""

    def record(number: int, title: str):
        ACCEPTANCE[number] = ("FAIL", title, "")
        request.node.user_properties.append(("criterion", number))
        return number

    yield record
    rep = getattr(request.node, "rep_call", None)
    for key, number in request.node.user_properties:
        if key != "criterion":
            continue
        status, title, _ = ACCEPTANCE[number]
        if rep is not None and rep.skipped:
            ACCEPTANCE[number] = ("SKIP", title, str(rep.longrepr[-1]))
        elif rep is not None and rep.passed:
            ACCEPTANCE[number] = ("PASS", title, "")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, title, note = ACCEPTANCE[number]
        line = f"criterion {number}: {status}  {title}"
        if note:
            line += f"  ({note})"
        terminalreporter.write_line(line)
