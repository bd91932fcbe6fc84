import pytest
from hypothesis import settings, strategies as st

from biinvariant.words import Alphabet, parse_word

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

AB = Alphabet("ab")


def words(alphabet="ab", min_size=0, max_size=30):
    letters = alphabet + alphabet.upper()
    return st.text(alphabet=letters, min_size=min_size, max_size=max_size).map(
        lambda s: parse_word(s, alphabet)
    )


def W(text, alphabet="ab"):
    return parse_word(text, alphabet)


# acceptance criteria register their outcome here; printed in the summary
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def record_criterion():
    def record(number, name, passed, detail=""):
        ACCEPTANCE_RESULTS[number] = (name, passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        name, passed, detail = ACCEPTANCE_RESULTS[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {name}" + (f" -- {detail}" if detail else ""))
