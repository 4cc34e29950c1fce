import itertools

from hypothesis import settings

from hookgraph.rootsys import parse_type
from hookgraph.weyl import WeylElt, parse_element

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def el(type_name, word):
    C = type_name if not isinstance(type_name, str) else parse_type(type_name)
    return parse_element(C, word)


def all_words_elements(C, max_len):
    """Brute-force oracle: every element reachable by words of length <= max_len."""
    seen = {}
    for k in range(max_len + 1):
        for word in itertools.product(range(1, C.rank + 1), repeat=k):
            x = WeylElt.from_word(C, word)
            seen.setdefault(x, word)
    return seen


def zero_one_weights(n):
    for pi in itertools.product((0, 1), repeat=n):
        if any(pi):
            yield pi
