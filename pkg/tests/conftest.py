from hypothesis import strategies as st

from mu4spectra.adic_words import EventuallyPeriodicWord


@st.composite
def ep_words(draw, m=4, max_pre=6, max_per=6):
    pre = draw(st.lists(st.integers(0, m - 1), max_size=max_pre))
    per = draw(st.lists(st.integers(0, m - 1), min_size=1, max_size=max_per))
    return EventuallyPeriodicWord(m, tuple(pre), tuple(per))


def carry_stream(words, coeffs, length, m=4):
    """Reference digits of sum(c * w) by schoolbook carrying, c >= 0."""
    out, carry = [], 0
    for n in range(1, length + 1):
        total = sum(c * w.digit(n) for c, w in zip(coeffs, words)) + carry
        out.append(total % m)
        carry = total // m
    return out


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
