from hypothesis import settings, strategies as st

from hitchin_mirror.epoly import EPolynomial

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")


def epolys(max_exp=4, max_terms=6, max_coeff=50):
    term = st.tuples(
        st.tuples(st.integers(0, max_exp), st.integers(0, max_exp)),
        st.integers(-max_coeff, max_coeff),
    )
    return st.lists(term, max_size=max_terms).map(EPolynomial)


ACCEPTANCE_RESULTS = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in sorted(ACCEPTANCE_RESULTS.items()):
        terminalreporter.write_line(f"{verdict}  {name}")
