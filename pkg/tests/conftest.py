from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lcschur.graph import build_graph

settings.register_profile(
    "lcschur",
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("lcschur")


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def partitions(draw, max_total: int = 8):
    parts = draw(st.lists(st.integers(1, max_total), max_size=max_total))
    parts = sorted(parts, reverse=True)
    out = []
    total = 0
    for p in parts:
        if total + p <= max_total:
            out.append(p)
            total += p
    return tuple(sorted(out, reverse=True))


# acceptance criterion number -> "PASS ..." / "FAIL ..." line
RESULTS: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
