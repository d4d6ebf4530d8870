import itertools
import random
import time

import pytest

from subcode.algebra import MatrixGF, field

_ACCEPTANCE: list[tuple[str, str]] = []
SUITE_SECONDS = 600
_START = time.perf_counter()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE.append((marker.args[0], "PASS" if rep.passed else "FAIL"))


def pytest_sessionfinish(session, exitstatus):
    if not _ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _START
    ok = elapsed < SUITE_SECONDS
    _ACCEPTANCE.append((f"5: suite runtime {elapsed:.1f} s < {SUITE_SECONDS} s", "PASS" if ok else "FAIL"))
    if not ok and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {label}")


def random_matrix(rng: random.Random, q: int, rows: int, cols: int) -> MatrixGF:
    return MatrixGF(field(q), [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)], cols)


def span_set(M: MatrixGF) -> frozenset:
    """Brute-force row space as a set of vectors (independent of rref)."""
    f = M.field
    vecs = set()
    for coeffs in itertools.product(range(f.q), repeat=M.nrows):
        v = [0] * M.ncols
        for c, row in zip(coeffs, M.data):
            v = [f.add(a, f.mul(c, b)) for a, b in zip(v, row)]
        vecs.add(tuple(v))
    return frozenset(vecs)


def log_q(size: int, q: int) -> int:
    k = 0
    while q**k < size:
        k += 1
    assert q**k == size
    return k


def cofactor_det(M: MatrixGF) -> int:
    """Laplace expansion along the first row."""
    f = M.field
    n = M.nrows
    if n == 0:
        return 1
    if n == 1:
        return M.data[0][0]
    acc = 0
    for j in range(n):
        a = M.data[0][j]
        if not a:
            continue
        minor = MatrixGF(f, [r[:j] + r[j + 1 :] for r in M.data[1:]], n - 1)
        term = f.mul(a, cofactor_det(minor))
        acc = f.sub(acc, term) if j % 2 else f.add(acc, term)
    return acc


@pytest.fixture
def rng():
    return random.Random(20241014)
