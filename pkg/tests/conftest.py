import contextlib
import time

ACCEPTANCE_LINES = []


@contextlib.contextmanager
def criterion(number, title, budget=None):
    """Time a block and record one PASS/FAIL line; a blown time budget fails it."""
    t0 = time.perf_counter()
    ok = False
    detail = ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        detail = str(exc).splitlines()[0] if str(exc) else "assertion failed"
        raise
    finally:
        elapsed = time.perf_counter() - t0
        if ok and budget is not None and elapsed > budget:
            ok = False
            detail = f"over budget ({budget} s)"
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({elapsed:.3f} s)"
        if detail:
            line += f" -- {detail}"
        ACCEPTANCE_LINES.append(line)
    if budget is not None:
        assert elapsed <= budget, f"criterion {number} took {elapsed:.3f} s, budget {budget} s"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
