import time

import pytest

from shelterpath.fixtures import random_instances
from shelterpath.pipeline import run_pipeline

ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(criterion: str, ok: bool, detail: str) -> None:
    ACCEPTANCE.append((criterion, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")


@pytest.fixture(scope="session")
def random_suite():
    """200 seeded general-position instances with their pipeline results and total runtime."""
    t0 = time.perf_counter()
    insts = random_instances(200, seed=2024)
    results = [run_pipeline(inst) for inst in insts]
    return insts, results, time.perf_counter() - t0
