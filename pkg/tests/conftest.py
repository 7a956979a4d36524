"""Shared fixtures: acceptance line reporting and random graph helpers."""

import random

import pytest

from spexlab import Graph

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Recorder for acceptance criteria; prints one pass/fail line each."""

    def record(name: str, ok: bool, detail: str = "") -> bool:
        status = "PASS" if ok else "FAIL"
        line = f"ACCEPTANCE {name}: {status}"
        if detail:
            line += f" [{detail}]"
        print(line, flush=True)
        ACCEPTANCE_LINES.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return Graph(n, edges)


def random_tree(rng: random.Random, n: int) -> Graph:
    """Uniform-ish random tree: each new vertex attaches to an earlier one."""
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return Graph(n, edges)


def random_connected_graph(rng: random.Random, n: int, extra: int) -> Graph:
    base = random_tree(rng, n)
    edges = set(base.edges())
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n)
                  if (u, v) not in edges]
    rng.shuffle(candidates)
    edges.update(candidates[:extra])
    return Graph(n, sorted(edges))
