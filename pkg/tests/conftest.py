import random
from pathlib import Path

import pytest

from mwalgebra.config import load_config
from mwalgebra.graph import Graph, cantor_graph, single_loop

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture
def loop():
    return single_loop()


@pytest.fixture
def cantor():
    return cantor_graph()


@pytest.fixture
def two_cycle():
    # a: w -> u, b: u -> w, plus a loop c at u; every vertex receives an edge
    return Graph(["u", "w"], [("a", "u", "w"), ("b", "w", "u"), ("c", "u", "u")])


@pytest.fixture
def rng():
    return random.Random(1234)


def config(name):
    return load_config(CONFIG_DIR / f"{name}.toml")


@pytest.fixture
def cantor_sys():
    return config("cantor").system


@pytest.fixture
def half_sys():
    return config("half_maps").system


@pytest.fixture
def loop_sys():
    return config("single_loop").system


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.VERDICTS):
        terminalreporter.write_line(mod.VERDICTS[n])
