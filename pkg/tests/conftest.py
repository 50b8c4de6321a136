import sys
from functools import lru_cache

import pytest

from toric_descent.autgroup import class_aut_group, fan_automorphisms
from toric_descent.fan import class_group
from toric_descent.io import bundled_fan
from toric_descent.polyhedral import nef_cone

SMOOTH_FANS = ["p1", "p2", "p3", "p1xp1", "p1xp3", "p1xp1xp1", "hirzebruch1", "hirzebruch2", "dp6"]
ALL_FANS = SMOOTH_FANS + ["nonprojective3"]


class Pipeline:
    def __init__(self, name):
        self.fan = bundled_fan(name)
        self.div = class_group(self.fan)
        self.W = fan_automorphisms(self.fan, self.div)
        self.J = class_aut_group(self.W, self.div)

    @property
    def nef(self):
        if not hasattr(self, "_nef"):
            self._nef = nef_cone(self.fan, self.div)
        return self._nef


@lru_cache(maxsize=None)
def pipeline(name: str) -> Pipeline:
    return Pipeline(name)


@pytest.fixture
def pipe():
    return pipeline


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
