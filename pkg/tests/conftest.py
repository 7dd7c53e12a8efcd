import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from exaffine.specfile import load_spec

SPEC_DIR = Path(__file__).resolve().parent.parent / "specs"

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def spec_path(name):
    return SPEC_DIR / f"{name}.spec"


def descriptor(name):
    return load_spec(spec_path(name)).descriptor()


@pytest.fixture(scope="session")
def load():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = descriptor(name)
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", {}) if mod else {}
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
