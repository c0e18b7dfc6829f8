import os
from contextlib import contextmanager

import pytest

from mindegree.constructions import symmetric
from mindegree.lattice import brute_force_subgroups, cached_subgroup_classes, subgroup_classes
from mindegree.verifier import SweepContext

_RESULTS = {}


def pytest_addoption(parser):
    parser.addoption("--deep", action="store_true", default=False,
                     help="run the degree 8 and 9 sweeps (slow, uses the lattice cache)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--deep"):
        return
    skip = pytest.mark.skip(reason="deep tier: run with --deep")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS, key=lambda k: (int(k.split()[0]), k)):
        verdict, detail = _RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {verdict}  {detail}".rstrip())


@contextmanager
def _record(key, detail=""):
    try:
        yield
    except BaseException as exc:
        if isinstance(exc, pytest.skip.Exception):
            _RESULTS[key] = ("SKIP", str(exc))
        else:
            _RESULTS[key] = ("FAIL", f"{detail} {type(exc).__name__}: {exc}".strip()[:300])
        raise
    _RESULTS[key] = ("PASS", detail)


@pytest.fixture
def criterion():
    """``with criterion("3 n=6", "detail"):`` records a pass/fail line."""
    return _record


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    env = os.environ.get("MINDEGREE_CACHE")
    return env or str(tmp_path_factory.mktemp("lattice-cache"))


@pytest.fixture(scope="session")
def sym_lattices():
    return {n: subgroup_classes(symmetric(n)) for n in range(1, 8)}


@pytest.fixture(scope="session")
def s6_oracle():
    return brute_force_subgroups(symmetric(6), limit=720)


_CONTEXTS = {}


@pytest.fixture(scope="session")
def sweep_context(sym_lattices, cache_dir):
    """Shared per-degree sweep state; degrees 8 and 9 go through the cache."""
    def get(n):
        if n not in _CONTEXTS:
            if n in sym_lattices:
                _CONTEXTS[n] = SweepContext(n, lattice=sym_lattices[n])
            else:
                lat = cached_subgroup_classes(symmetric(n), f"S{n}", cache_dir)
                _CONTEXTS[n] = SweepContext(n, lattice=lat)
        return _CONTEXTS[n]
    return get
