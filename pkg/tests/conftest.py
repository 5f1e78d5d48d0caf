import pytest

from nnmdl.tableau import solve

REPRESENTATIVE = (
    "E", "EM", "EC", "EN", "ET", "EQ", "EP", "ED",
    "EMC", "EMCN", "EMCNT", "ECTQ",
)


@pytest.fixture(scope="session")
def verdict():
    """Memoized solve, shared across test modules to keep reruns cheap."""
    cache = {}

    def run(spec_name: str, f):
        key = (spec_name, f)
        if key not in cache:
            cache[key] = solve(f, spec_name)
        return cache[key]

    return run
