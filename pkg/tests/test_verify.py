import pytest

from hermfock.verify import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    rep = run_suite(name, seed=0)
    failed = [c for c in rep["checks"] if c["status"] != "pass"]
    assert rep["passed"], failed
    for c in rep["checks"]:
        assert set(c) == {"name", "status", "worst_err", "tolerance"}


def test_suite_is_reproducible():
    assert run_suite("bridge", seed=7) == run_suite("bridge", seed=7)


def test_unknown_suite():
    with pytest.raises(KeyError, match="available"):
        run_suite("everything")
