import pytest

from dyconvex.verify import BUNDLES, run_bundle

PASSING = [name for name in BUNDLES if name != "normalization-remark"]


@pytest.mark.parametrize("name", PASSING)
def test_bundle_passes(name):
    failed = [c for c in run_bundle(name) if not c.passed]
    assert not failed, failed


def test_normalization_remark_fails_only_where_invariants_differ():
    checks = {c.name: c for c in run_bundle("normalization-remark")}
    failing = {name for name, c in checks.items() if not c.passed}
    assert failing == {
        "area odd part matches T_{1,9,2,0}",
        "boundary type matches T_{1,9,2,0}",
        "normalizes to T_{1,9,2,0}",
    }
    assert checks["area odd part matches T_{1,9,2,0}"].actual == 81
    assert checks["normalizes to T_{1,9,2,0}"].actual == (3, 27, 6, 0)


def test_unknown_bundle():
    with pytest.raises(KeyError):
        run_bundle("missing")
