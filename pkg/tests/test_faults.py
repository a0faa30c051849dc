"""Every documented perturbation is caught by its targeted suite, with a witness."""

import pytest

from cotwist.faults import FAULTS
from cotwist.report import Report
from cotwist.suites import run_suite


@pytest.mark.parametrize("fault", FAULTS, ids=[f.name for f in FAULTS])
def test_fault_caught_by_targeted_suite(fault):
    bundle = fault.build()
    rep = Report()
    run_suite(bundle, fault.suite, rep, samples=16)
    failures = rep.failures()
    assert failures, f"{fault.name} not caught by suite {fault.suite}"
    assert all(c.witness for c in failures)


def test_registry_has_ten_documented_faults():
    assert len(FAULTS) == 10
    assert len({f.name for f in FAULTS}) == 10
    assert all(f.description for f in FAULTS)
