"""Full acceptance battery: one test per criterion, one printed line each.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they
complete; each check also carries a wall-clock budget.
"""

import time

import pytest

from eudoxus import suite

BUDGETS = {
    "conjunct_anchors": 1.0,
    "theorem_roundtrips": 30.0,
    "facial_spectral_theorem": 10.0,
    "jordan_moreau": 5.0,
    "derivation_dimensions": 10.0,
    "dichotomy_table": 10.0,
    "eudoxus_kernel": 10.0,
    "quadrature": 1.0,
    "krein_reconstruction": 5.0,
    "refinement_monotonicity": 5.0,
}


@pytest.mark.parametrize("name,fn", suite.ALL_CHECKS,
                         ids=[name for name, _ in suite.ALL_CHECKS])
def test_acceptance(name, fn, capsys):
    t0 = time.perf_counter()
    passed, detail = fn(seed=0)
    elapsed = time.perf_counter() - t0
    with capsys.disabled():
        print("ACCEPT %-26s %s  (%.2fs)  %s"
              % (name, "PASS" if passed else "FAIL", elapsed, detail))
    assert passed, detail
    assert elapsed < BUDGETS[name], (
        "%s took %.2fs, budget %.1fs" % (name, elapsed, BUDGETS[name]))
