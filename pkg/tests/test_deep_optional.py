"""Opt-in deep sweeps beyond the pinned acceptance ranges.

Enable with TAUCALC_DEEP=1; roughly a minute of extra work.  The standard
acceptance module stays authoritative; this is head-room validation.
"""

import os

import pytest

from taucalc.brackets import BracketTable
from taucalc.combinat import multisets_with_sum
from taucalc.identities import verify
from taucalc.npoint import npoint_series, warm_table_from_series

pytestmark = pytest.mark.skipif(
    not os.environ.get("TAUCALC_DEEP"),
    reason="set TAUCALC_DEEP=1 for the extended sweeps",
)


def test_insertion_identities_through_genus_twenty():
    table = BracketTable()
    for n, g_hi in ((1, 21), (2, 21), (3, 20)):
        warm_table_from_series(npoint_series(n, g_hi), table)
    checked = 0
    for g in range(1, 21):
        for ident, min_part, total_for in (
            ("eq5", 0, lambda n, g=g: g + n - 2),
            ("eq8", 1, lambda n, g=g: g + n),
        ):
            if ident == "eq8" and g < 2:
                continue
            for n in (1, 2):
                total = total_for(n)
                if total < n * min_part:
                    continue
                for d in multisets_with_sum(n, total, min_part):
                    report = verify(ident, table=table, g=g, d=d)
                    assert report.passed, (ident, g, d, report.lhs, report.rhs)
                    checked += 1
    assert checked > 150


def test_two_point_monotonicity_deep():
    from taucalc.monotone import psi_swap_deep

    report = psi_swap_deep(150)
    assert report.passed and int(report.lhs) == sum((3 * g - 1) // 2 for g in range(1, 151))
