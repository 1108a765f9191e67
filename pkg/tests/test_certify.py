import pytest

from library.certify import (
    SWEEP_COLUMNS,
    MvspCertifier,
    format_cell,
    render_report_text,
    render_sweep_csv,
    resolve_instance,
    sweep_profiles,
)
from library.common_utils import CertifierContext
from library.reports import CheckOutcome, verdict_of


@pytest.fixture
def certifier():
    return MvspCertifier(CertifierContext())


def test_verdict_precedence():
    ok = CheckOutcome.of("a", True)
    bad = CheckOutcome.of("b", False)
    skipped = CheckOutcome.skipped("c", "bound")
    assert verdict_of([ok]) == "pass"
    assert verdict_of([ok, skipped]) == "incomplete"
    assert verdict_of([ok, skipped, bad]) == "fail"


def test_construct(certifier):
    record = certifier.construct(2, 3, r_tuple=(0, 2))
    assert record.f == "x^6+x^5+x^3"
    assert record.family == "h"
    assert record.field.modulus == [1, 1, 0, 1]

    h = certifier.construct(2, 5, family="h")
    assert h.profile.r_list == [0, 3]
    assert h.profile.deg_f == 20


def test_resolve_instance_arguments():
    with pytest.raises(ValueError):
        resolve_instance(2, 3)
    with pytest.raises(ValueError):
        resolve_instance(2, 3, r_tuple=(0, 2), family="h")
    with pytest.raises(ValueError):
        resolve_instance(2, 3, family="elliptic")
    assert resolve_instance(2, 4, r_tuple=(0, 1)).family == "custom"


@pytest.mark.parametrize(
    "q, n, kwargs, N, genus",
    [
        (2, 3, {"r_tuple": (0, 2)}, 33, 6),
        (2, 4, {"family": "h"}, 129, 28),
        (2, 5, {"family": "h"}, 513, 60),
        (2, 7, {"family": "h"}, 8193, 504),
        (3, 3, {"family": "h"}, 244, 36),
        (4, 3, {"family": "h"}, 1025, 120),
    ],
)
def test_certify_h_family(certifier, q, n, kwargs, N, genus):
    report = certifier.certify(q, n, **kwargs)
    assert report.verdict == "pass", [c for c in report.checks if c.status != "pass"]
    assert report.curve.N_bruteforce == N
    assert report.curve.genus_formula == genus
    assert report.semigroup.genus == genus
    assert report.semigroup.castle is True
    assert report.semigroup.telescopic and report.semigroup.symmetric
    assert {entry.name for entry in report.valuations} >= {"x", "y", "w1", "s", "w2"}


def test_certify_reports_generators(certifier):
    report = certifier.certify(3, 3, family="h")
    assert report.semigroup.gens == [9, 12, 30, 28, 64]
    assert report.semigroup.telescopic and report.semigroup.symmetric


@pytest.mark.parametrize("q, n, family", [(2, 4, "gs"), (2, 3, "norm-trace"), (3, 2, "h")])
def test_certify_other_families(certifier, q, n, family):
    report = certifier.certify(q, n, family=family)
    assert report.verdict == "pass", [c for c in report.checks if c.status != "pass"]


def test_bounds_make_the_verdict_incomplete():
    tight = MvspCertifier(CertifierContext(fiber_limit=4, max_enum=16))
    report = tight.certify(2, 3, family="h")
    assert report.verdict == "incomplete"
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["value_set"] == "skipped"
    assert statuses["point_count"] == "skipped"
    assert statuses["castle"] == "skipped"


def test_uncertified_genus_is_never_a_pass(certifier):
    report = certifier.certify(2, 3, r_tuple=(0,))
    assert report.curve.genus_formula is None
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["genus_certified"] == "skipped"
    assert report.verdict != "pass"


def test_reports_are_deterministic(certifier):
    first = certifier.certify(2, 3, family="h")
    second = certifier.certify(2, 3, family="h")
    assert first.canonical_json() == second.canonical_json()
    assert "timings" not in first.canonical()
    assert render_report_text(first) == render_report_text(second)
    assert render_report_text(first).startswith("verdict: pass")


def test_sweep_h_family(certifier):
    rows = certifier.sweep([2], 3, 5, profiles="h-family")
    assert [(row.n, row.r_list) for row in rows] == [(3, [0, 2]), (4, [0, 3]), (5, [0, 3])]
    assert all(row.castle for row in rows)
    assert all(row.genus_semigroup == row.genus_formula for row in rows)
    last = rows[-1]
    assert last.N_bruteforce == 513
    assert last.genus_gs == 120
    assert format_cell(last.ratio_N_over_g) == "8.55"
    assert format_cell(last.ratio_gs) == "4.275"


def test_sweep_all_profiles_sorted(certifier):
    rows = certifier.sweep([2], 3, 3, profiles="all")
    assert [row.r_list for row in rows] == [[0], [0, 1], [0, 1, 2], [0, 2]]
    assert "genus_uncertified" in rows[0].note
    assert rows[0].genus_semigroup is None


def test_sweep_in_worker_processes(certifier):
    serial = certifier.sweep([2, 3], 2, 3, profiles="h-family", workers=1)
    parallel = certifier.sweep([2, 3], 2, 3, profiles="h-family", workers=2)
    assert [row.model_dump() for row in parallel] == [row.model_dump() for row in serial]


def test_empty_sweep(certifier):
    assert certifier.sweep([2], 5, 3) == []
    assert render_sweep_csv([]) == ",".join(SWEEP_COLUMNS) + "\n"
    assert sweep_profiles(1, "h-family") == []
    with pytest.raises(ValueError):
        certifier.sweep([2], 3, 3, profiles="some")


def test_csv_cells(certifier):
    rows = certifier.sweep([2], 3, 3)
    lines = render_sweep_csv(rows).splitlines()
    assert len(lines) == 2
    cells = dict(zip(SWEEP_COLUMNS, lines[1].split(",")))
    assert cells["r_list"] == "[0;2]"
    assert cells["N_bruteforce"] == "33"
    assert cells["castle"] == "true"
    assert cells["note"] == ""
    assert format_cell(None) == ""
    assert format_cell(False) == "false"


@pytest.mark.parametrize("q, n", [(2, 1), (2, 3)])
def test_trivial_profile_has_one_point_at_infinity(certifier, q, n):
    report = certifier.certify(q, n, r_tuple=(0,))
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["single_point_at_infinity"] == "pass"
    assert statuses["affine_smooth"] == "pass"


def test_fiber_bound_alone_keeps_the_point_count():
    report = MvspCertifier(CertifierContext(fiber_limit=4)).certify(2, 3, family="h")
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["value_set"] == "skipped"
    assert statuses["point_count"] == "pass"
    assert statuses["castle"] == "pass"
    assert report.curve.N_bruteforce == 33
