import pytest

from foamlab.report import build_claim_report

EXPECTED_IDS = {
    "clock-mass-1cm": "reproduced",
    "clock-mass-1s": "unreproduced",
    "second-difference-coefficient": "reproduced",
    "variance-identity": "reproduced",
    "variance-ratio-mc": "reproduced",
    "delta-c-mc": "reproduced",
    "correlation-eigenvalues": "reproduced",
    "correlation-trace": "reproduced",
    "water-density": "reproduced",
    "density-threshold": "reproduced",
    "threshold-round-trip": "reproduced",
    "density-two-form": "reproduced",
    "bounce-flat": "reproduced",
    "bounce-linearity": "reproduced",
    "bounce-tau-cubed": "reproduced",
    "scaling-cube-root": "reproduced",
    "scaling-curvature-noise": "reproduced",
}


@pytest.fixture(scope="module")
def report():
    return build_claim_report(samples=200_000)


def test_claim_ids_unique_and_complete(report):
    ids = [row.claim_id for row in report.rows]
    assert len(ids) == len(set(ids))
    assert set(ids) == set(EXPECTED_IDS)


def test_statuses(report):
    for row in report.rows:
        assert row.status == EXPECTED_IDS[row.claim_id], row.claim_id


def test_every_row_documents_a_tolerance(report):
    for row in report.rows:
        assert row.tolerance.strip()
        assert row.published_value.strip()
        assert row.basis in {"closed-form", "order-of-magnitude", "monte-carlo", "toy-simulation"}


def test_spot_values(report):
    rows = {row.claim_id: row for row in report.rows}
    assert rows["clock-mass-1cm"].computed_value == pytest.approx(1.854566e6, rel=1e-6)
    assert rows["clock-mass-1s"].computed_value == pytest.approx(5.761287e9, rel=1e-6)
    assert rows["water-density"].computed_value == pytest.approx(11.855381, rel=1e-6)
    assert rows["density-threshold"].computed_value == pytest.approx(10523.85, rel=1e-6)
    assert rows["second-difference-coefficient"].computed_value == pytest.approx(
        0.2498872, rel=1e-6
    )
    assert rows["variance-identity"].computed_value <= 1e-12
    assert rows["bounce-tau-cubed"].computed_value == pytest.approx(8.0, rel=0.01)


def test_provenance_fields(report):
    assert report.seed == 42
    assert report.samples == 200_000
    assert report.partitions == 1
    assert report.version
    assert report.constants.c == 2.99792458e10


def test_report_is_pure_given_seed(report):
    again = build_claim_report(samples=200_000)
    assert again == report


def test_seed_changes_monte_carlo_rows(report):
    other = build_claim_report(seed=43, samples=200_000)
    rows = {row.claim_id: row for row in report.rows}
    other_rows = {row.claim_id: row for row in other.rows}
    assert (
        other_rows["variance-ratio-mc"].computed_value
        != rows["variance-ratio-mc"].computed_value
    )
    # closed forms are seed-independent
    assert (
        other_rows["second-difference-coefficient"].computed_value
        == rows["second-difference-coefficient"].computed_value
    )
