import pytest

from fluxlab.errors import ConfigError
from fluxlab.identities import (
    ALL_IDENTITIES, DEFAULT_INSTANCES, DEFAULT_TOLERANCES, check_identity,
    convergence_table,
)


def test_registry_covers_every_identity():
    assert len(ALL_IDENTITIES) == 19
    assert set(DEFAULT_TOLERANCES) == set(ALL_IDENTITIES)
    assert set(DEFAULT_INSTANCES) == set(ALL_IDENTITIES)


def test_unknown_identity_rejected():
    with pytest.raises(ConfigError):
        check_identity("NOT_AN_IDENTITY")


def test_small_run_passes_and_reports():
    rep = check_identity("PROP_3_3", seed=1, n_instances=3)
    assert rep.verdict and rep.error is None
    assert len(rep.samples) == 3
    doc = rep.to_json()
    assert doc["verdict"] == "pass"
    assert doc["id"] == "PROP_3_3"
    assert all("inputs" in s and "residual" in s for s in doc["samples"])


def test_seeded_runs_are_reproducible():
    a = check_identity("ILM_EQ_TAU", seed=7, n_instances=2)
    b = check_identity("ILM_EQ_TAU", seed=7, n_instances=2)
    assert a.samples == b.samples


def test_impossible_tolerance_fails_without_raising():
    rep = check_identity("PROP_3_3", seed=1, n_instances=2,
                         tolerance=1e-30)
    assert not rep.verdict and rep.error is None
    assert rep.to_json()["verdict"] == "fail"


def test_tol_scale_loosens_thresholds():
    rep = check_identity("PROP_3_3", seed=1, n_instances=2, tol_scale=10.0)
    assert rep.tolerance == pytest.approx(10.0 * DEFAULT_TOLERANCES["PROP_3_3"])


def test_convergence_table_contract():
    with pytest.raises(ConfigError):
        convergence_table("PROP_3_3", 0, [2, 4])
    with pytest.raises(ConfigError):
        convergence_table("LEMMA_5_6", 0, [2, 4, 8])
    table = convergence_table("FLUX_LINEAR", 0, [1, 2, 4])
    assert table["monotone_nonincreasing"]
    assert max(table["residuals"]) < 1e-12
