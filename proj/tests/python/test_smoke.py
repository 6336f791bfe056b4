"""End-to-end smoke checks for the python bindings."""

import math

import pytest

import ccebench as cb


def test_normalize_and_constant():
    assert cb.normalize([0.0, 5.0, 10.0]) == [0.0, 0.5, 1.0]
    assert cb.normalize([3.0, 3.0]) == [0.5, 0.5]


def test_extract_events():
    part = cb.extract_events([0, 0, 1, 1, 1, 0])
    assert part["series_length"] == 6
    assert part["anomaly_events"] == 1
    assert part["normal_events"] == 2
    kinds = [e["kind"] for e in part["events"]]
    assert kinds == ["normal", "anomaly", "normal"]
    assert part["events"][1]["begin"] == 2
    assert part["events"][1]["end"] == 5


def test_fit_beta_symmetric():
    # Beta(2, 2) has mean 1/2 and variance 1/20
    values = [0.5 + d for d in (-0.3, -0.1, 0.1, 0.3)]
    fit = cb.fit_beta(values)
    assert fit["fittable"]
    assert fit["alpha"] == pytest.approx(fit["beta"])
    assert fit["uncertainty"] == pytest.approx(0.05, abs=1e-12)


def test_cce_perfect_detector():
    labels = [0] * 10 + [1] * 5 + [0] * 10
    scores = [0.0] * 10 + [1.0] * 5 + [0.0] * 10
    result = cb.cce(scores, labels)
    assert result["s_cce"] == pytest.approx(1.0)
    assert len(result["events"]) == 3
    assert not result["anomaly_class_absent"]


def test_cce_matches_registry():
    labels = cb.generate_labels(2000, 5, 20, 40, seed=7)
    scores = cb.generate_scores("AccQ", labels, q=0.8, sigma=0.05, seed=11)
    direct = cb.cce(scores, labels)["s_cce"]
    via_registry = cb.evaluate_metric("cce", scores, labels)
    assert via_registry["value"] == pytest.approx(direct, abs=0.0)
    assert "tau=" in via_registry["detail"]


def test_baselines():
    labels = [0, 0, 1, 1, 0]
    scores = [0.1, 0.2, 0.9, 0.1, 0.3]
    assert cb.f1(scores, labels) == pytest.approx(2 / 3)
    assert cb.f1_pa(scores, labels) == pytest.approx(1.0)
    auc = cb.auc_roc(scores, labels)
    assert 0.0 <= auc <= 1.0
    assert cb.auc_roc([0.5, 0.6], [0, 0]) is None


def test_generators_deterministic():
    a = cb.generate_scores("PreQNegP", [0, 1] * 50, q=0.9, p=0.1, seed=3)
    b = cb.generate_scores("PreQNegP", [0, 1] * 50, q=0.9, p=0.1, seed=3)
    assert a == b
    assert all(0.0 <= s <= 1.0 for s in a)


def test_rank_statistics():
    ranks, ties = cb.rank_descending([0.2, 0.9, 0.5])
    assert ranks == [3, 1, 2]
    assert not ties
    assert cb.spearman([1, 2, 3], [1, 2, 3]) == pytest.approx(1.0)
    assert cb.kendall([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
    assert cb.mean_rank_deviation([1, 2], [2, 1]) == pytest.approx(1.0)


def test_metric_listing():
    names = cb.list_metrics()
    assert "cce" in names
    assert "auc_roc" in names
    with pytest.raises(Exception):
        cb.evaluate_metric("no_such_metric", [0.5], [0])


def test_invalid_inputs_raise():
    with pytest.raises(Exception):
        cb.cce([], [])
    with pytest.raises(Exception):
        cb.cce([0.5], [2])
    with pytest.raises(Exception):
        cb.normalize([math.nan, 0.5])
