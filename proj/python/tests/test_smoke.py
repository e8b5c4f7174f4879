import itertools
import json
import os
from pathlib import Path

import numpy as np
import pytest

import gradsim

SOURCE = Path(os.environ.get("GRADSIM_SOURCE_DIR", Path(__file__).resolve().parents[2]))
ARCH = "input 4; domain continuous 0 1; dense 6; relu; dense 3"


def test_gradients_match_finite_differences():
    model = gradsim.Model(ARCH, seed=3)
    x = np.array([0.2, 0.7, 0.4, 0.9])
    g = model.grad_input(x, 1)
    h = 1e-6
    fd = np.array([(model.loss(x + h * e, 1) - model.loss(x - h * e, 1)) / (2 * h) for e in np.eye(4)])
    assert np.allclose(g, fd, rtol=1e-6, atol=1e-9)
    assert model.grad_params(x, 1).shape == (model.num_parameters,)


def test_self_similarity_is_squared_gradient_norm():
    model = gradsim.Model(ARCH, seed=3)
    x = np.array([0.1, 0.5, 0.3, 0.8])
    g = model.grad_params(x, 2)
    assert model.gradient_similarity(x, 2, x, 2) == pytest.approx(g @ g, rel=1e-12)


def test_fgsm_respects_budget():
    model = gradsim.Model(ARCH, seed=3)
    x = np.array([0.2, 0.7, 0.4, 0.9])
    r = gradsim.run_attack("FGSM", model, x, 0, epsilon=0.1)
    assert r.linf <= 0.1 + 1e-12
    assert np.all((r.x_adv >= 0) & (r.x_adv <= 1))
    assert r.predicted_class == model.predict(r.x_adv)


def test_roc_auc_matches_pair_counting():
    rng = np.random.default_rng(0)
    scores = rng.integers(0, 5, size=40).astype(float)
    labels = np.array([0, 1] * 20)
    auc, fpr, tpr = gradsim.roc_auc(scores.tolist(), labels.tolist())
    pos, neg = scores[labels == 1], scores[labels == 0]
    pairs = [(p > n) + 0.5 * (p == n) for p, n in itertools.product(pos, neg)]
    assert auc == pytest.approx(sum(pairs) / len(pairs), abs=1e-15)
    assert fpr[-1] == 1.0 and tpr[-1] == 1.0


def test_config_rejects_unknown_keys(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"detector": {"train_fractoin": 0.5}}))
    with pytest.raises(gradsim.ConfigError):
        gradsim.validate_config(bad)
    resolved = json.loads(gradsim.validate_config(SOURCE / "configs" / "smoke.json", ["seed=9"]))
    assert resolved["seed"] == 9


def test_pipeline_reports_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert gradsim.run_pipeline(bad, "train") == 2
