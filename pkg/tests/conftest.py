import numpy as np
import pytest

from strokesense.synth import GenConfig, generate, stroke_windows


@pytest.fixture(scope="session")
def small_corpus():
    """20 strokes/class, default noise; (windows, series, truth)."""
    cfg = GenConfig(seed=7, strokes_per_class=20)
    series, truth = generate(cfg)
    return stroke_windows(series, truth), series, truth


@pytest.fixture(scope="session")
def small_features(small_corpus):
    from strokesense.features import feature_matrix

    windows, _, _ = small_corpus
    X = feature_matrix(windows)
    y = np.array([int(w.label) for w in windows])
    return X, y


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance verdicts after the run, outside capture."""
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS):
            terminalreporter.write_line(line)
