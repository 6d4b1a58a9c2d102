import pytest

from memlab import build_model, builtin_presets, simulate


@pytest.fixture(scope="session")
def presets():
    return builtin_presets()


@pytest.fixture(scope="session")
def sims(presets):
    """Lazy per-preset simulation cache shared across the whole run.

    The expensive trajectories (the quasi-static thermistor, the fast
    thermistor with its long transient) are only computed once no matter how
    many tests look at them.
    """
    cache = {}

    def get(name):
        if name not in cache:
            cfg = presets[name]
            cache[name] = simulate(build_model(cfg), cfg.drive, cfg.controls)
        return cache[name]

    return get
