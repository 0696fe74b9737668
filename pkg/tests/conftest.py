import os
import sys

import numpy as np
import pytest

import datasignal
import datasignal.classifier
import datasignal.cli
import datasignal.figures
import datasignal.kernel
import datasignal.mnist.pipeline
from datasignal.errors import DataSignalError, NetworkError
from datasignal.kernel import evaluate_signal

# Every fit made anywhere in the suite is checked against u(X) = Y - alpha*lam.
IDENTITY_TOL = 1e-10
FIT_LOG = {"fits": 0, "worst": 0.0}
_FIT_USERS = (datasignal, datasignal.kernel, datasignal.classifier, datasignal.figures,
              datasignal.mnist.pipeline, datasignal.cli)
_original_fit = datasignal.kernel.fit_signal


def _checked_fit(data, config=datasignal.kernel.KernelConfig()):
    signal = _original_fit(data, config)
    expected = data.values - config.alpha * signal.coefficients
    gap = float(np.max(np.abs(evaluate_signal(signal, signal.centers) - expected)))
    FIT_LOG["fits"] += 1
    FIT_LOG["worst"] = max(FIT_LOG["worst"], gap)
    assert gap <= IDENTITY_TOL, f"u(X) deviates from Y - alpha*lam by {gap:.3e}"
    return signal


# Patched at import so test modules that import fit_signal directly get the checked one too.
for _module in _FIT_USERS:
    setattr(_module, "fit_signal", _checked_fit)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# -- MNIST -------------------------------------------------------------------

OFFLINE_URL = "http://127.0.0.1:9/"


@pytest.fixture(scope="session")
def mnist_paths():
    from datasignal.mnist import fetch_mnist

    try:
        return fetch_mnist(base_url=OFFLINE_URL, timeout=2)
    except NetworkError:
        pytest.skip("MNIST files not in the local cache")


@pytest.fixture(scope="session")
def mnist_train(mnist_paths):
    from datasignal.mnist import load_mnist

    return load_mnist(mnist_paths["train_images"], mnist_paths["train_labels"])


@pytest.fixture(scope="session")
def mnist_test(mnist_paths):
    from datasignal.mnist import load_mnist

    return load_mnist(mnist_paths["test_images"], mnist_paths["test_labels"])


def mnist_cache_available() -> bool:
    from datasignal.mnist import fetch_mnist

    try:
        fetch_mnist(base_url=OFFLINE_URL, timeout=2)
    except DataSignalError:
        return False
    return True


def full_mnist_enabled() -> bool:
    return os.environ.get("DATASIGNAL_FULL_MNIST") == "1"


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE = []


@pytest.fixture
def criterion():
    def record(name, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}"
        ACCEPTANCE.append(line)
        print(line, file=sys.stderr)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    ok = FIT_LOG["worst"] <= IDENTITY_TOL
    tally = (f"[{'PASS' if ok else 'FAIL'}] lambda identity, session total: "
             f"{FIT_LOG['fits']} fits, worst |u(X) - (Y - alpha*lam)| {FIT_LOG['worst']:.2e}")
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
    terminalreporter.write_line(tally)
