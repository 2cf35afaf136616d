"""Bundled fault scripts: the three-experiment script and the Gaussian disturbance profile."""

from importlib import resources


def script_path(name: str) -> str:
    return str(resources.files(__name__) / name)


def _read(name: str) -> str:
    return (resources.files(__name__) / name).read_text()


EXPERIMENT_SCRIPT = _read("faults.in")
GAUSSIAN_SCRIPT = _read("gaussian.in")
