"""Bundled quandle, diagram and assignment files."""

from importlib import resources
from pathlib import Path


def data_path(name):
    return Path(str(resources.files("shadowhom") / "data" / name))


def available():
    return sorted(p.name for p in data_path(".").iterdir() if not p.name.startswith("_"))
