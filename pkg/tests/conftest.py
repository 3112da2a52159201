from pathlib import Path

import pytest

from enriques_collection.config import load_config
from enriques_collection.pencil import reference_config

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"


@pytest.fixture(scope="session")
def reference_cfg():
    return reference_config()


@pytest.fixture(scope="session")
def alternate_cfg():
    return load_config(CONFIGS / "alternate.json").point_config


@pytest.fixture(scope="session")
def reference_report(reference_cfg):
    from enriques_collection.verifier import verify_all
    return verify_all(reference_cfg)


@pytest.fixture(scope="session")
def alternate_report(alternate_cfg):
    from enriques_collection.verifier import verify_all
    return verify_all(alternate_cfg)
