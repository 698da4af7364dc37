import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skh.fixtures import load_corpus, load_manifest


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def manifest():
    return load_manifest()
