from __future__ import annotations

import pytest

from geokb.corpus import seed_repository
from geokb.repository import Repository
from geokb.rules import default_rules


@pytest.fixture(scope="session")
def rules():
    return default_rules()


@pytest.fixture(scope="session")
def seeded_repo(tmp_path_factory):
    """Corpus-backed repository shared by read-only tests."""
    repo = Repository(tmp_path_factory.mktemp("corpus"))
    seed_repository(repo)
    return repo


@pytest.fixture()
def fresh_seeded_repo(tmp_path):
    """Corpus-backed repository private to one test; fine to mutate."""
    repo = Repository(tmp_path / "data")
    seed_repository(repo)
    return repo
