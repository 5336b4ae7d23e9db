"""
Shared test configuration for gfgq.

- Quiet logging before any toolkit module reads its settings
- Corpus paths and loaders
- Seeded numpy generators for the property suites
"""

import os
from pathlib import Path

# Set test environment
os.environ["GFGQ_LOG_LEVEL"] = "ERROR"

# Import after environment setup
import numpy as np
import pytest

from logic.formula import Formula
from logic.parser import parse_file
from structures.kripke import KripkeStructure, read_kripke

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture
def load_formula():
    """Parse a corpus formula by file name."""
    def load(name: str) -> Formula:
        return parse_file(CORPUS / name)
    return load


@pytest.fixture
def load_kripke():
    """Read a corpus Kripke structure by file name."""
    def load(name: str) -> KripkeStructure:
        return read_kripke(CORPUS / name)
    return load


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)
