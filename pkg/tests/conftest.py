import os
import sys

import pytest
from hypothesis import settings

# Ensure project root is importable
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

# canonical forms and automorphism searches are slow per example; keep property runs short
settings.register_profile("workbench", max_examples=40, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "workbench"))


@pytest.fixture
def constant_zero_table(tmp_path):
    """Order-2 table file where every product is 0: right-zero and antisymmetry both fail."""
    path = tmp_path / "zero.tbl"
    path.write_text("# constant zero\n2\n0\n0 0\n0 0\n")
    return str(path)


@pytest.fixture(scope="session")
def witness_sample():
    """Every BCI-algebra up to order 3, every order-2 magma and a spread of order-3 magmas."""
    from itertools import islice

    from src.search import all_magmas, bci_corpus

    return list(bci_corpus(3)) + list(all_magmas(2)) + list(islice(all_magmas(3), 0, None, 401))
