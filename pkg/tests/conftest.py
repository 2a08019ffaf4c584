import pytest

from zetaident import derive_identity


@pytest.fixture(scope="session")
def specs64():
    """Derived identities p = 1..12 with terms through k = 64, shared
    across test modules (derivation is exact, so sharing is safe)."""
    return {p: derive_identity(p, 64) for p in range(1, 13)}
