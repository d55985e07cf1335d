import pytest

from autocomplexity import ResultCache
from autocomplexity.metrics import ComplexityProvider


@pytest.fixture(scope="session")
def session_cache(tmp_path_factory):
    return ResultCache(tmp_path_factory.mktemp("cache"))


@pytest.fixture(scope="session")
def provider(session_cache):
    """One memoized provider for the whole run so overlapping suites share work."""
    return ComplexityProvider(session_cache)
