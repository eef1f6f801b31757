import pytest


@pytest.fixture(scope="session", autouse=True)
def session_cache_dir(tmp_path_factory):
    """Hermetic disk cache, shared within one test session."""
    import os

    path = tmp_path_factory.mktemp("qk-cache")
    old = os.environ.get("QK_CACHE_DIR")
    os.environ["QK_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("QK_CACHE_DIR", None)
    else:
        os.environ["QK_CACHE_DIR"] = old
