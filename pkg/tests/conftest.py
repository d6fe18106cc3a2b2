"""
Pytest configuration and shared fixtures.

Provides the catalog, common objects and a clean configuration for the
kernel, harness and command line tests.
"""

import hypothesis
import pytest
import structlog

hypothesis.settings.register_profile("kernel", max_examples=40, deadline=None, derandomize=True)
hypothesis.settings.load_profile("kernel")


# ==================== Catalog ====================

@pytest.fixture(scope="session")
def catalog():
    """The validated catalog; building it once keeps the suite fast."""
    from src.harness.catalog import build_catalog

    return build_catalog()


# ==================== Objects ====================

@pytest.fixture
def d1():
    """D: one coordinate."""
    from src.algebra.simplicial import make_Dn

    return make_Dn(1)


@pytest.fixture
def d2():
    """D^2: microsquares."""
    from src.algebra.simplicial import make_Dn

    return make_Dn(2)


@pytest.fixture
def d3():
    """D^3: microcubes."""
    from src.algebra.simplicial import make_Dn

    return make_Dn(3)


@pytest.fixture
def c_object():
    """C = D^3{(1,3),(2,3)}."""
    from src.algebra.simplicial import SimplicialObject

    return SimplicialObject(3, frozenset({(1, 3), (2, 3)}))


@pytest.fixture
def e_object():
    """E = D^4{(1,3),(2,3),(1,4),(2,4),(3,4)}."""
    from src.algebra.simplicial import SimplicialObject

    return SimplicialObject(4, frozenset({(1, 3), (2, 3), (1, 4), (2, 4), (3, 4)}))


# ==================== Configuration ====================

@pytest.fixture
def settings():
    """Small sample sizes so the harness tests stay quick."""
    from src.models.config import HarnessSettings

    return HarnessSettings(
        seed=7,
        mediator_samples=5,
        functoriality_pairs=10,
        random_objects=10,
        max_random_arity=6,
    )


@pytest.fixture
def harness_config(settings):
    """A HarnessConfig carrying ``settings``."""
    from src.config.loader import HarnessConfig

    return HarnessConfig(settings.model_dump())


@pytest.fixture(autouse=True)
def reset_config():
    """Forget the cached global configuration between tests."""
    from src.config.loader import reset_config as reset

    reset()
    yield
    reset()


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop logging configured by a CLI run; it may point at a closed capture stream."""
    yield
    structlog.reset_defaults()


# ==================== Scripts ====================

@pytest.fixture
def scripts_dir():
    """Directory of the sample scripts shipped with the repository."""
    from pathlib import Path

    return Path(__file__).resolve().parent.parent / "scripts"
