from pathlib import Path

import pytest

from cangrow.specs import parse_ring

RINGS = Path(__file__).resolve().parent.parent / "scripts" / "rings"


def ring_file(name: str) -> Path:
    return RINGS / f"{name}.ring"


def load_ring(name: str, field: str | None = None):
    return parse_ring(ring_file(name).read_text(), field)


@pytest.fixture(scope="session")
def quad3():
    return load_ring("quad3")


@pytest.fixture(scope="session")
def x3y3():
    return load_ring("x3y3")


@pytest.fixture(scope="session")
def b3():
    return load_ring("B3")


@pytest.fixture(scope="session")
def ring_a():
    return load_ring("A")
