import pytest

from app.services.fixtures import load_dimer


def sphere_raw(n: int, prefix: str = "s") -> dict:
    """The n-punctured sphere cut into two n-gons by a single cycle of arcs."""
    punctures = [f"{prefix}{i}" for i in range(1, n + 1)]
    arcs = [
        {"id": f"{prefix}e{i}", "head": punctures[i % n], "tail": punctures[i - 1]}
        for i in range(1, n + 1)
    ]
    rotation = {
        punctures[i - 1]: [[f"{prefix}e{i}", "tail"], [f"{prefix}e{(i - 2) % n + 1}", "head"]]
        for i in range(1, n + 1)
    }
    return {"format": 1, "name": f"{prefix}q{n}", "punctures": punctures, "arcs": arcs, "rotation": rotation}


@pytest.fixture(scope="session")
def torus1():
    return load_dimer("torus1")


@pytest.fixture(scope="session")
def ntorus1():
    return load_dimer("ntorus1", require_dimer=True)


@pytest.fixture(scope="session")
def ntorus2():
    return load_dimer("ntorus2", require_dimer=True)


@pytest.fixture(scope="session")
def q3():
    return load_dimer("q3", require_dimer=True)


@pytest.fixture(scope="session")
def q4():
    return load_dimer("q4", require_dimer=True)
