import pytest

from rackalg.catalog import builtin_cocycle, builtin_rack


@pytest.fixture(scope="session")
def o23():
    return builtin_rack("o23")


@pytest.fixture(scope="session")
def o24():
    return builtin_rack("o24")


@pytest.fixture(scope="session")
def o44():
    return builtin_rack("o44")


@pytest.fixture(scope="session")
def s4_families():
    """The three rack/cocycle pairs everything downstream revolves around."""
    out = []
    for rack_name, spec in (
        ("o24", "const:-1"),
        ("o24", "chi"),
        ("o44", "const:-1"),
    ):
        rack, cls = builtin_rack(rack_name)
        out.append((rack_name, spec, rack, builtin_cocycle(rack_name, spec)))
    return out
