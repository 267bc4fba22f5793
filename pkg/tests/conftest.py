from __future__ import annotations

from pathlib import Path

import pytest

from tsix.bundle import IndexBundle, build_bundle
from tsix.xmlstore import InstanceTree, parse_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

_FIGS = ("fig1a", "fig1b", "fig10", "fig11", "fig12", "fig14")


@pytest.fixture(scope="session")
def trees() -> dict[str, InstanceTree]:
    return {name: parse_file(str(FIXTURES / f"{name}.xml")) for name in _FIGS}


@pytest.fixture(scope="session")
def bundles(trees) -> dict[str, IndexBundle]:
    return {name: build_bundle(tree) for name, tree in trees.items()}


@pytest.fixture(scope="session")
def fig1a(bundles) -> IndexBundle:
    return bundles["fig1a"]


@pytest.fixture(scope="session")
def fig1b(bundles) -> IndexBundle:
    return bundles["fig1b"]


@pytest.fixture(scope="session")
def fig10(bundles) -> IndexBundle:
    return bundles["fig10"]


@pytest.fixture(scope="session")
def fig11(bundles) -> IndexBundle:
    return bundles["fig11"]


@pytest.fixture(scope="session")
def fig12(bundles) -> IndexBundle:
    return bundles["fig12"]


@pytest.fixture(scope="session")
def fig14(bundles) -> IndexBundle:
    return bundles["fig14"]
