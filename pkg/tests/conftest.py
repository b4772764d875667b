import pathlib
import random

import pytest

from opetopes.generator import GenParams, gen_opetope
from opetopes.io import opetope_from_doc, parse_dfc, parse_opetope
from opetopes.poset import dfc_validate, mop_validate
from opetopes.trees import opetope_validate

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text()


def load_dfc(name: str):
    doc, _ = parse_dfc(fixture_text(name))
    return dfc_validate(mop_validate(doc))


def load_dfc_doc(name: str) -> dict:
    doc, _ = parse_dfc(fixture_text(name))
    return doc


def load_ope(name: str):
    doc, _ = parse_opetope(fixture_text(name))
    return opetope_validate(opetope_from_doc(doc))


def load_ope_doc(name: str) -> dict:
    doc, _ = parse_opetope(fixture_text(name))
    return doc


@pytest.fixture(scope="session")
def rho_dfc():
    return load_dfc("rho3.dfc.json")


@pytest.fixture(scope="session")
def omega_dfc():
    return load_dfc("omega4.dfc.json")


@pytest.fixture(scope="session")
def rho_ope():
    return load_ope("rho3.ope.json")


@pytest.fixture(scope="session")
def omega_ope():
    return load_ope("omega4.ope.json")


def generated_corpus(count: int, seed: int = 0, dims=(1, 2, 3, 4)):
    """Deterministic corpus of valid opetopes cycling through the dimensions."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        dim = dims[i % len(dims)]
        out.append(gen_opetope(rng, GenParams(dim=dim)))
    return out
