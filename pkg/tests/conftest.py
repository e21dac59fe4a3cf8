import pathlib

import pytest

from jroc import load_csv

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def iris():
    return load_csv(str(DATA_DIR / "iris.csv"))


@pytest.fixture(scope="session")
def diabetes():
    return load_csv(str(DATA_DIR / "diabetes_synth.csv"))
