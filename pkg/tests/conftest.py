import numpy as np
import pytest

from streamadapt import ClassModel


def random_class_model(rng, n_classes=4, dimension=8, class_names=None):
    """A generic well-conditioned class model for property tests."""
    text = rng.standard_normal((n_classes, dimension)).astype(np.float32)
    return ClassModel.from_text_embeddings(text, class_names=class_names)


def records_as_tuples(records):
    """StreamRecords -> (views, label) pairs for the reference oracle."""
    return [(rec.views, rec.label) for rec in records]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def class_model(rng):
    return random_class_model(rng)
