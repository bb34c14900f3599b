import numpy as np
import pytest

from demodlab.signals import draw_model_a
from demodlab.system import build_system, draw_chipping

# One master seed for the whole suite: the paper submission date.  All
# Monte-Carlo expectations below were frozen against this value.
MASTER_SEED = 20090130


@pytest.fixture
def rng():
    return np.random.default_rng(MASTER_SEED)


def make_instance(w, r, k, rng):
    """Fresh Model-A signal + fresh demodulator + its samples."""
    s = draw_model_a(w, k, rng)
    system = build_system(w, r, draw_chipping(w, rng))
    return s, system, system.apply(s)
