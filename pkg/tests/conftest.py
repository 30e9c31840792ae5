import numpy as np
from hypothesis import strategies as st

from spectrum_scope import Spectrum


def random_spectrum(rng: np.random.Generator, d: int) -> Spectrum:
    return Spectrum(tuple(sorted((float(v) for v in rng.dirichlet(np.ones(d))), reverse=True)))


@st.composite
def spectra(draw, d_min: int = 2, d_max: int = 4, floor: float = 1e-3):
    d = draw(st.integers(d_min, d_max))
    raw = draw(st.lists(st.floats(floor, 1.0), min_size=d, max_size=d))
    total = sum(raw)
    return Spectrum(tuple(sorted((v / total for v in raw), reverse=True)))


@st.composite
def partition_rows(draw, max_rows: int = 4, max_part: int = 8):
    d = draw(st.integers(1, max_rows))
    raw = draw(st.lists(st.integers(0, max_part), min_size=d, max_size=d))
    return tuple(sorted(raw, reverse=True))
