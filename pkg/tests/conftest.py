import numpy as np
from hypothesis import strategies as st


@st.composite
def complex_vectors(draw, min_dim=2, max_dim=6, paired=False):
    """Random complex vectors with norm bounded away from zero."""
    dim = draw(st.integers(min_dim, max_dim))

    def one():
        re = draw(st.lists(st.floats(-5, 5, allow_nan=False), min_size=dim, max_size=dim))
        im = draw(st.lists(st.floats(-5, 5, allow_nan=False), min_size=dim, max_size=dim))
        return np.array(re, dtype=np.float64) + 1j * np.array(im, dtype=np.float64)

    if not paired:
        v = one()
        if np.linalg.norm(v) < 1e-2:
            v = v + (1.0 + 0.5j)  # nudge away from zero
        return v
    v, w = one(), one()
    if np.linalg.norm(v) < 1e-2:
        v = v + (1.0 + 0.5j)
    if np.linalg.norm(w) < 1e-2:
        w = w + (0.5 - 1.0j)
    return v, w


nonzero_scalars = st.builds(
    complex,
    st.floats(-3, 3, allow_nan=False),
    st.floats(-3, 3, allow_nan=False),
).filter(lambda z: 0.1 < abs(z) < 5.0)
