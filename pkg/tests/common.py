"""Preset frames and hypothesis strategies shared by the test modules."""
from fractions import Fraction as F

from hypothesis import strategies as st

from qcalc import Polynomial, default_samples, make_preset

PRESET_SPECS = [("h", {"h": F(1)}), ("h", {"h": F(1, 2)}), ("q", {"q": F(2)}),
                ("q", {"q": F(3, 2)}), ("h_symmetric", {"h": F(1)}),
                ("q_symmetric", {"q": F(2)})]
PRESETS = [make_preset(kind, **params) for kind, params in PRESET_SPECS]
PRESET_IDS = [f.name for f in PRESETS]

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=6)
polynomials = st.lists(rationals, min_size=1, max_size=7).map(Polynomial)


_cache = {}


def samples(frame, count=12, depth=0):
    key = (id(frame), count, depth)
    if key not in _cache:
        _cache[key] = (frame, default_samples(frame, count, depth))
    return _cache[key][1]


def sample_points(frame, depth=0):
    return st.sampled_from(samples(frame, 12, depth))
