"""hypothesis strategies shared by the test modules"""

import math

import numpy as np
from hypothesis import strategies as st

from models.geometry_models import ArcSet

TWO_PI = 2.0 * math.pi


@st.composite
def disk_points(draw, radius: float = 0.9):
    """area-uniform points with |z| <= radius"""
    u = draw(st.floats(min_value=0.0, max_value=1.0))
    angle = draw(st.floats(min_value=0.0, max_value=TWO_PI, exclude_max=True))
    r = radius * math.sqrt(u)
    return complex(r * math.cos(angle), r * math.sin(angle))


@st.composite
def arc_sets(draw, max_arcs: int = 3):
    """unions of up to max_arcs arcs with arbitrary (possibly wrapping) endpoints"""
    count = draw(st.integers(min_value=1, max_value=max_arcs))
    arcs = []
    for _ in range(count):
        start = draw(st.floats(min_value=0.0, max_value=TWO_PI, exclude_max=True))
        length = draw(st.floats(min_value=1e-3, max_value=TWO_PI - 1e-3))
        arcs.append((start, start + length))
    return ArcSet(arcs=arcs)


@st.composite
def blaschke_zeros(draw, max_zeros: int = 8, radius: float = 0.95):
    count = draw(st.integers(min_value=1, max_value=max_zeros))
    return [draw(disk_points(radius)) for _ in range(count)]


def random_disk(rng, count: int, radius: float = 0.9):
    """area-uniform numpy sample of the disk |z| <= radius"""
    r = radius * np.sqrt(rng.random(count))
    return r * np.exp(2j * np.pi * rng.random(count))
