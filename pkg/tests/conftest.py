"""Shared samplers for the test suite."""

import numpy as np

from isingtop import FieldConfig, make_field_config


def random_real_config(rng: np.random.Generator, lo: float = -3.0, hi: float = 3.0) -> FieldConfig:
    a, b = rng.uniform(lo, hi, size=2)
    return make_field_config("real", float(a), float(b))


def random_complex_config(rng: np.random.Generator, lo: float = -2.0, hi: float = 2.0) -> FieldConfig:
    a, b = rng.uniform(lo, hi, size=2)
    return make_field_config("complex", float(a), float(b))


def random_gapped_config(rng: np.random.Generator, kind: str) -> FieldConfig:
    # rejection-sample away from the |p| = 1 phase boundary
    while True:
        if kind == "real":
            c = random_real_config(rng)
        else:
            c = random_complex_config(rng)
        if abs(abs(c.p) - 1.0) >= 0.05:
            return c
