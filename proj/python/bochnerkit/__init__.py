"""Algebraic curvature tensors, holonomy spectra and Bochner-type vanishing criteria."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    CurvatureTensor,
    DomainError,
    Error,
    LeakageError,
    Space,
    algebra_basis,
    kahler_sharp_identity,
    kappa_max,
    model,
    quaternion_sharp_identity,
    random_curvature,
    random_hyperkahler_curvature,
    random_kahler_curvature,
    spectrum,
    suites,
)

__all__ = [
    "CurvatureTensor", "DomainError", "Error", "LeakageError", "Space",
    "algebra_basis", "kahler_sharp_identity", "kappa_max", "model",
    "quaternion_sharp_identity", "random_curvature", "random_hyperkahler_curvature",
    "random_kahler_curvature", "spectrum", "suites",
    "const_Cpqk", "const_Cpq", "kato_D",
    "check_pq", "check_bochner", "check_einstein_flat", "check_quaternion", "check_lq_nonneg",
    "run_suite",
]


def const_Cpqk(n, p, q, k):
    return Fraction(*_core.const_Cpqk(n, p, q, k))


def const_Cpq(n, p, q):
    return Fraction(*_core.const_Cpq(n, p, q))


def kato_D(n, p, q):
    return Fraction(*_core.kato_D(n, p, q))


# Verdicts come back as dicts with the same fields as the CLI's JSON.
def check_pq(spectrum, n, p, q, kappa=0.0, rho=1.0, Q=2.0, k=None):
    return json.loads(_core.check_pq(spectrum, n, p, q, kappa, rho, Q, k))


def check_bochner(spectrum, n, k=0.0, rho=1.0, Q=2.0):
    return json.loads(_core.check_bochner(spectrum, n, k, rho, Q))


def check_einstein_flat(spectrum, n, k=0.0, rho=1.0, Q=2.0):
    return json.loads(_core.check_einstein_flat(spectrum, n, k, rho, Q))


def check_quaternion(spectrum, m, k=0.0, rho=1.0, Q=2.0, scalar_flat=False):
    return json.loads(_core.check_quaternion(spectrum, m, k, rho, Q, scalar_flat))


def check_lq_nonneg(spectrum, n):
    return json.loads(_core.check_lq_nonneg(spectrum, n))


def run_suite(suite, seed=42, samples=None):
    return json.loads(_core.run_suite(suite, seed, samples))
