"""Exogenous noise distributions."""

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidShapeError

BETA = "beta"
GAUSSIAN = "gaussian"


def sample_beta(a: float, b: float, rng: np.random.Generator, size=None):
    """
    Beta(a, b) draws as ``g_a / (g_a + g_b)`` from two gamma variates.

    numpy's gamma sampler uses the Marsaglia-Tsang squeeze method.
    """
    if not (a > 0 and b > 0):
        raise InvalidShapeError(f"Beta shape parameters must be positive, got a={a}, b={b}")
    ga = rng.standard_gamma(a, size)
    gb = rng.standard_gamma(b, size)
    return ga / (ga + gb)


@dataclass(frozen=True)
class NoiseSpec:
    """
    Parameters:
    -----------
    family : str
        ``"beta"`` or ``"gaussian"``
    a, b : float
        Beta shapes
    sigma : float
        Gaussian standard deviation
    """

    family: str = BETA
    a: float = 2.0
    b: float = 5.0
    sigma: float = 1.0

    def __post_init__(self):
        if self.family not in (BETA, GAUSSIAN):
            raise ValueError(f"Unknown noise family {self.family!r}")
        if self.family == BETA and not (self.a > 0 and self.b > 0):
            raise InvalidShapeError(f"Beta shape parameters must be positive, got a={self.a}, b={self.b}")
        if self.family == GAUSSIAN and not self.sigma > 0:
            raise InvalidShapeError(f"Gaussian sigma must be positive, got {self.sigma}")

    @classmethod
    def beta(cls, a=2.0, b=5.0):
        return cls(BETA, a=a, b=b)

    @classmethod
    def gaussian(cls, sigma=1.0):
        return cls(GAUSSIAN, sigma=sigma)

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        if self.family == BETA:
            return sample_beta(self.a, self.b, rng, size)
        return rng.normal(0.0, self.sigma, size)
