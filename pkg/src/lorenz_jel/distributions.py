"""
Samplers and population generalized Lorenz curves for the simulation
families: chi-square, exponential and half-normal.

Closed forms used by :func:`analytic_gl`:

* Exponential with mean ``mu``: ``mu * (t + (1 - t) log(1 - t))``.
* Half-normal with scale ``sigma``: ``sigma sqrt(2/pi) (1 - exp(-q^2/2))``
  with ``q = Phi^{-1}((1 + t)/2)``.
* Chi-square with ``k`` degrees of freedom: ``k F_{k+2}(F_k^{-1}(t))``,
  from ``x f_k(x) = k f_{k+2}(x)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .curves import Sample, check_probability

FAMILIES = ("chisquare", "exponential", "halfnormal")

_ALIASES = {
    "chisquare": "chisquare", "chi2": "chisquare", "chisq": "chisquare", "chi-square": "chisquare",
    "exponential": "exponential", "exp": "exponential",
    "halfnormal": "halfnormal", "hn": "halfnormal", "half-normal": "halfnormal",
}


@dataclass(frozen=True)
class DistSpec:
    """A simulation family and its single parameter.

    ``param`` is the degrees of freedom for ``chisquare``, the mean for
    ``exponential`` and the scale ``sigma`` for ``halfnormal``.
    """

    family: str
    param: float

    def __post_init__(self):
        fam = _ALIASES.get(str(self.family).lower())
        if fam is None:
            raise ValueError(f"unknown distribution family {self.family!r}")
        p = float(self.param)
        if not (p > 0 and math.isfinite(p)):
            raise ValueError("distribution parameter must be positive")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "param", p)

    @property
    def mean(self) -> float:
        if self.family == "halfnormal":
            return self.param * math.sqrt(2.0 / math.pi)
        return self.param

    def label(self) -> str:
        return f"{self.family}:{self.param:g}"


def parse_dist(text: str, exp_param: str = "mean") -> DistSpec:
    """Parse ``FAMILY:PARAM`` such as ``exponential:4`` or ``chi2:5.5``.

    With ``exp_param='rate'`` an exponential parameter is read as a rate
    and converted to the mean.
    """
    fam, sep, val = text.partition(":")
    if not sep:
        raise ValueError(f"expected FAMILY:PARAM, got {text!r}")
    try:
        p = float(val)
    except ValueError:
        raise ValueError(f"bad distribution parameter in {text!r}") from None
    spec = DistSpec(fam.strip(), p)
    if spec.family == "exponential":
        if exp_param == "rate":
            spec = DistSpec("exponential", 1.0 / p)
        elif exp_param != "mean":
            raise ValueError("exp_param must be 'mean' or 'rate'")
    return spec


@dataclass(frozen=True)
class SeededStream:
    """Independent random stream ``stream_id`` derived from ``seed``."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id),))
        return np.random.Generator(np.random.PCG64(ss))


def as_generator(stream) -> np.random.Generator:
    if isinstance(stream, np.random.Generator):
        return stream
    if isinstance(stream, SeededStream):
        return stream.generator()
    raise TypeError("stream must be a SeededStream or numpy Generator")


def draw(spec: DistSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """Raw draws from an already-constructed generator."""
    if n < 1:
        raise ValueError("n must be positive")
    if spec.family == "chisquare":
        return rng.gamma(spec.param / 2.0, 2.0, size=n)
    if spec.family == "exponential":
        return rng.exponential(spec.param, size=n)
    return np.abs(rng.normal(0.0, spec.param, size=n))


def sample(spec: DistSpec, n: int, stream) -> Sample:
    return Sample(draw(spec, n, as_generator(stream)))


def quantile(spec: DistSpec, t: float) -> float:
    """Population t-th quantile (``inf`` at t = 1)."""
    t = check_probability(t)
    if t == 0.0:
        return 0.0
    if t == 1.0:
        return math.inf
    if spec.family == "chisquare":
        return 2.0 * float(special.gammaincinv(spec.param / 2.0, t))
    if spec.family == "exponential":
        return -spec.param * math.log1p(-t)
    return spec.param * float(special.ndtri((1.0 + t) / 2.0))


def analytic_gl(spec: DistSpec, t: float) -> float:
    """Population generalized Lorenz ordinate ``int_0^{psi_t} x dF(x)``."""
    t = check_probability(t)
    if t == 0.0:
        return 0.0
    if t == 1.0:
        return spec.mean
    if spec.family == "exponential":
        return spec.param * (t + (1.0 - t) * math.log1p(-t))
    if spec.family == "halfnormal":
        q = float(special.ndtri((1.0 + t) / 2.0))
        return spec.param * math.sqrt(2.0 / math.pi) * -math.expm1(-0.5 * q * q)
    k = spec.param
    x = 2.0 * float(special.gammaincinv(k / 2.0, t))
    return k * float(special.gammainc(k / 2.0 + 1.0, x / 2.0))
