"""One-dimensional coefficient laws and reproducible random streams.

The feedback coefficient ``a`` and the noise ``e`` of every return process
are described by a small family of laws.  Each law knows how to draw
samples, and how to evaluate the power moments ``E(X^mu)`` and the
log-moment ``E[log X]`` that the tail-exponent machinery is built on:
closed forms where they exist, deterministic Monte Carlo otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln
from scipy.stats import chi2

from .errors import (
    InvalidConfig,
    LawError,
    NoDensity,
    NonnegativityRequired,
    PositivityRequired,
)

EULER_GAMMA = float(np.euler_gamma)

# Monte Carlo fallback: sample count and the fixed stream that makes
# moment()/log_moment() deterministic functions of the law parameters.
MC_MOMENT_SAMPLES = 10**6
_MC_STREAM_SEED = 0x5EED_CAFE
_MC_STREAM_ID = 0xA11


@dataclass(frozen=True)
class RngStream:
    """A named position in seed space: (seed, stream_id).

    Equal streams reproduce bitwise-equal draws; distinct stream ids give
    statistically independent sequences (numpy SeedSequence spawn keys),
    so parallel workers can each own a stream without coordination.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if not (0 <= int(v) < 2**64):
                raise ValueError(f"{name} must fit in 64 unsigned bits, got {v}")

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(seq))

    def substream(self, index: int) -> "RngStream":
        """Derived independent stream, for internal Monte Carlo fan-out."""
        seq = np.random.SeedSequence(
            entropy=self.seed, spawn_key=(self.stream_id, index)
        )
        child = seq.generate_state(1, np.uint64)[0]
        return RngStream(int(child), self.stream_id)


def _mc_generator() -> np.random.Generator:
    return RngStream(_MC_STREAM_SEED, _MC_STREAM_ID).generator()


def _double_factorial_odd(j: int) -> float:
    """(2j - 1)!! = E[z^{2j}] for standard normal z."""
    out = 1.0
    for i in range(1, 2 * j, 2):
        out *= i
    return out


@dataclass(frozen=True)
class CoefficientLaw:
    """Base law.  Subclasses implement sampling, moments and densities."""

    kind = "base"

    @property
    def nonnegative(self) -> bool:
        raise NotImplementedError

    @property
    def strictly_positive(self) -> bool:
        """True when P(X > 0) = 1 (point masses at 0 excluded)."""
        raise NotImplementedError

    @property
    def has_density(self) -> bool:
        return False

    @property
    def symmetric(self) -> bool:
        """Symmetric about zero (permits even integer moments)."""
        return False

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        """Draw n iid values, advancing the generator."""
        raise NotImplementedError

    def mean(self) -> float:
        return self.moment(1.0)

    def moment(self, mu: float) -> float:
        return self.moment_with_stderr(mu)[0]

    def moment_with_stderr(self, mu: float) -> tuple[float, float]:
        """E(X^mu) and the standard error of its estimate (0 for closed forms)."""
        raise NotImplementedError

    def log_moment(self, n: int = MC_MOMENT_SAMPLES) -> float:
        return self.log_moment_with_stderr(n)[0]

    def log_moment_with_stderr(self, n: int = MC_MOMENT_SAMPLES) -> tuple[float, float]:
        """E[log X] and the standard error of its estimate (0 for closed forms)."""
        raise NotImplementedError

    def pdf(self, x: float) -> float:
        raise NoDensity(f"{self.kind} law has no density")

    def survival(self, x: float) -> float:
        """P(X > x)."""
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError

    def _check_moment_pre(self, mu: float) -> None:
        if mu <= 0:
            raise LawError(f"moment order must be positive, got {mu}")
        if self.nonnegative:
            return
        is_even_int = float(mu).is_integer() and int(mu) % 2 == 0
        if self.symmetric and is_even_int:
            return
        raise NonnegativityRequired(
            f"{self.kind} law admits negative values; "
            f"E(X^mu) is only defined here for even integer mu, got {mu}"
        )

    def _check_log_pre(self) -> None:
        if not self.strictly_positive:
            raise PositivityRequired(
                f"E[log X] requires P(X > 0) = 1; {self.kind} law violates it"
            )


@dataclass(frozen=True)
class Exponential(CoefficientLaw):
    """Exponential law with the given mean: E(X^mu) = Gamma(mu+1) * mean^mu."""

    mean_value: float
    kind = "exponential"

    def __post_init__(self) -> None:
        if not self.mean_value > 0:
            raise LawError(f"exponential mean must be positive, got {self.mean_value}")

    @property
    def nonnegative(self) -> bool:
        return True

    @property
    def strictly_positive(self) -> bool:
        return True

    @property
    def has_density(self) -> bool:
        return True

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        return gen.exponential(self.mean_value, n)

    def moment_with_stderr(self, mu: float) -> tuple[float, float]:
        self._check_moment_pre(mu)
        return math.exp(gammaln(mu + 1.0) + mu * math.log(self.mean_value)), 0.0

    def log_moment_with_stderr(self, n: int = MC_MOMENT_SAMPLES) -> tuple[float, float]:
        return math.log(self.mean_value) - EULER_GAMMA, 0.0

    def pdf(self, x: float) -> float:
        if x < 0:
            return 0.0
        return math.exp(-x / self.mean_value) / self.mean_value

    def survival(self, x: float) -> float:
        if x <= 0:
            return 1.0
        return math.exp(-x / self.mean_value)

    def to_config(self) -> dict:
        return {"kind": "exponential", "mean": self.mean_value}


@dataclass(frozen=True)
class Uniform(CoefficientLaw):
    """Uniform law on [lo, hi)."""

    lo: float
    hi: float
    kind = "uniform"

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise LawError(f"uniform requires lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def nonnegative(self) -> bool:
        return self.lo >= 0

    @property
    def strictly_positive(self) -> bool:
        # P(X = lo) = 0, so lo == 0 is still strictly positive a.s.
        return self.lo >= 0

    @property
    def has_density(self) -> bool:
        return True

    @property
    def symmetric(self) -> bool:
        return self.lo == -self.hi

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        return gen.uniform(self.lo, self.hi, n)

    def moment_with_stderr(self, mu: float) -> tuple[float, float]:
        self._check_moment_pre(mu)
        lo, hi, p = self.lo, self.hi, mu + 1.0
        if self.nonnegative:
            val = (hi**p - lo**p) / (p * (hi - lo))
        else:  # symmetric, even integer mu
            val = hi**mu / p
        return float(val), 0.0

    def log_moment_with_stderr(self, n: int = MC_MOMENT_SAMPLES) -> tuple[float, float]:
        self._check_log_pre()
        lo, hi = self.lo, self.hi
        upper = hi * math.log(hi) - hi
        lower = lo * math.log(lo) - lo if lo > 0 else 0.0
        return (upper - lower) / (hi - lo), 0.0

    def pdf(self, x: float) -> float:
        if self.lo <= x <= self.hi:
            return 1.0 / (self.hi - self.lo)
        return 0.0

    def survival(self, x: float) -> float:
        if x < self.lo:
            return 1.0
        if x >= self.hi:
            return 0.0
        return (self.hi - x) / (self.hi - self.lo)

    def to_config(self) -> dict:
        return {"kind": "uniform", "lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class Normal(CoefficientLaw):
    """Normal law; used for the noise term, never as a feedback coefficient."""

    mean_value: float
    sd: float
    kind = "normal"

    def __post_init__(self) -> None:
        if not self.sd > 0:
            raise LawError(f"normal sd must be positive, got {self.sd}")

    @property
    def nonnegative(self) -> bool:
        return False

    @property
    def strictly_positive(self) -> bool:
        return False

    @property
    def has_density(self) -> bool:
        return True

    @property
    def symmetric(self) -> bool:
        return self.mean_value == 0

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        return gen.normal(self.mean_value, self.sd, n)

    def moment_with_stderr(self, mu: float) -> tuple[float, float]:
        self._check_moment_pre(mu)
        # reachable only for mean 0 and even integer mu
        j = int(mu) // 2
        return _double_factorial_odd(j) * self.sd ** int(mu), 0.0

    def log_moment_with_stderr(self, n: int = MC_MOMENT_SAMPLES) -> tuple[float, float]:
        self._check_log_pre()
        raise AssertionError("unreachable")

    def pdf(self, x: float) -> float:
        z = (x - self.mean_value) / self.sd
        return math.exp(-0.5 * z * z) / (self.sd * math.sqrt(2.0 * math.pi))

    def survival(self, x: float) -> float:
        z = (x - self.mean_value) / self.sd
        return 0.5 * math.erfc(z / math.sqrt(2.0))

    def to_config(self) -> dict:
        return {"kind": "normal", "mean": self.mean_value, "sd": self.sd}


@dataclass(frozen=True)
class Constant(CoefficientLaw):
    """Degenerate law: X == value surely.  Sampling consumes no randomness."""

    value: float
    kind = "constant"

    @property
    def nonnegative(self) -> bool:
        return self.value >= 0

    @property
    def strictly_positive(self) -> bool:
        return self.value > 0

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        return np.full(n, self.value)

    def moment_with_stderr(self, mu: float) -> tuple[float, float]:
        if mu <= 0:
            raise LawError(f"moment order must be positive, got {mu}")
        if self.value < 0 and not float(mu).is_integer():
            raise NonnegativityRequired(
                f"fractional moment of negative constant {self.value}"
            )
        return self.value**mu, 0.0

    def log_moment_with_stderr(self, n: int = MC_MOMENT_SAMPLES) -> tuple[float, float]:
        self._check_log_pre()
        return math.log(self.value), 0.0

    def survival(self, x: float) -> float:
        return 1.0 if self.value > x else 0.0

    def to_config(self) -> dict:
        return {"kind": "constant", "value": self.value}


@dataclass(frozen=True)
class GarchCoefficient(CoefficientLaw):
    """Law of a = beta + alpha * z^2 with z standard normal.

    This is the feedback coefficient satisfied by the squared volatility of
    a GARCH(1,1) process.  Integer moments are closed form via the normal
    even moments; fractional moments and the log-moment fall back on
    deterministic Monte Carlo and report their standard error.
    """

    beta: float
    alpha: float
    kind = "garch_coeff"

    def __post_init__(self) -> None:
        if self.beta < 0 or self.alpha < 0:
            raise LawError(
                f"garch coefficient requires beta, alpha >= 0, "
                f"got beta={self.beta}, alpha={self.alpha}"
            )

    @property
    def nonnegative(self) -> bool:
        return True

    @property
    def strictly_positive(self) -> bool:
        # beta > 0 bounds a away from 0; beta == 0 leaves a = alpha*z^2 > 0 a.s.
        return self.beta > 0 or self.alpha > 0

    @property
    def has_density(self) -> bool:
        return self.alpha > 0

    def sample(self, gen: np.random.Generator, n: int) -> np.ndarray:
        z = gen.standard_normal(n)
        return self.beta + self.alpha * z * z

    def moment_with_stderr(self, mu: float) -> tuple[float, float]:
        self._check_moment_pre(mu)
        if float(mu).is_integer():
            k = int(mu)
            val = 0.0
            for j in range(k + 1):
                val += (
                    math.comb(k, j)
                    * self.beta ** (k - j)
                    * self.alpha**j
                    * _double_factorial_odd(j)
                )
            return val, 0.0
        x = self.sample(_mc_generator(), MC_MOMENT_SAMPLES)
        y = x**mu
        return float(y.mean()), float(y.std(ddof=1) / math.sqrt(y.size))

    def log_moment_with_stderr(self, n: int = MC_MOMENT_SAMPLES) -> tuple[float, float]:
        self._check_log_pre()
        y = np.log(self.sample(_mc_generator(), n))
        return float(y.mean()), float(y.std(ddof=1) / math.sqrt(n))

    def pdf(self, x: float) -> float:
        if self.alpha == 0:
            raise NoDensity("garch coefficient with alpha = 0 is a constant")
        if x <= self.beta:
            return 0.0
        return float(chi2.pdf((x - self.beta) / self.alpha, 1) / self.alpha)

    def survival(self, x: float) -> float:
        if x <= self.beta:
            return 1.0
        if self.alpha == 0:
            return 0.0
        return float(chi2.sf((x - self.beta) / self.alpha, 1))

    def to_config(self) -> dict:
        return {"kind": "garch_coeff", "beta": self.beta, "alpha": self.alpha}


# module-level operation surface -------------------------------------------


def sample(law: CoefficientLaw, rng: RngStream, n: int) -> np.ndarray:
    """n iid draws from the law; bitwise reproducible for equal streams."""
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    return law.sample(rng.generator(), n)


def moment(law: CoefficientLaw, mu: float) -> float:
    """E(X^mu)."""
    return law.moment(mu)


def log_moment(law: CoefficientLaw, n: int = MC_MOMENT_SAMPLES) -> float:
    """E[log X]; requires the law to be strictly positive a.s."""
    return law.log_moment(n)


_LAW_BUILDERS = {
    "exponential": lambda c: Exponential(_field(c, "mean")),
    "uniform": lambda c: Uniform(_field(c, "lo"), _field(c, "hi")),
    "normal": lambda c: Normal(_field(c, "mean"), _field(c, "sd")),
    "constant": lambda c: Constant(_field(c, "value")),
    "garch_coeff": lambda c: GarchCoefficient(_field(c, "beta"), _field(c, "alpha")),
}


def _field(config: dict, name: str) -> float:
    try:
        return float(config[name])
    except KeyError:
        raise InvalidConfig(f"law config {config!r} is missing field {name!r}") from None
    except (TypeError, ValueError):
        raise InvalidConfig(f"law field {name!r} is not numeric: {config[name]!r}") from None


def law_from_config(config: dict) -> CoefficientLaw:
    """Build a law from a config fragment like {"kind": "exponential", "mean": 0.55}."""
    if not isinstance(config, dict) or "kind" not in config:
        raise InvalidConfig(f"law config must be a dict with a 'kind': {config!r}")
    try:
        builder = _LAW_BUILDERS[config["kind"]]
    except KeyError:
        raise InvalidConfig(f"unknown law kind {config['kind']!r}") from None
    try:
        return builder(config)
    except LawError as exc:
        raise InvalidConfig(str(exc)) from exc


def law_to_config(law: CoefficientLaw) -> dict:
    return law.to_config()
