"""Return-path generators.

Three generative models for returns driven by a feedback coefficient:
the one-shot inverse-multiplier process r = (1 - a)^{-1} e, the scalar
feedback recursion r_t = a_t r_{t-1} + e_t, and its order-K version
r_t = a_t * sum_k w_kt r_{t-k} + e_t, plus GARCH(1,1) and its exact
rewrite as a feedback recursion on the squared volatility.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .distributions import (
    CoefficientLaw,
    Constant,
    GarchCoefficient,
    RngStream,
    law_from_config,
)
from .errors import (
    DegenerateSpec,
    InvalidConfig,
    NumericalOverflow,
    ZeroWeightSum,
)

# Raise before IEEE infinities can propagate through a diverging path.
OVERFLOW_LIMIT = 1e300

# Warm-up dropped by default before any statistic is computed; far beyond
# the mixing time of every stationary configuration used here.
DEFAULT_BURN_IN = 10_000

# Draws with |1 - a| below this are resampled in the inverse-multiplier
# process instead of emitting +-inf.
NEAR_ONE_TOL = 1e-12


@dataclass(frozen=True)
class InverseMultiplier:
    """Spec for the iid process r = (1 - a)^{-1} e."""

    a_law: CoefficientLaw
    e_law: CoefficientLaw
    kind = "inverse_multiplier"

    def to_config(self) -> dict:
        return {
            "kind": self.kind,
            "a_law": self.a_law.to_config(),
            "e_law": self.e_law.to_config(),
        }


@dataclass(frozen=True)
class KestenScalar:
    """Spec for the scalar feedback recursion r_t = a_t r_{t-1} + e_t."""

    a_law: CoefficientLaw
    e_law: CoefficientLaw
    r0: float = 0.0
    kind = "kesten_scalar"

    def to_config(self) -> dict:
        return {
            "kind": self.kind,
            "a_law": self.a_law.to_config(),
            "e_law": self.e_law.to_config(),
            "r0": self.r0,
        }


@dataclass(frozen=True)
class KestenAR:
    """Spec for the order-K recursion r_t = a_t * sum_k w_kt r_{t-k} + e_t.

    One weight law per lag; each step draws a fresh weight vector.  With
    ``normalize_weights`` the drawn vector is rescaled to sum exactly to 1.
    """

    a_law: CoefficientLaw
    e_law: CoefficientLaw
    weight_laws: tuple[CoefficientLaw, ...]
    normalize_weights: bool = False
    r_init: tuple[float, ...] = ()

    kind = "kesten_ar"

    def __post_init__(self) -> None:
        if len(self.weight_laws) < 1:
            raise InvalidConfig("kesten_ar needs at least one weight law")
        object.__setattr__(self, "weight_laws", tuple(self.weight_laws))
        r_init = tuple(self.r_init) if self.r_init else (0.0,) * len(self.weight_laws)
        if len(r_init) != len(self.weight_laws):
            raise InvalidConfig(
                f"r_init has length {len(r_init)}, expected K={len(self.weight_laws)}"
            )
        object.__setattr__(self, "r_init", r_init)

    @property
    def order(self) -> int:
        return len(self.weight_laws)

    def to_config(self) -> dict:
        return {
            "kind": self.kind,
            "a_law": self.a_law.to_config(),
            "e_law": self.e_law.to_config(),
            "weight_laws": [w.to_config() for w in self.weight_laws],
            "normalize_weights": self.normalize_weights,
            "r_init": list(self.r_init),
        }


@dataclass(frozen=True)
class Garch11:
    """GARCH(1,1): r_t = sigma_t z_t, sigma2_t = omega + alpha r_{t-1}^2 + beta sigma2_{t-1}."""

    omega: float
    alpha: float
    beta: float
    sigma0: float = 0.1
    kind = "garch11"

    def __post_init__(self) -> None:
        if not self.omega > 0:
            raise InvalidConfig(f"garch11 omega must be positive, got {self.omega}")
        if self.alpha < 0 or self.beta < 0:
            raise InvalidConfig("garch11 alpha and beta must be nonnegative")
        if not self.sigma0 > 0:
            raise InvalidConfig(f"garch11 sigma0 must be positive, got {self.sigma0}")

    def to_config(self) -> dict:
        return {
            "kind": self.kind,
            "omega": self.omega,
            "alpha": self.alpha,
            "beta": self.beta,
            "sigma0": self.sigma0,
        }


ProcessSpec = InverseMultiplier | KestenScalar | KestenAR | Garch11


def spec_from_config(config: dict) -> ProcessSpec:
    """Inverse of ``spec.to_config()``."""
    if not isinstance(config, dict) or "kind" not in config:
        raise InvalidConfig(f"process config must be a dict with a 'kind': {config!r}")
    kind = config["kind"]
    try:
        if kind == "inverse_multiplier":
            return InverseMultiplier(
                law_from_config(config["a_law"]), law_from_config(config["e_law"])
            )
        if kind == "kesten_scalar":
            return KestenScalar(
                law_from_config(config["a_law"]),
                law_from_config(config["e_law"]),
                float(config.get("r0", 0.0)),
            )
        if kind == "kesten_ar":
            return KestenAR(
                law_from_config(config["a_law"]),
                law_from_config(config["e_law"]),
                tuple(law_from_config(w) for w in config["weight_laws"]),
                bool(config.get("normalize_weights", False)),
                tuple(float(x) for x in config.get("r_init", ())),
            )
        if kind == "garch11":
            return Garch11(
                float(config["omega"]),
                float(config["alpha"]),
                float(config["beta"]),
                float(config.get("sigma0", 0.1)),
            )
    except KeyError as exc:
        raise InvalidConfig(f"process config missing field {exc}") from None
    raise InvalidConfig(f"unknown process kind {kind!r}")


def spec_digest(spec: ProcessSpec) -> str:
    """Stable content hash of a process spec."""
    payload = json.dumps(spec.to_config(), sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """A simulated or ingested sequence of returns with its provenance.

    Construction rejects non-finite values: a NaN or infinity in a path
    signals a parameter regime outside stationarity, never valid data.
    """

    values: np.ndarray
    spec_digest: str
    seed: RngStream | None = None
    burn_in_dropped: int = 0
    resamples: int = 0

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("return series must be a nonempty 1-d array")
        if not np.isfinite(arr).all():
            raise ValueError(
                "return series contains NaN/inf; the generating parameters "
                "are likely outside the stationary regime"
            )
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    def metadata(self) -> dict:
        meta = {
            "spec_digest": self.spec_digest,
            "n": int(self.values.size),
            "burn_in_dropped": int(self.burn_in_dropped),
            "resamples": int(self.resamples),
        }
        if self.seed is not None:
            meta["seed"] = int(self.seed.seed)
            meta["stream_id"] = int(self.seed.stream_id)
        return meta


@dataclass(frozen=True)
class CompanionMatrix:
    """K x K companion form: top row a*w, shifted identity below."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=np.float64)
        k = m.shape[0]
        if m.shape != (k, k):
            raise ValueError("companion matrix must be square")
        expected = np.zeros((k, k))
        expected[0, :] = m[0, :]
        for i in range(1, k):
            expected[i, i - 1] = 1.0
        if not np.array_equal(m, expected):
            raise ValueError("rows 2..K must be the shifted identity pattern")
        object.__setattr__(self, "matrix", m)

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


def build_companion_matrix(a: float, weights) -> CompanionMatrix:
    """Companion matrix with top row a*weights and unit subdiagonal."""
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.size < 1:
        raise ValueError("weights must be a nonempty 1-d vector")
    k = w.size
    m = np.zeros((k, k))
    m[0, :] = a * w
    for i in range(1, k):
        m[i, i - 1] = 1.0
    return CompanionMatrix(m)


def _raise_overflow(step: int) -> None:
    raise NumericalOverflow(
        f"|r| exceeded {OVERFLOW_LIMIT:g} at step {step}; the coefficient "
        "law is likely outside the stationary regime "
        "(see theory.stationarity_check / theory.lyapunov_top)"
    )


def simulate_inverse_multiplier(
    spec: InverseMultiplier, rng: RngStream, n: int
) -> ReturnSeries:
    """n iid draws of (1 - a)^{-1} e.

    Draws with |1 - a| < 1e-12 are resampled (and counted) rather than
    emitted as huge finite spikes; the asymptotics of interest concern
    large-but-finite values.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if isinstance(spec.a_law, Constant) and abs(1.0 - spec.a_law.value) < NEAR_ONE_TOL:
        raise DegenerateSpec("a == 1 surely: the multiplier (1 - a)^{-1} is undefined")
    gen = rng.generator()
    a = spec.a_law.sample(gen, n)
    e = spec.e_law.sample(gen, n)
    resamples = 0
    for _ in range(128):
        mask = np.abs(1.0 - a) < NEAR_ONE_TOL
        bad = int(mask.sum())
        if bad == 0:
            break
        resamples += bad
        a[mask] = spec.a_law.sample(gen, bad)
    else:
        raise DegenerateSpec("a concentrates at 1: resampling did not terminate")
    values = e / (1.0 - a)
    return ReturnSeries(values, spec_digest(spec), rng, 0, resamples)


def simulate_kesten_scalar(
    spec: KestenScalar, rng: RngStream, n: int, burn_in: int = DEFAULT_BURN_IN
) -> ReturnSeries:
    """Iterate r_t = a_t r_{t-1} + e_t from r0, drop burn_in, return n values."""
    if n < 1 or burn_in < 0:
        raise ValueError(f"need n >= 1 and burn_in >= 0, got n={n}, burn_in={burn_in}")
    gen = rng.generator()
    total = burn_in + n
    a = spec.a_law.sample(gen, total)
    e = spec.e_law.sample(gen, total)
    out = np.empty(total)
    r = spec.r0
    lim = OVERFLOW_LIMIT
    i = 0
    for ai, ei in zip(a.tolist(), e.tolist()):
        r = ai * r + ei
        if not -lim < r < lim:
            _raise_overflow(i)
        out[i] = r
        i += 1
    return ReturnSeries(out[burn_in:], spec_digest(spec), rng, burn_in)


def simulate_kesten_ar(
    spec: KestenAR, rng: RngStream, n: int, burn_in: int = DEFAULT_BURN_IN
) -> ReturnSeries:
    """Iterate the order-K recursion with fresh (a_t, w_t, e_t) each step.

    Draw order is a, then the K weight columns, then e, so the K = 1 case
    with a constant unit weight consumes the stream exactly like
    simulate_kesten_scalar and reproduces it bitwise.
    """
    if n < 1 or burn_in < 0:
        raise ValueError(f"need n >= 1 and burn_in >= 0, got n={n}, burn_in={burn_in}")
    gen = rng.generator()
    total = burn_in + n
    k = spec.order
    a = spec.a_law.sample(gen, total)
    cols = [w.sample(gen, total) for w in spec.weight_laws]
    e = spec.e_law.sample(gen, total)
    if spec.normalize_weights:
        sums = np.sum(cols, axis=0)
        if np.any(np.abs(sums) < 1e-12):
            step = int(np.argmax(np.abs(sums) < 1e-12))
            raise ZeroWeightSum(
                f"drawn weight vector sums to ~0 at step {step}; "
                "cannot normalize to unit sum"
            )
        cols = [c / sums for c in cols]
    col_lists = [c.tolist() for c in cols]
    a_list, e_list = a.tolist(), e.tolist()
    state = list(spec.r_init)  # state[j] = r_{t-1-j}
    out = np.empty(total)
    lim = OVERFLOW_LIMIT
    for t in range(total):
        acc = 0.0
        for j in range(k):
            acc += col_lists[j][t] * state[j]
        r = a_list[t] * acc + e_list[t]
        if not -lim < r < lim:
            _raise_overflow(t)
        out[t] = r
        state.pop()
        state.insert(0, r)
    return ReturnSeries(out[burn_in:], spec_digest(spec), rng, burn_in)


def simulate_garch11(
    spec: Garch11, rng: RngStream, n: int, burn_in: int = DEFAULT_BURN_IN
) -> ReturnSeries:
    """r_t = sigma_t z_t with the GARCH(1,1) variance recursion."""
    returns, _sigma2, _z = garch11_paths(spec, rng, n, burn_in)
    return ReturnSeries(returns, spec_digest(spec), rng, burn_in)


def garch11_paths(
    spec: Garch11, rng: RngStream, n: int, burn_in: int = 0
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(returns, sigma2, z) paths after burn-in; diagnostic surface.

    The z draws are a single up-front block, so a GarchCoefficient law
    sampled from the same stream sees the identical normals: the squared
    volatility then satisfies sigma2_t = a_{t-1} sigma2_{t-1} + omega
    pathwise with a = beta + alpha z^2.
    """
    if n < 1 or burn_in < 0:
        raise ValueError(f"need n >= 1 and burn_in >= 0, got n={n}, burn_in={burn_in}")
    gen = rng.generator()
    total = burn_in + n
    z = gen.standard_normal(total)
    returns = np.empty(total)
    sigma2 = np.empty(total)
    omega, alpha, beta = spec.omega, spec.alpha, spec.beta
    s2 = spec.sigma0 * spec.sigma0
    r = 0.0
    lim = OVERFLOW_LIMIT
    for t, zt in enumerate(z.tolist()):
        if t > 0:
            s2 = omega + alpha * r * r + beta * s2
        if not s2 < lim:
            raise NumericalOverflow(
                f"sigma^2 exceeded {OVERFLOW_LIMIT:g} at step {t}; "
                "the GARCH parameters are outside the stationary regime"
            )
        sigma2[t] = s2
        r = math.sqrt(s2) * zt
        returns[t] = r
    return returns[burn_in:], sigma2[burn_in:], z[burn_in:]


def garch_to_kesten(
    omega: float, alpha: float, beta: float
) -> tuple[CoefficientLaw, CoefficientLaw]:
    """Coefficient pair of the feedback recursion satisfied by sigma^2.

    sigma2_t = (beta + alpha z^2) sigma2_{t-1} + omega, so the feedback
    law is GarchCoefficient(beta, alpha) - collapsed to a constant when
    alpha == 0 - and the noise law is Constant(omega).
    """
    if not omega > 0:
        raise InvalidConfig(f"omega must be positive, got {omega}")
    if alpha < 0 or beta < 0:
        raise InvalidConfig("alpha and beta must be nonnegative")
    a_law: CoefficientLaw
    if alpha == 0:
        a_law = Constant(beta)
    else:
        a_law = GarchCoefficient(beta, alpha)
    return a_law, Constant(omega)


def as_ar(spec: KestenScalar | KestenAR) -> KestenAR:
    """Order-1 embedding of a scalar spec (identity on KestenAR)."""
    if isinstance(spec, KestenAR):
        return spec
    return KestenAR(
        spec.a_law, spec.e_law, (Constant(1.0),), False, (spec.r0,)
    )


def simulate(spec: ProcessSpec, rng: RngStream, n: int, burn_in: int | None = None) -> ReturnSeries:
    """Dispatch to the simulator for the spec's kind."""
    if isinstance(spec, InverseMultiplier):
        return simulate_inverse_multiplier(spec, rng, n)
    burn = DEFAULT_BURN_IN if burn_in is None else burn_in
    if isinstance(spec, KestenScalar):
        return simulate_kesten_scalar(spec, rng, n, burn)
    if isinstance(spec, KestenAR):
        return simulate_kesten_ar(spec, rng, n, burn)
    if isinstance(spec, Garch11):
        return simulate_garch11(spec, rng, n, burn)
    raise TypeError(f"unknown process spec {type(spec).__name__}")


# series CSV round trip ------------------------------------------------------


def write_series_csv(series: ReturnSeries, path: str | Path) -> None:
    """Write header t,r with round-trip-exact decimal floats and LF endings."""
    path = Path(path)
    lines = ["t,r"]
    lines.extend(f"{t},{repr(float(v))}" for t, v in enumerate(series.values))
    path.write_text("\n".join(lines) + "\n", newline="\n")


def read_series_csv(path: str | Path) -> np.ndarray:
    """Read a t,r series file back into a value array."""
    path = Path(path)
    with path.open() as fh:
        header = fh.readline().strip()
        if header != "t,r":
            raise InvalidConfig(f"{path}: expected header 't,r', got {header!r}")
        values = [float(line.rsplit(",", 1)[1]) for line in fh if line.strip()]
    return np.asarray(values, dtype=np.float64)
