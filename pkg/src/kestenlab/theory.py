"""Numerical embodiment of the stationarity and tail-exponent theory.

The tail exponent of the scalar feedback recursion is the unique positive
root of the moment equation E(a^mu) = 1; stationarity is governed by
E[log a] < 0.  For the order-K recursion written with companion matrices,
the analogues are the top Lyapunov exponent of the random matrix product
and the positive zero of the moment growth rate
Lambda(mu) = lim (1/t) log E||A_1 ... A_t||^mu,
which is only accessible by simulation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln, logsumexp

from .distributions import (
    CoefficientLaw,
    Constant,
    Exponential,
    GarchCoefficient,
    Normal,
    RngStream,
    Uniform,
)
from .errors import (
    DegenerateLaw,
    NoDensity,
    NonnegativityRequired,
    NonStationary,
    NoPositiveRoot,
    NoSignChange,
    TheoryError,
    VarianceNotFinite,
)
from .processes import KestenAR, KestenScalar, ZeroWeightSum, as_ar

RESIDUAL_TOL = 1e-6
MU_CAP = 64.0
QUAD_EPSABS = 1e-8
BOUNDARY_TOL = 1e-4


@dataclass(frozen=True)
class CramerSolution:
    """Root mu* > 0 of the moment equation, with solver diagnostics.

    ``residual`` is |E(a^mu*) - 1| (for the matrix case, the equivalent
    per-step quantity |exp(Lambda(mu*)) - 1|).  ``finite_t_bias`` is only
    set by the Monte Carlo matrix solver: the drift of the root estimate
    when the product horizon doubles.
    """

    mu_star: float
    bracket: tuple[float, float]
    residual: float
    method: str  # "closed-form" | "quadrature" | "monte-carlo"
    stderr: float | None = None
    finite_t_bias: float | None = None

    def __post_init__(self) -> None:
        if not self.mu_star > 0:
            raise ValueError(f"mu_star must be positive, got {self.mu_star}")
        if self.method in ("closed-form", "quadrature") and not (
            self.residual < RESIDUAL_TOL
        ):
            raise ValueError(
                f"{self.method} solution has residual {self.residual:g} >= {RESIDUAL_TOL:g}"
            )

    def to_dict(self) -> dict:
        out = {
            "mu_star": float(self.mu_star),
            "bracket": [float(self.bracket[0]), float(self.bracket[1])],
            "residual": float(self.residual),
            "method": self.method,
        }
        if self.stderr is not None:
            out["stderr"] = float(self.stderr)
        if self.finite_t_bias is not None:
            out["finite_t_bias"] = float(self.finite_t_bias)
        return out


@dataclass(frozen=True)
class StationarityCheck:
    """E[log a] and the verdict it implies."""

    log_moment: float
    verdict: str  # "stationary" | "non-stationary" | "boundary"
    stderr: float = 0.0
    tolerance: float = BOUNDARY_TOL

    @property
    def stationary(self) -> bool:
        return self.verdict == "stationary"

    def to_dict(self) -> dict:
        return {
            "log_moment": float(self.log_moment),
            "verdict": self.verdict,
            "stderr": float(self.stderr),
            "tolerance": float(self.tolerance),
        }


@dataclass(frozen=True)
class RegimeClassification:
    """Expectation-accuracy case and the tail-exponent regime it predicts.

    Case A: E(a) = 1 (accurate on average) -> exponent 1.
    Case B: E(a) > 1 (underestimation)     -> exponent below 1.
    Case C: E(a) < 1 (overestimation)      -> exponent above 1.
    """

    case: str
    mean_a: float
    predicted: str
    mu_star: float
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "mean_a": float(self.mean_a),
            "predicted": self.predicted,
            "mu_star": float(self.mu_star),
            "consistent": bool(self.consistent),
        }


@dataclass(frozen=True)
class ConditionCheck:
    """One entry of the stationarity/tail theorem checklist."""

    condition: str
    status: str  # "verified" | "assumed" | "violated" | "not-checkable"
    evidence: float | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "status": self.status,
            "evidence": None if self.evidence is None else float(self.evidence),
            "note": self.note,
        }


@dataclass(frozen=True)
class TheoryReport:
    """Checklist of conditions (a)-(h) plus the predicted exponent regime."""

    conditions: tuple[ConditionCheck, ...]
    regime_case: str
    predicted: str
    mu_star: float | None

    def condition(self, cid: str) -> ConditionCheck:
        for c in self.conditions:
            if c.condition == cid:
                return c
        raise KeyError(cid)

    @property
    def all_verified(self) -> bool:
        return all(c.status == "verified" for c in self.conditions)

    def to_dict(self) -> dict:
        return {
            "conditions": [c.to_dict() for c in self.conditions],
            "regime_case": self.regime_case,
            "predicted": self.predicted,
            "mu_star": None if self.mu_star is None else float(self.mu_star),
        }

    def to_text(self) -> str:
        lines = ["condition  status         evidence      note"]
        for c in self.conditions:
            ev = "" if c.evidence is None else f"{c.evidence:+.6g}"
            lines.append(f"({c.condition})        {c.status:<14} {ev:<13} {c.note}")
        mu = "n/a" if self.mu_star is None else f"{self.mu_star:.6g}"
        lines.append(f"regime: case {self.regime_case} ({self.predicted}); mu* = {mu}")
        return "\n".join(lines)


@dataclass(frozen=True)
class LyapunovEstimate:
    """Monte Carlo estimate of the top Lyapunov exponent of the A-product."""

    gamma_hat: float
    t_horizon: int
    trials: int
    stderr: float
    norm: str = "inf"

    def __post_init__(self) -> None:
        if not math.isfinite(self.gamma_hat):
            raise ValueError("Lyapunov estimate must be finite")
        if self.stderr < 0:
            raise ValueError("stderr must be nonnegative")

    @property
    def stationary(self) -> bool:
        return self.gamma_hat < 0

    def to_dict(self) -> dict:
        return {
            "gamma_hat": float(self.gamma_hat),
            "t_horizon": int(self.t_horizon),
            "trials": int(self.trials),
            "stderr": float(self.stderr),
            "norm": self.norm,
        }


def _collapse_constant(law: CoefficientLaw) -> CoefficientLaw:
    """A garch coefficient with alpha == 0 is a constant in disguise."""
    if isinstance(law, GarchCoefficient) and law.alpha == 0:
        return Constant(law.beta)
    return law


def stationarity_check(a_law: CoefficientLaw, tolerance: float = BOUNDARY_TOL) -> StationarityCheck:
    """Verdict on E[log a] < 0 with a boundary band around zero."""
    val, se = a_law.log_moment_with_stderr()
    if abs(val) <= tolerance:
        verdict = "boundary"
    elif val < 0:
        verdict = "stationary"
    else:
        verdict = "non-stationary"
    return StationarityCheck(val, verdict, se, tolerance)


def cramer_root(a_law: CoefficientLaw) -> CramerSolution:
    """Unique positive root of E(a^mu) = 1.

    The moment function equals 1 at mu = 0, dips below (its derivative
    there is E[log a] < 0) and is convex, so it crosses 1 exactly once on
    the increasing branch.  The bracket is found by doubling mu from 1
    until the moment exceeds 1 (halving instead when it already does) and
    refined by bisection.
    """
    a_law = _collapse_constant(a_law)
    if isinstance(a_law, Constant) and abs(a_law.value - 1.0) < 1e-15:
        raise DegenerateLaw("a == 1 surely: E(a^mu) == 1 for every mu")
    if not a_law.nonnegative:
        raise NonnegativityRequired("the moment equation needs a nonnegative law")
    if a_law.survival(1.0) <= 0.0:
        raise NoPositiveRoot(
            "P(a > 1) = 0: E(a^mu) < 1 for all mu > 0, the tail is thin "
            "(no amplification events)"
        )
    elog, _ = a_law.log_moment_with_stderr()
    if elog >= 0:
        raise NonStationary(
            f"E[log a] = {elog:+.6g} >= 0: no stationary solution, "
            "the moment equation has no positive root"
        )

    def phi(mu: float) -> tuple[float, float]:
        return a_law.moment_with_stderr(mu)

    mc = isinstance(a_law, GarchCoefficient)
    method = "monte-carlo" if mc else "closed-form"

    # bracket the increasing-branch crossing
    hi = 1.0
    val_hi, se_hi = phi(hi)
    while val_hi <= 1.0:
        if val_hi == 1.0:
            # exact hit (e.g. the unit-mean exponential at mu = 1)
            return CramerSolution(hi, (hi, hi), 0.0, method, se_hi if mc else None)
        if hi >= MU_CAP:
            raise NoPositiveRoot(
                f"E(a^mu) stays below 1 up to mu = {MU_CAP:g}; "
                "treating the regime as thin-tailed"
            )
        hi *= 2.0
        val_hi, se_hi = phi(hi)
    lo = hi / 2.0
    val_lo, _ = phi(lo)
    while val_lo >= 1.0:
        if val_lo == 1.0:
            return CramerSolution(lo, (lo, lo), 0.0, method, None)
        lo /= 2.0
        if lo < 1e-18:
            raise TheoryError("failed to bracket the moment-equation root")
        val_lo, _ = phi(lo)

    bracket = (lo, hi)
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        v, _ = phi(mid)
        if v < 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13 * max(1.0, hi):
            break
    mu_star = 0.5 * (lo + hi)
    val, se = phi(mu_star)
    residual = abs(val - 1.0)
    return CramerSolution(mu_star, bracket, residual, method, se if mc else None)


def classify_regime(a_law: CoefficientLaw, tolerance: float = 1e-9) -> RegimeClassification:
    """Expectation-accuracy case from E(a), checked against the solved root."""
    mean_a, se = a_law.moment_with_stderr(1.0)
    band = max(tolerance, 3.0 * se)
    if abs(mean_a - 1.0) <= band:
        case, predicted = "A", "mu = 1"
    elif mean_a > 1.0:
        case, predicted = "B", "mu < 1"
    else:
        case, predicted = "C", "mu > 1"
    solution = cramer_root(a_law)
    mu = solution.mu_star
    slack = max(1e-5, 3.0 * (solution.stderr or 0.0))
    if case == "A":
        consistent = abs(mu - 1.0) <= max(slack, 1e-5)
    elif case == "B":
        consistent = mu < 1.0 + slack
    else:
        consistent = mu > 1.0 - slack
    return RegimeClassification(case, mean_a, predicted, mu, consistent)


def expected_acf(a_law: CoefficientLaw, h: int) -> float:
    """Theoretical autocorrelation [E(a)]^h of the scalar feedback process.

    Requires a finite stationary second moment, i.e. E(a^2) < 1.
    """
    if h < 0:
        raise ValueError(f"lag must be nonnegative, got {h}")
    m2 = a_law.moment(2.0)
    if m2 >= 1.0:
        raise VarianceNotFinite(
            f"E(a^2) = {m2:g} >= 1: the stationary variance diverges and "
            "the autocorrelation is undefined"
        )
    return a_law.mean() ** h


def density_at_one(a_law: CoefficientLaw) -> float:
    """Density of a at 1, using the left-limit value at a support endpoint."""
    if not a_law.has_density:
        raise NoDensity(f"{a_law.kind} law has no density")
    if isinstance(a_law, Uniform):
        # left limit: a uniform ending exactly at 1 still amplifies
        return 1.0 / (a_law.hi - a_law.lo) if a_law.lo < 1.0 <= a_law.hi else 0.0
    return a_law.pdf(1.0)


def inverse_tail_prediction(a_law: CoefficientLaw, x: float) -> float:
    """Predicted asymptotic tail 2 f_a(1) / x of the inverse-multiplier process.

    The magnitude |1 - a|^{-1} inherits a unit-exponent power law from the
    density of a near 1; when that density vanishes the prediction does not
    apply and 0 is returned with a warning.
    """
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")
    f1 = density_at_one(a_law)
    if f1 == 0.0:
        warnings.warn(
            "density of a at 1 is zero: the unit-exponent tail prediction "
            "is not applicable",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    return 2.0 * f1 / x


# condition checklist ---------------------------------------------------------


def _support(law: CoefficientLaw) -> tuple[float, float]:
    if isinstance(law, Exponential):
        return 0.0, math.inf
    if isinstance(law, Uniform):
        return law.lo, law.hi
    if isinstance(law, Normal):
        return -math.inf, math.inf
    if isinstance(law, GarchCoefficient):
        return law.beta, math.inf
    if isinstance(law, Constant):
        return law.value, law.value
    raise TypeError(f"unknown law {type(law).__name__}")


def _quad(fn, lo: float, hi: float) -> float:
    val, _err = quad(fn, lo, hi, epsabs=QUAD_EPSABS, limit=200)
    return val


def plus_log_abs_moment(law: CoefficientLaw) -> float:
    """E[max(log|X|, 0)]; finite for every law in this family."""
    law = _collapse_constant(law)
    if isinstance(law, Constant):
        v = abs(law.value)
        return math.log(v) if v > 1.0 else 0.0
    lo, hi = _support(law)
    total = 0.0
    if hi > 1.0:
        total += _quad(lambda x: math.log(x) * law.pdf(x), max(lo, 1.0), hi)
    if lo < -1.0:
        total += _quad(lambda x: math.log(-x) * law.pdf(x), lo, min(hi, -1.0))
    return total


def tilted_log_moment(a_law: CoefficientLaw, lam: float) -> float:
    """E[a^lam * max(log a, 0)] for a nonnegative law."""
    a_law = _collapse_constant(a_law)
    if isinstance(a_law, Constant):
        v = a_law.value
        return v**lam * math.log(v) if v > 1.0 else 0.0
    lo, hi = _support(a_law)
    if hi <= 1.0:
        return 0.0
    return _quad(lambda x: x**lam * math.log(x) * a_law.pdf(x), max(lo, 1.0), hi)


def abs_moment(law: CoefficientLaw, mu: float) -> float:
    """E[|X|^mu] for any law in the family."""
    law = _collapse_constant(law)
    if isinstance(law, Constant):
        return abs(law.value) ** mu
    if law.nonnegative:
        return law.moment(mu)
    if isinstance(law, Normal) and law.mean_value == 0:
        # E|X|^mu = sd^mu 2^(mu/2) Gamma((mu+1)/2) / sqrt(pi)
        return math.exp(
            mu * math.log(law.sd)
            + 0.5 * mu * math.log(2.0)
            + gammaln((mu + 1.0) / 2.0)
            - 0.5 * math.log(math.pi)
        )
    lo, hi = _support(law)
    return _quad(lambda x: abs(x) ** mu * law.pdf(x), lo, hi)


def kesten_conditions_report(
    a_law: CoefficientLaw, e_law: CoefficientLaw
) -> TheoryReport:
    """Checklist (a)-(h) for stationarity and power-law convergence.

    Violations are report entries, never exceptions.  Condition (c)
    (non-lattice log a) is `verified` for laws with a density and
    `assumed` otherwise; it is not mechanically decidable from samples.
    """
    a_eff = _collapse_constant(a_law)
    entries: list[ConditionCheck] = []

    # (a) E[log a] < 0
    try:
        stat = stationarity_check(a_eff)
        if stat.stationary:
            status = "verified"
        elif stat.verdict == "boundary" and stat.stderr > 0:
            status = "not-checkable"
        else:
            status = "violated"
        entries.append(
            ConditionCheck("a", status, stat.log_moment, f"E[log a] {stat.verdict}")
        )
        log_a_ok = status == "verified"
    except TheoryError:
        raise
    except Exception as exc:  # PositivityRequired and friends
        entries.append(ConditionCheck("a", "not-checkable", None, str(exc)))
        log_a_ok = False

    # (b) E[max(log|e|, 0)] < inf
    b_val = plus_log_abs_moment(e_law)
    entries.append(
        ConditionCheck("b", "verified", b_val, "finite positive-part log moment")
    )

    # (c) log a non-lattice
    if a_eff.has_density:
        entries.append(
            ConditionCheck("c", "verified", None, "continuous law: log a non-lattice")
        )
    else:
        entries.append(
            ConditionCheck("c", "assumed", None, "discrete law: lattice check skipped")
        )

    # (d) (1-a)^{-1} e not a constant
    e_eff = _collapse_constant(e_law)
    both_constant = isinstance(a_eff, Constant) and isinstance(e_eff, Constant)
    e_zero = isinstance(e_eff, Constant) and e_eff.value == 0.0
    if both_constant or e_zero:
        entries.append(
            ConditionCheck(
                "d", "violated", None, "(1 - a)^{-1} e reduces to a constant"
            )
        )
    else:
        entries.append(ConditionCheck("d", "verified", None, "non-degenerate pair"))

    # (e) some lambda0 with E(a^lambda0) < 1
    lam0 = None
    if a_eff.nonnegative:
        for cand in (1e-3, 1e-2, 0.1, 0.5, 1.0):
            v, _ = a_eff.moment_with_stderr(cand)
            if v < 1.0:
                lam0 = (cand, v)
                break
    if lam0 is not None:
        entries.append(
            ConditionCheck(
                "e", "verified", lam0[1], f"E(a^{lam0[0]:g}) = {lam0[1]:.6g} < 1"
            )
        )
    else:
        entries.append(
            ConditionCheck("e", "violated", None, "no small moment below 1 found")
        )

    # (f) some lambda1 with E(a^lambda1) >= 1
    lam1 = None
    last_val = None
    if a_eff.nonnegative:
        cand = 1.0
        while cand <= MU_CAP:
            v, _ = a_eff.moment_with_stderr(cand)
            last_val = v
            if v >= 1.0:
                lam1 = (cand, v)
                break
            cand *= 2.0
    if lam1 is not None:
        entries.append(
            ConditionCheck(
                "f", "verified", lam1[1], f"E(a^{lam1[0]:g}) = {lam1[1]:.6g} >= 1"
            )
        )
    else:
        entries.append(
            ConditionCheck(
                "f",
                "violated",
                last_val,
                f"E(a^mu) < 1 up to mu = {MU_CAP:g}: no lambda1 exists "
                "(thin-tail regime)",
            )
        )

    # (g) E[a^lambda1 max(log a, 0)] < inf
    if lam1 is not None:
        g_val = tilted_log_moment(a_eff, lam1[0])
        entries.append(
            ConditionCheck("g", "verified", g_val, f"tilted log moment at {lam1[0]:g}")
        )
    else:
        entries.append(
            ConditionCheck("g", "not-checkable", None, "no lambda1 from (f)")
        )

    # (h) E(|e|^mu*) < inf at the solved root
    mu_star: float | None = None
    if log_a_ok and lam1 is not None:
        try:
            mu_star = cramer_root(a_eff).mu_star
        except TheoryError:
            mu_star = None
    if mu_star is not None:
        h_val = abs_moment(e_law, mu_star)
        entries.append(
            ConditionCheck("h", "verified", h_val, f"E|e|^mu* at mu* = {mu_star:.4g}")
        )
    else:
        entries.append(
            ConditionCheck("h", "not-checkable", None, "no moment-equation root")
        )

    # expectation-accuracy case from E(a) alone
    try:
        mean_a, se = a_eff.moment_with_stderr(1.0)
        band = max(1e-9, 3.0 * se)
        if abs(mean_a - 1.0) <= band:
            case, predicted = "A", "mu = 1"
        elif mean_a > 1.0:
            case, predicted = "B", "mu < 1"
        else:
            case, predicted = "C", "mu > 1"
    except Exception:
        case, predicted = "?", "unknown"

    return TheoryReport(tuple(entries), case, predicted, mu_star)


# matrix case -----------------------------------------------------------------

_NORMS = {
    "inf": lambda P: np.abs(P).sum(axis=2).max(axis=1),
    "1": lambda P: np.abs(P).sum(axis=1).max(axis=1),
    "fro": lambda P: np.sqrt((P * P).sum(axis=(1, 2))),
}


def _batched_log_norms(
    spec: KestenAR,
    gen: np.random.Generator,
    horizons: tuple[int, ...],
    trials: int,
    norm: str,
) -> dict[int, np.ndarray]:
    """log ||A_1 ... A_t|| per trial at each requested horizon.

    The running product is renormalized every step, so the accumulated log
    norms are exact: ||A_t ... A_1|| = prod of the per-step scale factors.
    """
    try:
        norm_fn = _NORMS[norm]
    except KeyError:
        raise ValueError(f"unknown norm {norm!r}; choose from {sorted(_NORMS)}") from None
    k = spec.order
    steps = max(horizons)
    eye = np.eye(k)
    P = np.broadcast_to(eye, (trials, k, k)).copy()
    acc = np.zeros(trials)
    out: dict[int, np.ndarray] = {}
    for step in range(1, steps + 1):
        a = spec.a_law.sample(gen, trials)
        cols = [w.sample(gen, trials) for w in spec.weight_laws]
        W = np.column_stack(cols)
        if spec.normalize_weights:
            sums = W.sum(axis=1)
            if np.any(np.abs(sums) < 1e-12):
                raise ZeroWeightSum("drawn weight vector sums to ~0")
            W = W / sums[:, None]
        A = np.zeros((trials, k, k))
        A[:, 0, :] = a[:, None] * W
        for i in range(1, k):
            A[:, i, i - 1] = 1.0
        P = A @ P
        s = norm_fn(P)
        if np.any(s <= 0.0):
            raise TheoryError("matrix product collapsed to zero norm")
        acc += np.log(s)
        P /= s[:, None, None]
        if step in horizons:
            out[step] = acc.copy()
    return out


def lyapunov_top(
    ar_spec: KestenAR | KestenScalar,
    t_horizon: int = 1000,
    trials: int = 100,
    rng: RngStream = RngStream(0),
    norm: str = "inf",
) -> LyapunovEstimate:
    """Top Lyapunov exponent of the companion-matrix product, by Monte Carlo.

    Averages (1/t) log||A_1 ... A_t|| over independent trials; negativity is
    the norm-independent stationarity criterion for the order-K recursion.
    """
    if t_horizon < 100:
        raise ValueError(f"t_horizon must be >= 100, got {t_horizon}")
    if trials < 10:
        raise ValueError(f"trials must be >= 10, got {trials}")
    spec = as_ar(ar_spec)
    log_norms = _batched_log_norms(spec, rng.generator(), (t_horizon,), trials, norm)
    g = log_norms[t_horizon] / t_horizon
    stderr = float(g.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return LyapunovEstimate(float(g.mean()), t_horizon, trials, stderr, norm)


def moment_lyapunov_root(
    ar_spec: KestenAR | KestenScalar,
    mu_grid,
    t_horizon: int = 6,
    trials: int = 200_000,
    rng: RngStream = RngStream(0),
    norm: str = "inf",
) -> CramerSolution:
    """Positive zero of the moment growth rate Lambda(mu), by Monte Carlo.

    Lambda(mu) is estimated as (1/t)(logsumexp(mu * L_j) - log m) from the
    per-trial log product norms L_j, which tames the heavy-tailed summands;
    the same L_j serve every mu, so the estimate is a smooth convex
    function of mu with Lambda(0) = 0 and the grid sign change is refined
    by bisection.

    The horizon must stay small: the summands exp(mu * L_j) concentrate on
    exponentially rare paths as t grows, and beyond mu * std(L_j) ~ log m
    plain Monte Carlo cannot see them.  In the scalar case Lambda does not
    depend on t at all; for K > 1 the finite-t bias is reported by
    comparing the roots at horizons t and 2t.
    """
    spec = as_ar(ar_spec)
    mus = [float(m) for m in mu_grid]
    if len(mus) < 2 or sorted(mus) != mus or mus[0] <= 0:
        raise ValueError("mu_grid must be an increasing sequence of positive values")
    if trials < 100:
        raise ValueError(f"trials must be >= 100, got {trials}")

    pre = lyapunov_top(spec, 500, 50, rng.substream(1), norm)
    if pre.gamma_hat > 2.0 * pre.stderr:
        raise NonStationary(
            f"top Lyapunov exponent {pre.gamma_hat:+.4g} "
            f"(stderr {pre.stderr:.2g}) is positive: no stationary regime"
        )

    log_norms = _batched_log_norms(
        spec, rng.substream(2).generator(), (t_horizon, 2 * t_horizon), trials, norm
    )
    log_m = math.log(trials)

    def lam(L: np.ndarray, t: int, mu: float) -> float:
        return (float(logsumexp(mu * L)) - log_m) / t

    def refine(L: np.ndarray, t: int) -> tuple[float, tuple[float, float]] | None:
        vals = [lam(L, t, mu) for mu in mus]
        idx = None
        for i in range(len(mus) - 1):
            if vals[i] < 0.0 <= vals[i + 1]:
                idx = i
                break
        if idx is None:
            return None
        lo, hi = mus[idx], mus[idx + 1]
        bracket = (lo, hi)
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if lam(L, t, mid) < 0.0:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi), bracket

    L_t = log_norms[t_horizon]
    result = refine(L_t, t_horizon)
    if result is None:
        vals = [lam(L_t, t_horizon, mu) for mu in mus]
        side = "negative" if all(v < 0 for v in vals) else "positive"
        raise NoSignChange(
            f"moment growth rate is {side} across the whole grid "
            f"[{mus[0]:g}, {mus[-1]:g}]; Lambda values: "
            + ", ".join(f"{v:+.4g}" for v in vals)
        )
    mu_star, bracket = result

    # delta-method standard error: se(Lambda) / Lambda'(mu*)
    w = np.exp(mu_star * L_t - np.max(mu_star * L_t))
    rel_se = float(w.std(ddof=1) / (w.mean() * math.sqrt(trials)))
    se_lambda = rel_se / t_horizon
    d = 0.05 * (bracket[1] - bracket[0]) + 1e-3
    slope = (lam(L_t, t_horizon, mu_star + d) - lam(L_t, t_horizon, mu_star - d)) / (
        2.0 * d
    )
    stderr = se_lambda / slope if slope > 0 else float("inf")

    result_2t = refine(log_norms[2 * t_horizon], 2 * t_horizon)
    bias = None if result_2t is None else mu_star - result_2t[0]

    residual = abs(math.exp(lam(L_t, t_horizon, mu_star)) - 1.0)
    return CramerSolution(mu_star, bracket, residual, "monte-carlo", stderr, bias)
