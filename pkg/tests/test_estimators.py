import numpy as np
import pytest

from conftest import exact_pareto
from kestenlab import (
    Constant,
    KestenScalar,
    Normal,
    RngStream,
    acf,
    empirical_ccdf,
    hill_estimator,
    returns_from_prices,
    simulate_kesten_scalar,
    tail_exponent_ls,
)
from kestenlab.errors import (
    DegenerateTail,
    InsufficientTail,
    NonPositivePrice,
    SeriesTooShort,
)


class TestReturnsFromPrices:
    def test_basic(self):
        assert returns_from_prices([100.0, 101.0]) == pytest.approx([0.01])
        assert returns_from_prices([100.0, 100.0, 100.0]).tolist() == [0.0, 0.0]
        assert returns_from_prices([100.0, 99.0]) == pytest.approx([-0.01])

    def test_non_positive_price(self):
        with pytest.raises(NonPositivePrice):
            returns_from_prices([100.0, 0.0, 101.0])
        with pytest.raises(NonPositivePrice):
            returns_from_prices([100.0, -5.0])

    def test_too_short(self):
        with pytest.raises(ValueError):
            returns_from_prices([100.0])


class TestEmpiricalCcdf:
    def test_counting(self):
        x, p = empirical_ccdf(np.array([1.0, 2.0, 3.0]))
        assert x.tolist() == [1.0, 2.0, 3.0]
        assert p == pytest.approx([2 / 3, 1 / 3, 0.0])

    def test_ties_collapse(self):
        x, p = empirical_ccdf(np.array([-1.0, 1.0]), absolute=True)
        assert x.tolist() == [1.0]
        assert p.tolist() == [0.0]

    def test_strictly_decreasing(self, fig3_series):
        _x, p = empirical_ccdf(fig3_series)
        assert np.all(np.diff(p) < 0)

    def test_pareto_survival_level(self):
        # P(X > 10) = 0.01 for the mu = 2 oracle; 3-sigma binomial band
        x = exact_pareto(2.0, 10**6, seed=1001)
        xs, ps = empirical_ccdf(x, absolute=False)
        idx = np.searchsorted(xs, 10.0)
        assert abs(ps[idx] - 0.01) < 0.0005


class TestTailExponentLs:
    def test_recovers_pareto_exponent(self):
        x = exact_pareto(2.5, 10**6, seed=11)
        fit = tail_exponent_ls(x, float(np.quantile(x, 0.95)))
        assert abs(fit.exponent - 2.5) < 0.1
        assert fit.stderr > 0
        assert fit.n_tail == pytest.approx(50_000, abs=500)

    def test_default_threshold_is_95th_percentile(self):
        x = exact_pareto(3.0, 10**5, seed=12)
        fit = tail_exponent_ls(x)
        assert fit.threshold == pytest.approx(float(np.quantile(np.abs(x), 0.95)))

    def test_insufficient_tail(self):
        x = exact_pareto(2.0, 1000, seed=13)
        with pytest.raises(InsufficientTail):
            tail_exponent_ls(x, float(x.max()))

    def test_result_fields(self):
        x = exact_pareto(2.0, 10**5, seed=14)
        fit = tail_exponent_ls(x)
        d = fit.to_dict()
        assert set(d) == {"threshold", "exponent", "intercept", "n_tail", "stderr"}


class TestHillEstimator:
    @pytest.mark.parametrize("mu,band", [(3.0, 0.1), (1.0, 0.05)])
    def test_recovers_pareto_exponent(self, mu, band):
        x = exact_pareto(mu, 10**6, seed=int(20 + mu))
        assert abs(hill_estimator(x, 10**4) - mu) < band

    def test_degenerate_constant_series(self):
        with pytest.raises(DegenerateTail):
            hill_estimator(np.full(1000, 2.0), 100)

    def test_zero_threshold_order_statistic(self):
        x = np.concatenate([np.zeros(100), np.ones(10)])
        with pytest.raises(DegenerateTail):
            hill_estimator(x, 50)

    def test_k_bounds(self):
        x = exact_pareto(2.0, 1000, seed=22)
        with pytest.raises(InsufficientTail):
            hill_estimator(x, 5)
        with pytest.raises(InsufficientTail):
            hill_estimator(x, 1000)

    def test_agrees_with_ls_fit(self):
        # same sample, two routes; Hill se = mu/sqrt(k) dominates the bound
        x = exact_pareto(2.5, 10**6, seed=11)
        fit = tail_exponent_ls(x, float(np.quantile(x, 0.95)))
        k = 10**4
        hill = hill_estimator(x, k)
        combined = np.hypot(fit.stderr, hill / np.sqrt(k))
        assert abs(fit.exponent - hill) < 2 * combined


class TestAcf:
    def test_white_noise_stays_in_band(self):
        x = RngStream(5).generator().normal(0.0, 1.0, 10**6)
        res = acf(x, 20)
        assert np.all(np.abs(res.values[1:]) < 3 / np.sqrt(10**6))

    def test_ar1_with_constant_coefficient(self):
        spec = KestenScalar(Constant(0.5), Normal(0.0, 1.0))
        s = simulate_kesten_scalar(spec, RngStream(6), 10**6, 1000)
        res = acf(s, 5)
        for h in range(1, 6):
            assert abs(res.at(h) - 0.5**h) < 0.01

    def test_feedback_process_matches_mean_power_law(self, fig3_series):
        # stationary autocorrelation decays like [E(a)]^h when E(a^2) < 1
        res = acf(fig3_series, 5)
        for h in range(1, 6):
            assert abs(res.at(h) - 0.55**h) < 0.02

    def test_absolute_acf_mixes_geometrically(self, fig3_series):
        res = acf(fig3_series, 50, absolute=True)
        assert abs(res.at(50)) < 0.02

    def test_lag_zero_is_exactly_one(self, fig3_series):
        assert acf(fig3_series, 3).at(0) == 1.0

    def test_values_bounded(self, fig3_series):
        res = acf(fig3_series, 50)
        assert np.all(np.abs(res.values) <= 1.0)

    def test_series_too_short(self):
        with pytest.raises(SeriesTooShort):
            acf(np.arange(100.0), 10)

    def test_series_kind_label(self, fig3_series):
        assert acf(fig3_series, 2).series_kind == "raw"
        assert acf(fig3_series, 2, absolute=True).series_kind == "absolute"
