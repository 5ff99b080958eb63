#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gar/preprocess.hpp"
#include "gar/stats.hpp"
#include "gar/rng.hpp"

using namespace gar;

namespace {
QuarterlySeries make_series(const std::string& name, YearQuarter start,
                            const std::vector<double>& v) {
  Eigen::VectorXd e =
      Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  return QuarterlySeries(name, start, e);
}
}  // namespace

TEST_CASE("growth target on constant log level is zero") {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(12, 4.6);
  QuarterlySeries s("gdp", YearQuarter(1900, 1), v);
  for (int h : {1, 4, 8}) {
    const auto g = growth_target(s, h);
    CHECK(g.size() == 12 - h);
    CHECK(g.values().cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.start() == s.start());
  }
}

TEST_CASE("growth target matches hand-computed values") {
  // Y_t = ln(100), Y_{t+4} = ln(102), h = 4 -> 100 ln(1.02)
  Eigen::VectorXd v(5);
  const double l0 = std::log(100.0);
  for (int i = 0; i < 5; ++i) v[i] = l0 + i * (std::log(102.0) - l0) / 4.0;
  const auto g4 = growth_target(QuarterlySeries("gdp", YearQuarter(1900, 1), v), 4);
  CHECK(g4[0] == doctest::Approx(100.0 * std::log(1.02)).epsilon(1e-12));

  // one-quarter step of 0.005 at h = 1 -> 2.0
  Eigen::VectorXd w(3);
  w << 1.0, 1.005, 1.010;
  const auto g1 = growth_target(QuarterlySeries("gdp", YearQuarter(1900, 1), w), 1);
  CHECK(g1[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g1[1] == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(growth_target(g1, 0), ParameterError);
  CHECK_THROWS_AS(growth_target(QuarterlySeries("s", YearQuarter(1900, 1), w), 3),
                  LengthError);
}

TEST_CASE("growth target reconstruction recovers log-level differences") {
  Rng rng(11);
  Eigen::VectorXd v(60);
  v[0] = 5.0;
  for (int i = 1; i < 60; ++i) v[i] = v[i - 1] + 0.01 * rng.normal();
  QuarterlySeries s("gdp", YearQuarter(1900, 1), v);
  const int h = 4;
  const auto g = growth_target(s, h);
  for (Eigen::Index t = 0; t < g.size(); ++t) {
    const double recovered = g[t] * h / 400.0;
    CHECK(std::abs(recovered - (v[t + h] - v[t])) < 1e-12);
  }
}

TEST_CASE("hp filter reproduces linear trends for both lambdas") {
  Eigen::VectorXd v(80);
  for (int i = 0; i < 80; ++i) v[i] = 2.0 + 0.3 * i;
  QuarterlySeries s("x", YearQuarter(1900, 1), v);
  for (double lambda : {1600.0, 5e6}) {
    const auto res = hp_detrend(s, lambda);
    CHECK((res.trend.values() - v).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(res.cycle.values().cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("hp filter matches dense linear-system oracle") {
  Rng rng(5);
  const int n = 50;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.normal();
  QuarterlySeries s("x", YearQuarter(1900, 1), v);

  for (double lambda : {1600.0, 5e6}) {
    // Dense oracle: build (I + lambda K'K) explicitly and solve.
    Eigen::MatrixXd kd = Eigen::MatrixXd::Zero(n - 2, n);
    for (int r = 0; r < n - 2; ++r) {
      kd(r, r) = 1.0;
      kd(r, r + 1) = -2.0;
      kd(r, r + 2) = 1.0;
    }
    const Eigen::MatrixXd a =
        Eigen::MatrixXd::Identity(n, n) + lambda * kd.transpose() * kd;
    const Eigen::VectorXd trend_dense = a.ldlt().solve(v);

    const auto res = hp_detrend(s, lambda);
    CHECK((res.trend.values() - trend_dense).cwiseAbs().maxCoeff() < 1e-8);
    // decomposition adds back exactly
    CHECK((res.trend.values() + res.cycle.values() - v).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("hp filter input validation") {
  Eigen::VectorXd v(3);
  v << 1, 2, 3;
  CHECK_THROWS_AS(hp_detrend(QuarterlySeries("s", YearQuarter(1900, 1), v), 1600.0),
                  LengthError);
  Eigen::VectorXd ok(10);
  ok.setOnes();
  CHECK_THROWS_AS(hp_detrend(QuarterlySeries("s", YearQuarter(1900, 1), ok), -1.0),
                  ParameterError);
}

TEST_CASE("spline disaggregation interpolates constants and knots") {
  Eigen::VectorXd c = Eigen::VectorXd::Constant(6, 7.5);
  const auto q = spline_disaggregate(AnnualSeries("credit", 1900, c), 4);
  CHECK(q.size() == 21);
  CHECK(q.start() == YearQuarter(1900, 4));
  CHECK((q.values().array() - 7.5).abs().maxCoeff() < 1e-12);

  Rng rng(3);
  Eigen::VectorXd a(8);
  for (int i = 0; i < 8; ++i) a[i] = rng.normal();
  const auto qa = spline_disaggregate(AnnualSeries("credit", 1900, a), 2);
  CHECK(qa.start() == YearQuarter(1900, 2));
  for (int i = 0; i < 8; ++i)
    CHECK(std::abs(qa.at(YearQuarter(1900 + i, 2)) - a[i]) < 1e-10);
}

TEST_CASE("spline disaggregation reproduces polynomials of degree <= 2") {
  // values of p(u) = 2 - 0.5 u + 0.03 u^2 sampled at annual knots (u in
  // quarter units) are reproduced exactly at every quarter
  const auto p = [](double u) { return 2.0 - 0.5 * u + 0.03 * u * u; };
  Eigen::VectorXd a(7);
  for (int i = 0; i < 7; ++i) a[i] = p(4.0 * i);
  const auto q = spline_disaggregate(AnnualSeries("credit", 1950, a), 1);
  for (Eigen::Index i = 0; i < q.size(); ++i)
    CHECK(q[i] == doctest::Approx(p(static_cast<double>(i))).epsilon(1e-8));

  // linear annual series -> linear quarterly series
  Eigen::VectorXd lin(5);
  for (int i = 0; i < 5; ++i) lin[i] = 1.0 + 0.25 * i;
  const auto ql = spline_disaggregate(AnnualSeries("credit", 1950, lin), 3);
  for (Eigen::Index i = 1; i + 1 < ql.size(); ++i)
    CHECK(ql[i + 1] - 2 * ql[i] + ql[i - 1] == doctest::Approx(0.0).epsilon(1e-10));

  Eigen::VectorXd two(2);
  two << 1, 2;
  CHECK_THROWS_AS(spline_disaggregate(AnnualSeries("credit", 1950, two), 4),
                  LengthError);
}

TEST_CASE("three-year average log growth") {
  Eigen::VectorXd c = Eigen::VectorXd::Constant(20, 3.0);
  const auto g0 = avg_log_growth_3y(QuarterlySeries("credit", YearQuarter(1900, 1), c));
  CHECK(g0.values().cwiseAbs().maxCoeff() == 0.0);
  CHECK(g0.size() == 8);
  CHECK(g0.start() == YearQuarter(1903, 1));

  // X_t = X_{t-12} e^{0.06} -> 2.0 percent
  Eigen::VectorXd e(20);
  for (int i = 0; i < 20; ++i) e[i] = std::exp(0.06 * i / 12.0);
  const auto g1 = avg_log_growth_3y(QuarterlySeries("credit", YearQuarter(1900, 1), e));
  CHECK(g1[0] == doctest::Approx(2.0).epsilon(1e-12));

  // 1 percent per quarter: 12 ln(1.01) / 3 * 100 = 400 ln(1.01)
  Eigen::VectorXd geo(20);
  for (int i = 0; i < 20; ++i) geo[i] = std::pow(1.01, i);
  const auto g2 = avg_log_growth_3y(QuarterlySeries("credit", YearQuarter(1900, 1), geo));
  CHECK(g2[0] == doctest::Approx(400.0 * std::log(1.01)).epsilon(1e-12));

  Eigen::VectorXd neg = Eigen::VectorXd::Constant(20, -1.0);
  CHECK_THROWS_AS(avg_log_growth_3y(QuarterlySeries("c", YearQuarter(1900, 1), neg)),
                  DomainError);
  Eigen::VectorXd shrt = Eigen::VectorXd::Constant(12, 1.0);
  CHECK_THROWS_AS(avg_log_growth_3y(QuarterlySeries("c", YearQuarter(1900, 1), shrt)),
                  LengthError);
}

TEST_CASE("dataset assembly: baseline and extended column layouts") {
  Rng rng(17);
  const int n = 60;
  Eigen::VectorXd gdp(n);
  gdp[0] = 5.0;
  for (int i = 1; i < n; ++i) gdp[i] = gdp[i - 1] + 0.005 + 0.01 * rng.normal();
  QuarterlySeries log_gdp("gdp", YearQuarter(1900, 1), gdp);

  Eigen::VectorXd stress(n), credit(n), house(n);
  for (int i = 0; i < n; ++i) {
    stress[i] = rng.normal();
    credit[i] = rng.normal();
    house[i] = rng.normal();
  }
  std::vector<QuarterlySeries> preds{
      QuarterlySeries("stress", YearQuarter(1900, 1), stress),
      QuarterlySeries("credit", YearQuarter(1901, 1), credit.head(n - 4)),
      QuarterlySeries("house", YearQuarter(1900, 1), house)};

  const auto base = assemble_dataset(log_gdp, preds, 1, {{"stress"}});
  CHECK(base.cols() == 3);
  CHECK(base.column_names() ==
        std::vector<std::string>{"intercept", "lag_growth", "stress"});
  CHECK(base.origins().front() == YearQuarter(1900, 2));  // lag needs one quarter
  CHECK(base.origins().back() == YearQuarter(1914, 4));
  CHECK(base.forecast_only_rows() == 1);

  const auto ext = assemble_dataset(log_gdp, preds, 4, {{"stress", "credit", "house"}});
  CHECK(ext.cols() == 5);
  CHECK(ext.origins().front() == YearQuarter(1901, 1));  // credit starts later
  CHECK(ext.forecast_only_rows() == 4);
  // x_t uses only data dated <= t: lag growth at origin equals the one-quarter
  // annualized growth through the origin itself
  const Eigen::Index i = 10;
  const YearQuarter t = ext.origins()[i];
  const double expect = (log_gdp.at(t) - log_gdp.at(t - 1)) * 400.0;
  CHECK(ext.x()(i, 1) == doctest::Approx(expect).epsilon(1e-12));
  // intercept column is ones
  CHECK((ext.x().col(0).array() == 1.0).all());
  // target alignment: y at origin equals annualized h-step growth
  const double y_expect = (log_gdp.at(t + 4) - log_gdp.at(t)) * 100.0;
  CHECK(ext.targets()[i] == doctest::Approx(y_expect).epsilon(1e-12));

  // h=1 vs h=4: same origin span, target rows differ by exactly 3
  const auto ext1 = assemble_dataset(log_gdp, preds, 1, {{"stress", "credit", "house"}});
  CHECK(ext1.rows() == ext.rows());
  CHECK(ext1.target_rows() - ext.target_rows() == 3);
}

TEST_CASE("dataset assembly rejects disjoint ranges and unknown names") {
  Eigen::VectorXd a = Eigen::VectorXd::Constant(10, 1.0);
  QuarterlySeries gdp("gdp", YearQuarter(1900, 1), a);
  std::vector<QuarterlySeries> preds{
      QuarterlySeries("stress", YearQuarter(1950, 1), a)};
  CHECK_THROWS_AS(assemble_dataset(gdp, preds, 1, {{"stress"}}), AlignmentError);
  CHECK_THROWS_AS(assemble_dataset(gdp, preds, 1, {{"nope"}}), AlignmentError);
}

TEST_CASE("zscore standardizes") {
  Eigen::VectorXd v(5);
  v << 1, 2, 3, 4, 5;
  const auto z = zscore(QuarterlySeries("s", YearQuarter(1900, 1), v));
  CHECK(z.values().mean() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sd(z.values()) == doctest::Approx(1.0).epsilon(1e-12));
}
