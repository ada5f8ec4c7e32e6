#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cqdds/rng.hpp"
#include "cqdds/stats.hpp"

using namespace cqdds;
using namespace cqdds::stats;

namespace {

const SampleSummary kCqddsF1{1.1956e-6, 2.8711e-7, 5.1834e-7, 30};
const SampleSummary kScaF1{0.0055, 0.0161, 1.0207e-7, 30};
const SampleSummary kCqddsF4{3.6945e-4, 9.8034e-5, 1.4162e-4, 30};
const SampleSummary kScaF4{12.8867, 8.1625, 1.4477, 30};

SampleSummary random_summary(Rng& rng, std::size_t n) {
  return {rng.uniform(-100, 100), rng.uniform(0.01, 50), 0.0, n};
}

}  // namespace

TEST_CASE("summaries") {
  const auto a = summarize(std::vector<double>{1, 1, 1, 1});
  CHECK(a.mean == 1.0);
  CHECK(a.std == 0.0);
  CHECK(a.min == 1.0);
  const auto b = summarize(std::vector<double>{0, 2});
  CHECK(b.mean == 1.0);
  CHECK(b.std == doctest::Approx(std::sqrt(2.0)));
  CHECK(b.min == 0.0);
  const auto c = summarize(std::vector<double>{3, 4, 5});
  CHECK(c.mean == 4.0);
  CHECK(c.std == doctest::Approx(1.0));
  CHECK(c.n == 3);
  CHECK_THROWS_AS(summarize(std::vector<double>{1}), std::invalid_argument);
  CHECK_THROWS_AS(summarize(std::vector<double>{1, NAN}), std::invalid_argument);
}

TEST_CASE("t-test") {
  const auto same = t_test(kScaF1, kScaF1);
  CHECK(same.t == 0.0);
  CHECK(!same.significant);
  CHECK(t_test(kCqddsF1, kScaF1).t == doctest::Approx(-1.8707).epsilon(5e-4 / 1.8707));
  CHECK(!t_test(kCqddsF1, kScaF1).significant);
  const auto f4 = t_test(kCqddsF4, kScaF4);
  CHECK(f4.t == doctest::Approx(-8.6470).epsilon(5e-4 / 8.6470));
  CHECK(f4.significant);

  const SampleSummary flat_a{1.0, 0.0, 1.0, 30}, flat_b{2.0, 0.0, 2.0, 30};
  CHECK(t_test(flat_a, flat_a).t == 0.0);
  const auto degen = t_test(flat_a, flat_b);
  CHECK(degen.degenerate);
  CHECK(std::isinf(degen.t));
  CHECK(degen.t < 0);
  CHECK_THROWS_AS(t_test(kScaF1, SampleSummary{0, 1, 0, 20}), std::invalid_argument);
}

TEST_CASE("effect sizes") {
  CHECK(cohens_d(kScaF1, kScaF1).value == 0.0);
  CHECK(cohens_d(SampleSummary{3, 2, 0, 30}, SampleSummary{1, 2, 0, 30}).value ==
        doctest::Approx(1.0));
  CHECK(cohens_d(kCqddsF1, kScaF1).value == doctest::Approx(-0.483).epsilon(5e-4 / 0.483));
  CHECK(hedges_g(kCqddsF1, kScaF1, HedgesMode::papermode).value ==
        doctest::Approx(-0.6716).epsilon(5e-4 / 0.6716));
  CHECK(hedges_g(kScaF1, kScaF1, HedgesMode::textbook).value == 0.0);
  CHECK(hedges_g(kScaF1, kScaF1, HedgesMode::papermode).value == 0.0);
  const double ratio = hedges_g(kCqddsF4, kScaF4, HedgesMode::papermode).value /
                       cohens_d(kCqddsF4, kScaF4).value;
  CHECK(ratio == doctest::Approx(std::sqrt(58.0 / 30.0)));
  CHECK(hedges_g(kCqddsF4, kScaF4, HedgesMode::papermode).value ==
        doctest::Approx(-3.1044).epsilon(5e-4 / 3.1044));
}

TEST_CASE("randomized properties of t, d and g") {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const SampleSummary a = random_summary(rng, 30), b = random_summary(rng, 30);
    const auto ab = compare(a, b), ba = compare(b, a);
    REQUIRE(ab.t_value == doctest::Approx(-ba.t_value));
    REQUIRE(ab.cohens_d == doctest::Approx(-ba.cohens_d));
    REQUIRE(ab.hedges_g_papermode == doctest::Approx(-ba.hedges_g_papermode));
    REQUIRE(ab.hedges_g_textbook == doctest::Approx(ab.cohens_d));

    const double k = rng.uniform(0.001, 1000);
    const SampleSummary ka{a.mean * k, a.std * k, 0.0, 30}, kb{b.mean * k, b.std * k, 0.0, 30};
    const auto scaled = compare(ka, kb);
    REQUIRE(scaled.t_value == doctest::Approx(ab.t_value));
    REQUIRE(scaled.cohens_d == doctest::Approx(ab.cohens_d));
    REQUIRE(scaled.hedges_g_textbook == doctest::Approx(ab.hedges_g_textbook));
  }
}

TEST_CASE("win/tie/loss outcomes") {
  using O = Outcome;
  CHECK(rank_outcomes(std::vector<double>{1, 2, 3}, Direction::minimize) ==
        std::vector<O>{O::win, O::loss, O::loss});
  CHECK(rank_outcomes(std::vector<double>{1, 1, 2}, Direction::minimize) ==
        std::vector<O>{O::tie, O::tie, O::loss});
  CHECK(rank_outcomes(std::vector<double>{1, 2, 3}, Direction::maximize) ==
        std::vector<O>{O::loss, O::loss, O::win});
  CHECK_THROWS_AS(rank_outcomes(std::vector<double>{1}, Direction::minimize),
                  std::invalid_argument);

  const std::vector<std::vector<double>> rows = {{1, 2, 3}, {1, 1, 2}, {3, 2, 1}};
  const auto t = win_tie_loss(rows, Direction::minimize);
  CHECK(t[0].win == 1);
  CHECK(t[0].tie == 1);
  CHECK(t[0].loss == 1);
  CHECK(t[2].win == 1);
  CHECK(t[2].loss == 2);
  CHECK(round_significant(1.23456, 4) == doctest::Approx(1.235));
  CHECK(round_significant(-0.00123456, 2) == doctest::Approx(-0.0012));
}

TEST_CASE("average ranks") {
  // Published mean-row counts: 10/0/13 for C-QDDS among nine algorithms.
  const std::vector<WinTieLoss> table = {{10, 0, 13}, {1, 2, 20}, {3, 3, 17},
                                         {3, 4, 16},  {1, 0, 22}, {0, 0, 23},
                                         {0, 2, 21},  {0, 4, 19}, {0, 5, 18}};
  const auto r = average_ranks(table);
  CHECK(r[0] == doctest::Approx(7.0 / 3.0));
  CHECK(r[3] == doctest::Approx(2.0));
  // 0 wins -> 4th, 0 ties -> 5th, 23 losses -> 9th distinct level.
  CHECK(r[5] == doctest::Approx(6.0));

  const std::vector<WinTieLoss> dominated = {{3, 0, 0}, {0, 0, 3}, {0, 0, 3}};
  const auto d = average_ranks(dominated);
  CHECK(d[1] == d[2]);
  // Wins rank 1 and losses rank 1; no ties anywhere shares tie-rank 1.
  CHECK(d[0] == doctest::Approx(1.0));

  CHECK(dense_ranks(std::vector<double>{5, 3, 5, 1}, true) ==
        std::vector<std::size_t>{1, 2, 1, 3});
  CHECK(dense_ranks(std::vector<double>{5, 3, 5, 1}, false) ==
        std::vector<std::size_t>{3, 2, 3, 1});
}

TEST_CASE("precision curve") {
  std::vector<double> costs;
  for (int i = 1; i <= 30; ++i) costs.push_back(i);
  const auto curve = precision_curve(costs);
  CHECK(curve[0].fraction == doctest::Approx(0.1));
  CHECK(curve[0].count == 3);
  CHECK(curve[9].fraction == doctest::Approx(1.0));
  CHECK(curve[9].count == 29);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].count >= curve[i - 1].count);

  const auto flat = precision_curve(std::vector<double>(7, 2.5));
  for (const auto& p : flat) CHECK(p.count == 7);
}
