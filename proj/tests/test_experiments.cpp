#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "dmf/experiments.hpp"

using namespace dmf;

TEST_CASE("cycle_type_probability small cases") {
  CHECK(cycle_type_probability(CycleType::from_parts({1, 1})) == Rational(1, 2));
  CHECK(cycle_type_probability(CycleType::from_parts({2})) == Rational(1, 2));
  CHECK(cycle_type_probability(CycleType::from_parts({1, 1, 1})) == Rational(1, 6));
  CHECK(cycle_type_probability(CycleType::from_parts({2, 1})) == Rational(1, 2));
  CHECK(cycle_type_probability(CycleType::from_parts({3})) == Rational(1, 3));
  CHECK_THROWS_AS(CycleType::from_parts({0, 1}), std::invalid_argument);
}

TEST_CASE("cycle type probabilities sum to 1 for d <= 12") {
  for (int d = 1; d <= 12; ++d) {
    Rational sum = 0;
    for (const CycleType& lam : all_partitions(d)) {
      CHECK(lam.d() == d);
      sum += cycle_type_probability(lam);
    }
    CHECK(sum == Rational(1));
  }
}

TEST_CASE("P(lambda) matches brute-force enumeration of S_4") {
  // enumerate all 24 permutations of {0,1,2,3} and tally cycle types
  std::vector<int> perm{0, 1, 2, 3};
  std::map<std::string, int> counts;
  do {
    std::vector<bool> seen(4, false);
    std::vector<int> parts;
    for (int i = 0; i < 4; ++i) {
      if (seen[i]) continue;
      int len = 0, j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = perm[j];
        ++len;
      }
      parts.push_back(len);
    }
    ++counts[CycleType::from_parts(parts).to_string()];
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (const CycleType& lam : all_partitions(4)) {
    Rational expect = cycle_type_probability(lam);
    Rational got(counts[lam.to_string()], 24);
    CHECK(got == expect);
  }
}

TEST_CASE("partition counts") {
  const int expected[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  for (int d = 1; d <= 12; ++d)
    CHECK(all_partitions(d).size() == static_cast<size_t>(expected[d - 1]));
}

TEST_CASE("interval census: exhaustive invariants at q = 5") {
  const Field* f = Field::prime(5);
  Rng rng(3);
  Poly center = Poly::from_ints(f, {1, 1, 0, 0, 1});  // t^4 + t + 1
  ExperimentOptions opt;
  opt.exhaustive = true;
  CensusReport rep = interval_census(center, 2, opt, rng);
  CHECK(rep.trials == 125);  // q^{m+1}
  long sum = 0;
  for (const auto& c : rep.cells) sum += c.count;
  CHECK(sum == 125);
  CHECK(rep.cells.size() == all_partitions(4).size());
  CHECK_FALSE(rep.in_regime);  // q = 5 far below the paper regime
  // deterministic under the same seed
  Rng rng2(3);
  CensusReport rep2 = interval_census(center, 2, opt, rng2);
  CHECK(rep.to_text() == rep2.to_text());
  // threading does not change counts
  ExperimentOptions opt4 = opt;
  opt4.threads = 4;
  Rng rng3(3);
  CensusReport rep4 = interval_census(center, 2, opt4, rng3);
  CHECK(rep.to_text() == rep4.to_text());
}

TEST_CASE("interval census input validation") {
  const Field* f = Field::prime(5);
  Rng rng(5);
  Poly center = Poly::from_ints(f, {1, 1, 0, 0, 1});
  ExperimentOptions opt;
  CHECK_THROWS_AS(interval_census(center, 4, opt, rng), std::invalid_argument);
  ExperimentOptions tiny;
  tiny.exhaustive = true;
  tiny.exhaustive_budget = 10;
  CHECK_THROWS_AS(interval_census(center, 2, tiny, rng), std::invalid_argument);
}

TEST_CASE("success_rate_alg1 on a known instance") {
  const Field* f = Field::prime(257);
  Rng rng(7);
  auto [h, factors] = random_squarefree_with_known_factors(f, {1, 1, 2}, rng);
  ExperimentOptions opt;
  opt.trials = 200;
  CensusReport rep = success_rate_alg1(h, 1, opt, rng);
  CHECK(rep.trials == 200);
  CHECK(rep.in_regime);  // sqrt(257) = 16 >= 2*4
  const double rate = rep.metric_value("rate");
  CHECK(rate >= 0.25 - 3.0 * std::sqrt(0.25 * 0.75 / 200));
  CHECK(rate <= 1.0);
}

TEST_CASE("cyclicity_rate: degree 1 is always cyclic") {
  const Field* f = Field::prime(101);
  Rng rng(11);
  Poly p = Poly::from_ints(f, {3, 1});
  ExperimentOptions opt;
  opt.trials = 150;
  CensusReport rep = cyclicity_rate(p, opt, rng);
  CHECK(rep.metric_value("rate") == 1.0);
}

TEST_CASE("cyclicity_rate: degree 2 meets the bound") {
  const Field* f = Field::prime(101);
  Rng rng(13);
  Poly p = random_monic_irreducible(f, 2, rng);
  ExperimentOptions opt;
  opt.trials = 300;
  CensusReport rep = cyclicity_rate(p, opt, rng);
  const double bound = rep.metric_value("bound");
  CHECK(bound == doctest::Approx(1.0 - 2.5 / 200.0));
  CHECK(rep.metric_value("rate") >=
        bound - 3.0 * std::sqrt(bound * (1 - bound) / 300.0));
}

TEST_CASE("split_balance on two linears") {
  const Field* f = Field::prime(101);
  Rng rng(17);
  Poly p1 = Poly::from_ints(f, {100, 1});  // t - 1
  Poly p2 = Poly::from_ints(f, {99, 1});   // t - 2
  ExperimentOptions opt;
  opt.trials = 120;
  CensusReport rep = split_balance(p1 * p2, {p1, p2}, opt, rng);
  REQUIRE(rep.cells.size() == 2);
  CHECK(rep.metric_value("non_retry") > 0);
  CHECK(rep.metric_value("min_rate") > 0.0);
  CHECK(rep.metric_value("max_rate") < 1.0);
}

TEST_CASE("trace_census exhaustive at degree 1, q = 13") {
  const Field* f = Field::prime(13);
  Rng rng(19);
  Poly p = Poly::from_ints(f, {5, 1});
  ExperimentOptions opt;
  opt.exhaustive = true;
  CensusReport rep = trace_census(p, opt, rng);
  CHECK(rep.trials == 13 * 12);  // all (g, delta != 0) pairs
  long sum = 0;
  for (const auto& c : rep.cells) sum += c.count;
  CHECK(sum == rep.trials);
  // reproducible bit-for-bit
  Rng rng2(19);
  CHECK(trace_census(p, opt, rng2).to_text() == rep.to_text());
}

TEST_CASE("trace_census sampling respects the degree bound internally") {
  const Field* f = Field::prime(7);
  Rng rng(23);
  Poly p = random_monic_irreducible(f, 3, rng);
  ExperimentOptions opt;
  opt.trials = 60;
  CensusReport rep = trace_census(p, opt, rng);  // throws on any violation
  CHECK(rep.trials == 60);
  CHECK(rep.metric_value("cells") >= 1);
}

TEST_CASE("report serialization") {
  CensusReport rep;
  rep.name = "demo";
  rep.param("q", "5");
  rep.trials = 10;
  rep.cells.push_back({"x", 4, 0.4, 0.5});
  rep.metric("rate", 0.4);
  rep.in_regime = true;
  const std::string text = rep.to_text();
  CHECK(text.find("experiment=demo") != std::string::npos);
  CHECK(text.find("cell.x.count=4") != std::string::npos);
  CHECK(text.find("metric.rate=0.4") != std::string::npos);
  auto j = rep.to_json();
  CHECK(j["experiment"] == "demo");
  CHECK(j["cells"][0]["count"] == 4);
  CHECK(j["metrics"]["rate"] == 0.4);
}
