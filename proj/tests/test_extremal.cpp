#include <gtest/gtest.h>

#include <inducibility/inducibility.hpp>

using namespace inducibility;

namespace {
SearchConfig small_search(std::uint64_t seed) {
  SearchConfig c;
  c.beam_width = 16;
  c.restarts = 6;
  c.local_moves = 300;
  c.seed = seed;
  return c;
}
}  // namespace

TEST(ExactMaximum, CompleteTreeOnEightLeaves) {
  const auto r = max_gamma_exact(complete(2), 8);
  EXPECT_EQ(r.best_value.str(), "19/35");
  ASSERT_EQ(r.argmax.size(), 1u);
  EXPECT_EQ(r.argmax[0], complete(3));
  EXPECT_EQ(r.method, SearchMethod::exact);
}

TEST(ExactMaximum, SmallCases) {
  auto r = max_gamma_exact(caterpillar(4), 6);
  EXPECT_EQ(r.best_value.str(), "1");
  ASSERT_EQ(r.argmax.size(), 1u);
  EXPECT_EQ(r.argmax[0], caterpillar(6));
  ASSERT_TRUE(r.gap_to_limit);
  EXPECT_EQ(r.gap_to_limit->str(), "0");

  r = max_gamma_exact(complete(2), 6);
  EXPECT_EQ(r.best_value.str(), "3/5");
  ASSERT_EQ(r.argmax.size(), 1u);
  EXPECT_EQ(r.argmax[0], even(6));
}

TEST(ExactMaximum, PowersOfTwoGiveCompleteTrees) {
  for (unsigned h = 2; h <= 3; ++h) {
    const auto r = max_gamma_exact(complete(2), std::size_t{1} << h);
    ASSERT_EQ(r.argmax.size(), 1u);
    EXPECT_EQ(r.argmax[0], complete(h));
  }
}

TEST(ExactMaximum, ArgmaxValuesRecompute) {
  for (auto pattern : enumerate_shapes(5)) {
    const auto r = max_gamma_exact(pattern, 10);
    for (auto t : r.argmax) EXPECT_EQ(gamma(pattern, t), r.best_value);
    for (auto t : enumerate_shapes(10)) EXPECT_LE(gamma(pattern, t), r.best_value);
  }
}

TEST(ExactMaximum, ParallelMatchesSerial) {
  SearchConfig c;
  c.jobs = 3;
  const auto a = max_gamma_exact(a52(), 11, c);
  const auto b = max_gamma_exact(a52(), 11);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.argmax, b.argmax);
}

TEST(ExactMaximum, Errors) {
  EXPECT_THROW(max_gamma_exact(complete(2), 3), InvalidArgument);
  EXPECT_THROW(max_gamma_exact(complete(2), 15), LimitExceeded);
  SearchConfig c;
  c.beam_width = 0;
  EXPECT_THROW(max_gamma_exact(complete(2), 6, c), InvalidArgument);
}

TEST(Search, AgreesWithExhaustiveSearch) {
  for (int k = 1; k <= 5; ++k)
    for (auto pattern : enumerate_shapes(k))
      for (std::size_t n = std::max(k, 4); n <= 12; n += 2) {
        const auto exact = max_gamma_exact(pattern, n);
        const auto heur = max_gamma_search(pattern, n, small_search(n));
        EXPECT_EQ(heur.best_value, exact.best_value) << format_shape(pattern) << " n=" << n;
        EXPECT_EQ(heur.method, SearchMethod::heuristic);
      }
}

TEST(Search, NeverBelowBaselines) {
  for (std::size_t n : {20, 33, 50}) {
    const auto r = max_gamma_search(a52(), n, small_search(1));
    EXPECT_GE(r.best_value, gamma(a52(), even(n)));
    EXPECT_GE(r.best_value, gamma(a52(), caterpillar(n)));
    for (auto t : r.argmax) EXPECT_EQ(gamma(a52(), t), r.best_value);
  }
}

TEST(Search, Deterministic) {
  const auto a = max_gamma_search(a52(), 40, small_search(99));
  const auto b = max_gamma_search(a52(), 40, small_search(99));
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.argmax, b.argmax);
  EXPECT_EQ(a.seed, 99u);
  auto c4 = small_search(99);
  c4.jobs = 4;
  const auto c = max_gamma_search(a52(), 40, c4);
  EXPECT_EQ(a.argmax, c.argmax);
}

TEST(Search, FindsCompleteTreesForTheCherryPair) {
  const auto r = max_gamma_search(complete(2), 64, small_search(5));
  EXPECT_EQ(r.best_value, BigRational(count_induced(complete(2), complete(6)), binomial(64, 4)));
}

TEST(Search, GapIsReportedForKnownLimits) {
  const auto r = max_gamma_search(even(4), 40, small_search(2));
  ASSERT_TRUE(r.gap_to_limit);
  EXPECT_EQ(*r.gap_to_limit, even_inducibility(4) - r.best_value);
  EXPECT_FALSE(max_gamma_search(a52(), 20, small_search(2)).gap_to_limit);
}

TEST(Conjectures, EvenTreesMaximizeForFourLeaves) {
  const auto rows = conjecture_report(4, 12);
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.even_is_maximizer) << "n=" << r.n;
    EXPECT_EQ(r.limit.str(), "3/7");
    EXPECT_EQ(r.n_gap, BigRational(static_cast<long>(r.n)) * r.gap);
  }
  // n = 8: max is gamma(E_4, CB_3) = 38/70, above the limit
  EXPECT_EQ(rows[4].n, 8u);
  EXPECT_EQ(rows[4].max_gamma.str(), "19/35");
  EXPECT_EQ(rows[4].gap.str(), "-4/35");
}

TEST(Conjectures, CherryHasNoGap) {
  for (const auto& r : conjecture_report(2, 9)) EXPECT_EQ(r.gap.str(), "0");
  EXPECT_THROW(conjecture_report(4, 15), LimitExceeded);
}
