#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include <inducibility/inducibility.hpp>

#include "oracles.hpp"

using namespace inducibility;

namespace {
const char* kNo6 = "(((L L) L) L)|(((L L) L) L)|1,4,3,2";
const char* kNo13 = "((L L) (L L))|((L L) (L L))|1,3,2,4";

std::vector<std::size_t> sigma_of(const Tanglegram& t) { return {t.sigma().begin(), t.sigma().end()}; }

std::vector<Tanglegram> all_layouts(std::size_t n) {
  std::vector<Tanglegram> out;
  const auto trees = enumerate_plane_trees(n);
  std::vector<std::size_t> s(n);
  for (const auto& l : trees)
    for (const auto& r : trees) {
      for (std::size_t i = 0; i < n; ++i) s[i] = i + 1;
      do out.emplace_back(l, r, s);
      while (std::next_permutation(s.begin(), s.end()));
    }
  return out;
}
}  // namespace

TEST(TanglegramText, RoundTripAndValidation) {
  const auto t = Tanglegram::parse(kNo6);
  EXPECT_EQ(t.to_string(), kNo6);
  EXPECT_EQ(t.size(), 4u);
  EXPECT_EQ(Tanglegram::parse("cat:3|(L (L L))|3,1,2").to_string(), "(L (L L))|(L (L L))|3,1,2");
  EXPECT_THROW(Tanglegram::parse("cat:3|cat:3 |1,2,3"), ParseError);
}

TEST(TanglegramText, Errors) {
  auto pos = [](const std::string& s) -> long {
    try {
      Tanglegram::parse(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  EXPECT_EQ(pos("(L L)|(L L)"), 11);
  EXPECT_EQ(pos("(L L)|(L X)|1,2"), 9);
  EXPECT_EQ(pos("(L L)|(L L)|1,,2"), 14);
  EXPECT_EQ(pos("(L L)|(L L)|1,3"), 12);
  EXPECT_EQ(pos("(L L)|(L L)|1,1"), 12);
  EXPECT_EQ(pos("(L L)|(L L)|1"), 12);
  EXPECT_EQ(pos("(L L)|((L L) L)|1,2"), 16);
  EXPECT_THROW(Tanglegram(parse_plane_tree("L"), parse_plane_tree("(L L)"), {1}), InvalidArgument);
}

TEST(Inversions, SmallCases) {
  EXPECT_EQ(count_inversions(std::vector<std::size_t>{1, 2, 3, 4}), 0u);
  EXPECT_EQ(count_inversions(std::vector<std::size_t>{4, 3, 2, 1}), 6u);
  EXPECT_EQ(count_inversions(std::vector<std::size_t>{2, 1, 3, 4, 5}), 1u);
  EXPECT_EQ(count_inversions(std::vector<std::size_t>{}), 0u);
}

TEST(Inversions, MatchQuadraticCount) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_permutation(1 + rng.below(300), rng);
    EXPECT_EQ(count_inversions(p), oracle::inversions(p));
  }
}

TEST(Sampler, RemyTreesAreWellFormed) {
  Rng rng(21);
  for (std::size_t n = 1; n <= 40; ++n) {
    const PlaneTree t = random_plane_tree(n, rng);
    EXPECT_EQ(t.leaf_count(), n);
    EXPECT_EQ(parse_plane_tree(t.to_string()), t);
  }
  EXPECT_EQ(random_plane_tree(2, rng).to_string(), "(L L)");
}

TEST(Sampler, ThreeLeavesHalfAndHalf) {
  Rng rng(4);
  const int draws = 10000;
  int left_cherry = 0;
  for (int i = 0; i < draws; ++i) left_cherry += random_plane_tree(3, rng).to_string() == "((L L) L)";
  // chi-square with one degree of freedom
  const double x = std::pow(left_cherry - draws / 2.0, 2) / (draws / 4.0);
  EXPECT_GT(std::erfc(std::sqrt(x / 2)), 1e-3);
}

TEST(Sampler, FiveLeavesEachTreeNearOneFourteenth) {
  Rng rng(6);
  const int draws = 140000;
  std::map<std::string, int> freq;
  for (int i = 0; i < draws; ++i) ++freq[random_plane_tree(5, rng).to_string()];
  ASSERT_EQ(freq.size(), 14u);
  const double p = 1.0 / 14, sd = std::sqrt(draws * p * (1 - p));
  for (const auto& [tree, f] : freq) EXPECT_LT(std::abs(f - draws * p), 5 * sd) << tree;
}

TEST(Sampler, PermutationsUniformOnThree) {
  Rng rng(10);
  std::map<std::vector<std::size_t>, int> freq;
  for (int i = 0; i < 60000; ++i) ++freq[random_permutation(3, rng)];
  ASSERT_EQ(freq.size(), 6u);
  for (const auto& [p, f] : freq) EXPECT_LT(std::abs(f - 10000), 500);
}

TEST(Sampler, SameSeedSameLayout) {
  Rng a(77), b(77);
  for (int i = 0; i < 20; ++i)
    EXPECT_EQ(random_tanglegram_layout(30, a).to_string(), random_tanglegram_layout(30, b).to_string());
  Rng x(stream_seed(1, 0)), y(stream_seed(1, 1));
  EXPECT_NE(random_tanglegram_layout(30, x).to_string(), random_tanglegram_layout(30, y).to_string());
}

TEST(Crossing, KnownValues) {
  EXPECT_EQ(tangle_crossing_exact(Tanglegram::parse(kNo6)).crossings, 1u);
  EXPECT_EQ(tangle_crossing_exact(Tanglegram::parse(kNo13)).crossings, 1u);
  EXPECT_EQ(tangle_crossing_exact(Tanglegram::parse("(((L L) L) L)|(((L L) L) L)|1,2,3,4")).crossings, 0u);
  EXPECT_EQ(tangle_crossing_exact(Tanglegram::parse("L|L|1")).crossings, 0u);
  EXPECT_EQ(layout_crossings(Tanglegram::parse("cb:2|cb:2|4,3,2,1")), 6u);
  EXPECT_EQ(tangle_crossing_exact(Tanglegram::parse("cb:2|cb:2|4,3,2,1")).crossings, 0u);
}

TEST(Crossing, MatchesIndependentOracle) {
  Rng rng(12);
  for (int i = 0; i < 150; ++i) {
    const auto t = random_tanglegram_layout(2 + rng.below(6), rng);
    const auto exact = tangle_crossing_exact(t);
    EXPECT_EQ(exact.crossings,
              oracle::crossing_number(t.left().to_string(), t.right().to_string(), sigma_of(t)))
        << t.to_string();
    EXPECT_EQ(layout_crossings(t.apply(exact.flips)), exact.crossings);
    if (t.size() <= 6) {
      EXPECT_EQ(exact.crossings, tangle_crossing_bruteforce(t));
    }
  }
}

TEST(Crossing, InvariantUnderFlipsAndBounded) {
  Rng rng(13);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 4 + rng.below(6);
    const auto t = random_tanglegram_layout(n, rng);
    const auto c = tangle_crossing_exact(t).crossings;
    EXPECT_LE(c, layout_crossings(t));
    EXPECT_LE(c, n * (n - 1) / 2);
    FlipAssignment f{flip_bits(rng(), n - 1), flip_bits(rng(), n - 1)};
    EXPECT_EQ(tangle_crossing_exact(t.apply(f)).crossings, c);
  }
}

TEST(Crossing, SizeCaps) {
  Rng rng(1);
  const auto t = random_tanglegram_layout(11, rng);
  EXPECT_THROW(tangle_crossing_exact(t), LimitExceeded);
  EXPECT_NO_THROW(tangle_crossing_exact(t, 11));
  EXPECT_THROW(tangle_crossing_bruteforce(t), LimitExceeded);
}

TEST(Catalog, ClassCountsMatchRelabelingOracle) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::set<std::string> keys;
    for (const auto& t : all_layouts(n))
      keys.insert(oracle::tanglegram_key(t.left().to_string(), t.right().to_string(), sigma_of(t)));
    EXPECT_EQ(enumerate_tanglegrams(n).size(), keys.size()) << "n=" << n;
  }
  EXPECT_EQ(enumerate_tanglegrams(2).size(), 1u);
  EXPECT_EQ(enumerate_tanglegrams(3).size(), 2u);
  EXPECT_EQ(enumerate_tanglegrams(4).size(), 13u);
  EXPECT_EQ(enumerate_tanglegrams(5).size(), 114u);
  EXPECT_THROW(enumerate_tanglegrams(6), LimitExceeded);
}

TEST(Catalog, CanonicalEncodingIsAClassInvariant) {
  const auto layouts = all_layouts(4);
  auto key = [](const Tanglegram& t) {
    return oracle::tanglegram_key(t.left().to_string(), t.right().to_string(), sigma_of(t));
  };
  for (std::size_t ref : {0, 77, 599}) {
    const Tanglegram& t = layouts[ref];
    for (const auto& u : layouts) EXPECT_EQ(canonical_encoding(t) == canonical_encoding(u), key(t) == key(u));
  }
}

TEST(Catalog, SizeFourClasses) {
  int crt_one = 0, no6 = 0, no13 = 0;
  std::map<std::string, int> types;
  for (const auto& t : enumerate_tanglegrams(4)) {
    const auto c = classify_size4(t);
    ++types[c.pair_type];
    crt_one += c.crossing_number == 1;
    no6 += c.is_no6;
    no13 += c.is_no13;
    EXPECT_LE(c.crossing_number, 1u);
  }
  EXPECT_EQ(crt_one, 2);
  EXPECT_EQ(no6, 1);
  EXPECT_EQ(no13, 1);
  EXPECT_EQ(types["C4/C4"] + types["C4/CB2"] + types["CB2/C4"] + types["CB2/CB2"], 13);
  EXPECT_EQ(types["C4/CB2"], types["CB2/C4"]);
  EXPECT_TRUE(classify_size4(Tanglegram::parse(kNo6)).is_no6);
  EXPECT_TRUE(classify_size4(Tanglegram::parse(kNo13)).is_no13);
  EXPECT_THROW(classify_size4(Tanglegram::parse("cb:3|cb:3|1,2,3,4,5,6,7,8")), InvalidArgument);
}

TEST(Catalog, FourOfTwentyFourMatchingsOfTwoCaterpillars) {
  std::vector<PlaneTree> c4;
  for (const auto& p : enumerate_plane_trees(4))
    if (p.shape() == caterpillar(4)) c4.push_back(p);
  ASSERT_EQ(c4.size(), 4u);
  for (const auto& l : c4)
    for (const auto& r : c4) {
      std::vector<std::size_t> s = {1, 2, 3, 4};
      int hits = 0;
      do hits += classify_size4(Tanglegram(l, r, s)).is_no6;
      while (std::next_permutation(s.begin(), s.end()));
      EXPECT_EQ(hits, 4) << l.to_string() << " " << r.to_string();
    }
}

TEST(Automorphisms, MatchRelabelingOracle) {
  for (const auto& t : all_layouts(4))
    EXPECT_EQ(tanglegram_automorphism_order(t),
              oracle::tanglegram_automorphisms(t.left().to_string(), t.right().to_string(), sigma_of(t)));
  Rng rng(14);
  for (int i = 0; i < 40; ++i) {
    const auto t = random_tanglegram_layout(5 + rng.below(2), rng);
    EXPECT_EQ(tanglegram_automorphism_order(t),
              oracle::tanglegram_automorphisms(t.left().to_string(), t.right().to_string(), sigma_of(t)));
  }
}

TEST(Automorphisms, PowersOfTwoDividingTreeOrders) {
  Rng rng(15);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_tanglegram_layout(1 + rng.below(9), rng);
    const auto a = tanglegram_automorphism_order(t);
    EXPECT_EQ(a & (a - 1), 0u);
    EXPECT_EQ(automorphism_order(t.left().shape()) % BigInt(static_cast<unsigned long>(a)), 0);
    EXPECT_EQ(automorphism_order(t.right().shape()) % BigInt(static_cast<unsigned long>(a)), 0);
  }
  EXPECT_EQ(tanglegram_automorphism_order(Tanglegram::parse("L|L|1")), 1u);
  EXPECT_EQ(tanglegram_automorphism_order(Tanglegram::parse("(((L L) L) L)|(((L L) L) L)|1,2,3,4")), 2u);
}

TEST(Automorphisms, OrbitStabilizerSums) {
  // sum over layouts of |A| / 2^{2n-2} counts tanglegrams
  const std::map<std::size_t, std::size_t> t_n = {{2, 1}, {3, 2}, {4, 13}, {5, 114}};
  for (const auto& [n, count] : t_n) {
    BigRational sum(0);
    for (const auto& t : all_layouts(n))
      sum = sum + BigRational(BigInt(static_cast<unsigned long>(tanglegram_automorphism_order(t))), pow2(2 * n - 2));
    EXPECT_EQ(sum, BigRational(static_cast<long>(count))) << "n=" << n;
  }
}

TEST(No6, QuadruplesInducingCaterpillars) {
  EXPECT_EQ(c4_quadruples(PlaneTree::from_shape(complete(3))).size(), 32u);
  EXPECT_EQ(c4_quadruples(PlaneTree::from_shape(caterpillar(6))).size(), 15u);
  EXPECT_EQ(c4_quadruples(PlaneTree::from_shape(complete(2))).size(), 0u);
  Rng rng(16);
  for (int i = 0; i < 30; ++i) {
    const PlaneTree t = random_plane_tree(4 + rng.below(12), rng);
    const auto q = c4_quadruples(t);
    EXPECT_EQ(BigInt(static_cast<unsigned long>(q.size())), count_induced(caterpillar(4), t.shape()));
    for (const auto& u : q) EXPECT_EQ(induce(t, u), caterpillar(4));
  }
}

TEST(No6, FastCountMatchesRestrictionAndOracle) {
  Rng rng(17);
  for (int i = 0; i < 120; ++i) {
    const auto t = random_tanglegram_layout(4 + rng.below(6), rng);
    const auto fast = no6_count(t);
    EXPECT_EQ(fast, no6_count_slow(t)) << t.to_string();
    if (t.size() <= 8) {
      EXPECT_EQ(fast, oracle::no6_count(t.left().to_string(), t.right().to_string(), sigma_of(t)));
    }
  }
}

TEST(No6, BoundExamples) {
  EXPECT_EQ(no6_lower_bound(Tanglegram::parse(kNo6)).str(), "1");
  EXPECT_EQ(no6_lower_bound(Tanglegram::parse(kNo13)).str(), "0");
  for (std::size_t n : {4, 10, 40}) {
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i + 1;
    const auto c = PlaneTree::from_shape(caterpillar(n));
    EXPECT_EQ(no6_lower_bound(Tanglegram(c, c, id)).str(), "0");
  }
  EXPECT_THROW(no6_lower_bound(Tanglegram::parse("(L (L L))|(L (L L))|1,2,3")), InvalidArgument);
}

TEST(No6, BoundNeverExceedsCrossingNumber) {
  Rng rng(18);
  for (int i = 0; i < 300; ++i) {
    const auto t = random_tanglegram_layout(4 + rng.below(7), rng);
    EXPECT_LE(no6_lower_bound(t), BigRational(BigInt(static_cast<unsigned long>(tangle_crossing_exact(t).crossings))))
        << t.to_string();
  }
}

TEST(No6, PairProbabilityUnderRandomMatching) {
  // fixed U, V inducing C_4 in both trees; P[sigma(U)=V and No. 6] = 4 (n-4)!/n!
  const std::size_t n = 6;
  const PlaneTree l = PlaneTree::from_shape(caterpillar(n));
  const PlaneTree r = parse_plane_tree("((L (L (L L))) (L L))");
  const std::vector<std::size_t> U = {1, 2, 3, 4}, V = {1, 2, 3, 5};
  ASSERT_EQ(induce(l, U), caterpillar(4));
  ASSERT_EQ(induce(r, V), caterpillar(4));
  Rng rng(19);
  const int draws = 180000;
  int hits = 0;
  for (int i = 0; i < draws; ++i) {
    const auto s = random_permutation(n, rng);
    std::vector<std::size_t> img;
    for (auto u : U) img.push_back(s[u - 1]);
    std::sort(img.begin(), img.end());
    if (img != V) continue;
    hits += classify_size4(induced_tanglegram(Tanglegram(l, r, s), U)).is_no6;
  }
  const double p = 4.0 * 2 / 720;
  EXPECT_NEAR(hits / static_cast<double>(draws), p, 4.5 * std::sqrt(p * (1 - p) / draws));
}

TEST(Experiment, DeterministicAndWorkerIndependent) {
  ExperimentConfig c;
  c.n = 24;
  c.trials = 30;
  c.seed = 7;
  const auto a = expectation_experiment(c);
  const auto b = expectation_experiment(c);
  c.jobs = 4;
  const auto d = expectation_experiment(c);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.samples, d.samples);
  EXPECT_EQ(a.mean_bound, d.mean_bound);
  c.seed = 8;
  EXPECT_NE(expectation_experiment(c).samples, a.samples);
}

TEST(Experiment, StatisticsAreConsistent) {
  ExperimentConfig c;
  c.n = 16;
  c.trials = 50;
  c.seed = 3;
  const auto r = expectation_experiment(c);
  double sum = 0;
  for (double x : r.samples) sum += x;
  EXPECT_DOUBLE_EQ(r.mean_bound, sum / 50);
  EXPECT_LE(r.q10, r.q50);
  EXPECT_LE(r.q50, r.q90);
  EXPECT_GE(r.frac_ge_theta, 0.0);
  EXPECT_LE(r.frac_ge_theta, 1.0);
  EXPECT_GE(r.var_bound, 0.0);
  EXPECT_DOUBLE_EQ(quantile_sorted({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 0.1), 2.0);
}

TEST(Experiment, AutomorphismWeighting) {
  ExperimentConfig c;
  c.n = 10;
  c.trials = 40;
  c.seed = 2;
  c.weighting = Weighting::automorphism;
  const auto r = expectation_experiment(c);
  ASSERT_TRUE(r.weighted_mean);
  EXPECT_GE(*r.weighted_mean, 0.0);
  c.n = 13;
  EXPECT_THROW(expectation_experiment(c), LimitExceeded);
  c.n = 3;
  c.weighting = Weighting::layout;
  EXPECT_THROW(expectation_experiment(c), InvalidArgument);
}

TEST(Experiment, VarianceGrowsLikeCube) {
  std::vector<double> ratio;
  for (std::size_t n : {32, 64, 128}) {
    ExperimentConfig c;
    c.n = n;
    c.trials = 60;
    c.seed = 100 + n;
    const auto r = expectation_experiment(c);
    ratio.push_back(r.var_bound / std::pow(static_cast<double>(n), 3));
  }
  for (std::size_t i = 1; i < ratio.size(); ++i) {
    EXPECT_LT(ratio[i] / ratio[i - 1], 4.0);
    EXPECT_GT(ratio[i] / ratio[i - 1], 0.25);
  }
}
