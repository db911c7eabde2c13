// Copyright 2026 The acqgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "acq/random_process.h"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "acq/graph.h"
#include "acq/random.h"
#include "test_util.h"

namespace acq {
namespace {

TEST(PairIndexTest, MatchesEnumerationOrder) {
  // Pairs ordered by larger endpoint, then smaller: (0,1), (0,2), (1,2), ...
  std::uint64_t index = 0;
  for (Vertex v = 1; v < 120; ++v) {
    for (Vertex u = 0; u < v; ++u, ++index) {
      ASSERT_EQ(PairFromIndex(index), Edge(u, v));
      ASSERT_EQ(IndexFromPair(u, v), index);
      ASSERT_EQ(IndexFromPair(v, u), index);
    }
  }
  EXPECT_EQ(PairCount(120), index);
}

TEST(PairIndexTest, LargeIndicesRoundTrip) {
  const std::uint64_t n = 1'000'000;
  for (std::uint64_t i : {PairCount(n) - 1, PairCount(n) / 2, PairCount(n) / 3,
                          std::uint64_t{499'999'500'000}}) {
    const Edge e = PairFromIndex(i);
    EXPECT_LT(e.first, e.second);
    EXPECT_EQ(IndexFromPair(e.first, e.second), i);
  }
}

TEST(EdgeStreamTest, TwoVertices) {
  EdgeStream stream(2, 9);
  EXPECT_EQ(stream.size(), 1u);
  EXPECT_EQ(stream.edge(0), Edge(0, 1));
}

TEST(EdgeStreamTest, SameSeedSameOrder) {
  EdgeStream a(3, 42), b(3, 42);
  const auto pa = a.Prefix(3);
  const auto pb = b.Prefix(3);
  EXPECT_TRUE(std::equal(pa.begin(), pa.end(), pb.begin()));
  std::set<Edge> seen(pa.begin(), pa.end());
  EXPECT_EQ(seen, (std::set<Edge>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(EdgeStreamTest, IsAPermutationOfAllPairs) {
  EdgeStream stream(100, 3);
  const auto all = stream.Prefix(stream.size());
  ASSERT_EQ(all.size(), 4950u);
  std::set<Edge> seen;
  for (const Edge& e : all) {
    EXPECT_LT(e.first, e.second);
    EXPECT_LT(e.second, 100);
    seen.insert(e);
  }
  EXPECT_EQ(seen.size(), 4950u);
  EXPECT_THROW(stream.Prefix(4951), std::out_of_range);
}

TEST(EdgeStreamTest, LazyExtensionMatchesOneShot) {
  EdgeStream lazy(500, 77), eager(500, 77);
  const auto full = eager.Prefix(20000);
  for (std::uint64_t m : {1u, 17u, 300u, 5000u, 20000u}) {
    const auto part = lazy.Prefix(m);
    EXPECT_TRUE(std::equal(part.begin(), part.end(), full.begin()));
  }
  EXPECT_EQ(lazy.PrefixGraph(300).num_edges(), 300u);
}

TEST(EdgeStreamTest, DifferentSeedsDiffer) {
  EdgeStream a(200, 1), b(200, 2);
  const auto pa = a.Prefix(50);
  const auto pb = b.Prefix(50);
  EXPECT_FALSE(std::equal(pa.begin(), pa.end(), pb.begin()));
}

TEST(EdgeStreamTest, FirstEdgeIsUniform) {
  // Each of the 10 pairs of K_5 should lead the stream about 1/10 of the time.
  std::vector<int> hits(10, 0);
  const int draws = 20000;
  for (int s = 0; s < draws; ++s) {
    EdgeStream stream(5, DeriveSeed(99, s));
    const Edge e = stream.edge(0);
    ++hits[IndexFromPair(e.first, e.second)];
  }
  double chi2 = 0.0;
  for (int h : hits)
    chi2 += (h - draws / 10.0) * (h - draws / 10.0) / (draws / 10.0);
  EXPECT_LT(chi2, 27.9);  // 0.999 quantile of chi-square with 9 dof
}

TEST(GnpPrefixLengthTest, Extremes) {
  EdgeStream stream(50, 1);
  EXPECT_EQ(GnpPrefixLength(stream, 0.0, 5), 0u);
  EXPECT_EQ(GnpPrefixLength(stream, 1.0, 5), stream.size());
}

TEST(GnpPrefixLengthTest, MeanAtThreshold) {
  const std::size_t n = 10000;
  const double p = std::log(static_cast<double>(n)) / n;
  EdgeStream stream(n, 1);
  const double expected = static_cast<double>(stream.size()) * p;
  double sum = 0.0;
  for (int s = 0; s < 200; ++s) {
    sum += static_cast<double>(GnpPrefixLength(stream, p, DeriveSeed(5, s)));
  }
  EXPECT_NEAR(sum / 200.0 / expected, 1.0, 0.03);
}

TEST(GnpPrefixLengthTest, BinomialMomentsSmallN) {
  // Edge count of the K-prefix at n = 30 against Binomial(435, p).
  const std::size_t n = 30;
  const double p = 0.1;
  EdgeStream stream(n, 8);
  const double trials = static_cast<double>(stream.size());
  const int samples = 2000;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t k = GnpPrefixLength(stream, p, DeriveSeed(13, s));
    const double edges = static_cast<double>(stream.PrefixGraph(k).num_edges());
    sum += edges;
    sum_sq += edges * edges;
  }
  const double mean = sum / samples;
  const double variance = sum_sq / samples - mean * mean;
  const double binomial_var = trials * p * (1 - p);
  const double standard_error = std::sqrt(binomial_var / samples);
  EXPECT_LT(std::abs(mean - trials * p), 3 * standard_error);
  EXPECT_NEAR(variance / binomial_var, 1.0, 0.15);
}

TEST(GnpPrefixLengthTest, MonotoneInPUnderOneSeed) {
  EdgeStream stream(2000, 4);
  for (int s = 0; s < 50; ++s) {
    std::uint64_t last = 0;
    for (double c : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
      const std::uint64_t k =
          GnpPrefixLength(stream, ThresholdProbability(2000, c), s);
      EXPECT_GE(k, last);
      last = k;
    }
  }
}

TEST(SampleBinomialTest, MeanAndBounds) {
  Rng rng(3);
  for (double p : {0.001, 0.3, 0.7, 0.999}) {
    const std::uint64_t trials = 5000;
    double sum = 0.0;
    for (int i = 0; i < 400; ++i) {
      const std::uint64_t k = SampleBinomial(trials, p, rng);
      ASSERT_LE(k, trials);
      sum += static_cast<double>(k);
    }
    const double se = std::sqrt(trials * p * (1 - p) / 400.0);
    EXPECT_LT(std::abs(sum / 400.0 - trials * p), 4 * se) << "p=" << p;
  }
}

bool PrefixConnected(EdgeStream& stream, std::uint64_t m) {
  const auto label = testing::ReferenceComponents(stream.PrefixGraph(m));
  return std::all_of(label.begin(), label.end(), [](int l) { return l == 0; });
}

TEST(HittingTimeTest, SmallCases) {
  EdgeStream two(2, 1);
  EXPECT_EQ(HittingTimeConnectivity(two), 1u);
  for (int s = 0; s < 30; ++s) {
    EdgeStream three(3, s);
    const std::uint64_t m = HittingTimeConnectivity(three);
    EXPECT_TRUE(m == 2 || m == 3);
  }
}

TEST(HittingTimeTest, IsMinimal) {
  std::mt19937_64 rng(6);
  for (int s = 0; s < 100; ++s) {
    const std::size_t n = 2 + rng() % 49;
    EdgeStream stream(n, DeriveSeed(21, s));
    const std::uint64_t m = HittingTimeConnectivity(stream);
    EXPECT_TRUE(PrefixConnected(stream, m)) << "n=" << n;
    EXPECT_FALSE(PrefixConnected(stream, m - 1)) << "n=" << n;
  }
}

TEST(HittingTimeTest, WindowAtTenThousand) {
  const std::size_t n = 10000;
  const double ln = std::log(static_cast<double>(n));
  int inside = 0;
  for (int s = 0; s < 50; ++s) {
    EdgeStream stream(n, DeriveSeed(31, s));
    const double ratio =
        static_cast<double>(HittingTimeConnectivity(stream)) / (n / 2.0 * ln);
    inside += std::abs(ratio - 1.0) <= 6.0 / ln;
  }
  EXPECT_GE(inside, 45);
}

TEST(OmegaSpecTest, ParseEvaluateAndPrint) {
  const OmegaSpec lnln = OmegaSpec::Parse("lnln");
  EXPECT_EQ(lnln.kind, OmegaSpec::Kind::kLnLn);
  EXPECT_DOUBLE_EQ(lnln.Evaluate(100000), std::log(std::log(100000.0)));
  EXPECT_EQ(lnln.ToString(), "lnln");
  const OmegaSpec constant = OmegaSpec::Parse("2.5");
  EXPECT_EQ(constant.kind, OmegaSpec::Kind::kConstant);
  EXPECT_DOUBLE_EQ(constant.Evaluate(10), 2.5);
  EXPECT_EQ(OmegaSpec::Parse(constant.ToString()).value, 2.5);
  EXPECT_THROW(OmegaSpec::Parse("fast"), std::invalid_argument);
  EXPECT_THROW(OmegaSpec::Parse("1.5x"), std::invalid_argument);
}

TEST(ProbabilityTest, WindowFormulas) {
  const std::size_t n = 1000;
  const double ln = std::log(1000.0);
  EXPECT_DOUBLE_EQ(PMinus(n, 1.0), (ln - 1.0) / 1000.0);
  EXPECT_DOUBLE_EQ(PPlus(n, 1.0), (ln + 1.0) / 1000.0);
  EXPECT_DOUBLE_EQ(ThresholdProbability(n, -3.0), (ln - 3.0) / 1000.0);
  EXPECT_EQ(PMinus(n, 100.0), 0.0);
  EXPECT_EQ(ThresholdProbability(2, 50.0), 1.0);
}

TEST(DegreeStatsTest, SmallGraphs) {
  const DegreeStats cycle = ComputeDegreeStats(CycleGraph(4));
  EXPECT_EQ(cycle.max_degree, 2u);
  EXPECT_EQ(cycle.counts_by_degree,
            (std::map<std::size_t, std::size_t>{{2, 4}}));
  const DegreeStats single = ComputeDegreeStats(Graph::Build(1, {}));
  EXPECT_EQ(single.max_degree, 0u);
  EXPECT_EQ(single.count(0), 1u);
  const DegreeStats star = ComputeDegreeStats(StarGraph(3));
  EXPECT_EQ(star.max_degree, 3u);
  EXPECT_EQ(star.counts_by_degree,
            (std::map<std::size_t, std::size_t>{{1, 3}, {3, 1}}));
}

TEST(DegreeStatsTest, CountsMatchDirectTally) {
  std::mt19937_64 rng(15);
  const Graph g = testing::RandomGraph(200, 0.03, rng);
  const DegreeStats stats = ComputeDegreeStats(g);
  std::size_t total = 0;
  for (auto [d, count] : stats.counts_by_degree) {
    std::size_t direct = 0;
    for (Vertex v = 0; v < 200; ++v) direct += g.degree(v) == d;
    EXPECT_EQ(count, direct);
    total += count;
  }
  EXPECT_EQ(total, 200u);
}

TEST(DegreeLemmaTest, BoundsAndFailures) {
  const std::size_t n = 100000;
  const double ln = std::log(static_cast<double>(n));
  DegreeStats heavy;
  heavy.max_degree = n - 1;
  heavy.counts_by_degree = {{1, n - 1}, {n - 1, 1}};
  const DegreeLemmaReport r1 = CheckDegreeLemmas(heavy, n);
  EXPECT_FALSE(r1.max_degree_ok);
  EXPECT_DOUBLE_EQ(r1.max_degree_bound, 4 * ln);
  EXPECT_FALSE(r1.all_ok());

  DegreeStats empty;
  empty.counts_by_degree = {{0, 5}};
  const DegreeLemmaReport r2 = CheckDegreeLemmas(empty, 5);
  ASSERT_EQ(r2.degree_counts.size(), 3u);
  EXPECT_FALSE(r2.degree_counts[0].ok);
  EXPECT_DOUBLE_EQ(r2.degree_counts[0].bound, std::log(5.0));
  EXPECT_DOUBLE_EQ(r2.degree_counts[2].bound, std::pow(std::log(5.0), 3));
  EXPECT_FALSE(r2.all_ok());
}

TEST(DegreeLemmaTest, OneSampleAtPMinus) {
  const std::size_t n = 100000;
  EdgeStream stream(n, 12);
  const double p = PMinus(n, OmegaSpec{}.Evaluate(n));
  const Graph base = stream.PrefixGraph(GnpPrefixLength(stream, p, 3));
  const DegreeLemmaReport report =
      CheckDegreeLemmas(ComputeDegreeStats(base), n);
  EXPECT_TRUE(report.max_degree_ok);
  // Counts of degree 1 and 2 sit far below their bounds.
  EXPECT_TRUE(report.degree_counts[1].ok);
  EXPECT_TRUE(report.degree_counts[2].ok);
}

TEST(RngTest, UniformIndexIsUniformAndInRange) {
  Rng rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const std::uint64_t x = rng.UniformIndex(7);
    ASSERT_LT(x, 7u);
    ++hits[x];
  }
  double chi2 = 0.0;
  for (int h : hits) chi2 += (h - 10000.0) * (h - 10000.0) / 10000.0;
  EXPECT_LT(chi2, 22.5);  // 0.999 quantile, 6 dof
}

TEST(RngTest, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t m = 0; m < 10; ++m) {
    for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(DeriveSeed(m, i));
  }
  EXPECT_EQ(seeds.size(), 10000u);
}

}  // namespace
}  // namespace acq
