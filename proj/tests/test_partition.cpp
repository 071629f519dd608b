#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "mkstar/error.hpp"
#include "mkstar/partition.hpp"
#include "mkstar/reduce.hpp"
#include "oracle.hpp"

using namespace mkstar;

namespace {

// Labels equal up to renaming clusters.
bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  std::map<std::size_t, std::size_t> fwd;
  std::map<std::size_t, std::size_t> bwd;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (fwd.emplace(a[i], b[i]).first->second != b[i]) return false;
    if (bwd.emplace(b[i], a[i]).first->second != a[i]) return false;
  }
  return true;
}

const std::vector<std::size_t> kTriangles{0, 0, 0, 1, 1, 1};

}  // namespace

TEST(Fiedler, PathP4) {
  const auto f = fiedler(oracle::f4());
  EXPECT_NEAR(f.lambda2, 2.0 - std::sqrt(2.0), 1e-10);
  EXPECT_FALSE(f.degenerate);
  EXPECT_GT(f.vector(0), 0);
  EXPECT_GT(f.vector(1), 0);
  EXPECT_LT(f.vector(2), 0);
  EXPECT_LT(f.vector(3), 0);
  EXPECT_NEAR(f.vector.sum(), 0.0, 1e-9);
  EXPECT_NEAR(f.vector.norm(), 1.0, 1e-12);
  const DenseMatrix l = laplacian(oracle::f4());
  EXPECT_LE((l * f.vector - f.lambda2 * f.vector).norm(), 1e-9);
}

TEST(Fiedler, F1Degenerate) {
  const auto f = fiedler(oracle::f1());
  EXPECT_NEAR(f.lambda2, 2.0, 1e-10);
  EXPECT_TRUE(f.degenerate);
  EXPECT_EQ(f.multiplicity, 2u);
}

TEST(Fiedler, SingleEdge) {
  const auto f = fiedler(Graph::build(2, {{0, 1, 1.7}}));
  EXPECT_NEAR(f.lambda2, 3.4, 1e-12);
  EXPECT_NEAR(f.vector(0), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(f.vector(1), -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Fiedler, Disconnected) {
  try {
    fiedler(Graph::build(4, {{0, 1, 1.0}, {2, 3, 1.0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Disconnected);
  }
  EXPECT_THROW(sign_bipartition(Graph::build(3, {{0, 1, 1.0}})), Error);
  EXPECT_THROW(kway(Graph::build(3, {{0, 1, 1.0}}), 2), Error);
  EXPECT_THROW(recursive_bisection(Graph::build(3, {{0, 1, 1.0}}), MaxClusters{2}), Error);
}

TEST(SignBipartition, Examples) {
  EXPECT_EQ(sign_bipartition(oracle::f4()).labels, (std::vector<std::size_t>{0, 0, 1, 1}));
  EXPECT_EQ(sign_bipartition(Graph::build(2, {{0, 1, 1.0}})).labels, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(same_partition(sign_bipartition(oracle::f2()).labels, {0, 1, 0, 0, 1, 1}));
}

TEST(SignBipartition, ZeroEntriesReported) {
  // Path of 3: the middle vertex has a zero Fiedler entry.
  const auto p = sign_bipartition(Graph::build(3, {{0, 1, 1.0}, {1, 2, 1.0}}));
  EXPECT_EQ(p.zero_entries, (std::vector<Vertex>{1}));
  EXPECT_EQ(p.labels[1], 0u);
  EXPECT_EQ(p.cluster_count(), 2u);
}

TEST(RSB, Examples) {
  EXPECT_EQ(recursive_bisection(oracle::f4(), MaxClusters{2}).labels, sign_bipartition(oracle::f4()).labels);
  EXPECT_TRUE(same_partition(recursive_bisection(oracle::two_triangles(), MaxClusters{2}).labels, kTriangles));
  const auto four = recursive_bisection(oracle::f4(), MaxClusters{4});
  EXPECT_EQ(four.cluster_count(), 4u);
  EXPECT_EQ(std::set<std::size_t>(four.labels.begin(), four.labels.end()).size(), 4u);
}

TEST(RSB, Lambda2Threshold) {
  // The light bridge gives lambda2 ~ 1e-3; each triangle has lambda2 = 3.
  const auto p = recursive_bisection(oracle::two_triangles(), Lambda2Threshold{1.0});
  EXPECT_TRUE(same_partition(p.labels, kTriangles));
}

TEST(KWay, Examples) {
  EXPECT_TRUE(same_partition(kway(oracle::two_triangles(), 2).labels, kTriangles));
  EXPECT_TRUE(same_partition(kway(oracle::f4(), 2).labels, {0, 0, 1, 1}));
  const auto all = kway(oracle::f4(), 4);
  EXPECT_EQ(all.cluster_count(), 4u);
  try {
    kway(oracle::f4(), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadK);
  }
  EXPECT_THROW(kway(oracle::f4(), 1), Error);
  // Auto picks the dominant gap after the near-zero lambda2.
  EXPECT_TRUE(same_partition(kway(oracle::two_triangles(), std::nullopt).labels, kTriangles));
}

TEST(KWay, PlantedBlocksRecovered) {
  // Blocks joined by edges 1e-3 times lighter than intra-block weights.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t blocks = 2 + seed % 3;
    const std::size_t size = 4 + seed % 3;
    std::vector<Edge> e;
    std::vector<std::size_t> truth;
    for (std::size_t b = 0; b < blocks; ++b) {
      for (std::size_t i = 0; i < size; ++i) {
        truth.push_back(b);
        for (std::size_t j = i + 1; j < size; ++j) {
          e.push_back({b * size + i, b * size + j, 1.0 + 0.1 * double((i + j + seed) % 5)});
        }
      }
      if (b + 1 < blocks) e.push_back({b * size + (seed % size), (b + 1) * size, 1e-3});
    }
    const auto g = Graph::build(blocks * size, e);
    EXPECT_TRUE(same_partition(kway(g, blocks).labels, truth)) << seed;
  }
}

TEST(Partitioning, Deterministic) {
  const auto g = plant_star_graph(5, 40, {{3, 2, 1.0}});
  EXPECT_EQ(kway(g, 3).labels, kway(g, 3).labels);
  EXPECT_EQ(recursive_bisection(g, MaxClusters{4}).labels, recursive_bisection(g, MaxClusters{4}).labels);
}

TEST(ReducedFiedler, Examples) {
  const auto r1 = reduce_all(oracle::f1(), CollapsePolicy::KeepPair);
  const auto f1 = reduced_fiedler(r1);
  EXPECT_NEAR(f1.lambda2, 2.0, 1e-10);
  EXPECT_FALSE(f1.degenerate);

  const auto r2 = reduce_all(oracle::f2(), CollapsePolicy::CollapseToOne);
  const auto f2 = reduced_fiedler(r2);
  EXPECT_NEAR(f2.lambda2, (5.0 - std::sqrt(17.0)) / 2.0, 1e-10);
  EXPECT_LT(f2.vector(0) * f2.vector(1), 0.0);  // former centres on opposite sides

  const auto id = reduce_all(oracle::f4(), CollapsePolicy::CollapseToOne);
  const auto a = reduced_fiedler(id);
  const auto b = fiedler(oracle::f4());
  EXPECT_NEAR(a.lambda2, b.lambda2, 1e-14);
  EXPECT_LE((a.vector - b.vector).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CompareSigns, Examples) {
  const auto g2 = oracle::f2();
  const auto rep = compare_signs(g2, reduce_all(g2, CollapsePolicy::CollapseToOne));
  EXPECT_FALSE(rep.degenerate);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.agreement, 1.0);
  EXPECT_EQ(rep.pairs.size(), 4u);

  const auto g1 = oracle::f1();
  const auto deg = compare_signs(g1, reduce_all(g1, CollapsePolicy::KeepPair));
  EXPECT_TRUE(deg.degenerate);
}

TEST(CompareSigns, PlantedStars) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = plant_star_graph(seed, 30, {{3, 2, 1.0 + double(seed % 3)}});
    const auto rep = compare_signs(g, reduce_all(g, CollapsePolicy::CollapseToOne));
    if (rep.degenerate) continue;
    ++checked;
    EXPECT_TRUE(rep.passed) << seed;
  }
  EXPECT_GE(checked, 20);
}

TEST(LiftPartition, RemovedVerticesFollowTwin) {
  const auto g2 = oracle::f2();
  const auto r = reduce_all(g2, CollapsePolicy::CollapseToOne);
  const auto lifted = lift_partition(r, sign_bipartition(r.reduced));
  EXPECT_TRUE(same_partition(lifted.labels, sign_bipartition(g2).labels));
  EXPECT_EQ(lifted.labels[3], lifted.labels[2]);
  EXPECT_EQ(lifted.labels[5], lifted.labels[4]);
}
