#include <cmath>

#include <gtest/gtest.h>

#include "mkstar/error.hpp"
#include "mkstar/spectrum.hpp"
#include "oracle.hpp"

using namespace mkstar;

TEST(SymEigen, TwoByTwo) {
  DenseMatrix a(2, 2);
  a << 1, -1, -1, 1;
  const auto s = sym_eigen(a);
  EXPECT_NEAR(s.values[0], 0.0, 1e-15);
  EXPECT_NEAR(s.values[1], 2.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(s.vectors(0, 0), r, 1e-15);
  EXPECT_NEAR(s.vectors(1, 0), r, 1e-15);
  EXPECT_NEAR(s.vectors(0, 1), r, 1e-15);  // first entry positive by convention
  EXPECT_NEAR(s.vectors(1, 1), -r, 1e-15);
}

TEST(SymEigen, F1LaplacianMatchesOracleAndClosedForm) {
  const auto l = laplacian(oracle::f1());
  const auto got = sym_eigen(l).values;
  // K_{a,b}: 0, b (a-1 times), a (b-1 times), a+b.
  const std::vector<double> closed{0, 2, 2, 3, 5};
  EXPECT_LE(oracle::max_diff(got, closed), 1e-10);
  EXPECT_LE(oracle::max_diff(oracle::jacobi_eigenvalues(l), closed), 1e-10);
}

TEST(SymEigen, Identity) {
  const auto s = sym_eigen(DenseMatrix::Identity(3, 3));
  EXPECT_EQ(s.values, (std::vector<double>{1, 1, 1}));
}

TEST(SymEigen, RejectsAsymmetric) {
  DenseMatrix a(2, 2);
  a << 1, 2, 3, 1;
  try {
    sym_eigen(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSymmetric);
  }
}

TEST(SymEigen, EmptyMatrix) { EXPECT_TRUE(sym_eigen(DenseMatrix(0, 0)).values.empty()); }

TEST(SymEigen, SignConvention) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = sym_eigen(oracle::random_symmetric(8, seed));
    for (Eigen::Index c = 0; c < s.vectors.cols(); ++c) {
      for (Eigen::Index r = 0; r < s.vectors.rows(); ++r) {
        if (std::abs(s.vectors(r, c)) > 1e-12) {
          EXPECT_GT(s.vectors(r, c), 0.0);
          break;
        }
      }
    }
  }
}

TEST(SymEigenProperties, ReconstructionTraceOrthonormality) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 50;
    const auto a = oracle::random_symmetric(n, seed);
    const auto s = sym_eigen(a);
    const Eigen::Map<const Vector> vals(s.values.data(), static_cast<Eigen::Index>(n));
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const DenseMatrix back = s.vectors * vals.asDiagonal() * s.vectors.transpose();
    EXPECT_LE((back - a).cwiseAbs().maxCoeff(), 1e-9 * scale);
    EXPECT_LE((s.vectors.transpose() * s.vectors - DenseMatrix::Identity(a.rows(), a.cols()))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
    const DenseMatrix resid = a * s.vectors - s.vectors * vals.asDiagonal();
    EXPECT_LE(resid.cwiseAbs().maxCoeff(), 1e-10 * scale);
    EXPECT_NEAR(vals.sum(), a.trace(), 1e-9 * std::max(1.0, std::abs(a.trace())));
    EXPECT_TRUE(std::is_sorted(s.values.begin(), s.values.end()));
    EXPECT_LE(oracle::max_diff(s.values, oracle::jacobi_eigenvalues(a)), 1e-9 * scale);
  }
}

TEST(SymEigenProperties, Deterministic) {
  const auto a = oracle::random_symmetric(30, 99);
  const auto s1 = sym_eigen(a);
  const auto s2 = sym_eigen(a);
  EXPECT_EQ(s1.values, s2.values);
  EXPECT_EQ(s1.vectors, s2.vectors);
}

TEST(SymEigenProperties, ZeroMultiplicityCountsComponents) {
  const auto g = Graph::build(7, {{0, 1, 1.0}, {1, 2, 2.0}, {3, 4, 0.5}});
  const auto table = group_multiplicities(sym_eigen(laplacian(g)).values);
  EXPECT_EQ(multiplicity_at(table, 0.0), connected_components(g).size());
}

TEST(Multiplicity, Grouping) {
  const std::vector<double> f1{0, 2, 2, 3, 5};
  const auto t = group_multiplicities(f1, 1e-8);
  ASSERT_EQ(t.groups.size(), 4u);
  EXPECT_EQ(t.groups[1].value, 2.0);
  EXPECT_EQ(t.groups[1].multiplicity, 2u);
  EXPECT_EQ(t.groups[1].first, 1u);

  const std::vector<double> zeros{0, 0, 0};
  EXPECT_EQ(group_multiplicities(zeros).groups.size(), 1u);

  const std::vector<double> near{0, 1e-12, 1};
  const auto tn = group_multiplicities(near, 1e-8);
  ASSERT_EQ(tn.groups.size(), 2u);
  EXPECT_EQ(tn.groups[0].multiplicity, 2u);
  EXPECT_NEAR(tn.groups[0].value, 0.0, 1e-12);
}

TEST(Multiplicity, At) {
  const std::vector<double> f1{0, 2, 2, 3, 5};
  const auto t = group_multiplicities(f1);
  EXPECT_EQ(multiplicity_at(t, 2.0), 2u);
  EXPECT_EQ(multiplicity_at(t, 7.0), 0u);
  const auto f3 = group_multiplicities(sym_eigen(laplacian(oracle::f3())).values);
  EXPECT_GE(multiplicity_at(f3, 6.0), 1u);
}

TEST(SpectralGap, Examples) {
  const std::vector<double> a{0, 0.1, 0.12, 3.0, 3.1};
  EXPECT_EQ(spectral_gap_index(a), 3u);
  const std::vector<double> b{0, 1, 2, 3};
  EXPECT_EQ(spectral_gap_index(b), 1u);
  const std::vector<double> c{0, 2, 2, 3, 5};
  EXPECT_EQ(spectral_gap_index(c), 1u);
  const std::vector<double> d{1};
  EXPECT_THROW(spectral_gap_index(d), Error);
}

TEST(MatchSpectra, GreedyNearest) {
  const std::vector<double> e{0, 1, 1, 2};
  const std::vector<double> a{2 + 1e-12, 1, 0, 1 - 1e-12};
  const auto m = match_spectra(e, a, 1e-8);
  EXPECT_TRUE(m.matched());
  EXPECT_LE(m.max_deviation, 1e-11);

  const std::vector<double> b{0, 1, 2};
  const auto bad = match_spectra(e, b, 1e-8);
  EXPECT_FALSE(bad.matched());
  EXPECT_EQ(bad.unmatched_expected, (std::vector<double>{1}));
}

TEST(MatchSpectra, RemoveCopies) {
  const std::vector<double> v{0, 2, 2, 3, 5};
  std::size_t removed = 0;
  const auto rest = remove_copies(v, 2.0, 1, 1e-8, removed);
  EXPECT_EQ(removed, 1u);
  EXPECT_EQ(rest, (std::vector<double>{0, 2, 3, 5}));
  const auto none = remove_copies(v, 4.0, 2, 1e-8, removed);
  EXPECT_EQ(removed, 0u);
  EXPECT_EQ(none.size(), 5u);
}
