#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mkstar/graph.hpp"

namespace mkstar {

inline constexpr double kDefaultTolerance = 1e-8;

// Ascending eigenvalues of a symmetric matrix; column i of `vectors` pairs
// with values[i]. Each column is sign-normalized so its first entry of
// magnitude > 1e-12 is positive.
struct Spectrum {
  std::vector<double> values;
  DenseMatrix vectors;

  std::size_t order() const { return values.size(); }
  Vector vector(std::size_t i) const { return vectors.col(static_cast<Eigen::Index>(i)); }
};

// Throws NotSymmetric when |a - a^T|_max > 1e-12 max(1, |a|_max) and
// IterationLimit when the QL iteration does not converge.
Spectrum sym_eigen(const DenseMatrix& a);

// Flip v so that its first entry of magnitude > 1e-12 is positive.
void normalize_sign(Eigen::Ref<Vector> v);

struct MultiplicityGroup {
  double value = 0.0;  // mean of the grouped eigenvalues
  std::size_t multiplicity = 0;
  std::size_t first = 0;  // index of the first member in the spectrum
};

struct MultiplicityTable {
  std::vector<MultiplicityGroup> groups;
  // max(1, max |value|); the absolute gap threshold is tol_rel * scale.
  double scale = 1.0;
};

// Single-linkage grouping: neighbours closer than tol_rel * max(1, max|value|)
// fall in one group. `values` must be ascending.
MultiplicityTable group_multiplicities(std::span<const double> values,
                                       double tol_rel = kDefaultTolerance);

// Multiplicity of the group whose representative lies within
// tol_rel * max(table.scale, |target|) of `target`; zero if none.
std::size_t multiplicity_at(const MultiplicityTable& table, double target,
                            double tol_rel = kDefaultTolerance);

// 1-based k maximizing values[k] - values[k-1] (0-based indexing), i.e. the
// largest gap sits between the k-th and (k+1)-th eigenvalue. Ties pick the
// smallest k.
std::size_t spectral_gap_index(std::span<const double> values);

// Outcome of pairing two eigenvalue multisets by nearest value.
struct SpectrumMatch {
  std::vector<double> unmatched_expected;
  std::vector<double> unmatched_actual;
  double max_deviation = 0.0;  // over matched pairs

  bool matched() const { return unmatched_expected.empty() && unmatched_actual.empty(); }
};

// Greedy nearest-value pairing with absolute tolerance `tol`.
SpectrumMatch match_spectra(std::span<const double> expected, std::span<const double> actual,
                            double tol);

// Removes up to `count` values nearest to `target` (each within `tol`) and
// returns the rest; `removed` receives how many were actually removed.
std::vector<double> remove_copies(std::span<const double> values, double target,
                                  std::size_t count, double tol, std::size_t& removed);

}  // namespace mkstar
