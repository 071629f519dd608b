#include "mkstar/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mkstar {

void normalize_sign(Eigen::Ref<Vector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

Spectrum sym_eigen(const DenseMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::NotSymmetric, "matrix is not square");
  }
  const double scale = std::max(1.0, max_abs(a));
  if (a.size() > 0 && max_abs(a - a.transpose()) > 1e-12 * scale) {
    throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
  }

  Spectrum s;
  if (a.rows() == 0) return s;

  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::IterationLimit, "symmetric eigensolver did not converge");
  }
  const auto& values = solver.eigenvalues();
  s.values.assign(values.data(), values.data() + values.size());
  s.vectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < s.vectors.cols(); ++j) normalize_sign(s.vectors.col(j));
  return s;
}

MultiplicityTable group_multiplicities(std::span<const double> values, double tol_rel) {
  MultiplicityTable table;
  for (double v : values) table.scale = std::max(table.scale, std::abs(v));
  const double gap = tol_rel * table.scale;

  std::size_t start = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > gap) {
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) sum += values[j];
      table.groups.push_back({sum / static_cast<double>(i - start), i - start, start});
      start = i;
    }
  }
  return table;
}

std::size_t multiplicity_at(const MultiplicityTable& table, double target, double tol_rel) {
  const double tol = tol_rel * std::max(table.scale, std::abs(target));
  const MultiplicityGroup* best = nullptr;
  for (const auto& g : table.groups) {
    const double d = std::abs(g.value - target);
    if (d <= tol && (best == nullptr || d < std::abs(best->value - target))) best = &g;
  }
  return best ? best->multiplicity : 0;
}

std::size_t spectral_gap_index(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorKind::TooFewValues, "spectral gap needs at least two eigenvalues");
  }
  std::size_t best = 1;
  double best_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double gap = values[k] - values[k - 1];
    if (gap > best_gap) {
      best_gap = gap;
      best = k;
    }
  }
  return best;
}

SpectrumMatch match_spectra(std::span<const double> expected, std::span<const double> actual,
                            double tol) {
  SpectrumMatch result;
  std::vector<bool> used(actual.size(), false);
  for (double e : expected) {
    std::size_t best = actual.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < actual.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(actual[j] - e);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best < actual.size() && best_d <= tol) {
      used[best] = true;
      result.max_deviation = std::max(result.max_deviation, best_d);
    } else {
      result.unmatched_expected.push_back(e);
    }
  }
  for (std::size_t j = 0; j < actual.size(); ++j) {
    if (!used[j]) result.unmatched_actual.push_back(actual[j]);
  }
  return result;
}

std::vector<double> remove_copies(std::span<const double> values, double target,
                                  std::size_t count, double tol, std::size_t& removed) {
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(values[a] - target) < std::abs(values[b] - target);
  });
  std::vector<bool> drop(values.size(), false);
  removed = 0;
  for (std::size_t i = 0; i < order.size() && removed < count; ++i) {
    if (std::abs(values[order[i]] - target) > tol) break;
    drop[order[i]] = true;
    ++removed;
  }
  std::vector<double> rest;
  rest.reserve(values.size() - removed);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!drop[i]) rest.push_back(values[i]);
  }
  return rest;
}

}  // namespace mkstar
