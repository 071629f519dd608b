#include "mkstar/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mkstar {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Householder reflector exchanging e_1 and the normalized all-ones vector.
DenseMatrix ones_reflector(std::size_t n) {
  DenseMatrix h = DenseMatrix::Identity(idx(n), idx(n));
  Vector v = Vector::Constant(idx(n), -1.0 / std::sqrt(static_cast<double>(n)));
  v[0] += 1.0;
  const double norm2 = v.squaredNorm();
  if (norm2 > 0.0) h -= (2.0 / norm2) * v * v.transpose();
  return h;
}

// m x p matrix with orthonormal columns, each summing to sqrt(m/p). Writing
// Q = ones_reflector(m), P = ones_reflector(p): 1^T Q[:, :p] = sqrt(m) e_1^T
// and e_1^T P = 1_p^T / sqrt(p).
DenseMatrix star_frame(std::size_t m, std::size_t p) {
  return ones_reflector(m).leftCols(idx(p)) * ones_reflector(p);
}

std::string format_values(const std::vector<double>& xs) {
  std::ostringstream os;
  os.precision(10);
  os << "[";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  os << "]";
  return os.str();
}

std::vector<double> descending(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end(), std::greater<>());
  return xs;
}

Reduction reduce_stars(const Graph& g, const std::vector<MkStar>& stars,
                       const std::vector<std::size_t>& qs) {
  Reduction r;
  r.original = g;
  std::vector<bool> removed(g.order(), false);
  std::vector<double> mass_of(g.order(), 1.0);

  for (std::size_t i = 0; i < stars.size(); ++i) {
    const auto& s = stars[i];
    const std::size_t q = qs[i];
    if (q == 0) continue;
    if (!g.unit_mass()) {
      throw Error(ErrorKind::NonUnitMass, "reduction requires a graph with unit masses");
    }
    if (s.structural_only()) {
      throw Error(ErrorKind::StructuralStarOnly,
                  "star on v1 vertex " + std::to_string(s.v1.front()) +
                      " has unequal weight vectors and cannot be reduced");
    }
    if (q >= s.m()) {
      throw Error(ErrorKind::InvalidQ, "q = " + std::to_string(q) + " must be in [1, " +
                                           std::to_string(s.m() - 1) + "]");
    }
    ReducedStar rs;
    rs.star = s;
    rs.q = q;
    rs.weight = star_weight(g, s);
    rs.kept.assign(s.v1.begin(), s.v1.end() - static_cast<std::ptrdiff_t>(q));
    rs.removed.assign(s.v1.end() - static_cast<std::ptrdiff_t>(q), s.v1.end());
    for (Vertex v : rs.removed) removed[v] = true;
    for (Vertex v : rs.kept) mass_of[v] = rs.mass();
    r.stars.push_back(std::move(rs));
  }

  std::vector<Vertex> survivors;
  std::vector<double> mass;
  r.vertex_map.assign(g.order(), std::nullopt);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (removed[v]) continue;
    r.vertex_map[v] = survivors.size();
    survivors.push_back(v);
    mass.push_back(mass_of[v]);
  }
  r.reduced = induced_subgraph(g, survivors).with_mass(std::move(mass));
  r.k_matrix = build_k_matrix(r);
  return r;
}

}  // namespace

Reduction reduce_star(const Graph& g, const MkStar& s, std::size_t q) {
  if (q == 0 || q >= s.m()) {
    throw Error(ErrorKind::InvalidQ, "q = " + std::to_string(q) + " must be in [1, " +
                                         std::to_string(s.m() - 1) + "]");
  }
  return reduce_stars(g, {s}, {q});
}

Reduction reduce_all(const Graph& g, const ReductionPolicy& policy) {
  const auto stars = detect_stars(g);
  std::vector<std::size_t> qs(stars.size(), 0);
  if (const auto* p = std::get_if<CollapsePolicy>(&policy)) {
    for (std::size_t i = 0; i < stars.size(); ++i) {
      if (stars[i].structural_only()) continue;
      qs[i] = *p == CollapsePolicy::CollapseToOne ? stars[i].m() - 1
                                                  : (stars[i].m() > 2 ? stars[i].m() - 2 : 0);
    }
  } else {
    qs = std::get<std::vector<std::size_t>>(policy);
    if (qs.size() != stars.size()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "expected " + std::to_string(stars.size()) + " per-star q values, got " +
                      std::to_string(qs.size()));
    }
  }
  return reduce_stars(g, stars, qs);
}

DenseMatrix build_k_matrix(const Reduction& r) {
  const std::size_t n = r.original.order();
  DenseMatrix k = DenseMatrix::Zero(idx(n), idx(r.reduced.order()));
  std::vector<bool> in_star(n, false);
  for (const auto& rs : r.stars) {
    for (Vertex v : rs.star.v1) in_star[v] = true;
    const DenseMatrix frame = star_frame(rs.m(), rs.kept.size());
    for (std::size_t row = 0; row < rs.star.v1.size(); ++row) {
      for (std::size_t col = 0; col < rs.kept.size(); ++col) {
        k(idx(rs.star.v1[row]), idx(*r.vertex_map[rs.kept[col]])) = frame(idx(row), idx(col));
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!in_star[v] && r.vertex_map[v]) k(idx(v), idx(*r.vertex_map[v])) = 1.0;
  }
  return k;
}

DenseMatrix mass_adjacency(const Reduction& r) {
  const auto& m = r.reduced.mass();
  const Vector mass = Eigen::Map<const Vector>(m.data(), idx(m.size()));
  return mass.asDiagonal() * adjacency(r.reduced);
}

Vector mass_degree(const Reduction& r) {
  return mass_adjacency(r).colwise().sum().transpose();
}

DenseMatrix mass_laplacian(const Reduction& r) {
  DenseMatrix l = -mass_adjacency(r);
  l.diagonal() += mass_degree(r);
  return l;
}

DenseMatrix sym_mass_adjacency(const Reduction& r) {
  const auto& m = r.reduced.mass();
  const Vector root = Eigen::Map<const Vector>(m.data(), idx(m.size())).cwiseSqrt();
  return root.asDiagonal() * adjacency(r.reduced) * root.asDiagonal();
}

DenseMatrix sym_mass_laplacian(const Reduction& r) {
  DenseMatrix l = -sym_mass_adjacency(r);
  l.diagonal() += mass_degree(r);
  return l;
}

Vector lift_vector(const Reduction& r, const Vector& v, LiftSource source) {
  if (v.size() != idx(r.reduced.order())) {
    throw Error(ErrorKind::DimensionMismatch,
                "vector of length " + std::to_string(v.size()) + " does not match reduced order " +
                    std::to_string(r.reduced.order()));
  }
  if (source == LiftSource::TildeL) return r.k_matrix * v;
  const auto& m = r.reduced.mass();
  const Vector root = Eigen::Map<const Vector>(m.data(), idx(m.size())).cwiseSqrt();
  return r.k_matrix * v.cwiseQuotient(root);
}

VerificationRecord verify_adjacency_reduction(const Graph& g, const Reduction& r, double tol_rel) {
  VerificationRecord rec;
  rec.add("input-matches-reduction", g == r.original);
  if (!(g == r.original)) return rec;

  const DenseMatrix a = adjacency(g);
  const DenseMatrix& k = r.k_matrix;
  const double scale = std::max(1.0, max_abs(a));
  const auto nb = idx(r.reduced.order());

  const double ortho = max_abs(k.transpose() * k - DenseMatrix::Identity(nb, nb));
  rec.add("orthonormality", ortho <= 1e-10, ortho, 1e-10, "|K^T K - I|_max");

  const DenseMatrix s = sym_mass_adjacency(r);
  const double congruence = max_abs(k.transpose() * a * k - s);
  rec.add("congruence", congruence <= 1e-9 * scale, congruence, 1e-9 * scale,
          "|K^T A K - M^1/2 B M^1/2|_max");

  const auto full = sym_eigen(a);
  const auto small = sym_eigen(s);
  double radius = 1.0;
  for (double x : full.values) radius = std::max(radius, std::abs(x));
  const double match_tol = tol_rel * radius;

  std::size_t removed = 0;
  const auto expected = remove_copies(full.values, 0.0, r.removed_count(), match_tol, removed);
  rec.add("removed-zeros", removed == r.removed_count(), static_cast<double>(removed),
          static_cast<double>(r.removed_count()), "copies of eigenvalue 0 removed from sigma(A)");
  const auto match = match_spectra(expected, small.values, match_tol);
  rec.add("spectrum", match.matched(), match.max_deviation, match_tol,
          match.matched() ? "sigma(A) minus q zeros = sigma(M^1/2 B M^1/2)"
                          : "unmatched original " + format_values(match.unmatched_expected) +
                                ", unmatched reduced " + format_values(match.unmatched_actual));

  double worst = 0.0;
  for (std::size_t i = 0; i < small.order(); ++i) {
    const Vector x = k * small.vector(i);
    const double res = (a * x - small.values[i] * x).norm() / x.norm();
    worst = std::max(worst, res);
  }
  rec.add("lift-residual", worst <= tol_rel * scale, worst, tol_rel * scale,
          "max |A K v - mu K v| / |K v|");
  return rec;
}

VerificationRecord verify_laplacian_reduction(const Graph& g, const Reduction& r, double tol_rel) {
  VerificationRecord rec;
  rec.add("input-matches-reduction", g == r.original);
  if (!(g == r.original)) return rec;

  const DenseMatrix l = laplacian(g);
  const DenseMatrix& k = r.k_matrix;
  const double scale = std::max(1.0, max_abs(l));
  const DenseMatrix tl = sym_mass_laplacian(r);

  const auto full = sym_eigen(l);
  const auto small = sym_eigen(tl);
  double radius = 1.0;
  for (double x : full.values) radius = std::max(radius, std::abs(x));
  const double match_tol = tol_rel * radius;

  std::vector<double> expected = full.values;
  for (const auto& rs : r.stars) {
    std::size_t removed = 0;
    expected = remove_copies(expected, rs.weight, rs.q, match_tol, removed);
    std::ostringstream name;
    name.precision(12);
    name << "removed-star-eigenvalue@" << rs.weight << "[v1=" << rs.star.v1.front() << "]";
    rec.add(name.str(), removed == rs.q, static_cast<double>(removed),
            static_cast<double>(rs.q), "copies of the star weight removed from sigma(L(A))");
  }
  const auto match = match_spectra(expected, small.values, match_tol);
  rec.add("spectrum", match.matched(), match.max_deviation, match_tol,
          match.matched() ? "sigma(L(A)) minus q star weights = sigma(tilde L)"
                          : "unmatched original " + format_values(match.unmatched_expected) +
                                ", unmatched reduced " + format_values(match.unmatched_actual));

  double worst = 0.0;
  for (std::size_t i = 0; i < small.order(); ++i) {
    const Vector x = lift_vector(r, small.vector(i), LiftSource::TildeL);
    worst = std::max(worst, (l * x - small.values[i] * x).norm() / x.norm());
  }
  rec.add("lift-residual", worst <= tol_rel * scale, worst, tol_rel * scale,
          "max |L(A) K v - lambda K v| / |K v|");

  const auto& m = r.reduced.mass();
  const Vector root = Eigen::Map<const Vector>(m.data(), static_cast<Index>(m.size())).cwiseSqrt();
  const DenseMatrix similar =
      root.cwiseInverse().asDiagonal() * mass_laplacian(r) * root.asDiagonal();
  const double sim = max_abs(similar - tl);
  rec.add("similarity", sim <= tol_rel * scale, sim, tol_rel * scale,
          "|M^-1/2 L(MB) M^1/2 - tilde L|_max");

  const Vector degree = l.diagonal();
  const double intertwine = max_abs(degree.asDiagonal() * k - k * mass_degree(r).asDiagonal());
  rec.add("degree-intertwining", intertwine <= 1e-9 * scale, intertwine, 1e-9 * scale,
          "|diag(A) K - K diag(MB)|_max with diag(MB) = column sums of MB");

  double shift = 0.0;
  for (const auto& rs : r.stars) shift += static_cast<double>(rs.q) * rs.weight;
  const double expected_trace = l.trace() - shift;
  const double trace_err = std::abs(tl.trace() - expected_trace);
  const double trace_tol = 1e-9 * std::max(1.0, std::abs(expected_trace));
  rec.add("trace", trace_err <= trace_tol, trace_err, trace_tol,
          "trace(tilde L) = trace(L(A)) - sum q w(S)");
  return rec;
}

bool interlacing_check(const Graph& g, const Reduction& r, double tol) {
  const DenseMatrix a = adjacency(g);
  const double slack = tol * std::max(1.0, max_abs(a));
  const auto alpha = descending(sym_eigen(a).values);
  const DenseMatrix compressed = r.k_matrix.transpose() * a * r.k_matrix;
  // Symmetrize away rounding before the symmetric solve.
  const auto beta = descending(sym_eigen(0.5 * (compressed + compressed.transpose())).values);
  const std::size_t na = alpha.size();
  const std::size_t nb = beta.size();
  for (std::size_t i = 0; i < nb; ++i) {
    if (alpha[i] < beta[i] - slack) return false;
    if (beta[i] < alpha[na - nb + i] - slack) return false;
  }
  return true;
}

}  // namespace mkstar
