#include "mkstar/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace mkstar {

namespace {

bool weights_close(double a, double b) {
  return std::abs(a - b) <= kWeightTolerance * std::max(std::abs(a), std::abs(b));
}

std::vector<Vertex> neighbor_set(const Graph& g, Vertex v) {
  std::vector<Vertex> out;
  for (const auto& nb : g.neighbors(v)) out.push_back(nb.vertex);
  return out;
}

std::string join(const std::vector<Vertex>& vs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
  os << "}";
  return os.str();
}

std::string format_value(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Compares the weight vectors of all v1 vertices against the first one.
// Returns nullopt when some entry differs beyond kWeightTolerance; `rounded`
// reports whether any accepted entry differed bitwise.
std::optional<double> uniform_weight(const Graph& g, const std::vector<Vertex>& v1, bool& rounded) {
  rounded = false;
  const auto first = g.neighbors(v1.front());
  for (std::size_t i = 1; i < v1.size(); ++i) {
    const auto row = g.neighbors(v1[i]);
    for (std::size_t j = 0; j < first.size(); ++j) {
      if (row[j].weight == first[j].weight) continue;
      if (!weights_close(row[j].weight, first[j].weight)) return std::nullopt;
      rounded = true;
    }
  }
  return strength(g, v1.front());
}

Error condition_violated(int condition, Vertex witness, const std::string& what) {
  Error err(ErrorKind::ConditionViolated,
            "l-dependence condition " + std::to_string(condition) + " violated at vertex " +
                std::to_string(witness) + ": " + what);
  err.condition = condition;
  err.vertex = witness;
  return err;
}

using ClassMap = std::map<std::vector<Vertex>, std::vector<Vertex>>;

// Vertices grouped by open neighbourhood; isolated vertices are left out.
ClassMap neighbourhood_classes(const Graph& g) {
  ClassMap classes;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto nbs = neighbor_set(g, v);
    if (!nbs.empty()) classes[std::move(nbs)].push_back(v);
  }
  return classes;
}

// In a complete bipartite component both sides are k-clusters of each other.
// Only the side holding the smaller vertex is reported as v1.
bool is_mirror_side(const ClassMap& classes, const std::vector<Vertex>& nbs,
                    const std::vector<Vertex>& members) {
  if (nbs.size() < 2) return false;
  const auto partner = classes.find(members);
  return partner != classes.end() && partner->second == nbs && nbs.front() < members.front();
}

bool has_isolated_vertex(const Graph& g) {
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) == 0) return true;
  }
  return false;
}

}  // namespace

std::vector<MkStar> detect_stars(const Graph& g) {
  const auto classes = neighbourhood_classes(g);
  std::vector<MkStar> stars;
  for (const auto& [nbs, members] : classes) {
    if (members.size() < 2 || is_mirror_side(classes, nbs, members)) continue;
    MkStar s;
    s.v1 = members;
    s.v2 = nbs;
    s.weight_uniform = uniform_weight(g, s.v1, s.rounded_weights);
    stars.push_back(std::move(s));
  }
  std::sort(stars.begin(), stars.end(),
            [](const MkStar& a, const MkStar& b) { return a.v1.front() < b.v1.front(); });
  return stars;
}

double star_weight(const Graph& g, const MkStar& s) {
  bool rounded = false;
  const auto w = uniform_weight(g, s.v1, rounded);
  if (!w) {
    throw Error(ErrorKind::UnequalWeightVectors,
                "v1 vertices " + join(s.v1) + " carry different weight vectors");
  }
  return *w;
}

std::vector<StarClass> group_by_weight(const std::vector<MkStar>& stars, double tol_rel) {
  std::vector<const MkStar*> sorted;
  for (const auto& s : stars) {
    if (s.structural_only()) {
      throw Error(ErrorKind::StructuralStarOnly,
                  "star with v1 " + join(s.v1) + " has no uniform weight");
    }
    sorted.push_back(&s);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const MkStar* a, const MkStar* b) {
    return *a->weight_uniform < *b->weight_uniform;
  });

  std::vector<StarClass> classes;
  double previous = 0.0;
  for (const MkStar* s : sorted) {
    const double w = *s->weight_uniform;
    if (classes.empty() || w - previous > tol_rel * std::max(1.0, w)) {
      classes.push_back({w, {}, 0});
    }
    auto& c = classes.back();
    c.stars.push_back(*s);
    c.degree += s->degree();
    previous = w;
  }
  // Representative weight: mean over members.
  for (auto& c : classes) {
    double sum = 0.0;
    for (const auto& s : c.stars) sum += *s.weight_uniform;
    c.weight = sum / static_cast<double>(c.stars.size());
  }
  return classes;
}

PredictionReport predict_multiplicities(const Graph& g, double tol_rel) {
  PredictionReport report;
  std::vector<MkStar> uniform;
  for (auto& s : detect_stars(g)) {
    if (s.structural_only()) {
      report.warnings.push_back("k-cluster " + join(s.v1) +
                                " has unequal weight vectors; excluded from star predictions");
      if (auto cert = certify_cluster(g, s)) report.certificates.push_back(std::move(*cert));
      report.structural_only.push_back(std::move(s));
    } else {
      if (s.rounded_weights) {
        report.warnings.push_back("k-cluster " + join(s.v1) +
                                  " weights equal only within relative tolerance 1e-9");
      }
      uniform.push_back(std::move(s));
    }
  }
  report.classes = group_by_weight(uniform, tol_rel);
  for (const auto& c : report.classes) {
    report.laplacian.push_back({c.weight, c.degree});
    report.signless.push_back({c.weight, c.degree});
    report.normalized.bound += c.degree;
  }

  for (auto& p : detect_proportional_ldependent(g)) report.certificates.push_back(std::move(p));
  for (const auto& p : report.certificates) report.ldependent.push_back({p.wtilde, p.l()});
  return report;
}

VerificationRecord verify_star_predictions(const Graph& g, double tol_rel) {
  VerificationRecord record;
  const auto report = predict_multiplicities(g, tol_rel);
  for (const auto& w : report.warnings) record.warn(w);
  if (report.laplacian.empty()) {
    record.warn("no weight-uniform stars detected; star predictions hold vacuously");
    return record;
  }

  const auto lap = sym_eigen(laplacian(g));
  const auto lap_table = group_multiplicities(lap.values, tol_rel);
  for (const auto& p : report.laplacian) {
    const auto got = multiplicity_at(lap_table, p.eigenvalue, tol_rel);
    record.add("laplacian@" + format_value(p.eigenvalue), got >= p.bound,
               static_cast<double>(got), static_cast<double>(p.bound),
               "multiplicity >= star-class degree");
  }

  const auto sig = sym_eigen(signless_laplacian(g));
  const auto sig_table = group_multiplicities(sig.values, tol_rel);
  for (const auto& p : report.signless) {
    const auto got = multiplicity_at(sig_table, p.eigenvalue, tol_rel);
    record.add("signless@" + format_value(p.eigenvalue), got >= p.bound,
               static_cast<double>(got), static_cast<double>(p.bound),
               "multiplicity >= star-class degree");
  }

  if (has_isolated_vertex(g)) {
    record.warn("graph has isolated vertices; normalized Laplacian check skipped");
  } else {
    const auto nor = sym_eigen(normalized_laplacian(g));
    const auto nor_table = group_multiplicities(nor.values, tol_rel);
    const auto got = multiplicity_at(nor_table, 1.0, tol_rel);
    record.add("normalized@1", got >= report.normalized.bound, static_cast<double>(got),
               static_cast<double>(report.normalized.bound),
               "multiplicity >= sum of star-class degrees");
  }
  return record;
}

LDependentPartition verify_ldependent(const Graph& g, const LDependentCandidate& c) {
  std::vector<int> role(g.order(), 0);  // 1: v1, 2: v2, 3: v3
  auto assign = [&](const std::vector<Vertex>& set, int r) {
    for (Vertex v : set) {
      if (v >= g.order()) {
        Error err(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
        err.vertex = v;
        throw err;
      }
      if (role[v] != 0) throw condition_violated(0, v, "vertex sets are not disjoint");
      role[v] = r;
    }
  };
  assign(c.v1, 1);
  assign(c.v2, 2);
  assign(c.v3, 3);
  if (c.v1.empty()) throw Error(ErrorKind::ConditionViolated, "v1 is empty");
  if (c.v2.empty()) throw Error(ErrorKind::ConditionViolated, "v2 is empty");

  // Condition 1: v1 and v2 see each other.
  for (Vertex v : c.v1) {
    const auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](const Neighbor& x) { return role[x.vertex] == 2; })) {
      throw condition_violated(1, v, "v1 vertex has no neighbour in v2");
    }
  }
  for (Vertex v : c.v2) {
    const auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](const Neighbor& x) { return role[x.vertex] == 1; })) {
      throw condition_violated(1, v, "v2 vertex has no neighbour in v1");
    }
  }
  // Condition 2: v1 and v3 only connect into v2.
  for (const auto* set : {&c.v1, &c.v3}) {
    for (Vertex v : *set) {
      for (const auto& nb : g.neighbors(v)) {
        if (role[nb.vertex] != 2) throw condition_violated(2, v, "edge leaves v2");
      }
    }
  }

  // Condition 3: each v3 row is a combination of v1 rows (rows restricted to
  // v2 lose nothing under condition 2).
  const double wtilde = strength(g, c.v1.front());
  const auto rows = static_cast<Eigen::Index>(c.v2.size());
  DenseMatrix basis(rows, static_cast<Eigen::Index>(c.v1.size()));
  for (std::size_t j = 0; j < c.v1.size(); ++j) {
    for (std::size_t r = 0; r < c.v2.size(); ++r) {
      basis(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = g.weight(c.v1[j], c.v2[r]);
    }
  }
  Eigen::CompleteOrthogonalDecomposition<DenseMatrix> solver(basis);

  LDependentPartition out;
  out.v1 = c.v1;
  out.v2 = c.v2;
  out.v3 = c.v3;
  for (Vertex i : c.v3) {
    Vector target(rows);
    for (std::size_t r = 0; r < c.v2.size(); ++r) {
      target[static_cast<Eigen::Index>(r)] = g.weight(i, c.v2[r]);
    }
    const Vector a = solver.solve(target);
    const double residual = rows == 0 ? 0.0 : (basis * a - target).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-9 * wtilde)) {
      throw condition_violated(3, i, "row is not a combination of v1 rows (residual " +
                                         format_value(residual) + ")");
    }
    out.max_residual = std::max(out.max_residual, residual);
    std::vector<Coefficient> coeffs;
    for (std::size_t j = 0; j < c.v1.size(); ++j) {
      const double x = a[static_cast<Eigen::Index>(j)];
      if (x < -1e-12) out.coefficients_nonnegative = false;
      if (std::abs(x) > 1e-12) coeffs.push_back({c.v1[j], x});
    }
    out.coefficients.push_back(std::move(coeffs));
  }

  for (const auto* set : {&c.v1, &c.v3}) {
    for (Vertex v : *set) {
      if (std::abs(strength(g, v) - wtilde) > 1e-9 * wtilde) {
        Error err(ErrorKind::NoCommonStrength,
                  "vertex " + std::to_string(v) + " has strength " +
                      format_value(strength(g, v)) + ", expected " + format_value(wtilde));
        err.vertex = v;
        throw err;
      }
    }
  }
  out.wtilde = wtilde;
  return out;
}

std::vector<LDependentPartition> detect_proportional_ldependent(const Graph& g) {
  // Proportional rows share their support, so group by support first.
  const auto by_support = neighbourhood_classes(g);
  std::vector<LDependentPartition> out;
  for (const auto& [support, members] : by_support) {
    if (members.size() < 2 || is_mirror_side(by_support, support, members)) continue;
    // Partition members by normalized row direction, then by strength.
    std::vector<std::vector<Vertex>> groups;
    for (Vertex v : members) {
      const double sv = strength(g, v);
      const auto row_v = g.neighbors(v);
      bool placed = false;
      for (auto& grp : groups) {
        const Vertex r = grp.front();
        const double sr = strength(g, r);
        const auto row_r = g.neighbors(r);
        bool same = std::abs(sv - sr) <= kWeightTolerance * std::max(sv, sr);
        for (std::size_t j = 0; same && j < row_v.size(); ++j) {
          same = std::abs(row_v[j].weight / sv - row_r[j].weight / sr) <= 1e-9;
        }
        if (same) {
          grp.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back({v});
    }
    for (const auto& grp : groups) {
      if (grp.size() < 2) continue;
      LDependentCandidate cand;
      cand.v1 = {grp.front()};
      cand.v3.assign(grp.begin() + 1, grp.end());
      cand.v2 = support;
      try {
        out.push_back(verify_ldependent(g, cand));
      } catch (const Error&) {
        // Proportional rows with equal strength are identical, so this only
        // trips on pathological rounding; skip the group.
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const LDependentPartition& a, const LDependentPartition& b) {
    return a.v1.front() < b.v1.front();
  });
  return out;
}

std::optional<LDependentPartition> certify_cluster(const Graph& g, const MkStar& s) {
  const double w0 = strength(g, s.v1.front());
  for (Vertex v : s.v1) {
    if (std::abs(strength(g, v) - w0) > kWeightTolerance * w0) return std::nullopt;
  }

  const auto rows = static_cast<Eigen::Index>(s.v2.size());
  LDependentCandidate cand;
  cand.v2 = s.v2;
  DenseMatrix chosen(rows, 0);
  for (Vertex v : s.v1) {
    DenseMatrix trial(rows, chosen.cols() + 1);
    trial << chosen, Vector::Zero(rows);
    for (std::size_t r = 0; r < s.v2.size(); ++r) {
      trial(static_cast<Eigen::Index>(r), chosen.cols()) = g.weight(v, s.v2[r]);
    }
    Eigen::ColPivHouseholderQR<DenseMatrix> qr(trial);
    qr.setThreshold(1e-10);
    if (qr.rank() == trial.cols()) {
      chosen = std::move(trial);
      cand.v1.push_back(v);
    } else {
      cand.v3.push_back(v);
    }
  }
  if (cand.v3.empty()) return std::nullopt;
  try {
    return verify_ldependent(g, cand);
  } catch (const Error&) {
    return std::nullopt;
  }
}

VerificationRecord verify_ldependent_predictions(const Graph& g,
                                                 const std::vector<LDependentPartition>& parts,
                                                 double tol_rel) {
  VerificationRecord record;
  if (parts.empty()) {
    record.warn("no l-dependent certificates; l-dependent checks hold vacuously");
    return record;
  }
  const auto lap = sym_eigen(laplacian(g));
  const auto lap_table = group_multiplicities(lap.values, tol_rel);
  std::optional<MultiplicityTable> nor_table;
  if (has_isolated_vertex(g)) {
    record.warn("graph has isolated vertices; normalized Laplacian checks skipped");
  } else {
    nor_table = group_multiplicities(sym_eigen(normalized_laplacian(g)).values, tol_rel);
  }

  for (const auto& p : parts) {
    const std::string tag = "v3=" + join(p.v3);
    const auto got = multiplicity_at(lap_table, p.wtilde, tol_rel);
    record.add("laplacian@" + format_value(p.wtilde) + "[" + tag + "]", got >= p.l(),
               static_cast<double>(got), static_cast<double>(p.l()), "multiplicity >= l");
    if (nor_table) {
      const auto got_n = multiplicity_at(*nor_table, 1.0, tol_rel);
      record.add("normalized@1[" + tag + "]", got_n >= p.l(), static_cast<double>(got_n),
                 static_cast<double>(p.l()), "multiplicity >= l");
    }
    if (!p.coefficients_nonnegative) {
      record.warn("certificate " + tag + " uses negative coefficients (dependence holds, "
                  "positivity violated)");
    }
  }
  return record;
}

}  // namespace mkstar
