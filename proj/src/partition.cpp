#include "mkstar/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace mkstar {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void require_connected(const Graph& g) {
  if (g.order() < 2) throw Error(ErrorKind::Disconnected, "graph needs at least two vertices");
  if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is not connected");
}

FiedlerResult second_eigenpair(const Spectrum& s, double tol_rel) {
  const auto table = group_multiplicities(s.values, tol_rel);
  FiedlerResult f;
  f.lambda2 = s.values[1];
  f.vector = s.vector(1);
  for (const auto& grp : table.groups) {
    if (grp.first <= 1 && 1 < grp.first + grp.multiplicity) f.multiplicity = grp.multiplicity;
  }
  f.degenerate = f.multiplicity > 1;
  return f;
}

// Renumbers labels by order of first appearance.
std::vector<std::size_t> compact(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> ids;
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], ids.size());
    out[i] = it->second;
  }
  return out;
}

struct Split {
  std::vector<Vertex> first;
  std::vector<Vertex> second;
  std::vector<Vertex> zeros;
};

// Splits the sub-vertex set `members` of g in two.
Split bisect(const Graph& g, const std::vector<Vertex>& members) {
  const Graph sub = induced_subgraph(g, members);
  const auto comps = connected_components(sub);
  Split out;
  if (comps.size() > 1) {
    std::vector<bool> head(members.size(), false);
    for (Vertex v : comps.front()) head[v] = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
      (head[i] ? out.first : out.second).push_back(members[i]);
    }
    return out;
  }
  const Partition p = sign_bipartition(sub);
  for (std::size_t i = 0; i < members.size(); ++i) {
    (p.labels[i] == 0 ? out.first : out.second).push_back(members[i]);
  }
  for (Vertex z : p.zero_entries) out.zeros.push_back(members[z]);
  return out;
}

double subgraph_lambda2(const Graph& g, const std::vector<Vertex>& members) {
  const Graph sub = induced_subgraph(g, members);
  if (!is_connected(sub)) return 0.0;
  return sym_eigen(laplacian(sub)).values[1];
}

}  // namespace

std::size_t Partition::cluster_count() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

FiedlerResult fiedler(const Graph& g, double tol_rel) {
  require_connected(g);
  return second_eigenpair(sym_eigen(laplacian(g)), tol_rel);
}

Partition sign_bipartition(const Graph& g) {
  const auto f = fiedler(g);
  Partition p;
  p.provenance = "fiedler-sign(lambda2)";
  std::vector<std::size_t> raw(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    const double x = f.vector[idx(v)];
    if (std::abs(x) <= kZeroEntry) p.zero_entries.push_back(v);
    raw[v] = (x >= 0.0 || std::abs(x) <= kZeroEntry) ? 0 : 1;
  }
  // Sign normalization puts the first nonzero entry on the nonnegative side,
  // so vertex 0 is always in cluster 0.
  p.labels = std::move(raw);
  return p;
}

Partition recursive_bisection(const Graph& g, RsbStop stop) {
  require_connected(g);
  std::vector<std::vector<Vertex>> clusters(1);
  for (Vertex v = 0; v < g.order(); ++v) clusters[0].push_back(v);
  std::vector<double> lambda2{subgraph_lambda2(g, clusters[0])};
  std::vector<Vertex> zeros;

  for (;;) {
    if (const auto* mc = std::get_if<MaxClusters>(&stop); mc && clusters.size() >= mc->count) break;
    std::size_t pick = clusters.size();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (clusters[c].size() < 2) continue;
      if (pick == clusters.size() || lambda2[c] < lambda2[pick] ||
          (lambda2[c] == lambda2[pick] && clusters[c].front() < clusters[pick].front())) {
        pick = c;
      }
    }
    if (pick == clusters.size()) break;
    if (const auto* th = std::get_if<Lambda2Threshold>(&stop); th && lambda2[pick] >= th->value) break;

    auto split = bisect(g, clusters[pick]);
    zeros.insert(zeros.end(), split.zeros.begin(), split.zeros.end());
    clusters[pick] = std::move(split.first);
    lambda2[pick] = clusters[pick].size() >= 2 ? subgraph_lambda2(g, clusters[pick]) : 0.0;
    lambda2.push_back(split.second.size() >= 2 ? subgraph_lambda2(g, split.second) : 0.0);
    clusters.push_back(std::move(split.second));
  }

  std::vector<std::size_t> order(clusters.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return clusters[a].front() < clusters[b].front();
  });
  Partition p;
  p.labels.assign(g.order(), 0);
  for (std::size_t id = 0; id < order.size(); ++id) {
    for (Vertex v : clusters[order[id]]) p.labels[v] = id;
  }
  std::sort(zeros.begin(), zeros.end());
  p.zero_entries = std::move(zeros);
  if (const auto* mc = std::get_if<MaxClusters>(&stop)) {
    p.provenance = "rsb(max_clusters=" + std::to_string(mc->count) + ")";
  } else {
    p.provenance = "rsb(lambda2_threshold=" + std::to_string(std::get<Lambda2Threshold>(stop).value) + ")";
  }
  return p;
}

Partition kway(const Graph& g, std::optional<std::size_t> k) {
  require_connected(g);
  const std::size_t n = g.order();
  const auto spec = sym_eigen(laplacian(g));
  std::size_t clusters = 0;
  if (k) {
    if (*k < 2 || *k > n) {
      throw Error(ErrorKind::BadK, "k = " + std::to_string(*k) + " must be in [2, " +
                                       std::to_string(n) + "]");
    }
    clusters = *k;
  } else {
    clusters = std::clamp<std::size_t>(spectral_gap_index(spec.values), 2, n);
  }

  const DenseMatrix x = spec.vectors.leftCols(idx(clusters));
  auto dist2 = [&](Index row, const Vector& c) { return (x.row(row).transpose() - c).squaredNorm(); };

  // Farthest-first seeding from vertex 0.
  std::vector<Vector> centroids{x.row(0).transpose()};
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (centroids.size() < clusters) {
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t v = 0; v < n; ++v) {
      nearest[v] = std::min(nearest[v], dist2(idx(v), centroids.back()));
      if (nearest[v] > far_d) {
        far_d = nearest[v];
        far = v;
      }
    }
    centroids.push_back(x.row(idx(far)).transpose());
  }

  std::vector<std::size_t> assign(n, clusters);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < clusters; ++c) {
        const double d = dist2(idx(v), centroids[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assign[v] != best) {
        assign[v] = best;
        changed = true;
      }
    }
    if (!changed) break;
    for (std::size_t c = 0; c < clusters; ++c) {
      Vector sum = Vector::Zero(idx(clusters));
      std::size_t count = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (assign[v] == c) {
          sum += x.row(idx(v)).transpose();
          ++count;
        }
      }
      if (count > 0) centroids[c] = sum / static_cast<double>(count);
    }
  }

  Partition p;
  p.labels = compact(assign);
  p.provenance = "kway(k=" + std::to_string(clusters) + (k ? "" : ", auto") +
                 ", eigenvectors 0.." + std::to_string(clusters - 1) + ")";
  return p;
}

FiedlerResult reduced_fiedler(const Reduction& r, double tol_rel) {
  require_connected(r.reduced);
  auto f = second_eigenpair(sym_eigen(sym_mass_laplacian(r)), tol_rel);
  const auto& m = r.reduced.mass();
  const Vector root = Eigen::Map<const Vector>(m.data(), idx(m.size())).cwiseSqrt();
  f.vector = f.vector.cwiseProduct(root).normalized();
  normalize_sign(f.vector);
  return f;
}

SignAgreementReport compare_signs(const Graph& g, const Reduction& r, double tol_rel) {
  SignAgreementReport rep;
  if (!is_connected(g) || g.order() < 2) {
    rep.degenerate = true;
    rep.note = "graph is disconnected; no Fiedler vector";
    return rep;
  }
  const auto orig = sym_eigen(laplacian(g));
  rep.original_lambda = orig.values[1];
  const auto red = reduced_fiedler(r, tol_rel);
  rep.reduced_lambda = red.lambda2;
  if (red.degenerate) {
    rep.degenerate = true;
    rep.note = "reduced lambda2 has multiplicity " + std::to_string(red.multiplicity);
    return rep;
  }

  const auto table = group_multiplicities(orig.values, tol_rel);
  const double tol = tol_rel * table.scale;
  const MultiplicityGroup* match = nullptr;
  for (const auto& grp : table.groups) {
    if (std::abs(grp.value - red.lambda2) <= tol) match = &grp;
  }
  if (match == nullptr) {
    rep.degenerate = true;
    rep.note = "reduced lambda2 not found in the original spectrum";
    return rep;
  }
  if (match->multiplicity != 1) {
    rep.degenerate = true;
    rep.note = "eigenvalue has multiplicity " + std::to_string(match->multiplicity) +
               " in the original spectrum";
    return rep;
  }
  if (match->first != 1) {
    rep.note = "original lambda2 is a removed star eigenvalue; compared against the original "
               "eigenvector of the reduced lambda2";
  }

  const Vector u = orig.vector(match->first);
  std::size_t same = 0;
  std::size_t opposite = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!r.vertex_map[v]) continue;
    SignPair sp;
    sp.original = v;
    sp.reduced = *r.vertex_map[v];
    sp.original_entry = u[idx(v)];
    sp.reduced_entry = red.vector[idx(sp.reduced)];
    rep.pairs.push_back(sp);
    if (std::abs(sp.original_entry) > 1e-9 && std::abs(sp.reduced_entry) > 1e-9) {
      ((sp.original_entry > 0) == (sp.reduced_entry > 0) ? same : opposite) += 1;
    }
  }
  rep.flipped = opposite > same;
  std::size_t significant = 0;
  std::size_t agree = 0;
  for (auto& sp : rep.pairs) {
    const double o = rep.flipped ? -sp.original_entry : sp.original_entry;
    if (std::abs(o) > 1e-9 && std::abs(sp.reduced_entry) > 1e-9) {
      ++significant;
      sp.agrees = (o > 0) == (sp.reduced_entry > 0);
      agree += sp.agrees ? 1 : 0;
    }
  }
  rep.agreement = significant == 0 ? 1.0
                                   : static_cast<double>(agree) / static_cast<double>(significant);
  rep.passed = agree == significant;
  return rep;
}

Partition lift_partition(const Reduction& r, const Partition& reduced) {
  Partition p;
  p.provenance = reduced.provenance + " lifted through reduction";
  p.labels.assign(r.original.order(), 0);
  for (Vertex v = 0; v < r.original.order(); ++v) {
    if (r.vertex_map[v]) p.labels[v] = reduced.labels[*r.vertex_map[v]];
  }
  for (const auto& rs : r.stars) {
    const std::size_t label = reduced.labels[*r.vertex_map[rs.kept.front()]];
    for (Vertex v : rs.removed) p.labels[v] = label;
  }
  for (Vertex z : reduced.zero_entries) {
    for (Vertex v = 0; v < r.original.order(); ++v) {
      if (r.vertex_map[v] && *r.vertex_map[v] == z) p.zero_entries.push_back(v);
    }
  }
  return p;
}

}  // namespace mkstar
