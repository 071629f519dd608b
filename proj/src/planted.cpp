#include <algorithm>
#include <random>
#include <set>

#include "mkstar/structure.hpp"

namespace mkstar {

namespace {

// std distributions are implementation-defined; these keep generated graphs
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[index(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

using EdgeSet = std::set<std::pair<Vertex, Vertex>>;

bool add_edge(std::vector<Edge>& edges, EdgeSet& present, Vertex u, Vertex v, double w) {
  if (u == v) return false;
  auto key = std::minmax(u, v);
  if (!present.insert({key.first, key.second}).second) return false;
  edges.push_back({key.first, key.second, w});
  return true;
}

}  // namespace

Graph plant_star_graph(std::uint64_t seed, std::size_t n, const std::vector<StarSpec>& specs) {
  std::size_t needed = 0;
  for (const auto& s : specs) {
    if (s.m < 2 || s.k < 1 || !(s.w > 0.0)) {
      throw Error(ErrorKind::InfeasibleSpec, "star spec needs m >= 2, k >= 1, w > 0");
    }
    needed += s.m + s.k;
  }
  if (needed > n) {
    throw Error(ErrorKind::InfeasibleSpec, "stars need " + std::to_string(needed) +
                                               " vertices but n = " + std::to_string(n));
  }

  Rng rng(seed);
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  rng.shuffle(perm);

  std::vector<Edge> edges;
  EdgeSet present;
  std::vector<bool> in_v1(n, false);
  std::vector<std::vector<Vertex>> planted;
  std::size_t pos = 0;
  for (const auto& s : specs) {
    std::vector<Vertex> v1(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                           perm.begin() + static_cast<std::ptrdiff_t>(pos + s.m));
    std::vector<Vertex> v2(perm.begin() + static_cast<std::ptrdiff_t>(pos + s.m),
                           perm.begin() + static_cast<std::ptrdiff_t>(pos + s.m + s.k));
    pos += s.m + s.k;

    std::vector<double> share(s.k);
    double total = 0.0;
    for (auto& x : share) total += (x = rng.uniform(0.5, 1.5));
    for (auto& x : share) x *= s.w / total;
    for (Vertex i : v1) {
      in_v1[i] = true;
      for (std::size_t j = 0; j < s.k; ++j) add_edge(edges, present, i, v2[j], share[j]);
    }
    std::sort(v1.begin(), v1.end());
    planted.push_back(std::move(v1));
  }

  // Background: random spanning tree plus sparse extra edges among non-v1 vertices.
  std::vector<Vertex> others;
  for (Vertex v : perm) {
    if (!in_v1[v]) others.push_back(v);
  }
  for (std::size_t t = 1; t < others.size(); ++t) {
    add_edge(edges, present, others[t], others[rng.index(t)], rng.uniform(0.5, 2.0));
  }
  const double p = others.empty() ? 0.0 : std::min(1.0, 2.0 / static_cast<double>(others.size()));
  for (std::size_t a = 0; a < others.size(); ++a) {
    for (std::size_t b = a + 1; b < others.size(); ++b) {
      if (rng.bernoulli(p)) add_edge(edges, present, others[a], others[b], rng.uniform(0.5, 2.0));
    }
  }

  // Break any k-cluster other than the planted ones by giving an intruding
  // vertex one more background edge.
  for (std::size_t round = 0; round < 20 * n + 20; ++round) {
    const Graph g = Graph::build(n, edges);
    std::vector<Vertex> intruders;
    const auto detected = detect_stars(g);
    // A planted v1 can be hidden as the mirror side of a complete bipartite
    // component; one more edge on its v2 breaks the symmetry.
    for (const auto& v1 : planted) {
      const bool found = std::any_of(detected.begin(), detected.end(), [&](const MkStar& s) {
        return std::includes(s.v1.begin(), s.v1.end(), v1.begin(), v1.end());
      });
      if (!found) intruders.push_back(g.neighbors(v1.front()).front().vertex);
    }
    for (const auto& s : detected) {
      auto it = std::find_if(planted.begin(), planted.end(), [&](const std::vector<Vertex>& v1) {
        return std::includes(s.v1.begin(), s.v1.end(), v1.begin(), v1.end());
      });
      if (it != planted.end()) {
        std::set_difference(s.v1.begin(), s.v1.end(), it->begin(), it->end(),
                            std::back_inserter(intruders));
      } else {
        intruders.insert(intruders.end(), s.v1.begin() + 1, s.v1.end());
      }
    }
    if (intruders.empty()) return g;

    const Vertex x = intruders.front();
    std::vector<Vertex> candidates;
    for (Vertex y : others) {
      const auto key = std::minmax(x, y);
      if (y != x && !present.count({key.first, key.second})) candidates.push_back(y);
    }
    if (candidates.empty()) {
      throw Error(ErrorKind::InfeasibleSpec, "cannot separate background vertex " +
                                                 std::to_string(x) + " from a planted star");
    }
    add_edge(edges, present, x, candidates[rng.index(candidates.size())], rng.uniform(0.5, 2.0));
  }
  throw Error(ErrorKind::InfeasibleSpec, "background generation did not settle");
}

PlantedLDependent plant_ldependent_graph(std::uint64_t seed, LDependentSizes sizes,
                                         double wtilde) {
  if (sizes.v1 == 0 || sizes.v2 == 0 || !(wtilde > 0.0)) {
    throw Error(ErrorKind::InfeasibleSpec, "l-dependent layout needs |v1|, |v2| >= 1, wtilde > 0");
  }
  Rng rng(seed);
  const std::size_t n = sizes.v1 + sizes.v2 + sizes.l;
  PlantedLDependent out;
  auto& part = out.partition;
  for (Vertex v = 0; v < sizes.v1; ++v) part.v1.push_back(v);
  for (Vertex v = 0; v < sizes.v2; ++v) part.v2.push_back(sizes.v1 + v);
  for (Vertex v = 0; v < sizes.l; ++v) part.v3.push_back(sizes.v1 + sizes.v2 + v);

  // rows[i][j]: weight from v1[i] to v2[j]
  std::vector<std::vector<double>> rows(sizes.v1, std::vector<double>(sizes.v2, 0.0));
  for (auto& row : rows) {
    for (auto& x : row) {
      if (rng.bernoulli(0.7)) x = rng.uniform(0.5, 1.5);
    }
    if (std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0; })) {
      row[rng.index(sizes.v2)] = rng.uniform(0.5, 1.5);
    }
  }
  for (std::size_t j = 0; j < sizes.v2; ++j) {
    bool covered = false;
    for (const auto& row : rows) covered = covered || row[j] > 0.0;
    if (!covered) rows[rng.index(sizes.v1)][j] = rng.uniform(0.5, 1.5);
  }
  for (auto& row : rows) {
    double total = 0.0;
    for (double x : row) total += x;
    for (auto& x : row) x *= wtilde / total;
  }

  std::vector<Edge> edges;
  EdgeSet present;
  for (std::size_t i = 0; i < sizes.v1; ++i) {
    for (std::size_t j = 0; j < sizes.v2; ++j) {
      if (rows[i][j] > 0.0) add_edge(edges, present, part.v1[i], part.v2[j], rows[i][j]);
    }
  }
  for (Vertex i : part.v3) {
    std::vector<double> coeff(sizes.v1, 0.0);
    for (auto& a : coeff) {
      if (rng.bernoulli(0.6)) a = rng.uniform(0.2, 1.0);
    }
    if (std::all_of(coeff.begin(), coeff.end(), [](double a) { return a == 0.0; })) {
      coeff[rng.index(sizes.v1)] = 1.0;
    }
    double total = 0.0;
    for (double a : coeff) total += a;
    for (std::size_t j = 0; j < sizes.v2; ++j) {
      double w = 0.0;
      for (std::size_t r = 0; r < sizes.v1; ++r) w += coeff[r] / total * rows[r][j];
      if (w > 0.0) add_edge(edges, present, i, part.v2[j], w);
    }
  }
  for (std::size_t a = 0; a < sizes.v2; ++a) {
    for (std::size_t b = a + 1; b < sizes.v2; ++b) {
      if (rng.bernoulli(0.3)) add_edge(edges, present, part.v2[a], part.v2[b], rng.uniform(0.5, 2.0));
    }
  }
  out.graph = Graph::build(n, std::move(edges));
  return out;
}

}  // namespace mkstar
