#include "mkstar/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace mkstar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidMass: return "InvalidMass";
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::IterationLimit: return "IterationLimit";
    case ErrorKind::TooFewValues: return "TooFewValues";
    case ErrorKind::UnequalWeightVectors: return "UnequalWeightVectors";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::NoCommonStrength: return "NoCommonStrength";
    case ErrorKind::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorKind::InvalidQ: return "InvalidQ";
    case ErrorKind::StructuralStarOnly: return "StructuralStarOnly";
    case ErrorKind::NonUnitMass: return "NonUnitMass";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::BadK: return "BadK";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string describe(const Edge& e) {
  std::ostringstream os;
  os << "(" << e.u << ", " << e.v << ", " << e.w << ")";
  return os.str();
}

Error edge_error(ErrorKind kind, const Edge& e, std::string_view what) {
  Error err(kind, std::string(what) + " in edge " + describe(e));
  err.vertex = e.u;
  return err;
}

}  // namespace

Graph Graph::build(std::size_t n, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw edge_error(ErrorKind::IndexOutOfRange, e, "vertex index out of range");
    }
    if (e.u == e.v) throw edge_error(ErrorKind::SelfLoop, e, "self-loop");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw edge_error(ErrorKind::NonPositiveWeight, e, "non-positive weight");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw edge_error(ErrorKind::DuplicateEdge, edges[i], "duplicate edge");
    }
  }

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.mass_.assign(n, 1.0);

  std::vector<std::size_t> count(n, 0);
  for (const auto& e : g.edges_) {
    ++count[e.u];
    ++count[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + count[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : g.edges_) {
    g.adjacency_[fill[e.u]++] = {e.v, e.w};
    g.adjacency_[fill[e.v]++] = {e.u, e.w};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
  return g;
}

Graph Graph::with_mass(std::vector<double> mass) const {
  if (mass.size() != n_) {
    throw Error(ErrorKind::InvalidMass, "mass vector length does not match vertex count");
  }
  for (std::size_t v = 0; v < mass.size(); ++v) {
    if (!(mass[v] > 0.0) || !std::isfinite(mass[v])) {
      Error err(ErrorKind::InvalidMass, "mass of vertex " + std::to_string(v) + " is not positive");
      err.vertex = v;
      throw err;
    }
  }
  Graph g = *this;
  g.mass_ = std::move(mass);
  return g;
}

bool Graph::unit_mass() const {
  return std::all_of(mass_.begin(), mass_.end(), [](double m) { return m == 1.0; });
}

std::span<const Neighbor> Graph::neighbors(Vertex v) const {
  if (v >= n_) {
    Error err(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
    err.vertex = v;
    throw err;
  }
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

double Graph::weight(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v,
                             [](const Neighbor& a, Vertex x) { return a.vertex < x; });
  return (it != nb.end() && it->vertex == v) ? it->weight : 0.0;
}

DenseMatrix adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  DenseMatrix a = DenseMatrix::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = e.w;
    a(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = e.w;
  }
  return a;
}

double strength(const Graph& g, Vertex v) {
  double s = 0.0;
  for (const auto& nb : g.neighbors(v)) s += nb.weight;
  return s;
}

std::vector<double> strengths(const Graph& g) {
  std::vector<double> s(g.order());
  for (Vertex v = 0; v < g.order(); ++v) s[v] = strength(g, v);
  return s;
}

DenseMatrix laplacian(const Graph& g) {
  DenseMatrix l = -adjacency(g);
  const auto s = strengths(g);
  for (std::size_t v = 0; v < s.size(); ++v) {
    l(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) = s[v];
  }
  return l;
}

DenseMatrix signless_laplacian(const Graph& g) {
  DenseMatrix q = adjacency(g);
  const auto s = strengths(g);
  for (std::size_t v = 0; v < s.size(); ++v) {
    q(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) = s[v];
  }
  return q;
}

DenseMatrix normalized_laplacian(const Graph& g) {
  const auto s = strengths(g);
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (!(s[v] > 0.0)) {
      Error err(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " is isolated");
      err.vertex = v;
      throw err;
    }
  }
  const auto n = static_cast<Eigen::Index>(g.order());
  DenseMatrix l = DenseMatrix::Identity(n, n);
  for (const auto& e : g.edges()) {
    const double x = -e.w / std::sqrt(s[e.u] * s[e.v]);
    l(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = x;
    l(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = x;
  }
  return l;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> components;
  std::vector<bool> seen(g.order(), false);
  for (Vertex start = 0; start < g.order(); ++start) {
    if (seen[start]) continue;
    std::vector<Vertex> members;
    std::queue<Vertex> frontier;
    frontier.push(start);
    seen[start] = true;
    while (!frontier.empty()) {
      const Vertex v = frontier.front();
      frontier.pop();
      members.push_back(v);
      for (const auto& nb : g.neighbors(v)) {
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = true;
          frontier.push(nb.vertex);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<std::size_t> local(g.order(), g.order());
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = i;
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (local[e.u] < g.order() && local[e.v] < g.order()) {
      edges.push_back({local[e.u], local[e.v], e.w});
    }
  }
  std::vector<double> mass;
  mass.reserve(vertices.size());
  for (auto v : vertices) mass.push_back(g.mass()[v]);
  return Graph::build(vertices.size(), std::move(edges)).with_mass(std::move(mass));
}

double max_abs(const DenseMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace mkstar
