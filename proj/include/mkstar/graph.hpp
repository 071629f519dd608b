#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mkstar/error.hpp"

namespace mkstar {

using Vertex = std::size_t;
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex;
  double weight;
};

// Weighted undirected simple graph with a positive mass per vertex.
// Immutable after construction; edges are stored with u < v, sorted.
class Graph {
 public:
  Graph() = default;

  // Validates and normalizes the edge list. Masses default to one.
  static Graph build(std::size_t n, std::vector<Edge> edges);

  // Same topology with the given vertex masses (all strictly positive).
  Graph with_mass(std::vector<double> mass) const;

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& mass() const { return mass_; }
  bool unit_mass() const;

  // Neighbors of v sorted by vertex index.
  std::span<const Neighbor> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  // Weight of (u, v), zero when the edge is absent.
  double weight(Vertex u, Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.mass_ == b.mass_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<double> mass_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

DenseMatrix adjacency(const Graph& g);

// Weighted degree (row sum of the adjacency).
double strength(const Graph& g, Vertex v);
std::vector<double> strengths(const Graph& g);

// L = D - A.
DenseMatrix laplacian(const Graph& g);
// Q = D + A.
DenseMatrix signless_laplacian(const Graph& g);
// I - D^{-1/2} A D^{-1/2}; throws IsolatedVertex when some strength is zero.
DenseMatrix normalized_laplacian(const Graph& g);

// Components sorted by smallest member; members sorted ascending.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

// Subgraph induced by `vertices` (relabelled 0..k-1 in the given order);
// edge weights and masses are retained.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

// max_ij |m_ij|
double max_abs(const DenseMatrix& m);

}  // namespace mkstar
