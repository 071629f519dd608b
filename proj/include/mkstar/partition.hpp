#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mkstar/graph.hpp"
#include "mkstar/reduce.hpp"
#include "mkstar/spectrum.hpp"

namespace mkstar {

// Entries with magnitude at or below this are treated as zero when splitting
// by sign.
inline constexpr double kZeroEntry = 1e-12;

struct FiedlerResult {
  double lambda2 = 0.0;
  Vector vector;  // unit norm, sign-normalized
  bool degenerate = false;
  std::size_t multiplicity = 1;
};

struct Partition {
  std::vector<std::size_t> labels;  // cluster ids 0..c-1, contiguous
  std::string provenance;
  // Vertices whose splitting entry was numerically zero (sent to cluster 0).
  std::vector<Vertex> zero_entries;

  std::size_t cluster_count() const;
};

// Throws Disconnected unless g is connected with at least two vertices.
FiedlerResult fiedler(const Graph& g, double tol_rel = kDefaultTolerance);

// Cluster 0 = {v : x_v >= 0 or |x_v| <= 1e-12}, cluster 1 = the rest.
Partition sign_bipartition(const Graph& g);

struct MaxClusters {
  std::size_t count = 2;
};
struct Lambda2Threshold {
  double value = 0.0;  // stop once every splittable cluster has lambda2 >= value
};
using RsbStop = std::variant<MaxClusters, Lambda2Threshold>;

// Recursive spectral bisection: repeatedly splits the cluster whose induced
// subgraph has the smallest lambda2 (ties: smallest member vertex).
Partition recursive_bisection(const Graph& g, RsbStop stop);

// Lloyd clustering of the rows of the first k Laplacian eigenvectors.
// k = nullopt picks k from the largest spectral gap (clamped to [2, n]).
Partition kway(const Graph& g, std::optional<std::size_t> k);

// Second eigenpair of tilde L; the returned vector is the right eigenvector
// of L(MB), M^{1/2} v, renormalized and sign-normalized.
FiedlerResult reduced_fiedler(const Reduction& r, double tol_rel = kDefaultTolerance);

struct SignPair {
  Vertex original = 0;  // original vertex index
  Vertex reduced = 0;   // its index in the reduced graph
  double original_entry = 0.0;
  double reduced_entry = 0.0;
  bool agrees = true;
};

struct SignAgreementReport {
  std::vector<SignPair> pairs;  // exactly the kept vertices
  bool flipped = false;
  double agreement = 1.0;  // over pairs with both entries above 1e-9
  bool degenerate = false;
  bool passed = false;  // meaningful only when !degenerate
  double original_lambda = 0.0;
  double reduced_lambda = 0.0;
  std::string note;
};

// Compares the sign pattern of the reduced Fiedler vector with the original
// eigenvector of the same eigenvalue, up to one global flip.
SignAgreementReport compare_signs(const Graph& g, const Reduction& r,
                                  double tol_rel = kDefaultTolerance);

// Extends a partition of the reduced graph to the original graph; each
// removed v1 vertex joins the cluster of its kept twins.
Partition lift_partition(const Reduction& r, const Partition& reduced);

}  // namespace mkstar
