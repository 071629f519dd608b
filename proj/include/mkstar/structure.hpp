#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mkstar/graph.hpp"
#include "mkstar/spectrum.hpp"
#include "mkstar/verification.hpp"

namespace mkstar {

// Relative tolerance used when comparing user-supplied edge weights.
inline constexpr double kWeightTolerance = 1e-9;

// An (m,k)-star of a graph: v1 is a k-cluster (independent vertices with the
// same open neighbourhood v2). weight_uniform is set only when every v1
// vertex also carries the same weight vector toward v2; it then holds their
// common strength.
struct MkStar {
  std::vector<Vertex> v1;
  std::vector<Vertex> v2;
  std::optional<double> weight_uniform;
  // Weight vectors matched only within kWeightTolerance, not bit-exactly.
  bool rounded_weights = false;

  std::size_t m() const { return v1.size(); }
  std::size_t k() const { return v2.size(); }
  std::size_t degree() const { return v1.size() - 1; }
  bool structural_only() const { return !weight_uniform.has_value(); }
};

// Stars of (numerically) equal weight; degree = sum of (m_j - 1).
struct StarClass {
  double weight = 0.0;
  std::vector<MkStar> stars;
  std::size_t degree = 0;
};

struct LDependentCandidate {
  std::vector<Vertex> v1;
  std::vector<Vertex> v2;
  std::vector<Vertex> v3;
};

struct Coefficient {
  Vertex vertex;  // member of v1
  double value;
};

// A certified l-dependent structure D^l(wtilde). coefficients[i] expresses
// the adjacency row of v3[i] as a combination of v1 rows.
struct LDependentPartition {
  std::vector<Vertex> v1;
  std::vector<Vertex> v2;
  std::vector<Vertex> v3;
  std::vector<std::vector<Coefficient>> coefficients;
  double wtilde = 0.0;
  double max_residual = 0.0;
  // False when a least-squares coefficient is below -1e-12; the linear
  // dependence still holds but the strict positivity demanded of the
  // combination does not.
  bool coefficients_nonnegative = true;

  std::size_t l() const { return v3.size(); }
};

struct Prediction {
  double eigenvalue = 0.0;
  std::size_t bound = 0;  // lower bound on the multiplicity
};

struct PredictionReport {
  std::vector<Prediction> laplacian;
  std::vector<Prediction> signless;
  Prediction normalized{1.0, 0};
  std::vector<Prediction> ldependent;

  std::vector<StarClass> classes;
  std::vector<MkStar> structural_only;
  std::vector<LDependentPartition> certificates;
  std::vector<std::string> warnings;
};

// One MkStar per class of >= 2 vertices sharing a nonempty open
// neighbourhood, ordered by smallest v1 vertex.
std::vector<MkStar> detect_stars(const Graph& g);

// Common strength of the v1 vertices; throws UnequalWeightVectors when the
// v1 weight vectors differ.
double star_weight(const Graph& g, const MkStar& s);

// Stars must carry weight_uniform. Classes are ordered by weight.
std::vector<StarClass> group_by_weight(const std::vector<MkStar>& stars,
                                       double tol_rel = kDefaultTolerance);

PredictionReport predict_multiplicities(const Graph& g, double tol_rel = kDefaultTolerance);

// Checks every star-based prediction (Laplacian, signless, normalized)
// against a dense eigensolve: computed multiplicity >= predicted bound.
VerificationRecord verify_star_predictions(const Graph& g, double tol_rel = kDefaultTolerance);

// Checks the l-dependence conditions for a candidate split and returns the
// certificate. Throws ConditionViolated (with condition number and witness
// vertex) or NoCommonStrength.
LDependentPartition verify_ldependent(const Graph& g, const LDependentCandidate& candidate);

// Proportional-row heuristic: vertices whose rows are scalar multiples of
// each other and share a strength form D^{size-1}(wtilde).
std::vector<LDependentPartition> detect_proportional_ldependent(const Graph& g);

// Tries to certify a structural k-cluster (weights nonuniform) as an
// l-dependent structure with l >= 1: requires a common strength and a rank
// deficiency among the cluster's rows. v1 is chosen greedily as linearly
// independent rows in index order.
std::optional<LDependentPartition> certify_cluster(const Graph& g, const MkStar& s);

// Multiplicity checks for l-dependent certificates: m_L(wtilde) >= l and
// m_Lhat(1) >= l.
VerificationRecord verify_ldependent_predictions(const Graph& g,
                                                 const std::vector<LDependentPartition>& parts,
                                                 double tol_rel = kDefaultTolerance);

struct StarSpec {
  std::size_t m = 2;
  std::size_t k = 1;
  double w = 1.0;
};

// Random connected graph containing the requested stars (exactly; no other
// vertex joins a planted k-cluster). Background edges avoid v1 vertices.
Graph plant_star_graph(std::uint64_t seed, std::size_t n, const std::vector<StarSpec>& specs);

struct LDependentSizes {
  std::size_t v1 = 1;
  std::size_t v2 = 1;
  std::size_t l = 0;
};

struct PlantedLDependent {
  Graph graph;
  LDependentCandidate partition;
};

// v1 rows are random positive rows rescaled to strength wtilde, v3 rows are
// random convex combinations of v1 rows.
PlantedLDependent plant_ldependent_graph(std::uint64_t seed, LDependentSizes sizes,
                                         double wtilde);

}  // namespace mkstar
