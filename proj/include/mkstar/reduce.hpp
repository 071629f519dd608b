#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "mkstar/graph.hpp"
#include "mkstar/spectrum.hpp"
#include "mkstar/structure.hpp"
#include "mkstar/verification.hpp"

namespace mkstar {

struct ReducedStar {
  MkStar star;  // in original indices
  std::size_t q = 0;
  std::vector<Vertex> kept;     // original indices of surviving v1 vertices
  std::vector<Vertex> removed;  // original indices of deleted v1 vertices
  double weight = 0.0;

  std::size_t m() const { return star.m(); }
  double mass() const {
    return static_cast<double>(star.m()) / static_cast<double>(star.m() - q);
  }
};

// q-reduction of one or more (m,k)-stars. The reduced graph keeps the
// surviving vertices in their original relative order; its mass vector is
// m/(m-q) on kept v1 vertices of each reduced star and 1 elsewhere.
struct Reduction {
  Graph original;
  Graph reduced;
  // vertex_map[v] = reduced index of original vertex v, nullopt if removed.
  std::vector<std::optional<Vertex>> vertex_map;
  std::vector<ReducedStar> stars;
  // n x (n - q), orthonormal columns, K^T A K = M^{1/2} B M^{1/2}.
  DenseMatrix k_matrix;

  std::size_t removed_count() const { return original.order() - reduced.order(); }
  bool identity() const { return stars.empty(); }
};

enum class CollapsePolicy {
  CollapseToOne,  // q = m - 1
  KeepPair,       // q = max(0, m - 2)
};

// Either a uniform policy or one q per star of detect_stars(g) (structural
// stars must get q = 0).
using ReductionPolicy = std::variant<CollapsePolicy, std::vector<std::size_t>>;

// Removes the q largest-index v1 vertices of `s`. Throws InvalidQ unless
// 1 <= q <= m-1, StructuralStarOnly for weight-nonuniform stars and
// NonUnitMass when g already carries masses.
Reduction reduce_star(const Graph& g, const MkStar& s, std::size_t q);

// Reduces every weight-uniform star found by detect_stars. Stars are
// disjoint in v1, so the per-star reductions compose.
Reduction reduce_all(const Graph& g, const ReductionPolicy& policy);

// Rebuilds the lifting matrix from the star data of `r`.
DenseMatrix build_k_matrix(const Reduction& r);

// MB = diag(mass) B (not symmetric in general).
DenseMatrix mass_adjacency(const Reduction& r);
// diag(MB) taken as the column sums of MB, i.e. sum_i M_ii B_ij. This
// choice makes diag(A) K = K diag(MB) hold exactly.
Vector mass_degree(const Reduction& r);
// L(MB) = diag(MB) - MB.
DenseMatrix mass_laplacian(const Reduction& r);
// M^{1/2} B M^{1/2}
DenseMatrix sym_mass_adjacency(const Reduction& r);
// tilde L = diag(MB) - M^{1/2} B M^{1/2}, symmetric and similar to L(MB).
DenseMatrix sym_mass_laplacian(const Reduction& r);

enum class LiftSource {
  TildeL,            // eigenvector of the symmetric operator: lift K v
  RightEigvecOfLMB,  // right eigenvector of L(MB): lift K M^{-1/2} v
};

Vector lift_vector(const Reduction& r, const Vector& v, LiftSource source);

// sigma(A) vs sigma(M^{1/2} B M^{1/2}) up to q zeros, congruence,
// orthonormality and eigenvector lifting.
VerificationRecord verify_adjacency_reduction(const Graph& g, const Reduction& r,
                                              double tol_rel = kDefaultTolerance);

// sigma(L(A)) vs sigma(tilde L) up to q copies of each star weight, lifting,
// similarity of L(MB) and tilde L, trace identity.
VerificationRecord verify_laplacian_reduction(const Graph& g, const Reduction& r,
                                              double tol_rel = kDefaultTolerance);

// Eigenvalues of K^T A K interlace those of A, with absolute slack
// tol * max(1, |A|_max).
bool interlacing_check(const Graph& g, const Reduction& r, double tol = kDefaultTolerance);

}  // namespace mkstar
