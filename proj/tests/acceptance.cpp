// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "mkstar/cli.hpp"
#include "mkstar/partition.hpp"
#include "mkstar/reduce.hpp"
#include "mkstar/spectrum.hpp"
#include "mkstar/structure.hpp"
#include "oracle.hpp"

using namespace mkstar;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// splitmix64: portable parameter stream for the randomized cases.
struct Params {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::size_t range(std::size_t lo, std::size_t hi) { return lo + next() % (hi - lo + 1); }
};

struct StarCase {
  Graph graph;
  std::vector<StarSpec> specs;
};

// 1-3 stars with weights in {0.5, 1, 2}; n between the layout size and n_max.
StarCase star_case(std::uint64_t seed, std::size_t n_max) {
  Params p{seed * 7919 + 17};
  const double weights[] = {0.5, 1.0, 2.0};
  std::vector<StarSpec> specs(p.range(1, 3));
  std::size_t used = 0;
  for (auto& s : specs) {
    s.m = p.range(2, 5);
    s.k = p.range(1, 4);
    s.w = weights[p.range(0, 2)];
    used += s.m + s.k;
  }
  const std::size_t n = p.range(used + 4, n_max);
  return {plant_star_graph(seed, n, specs), specs};
}

std::size_t mult(const DenseMatrix& m, double target, double tol = kDefaultTolerance) {
  const auto s = sym_eigen(m);
  return multiplicity_at(group_multiplicities(s.values, tol), target, tol);
}

std::string first_failure(const VerificationRecord& r) {
  const Check* c = r.first_failure();
  return c ? c->name + " (" + c->detail + ")" : "";
}

Reduction random_reduction(std::uint64_t seed, std::size_t n_max, StarCase& c) {
  c = star_case(seed, n_max);
  Params p{seed * 104729 + 3};
  std::vector<std::size_t> qs;
  for (const auto& s : detect_stars(c.graph)) qs.push_back(s.structural_only() ? 0 : p.range(1, s.m() - 1));
  return reduce_all(c.graph, qs);
}

double kk_error(const Reduction& r) {
  const auto& k = r.k_matrix;
  return (k.transpose() * k - DenseMatrix::Identity(k.cols(), k.cols())).cwiseAbs().maxCoeff();
}

double congruence_error(const Graph& g, const Reduction& r) {
  const DenseMatrix a = adjacency(g);
  return (r.k_matrix.transpose() * a * r.k_matrix - sym_mass_adjacency(r)).cwiseAbs().maxCoeff() /
         std::max(1.0, a.cwiseAbs().maxCoeff());
}

Outcome criterion1() {
  Outcome o;
  const auto g = oracle::f1();
  const std::vector<double> closed{0, 2, 2, 3, 5};  // K_{3,2}: 0, 2 (x2), 3, 5
  const auto got = sym_eigen(laplacian(g)).values;
  if (oracle::max_diff(got, closed) > 1e-10) o.fail("spectrum differs from {0,2,2,3,5}");
  if (oracle::max_diff(oracle::jacobi_eigenvalues(laplacian(g)), closed) > 1e-10) o.fail("oracle disagrees");
  const auto classes = group_by_weight(detect_stars(g));
  if (classes.size() != 1 || classes[0].weight != 2.0 || classes[0].degree != 2) o.fail("star class not (2, deg 2)");
  const auto m = mult(laplacian(g), 2.0);
  if (m < 2) o.fail("multiplicity at 2 is " + std::to_string(m));
  if (o.pass) o.detail = "spectrum {0,2,2,3,5}, m_L(2) = " + std::to_string(m) + " >= 2";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t classes = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto c = star_case(seed, 100);
    const auto& g = c.graph;
    const auto report = predict_multiplicities(g);
    std::size_t planted_found = 0;
    for (const auto& spec : c.specs) {
      for (const auto& s : detect_stars(g)) {
        if (s.m() == spec.m && s.k() == spec.k && s.weight_uniform &&
            std::abs(*s.weight_uniform - spec.w) <= 1e-9 * spec.w) {
          ++planted_found;
          break;
        }
      }
    }
    if (planted_found != c.specs.size()) o.fail("seed " + std::to_string(seed) + ": planted star not detected");
    const DenseMatrix l = laplacian(g);
    const DenseMatrix q = signless_laplacian(g);
    for (const auto& cls : report.classes) {
      ++classes;
      if (mult(l, cls.weight) < cls.degree) o.fail("seed " + std::to_string(seed) + ": Laplacian bound");
      if (mult(q, cls.weight) < cls.degree) o.fail("seed " + std::to_string(seed) + ": signless bound");
    }
    if (mult(normalized_laplacian(g), 1.0) < report.normalized.bound) {
      o.fail("seed " + std::to_string(seed) + ": normalized bound");
    }
    // Independent oracle on every tenth seed.
    if (seed % 10 == 0) {
      const auto vals = oracle::jacobi_eigenvalues(l);
      for (const auto& cls : report.classes) {
        const auto n = std::count_if(vals.begin(), vals.end(),
                                     [&](double x) { return std::abs(x - cls.weight) <= 1e-8 * std::max(1.0, cls.weight); });
        if (static_cast<std::size_t>(n) < cls.degree) o.fail("seed " + std::to_string(seed) + ": oracle bound");
      }
    }
  }
  if (o.pass) o.detail = "200 graphs, " + std::to_string(classes) + " star classes, all bounds hold";
  return o;
}

Outcome criterion3() {
  Outcome o;
  struct Case {
    std::uint64_t seed;
    LDependentSizes sizes;
    double wtilde;
  };
  std::vector<Case> cases;
  cases.push_back({1, {2, 3, 1}, 6.0});  // small D^1(6): two v1 rows over three v2
  cases.push_back({2, {3, 4, 3}, 4.0});  // D^3(4) with three dependent rows
  for (std::uint64_t seed = 0; seed < 198; ++seed) {
    Params p{seed * 31 + 5};
    LDependentSizes s;
    s.v1 = p.range(1, 4);
    s.v2 = p.range(s.v1 + 1, s.v1 + 5);
    s.l = p.range(0, 4);
    cases.push_back({seed + 1000, s, p.range(0, 1) ? 6.0 : 4.0});
  }
  std::size_t idx = 0;
  for (const auto& c : cases) {
    const auto planted = plant_ldependent_graph(c.seed, c.sizes, c.wtilde);
    const std::string tag = "case " + std::to_string(idx++);
    try {
      const auto part = verify_ldependent(planted.graph, planted.partition);
      if (std::abs(part.wtilde - c.wtilde) > 1e-9 * c.wtilde) o.fail(tag + ": wrong common strength");
    } catch (const Error& e) {
      o.fail(tag + ": planted partition rejected: " + e.what());
      continue;
    }
    if (mult(laplacian(planted.graph), c.wtilde) < c.sizes.l) o.fail(tag + ": m_L(wtilde) < l");
    if (mult(normalized_laplacian(planted.graph), 1.0) < c.sizes.l) o.fail(tag + ": m_Lhat(1) < l");
  }
  const auto fig2 = plant_ldependent_graph(1, {2, 3, 1}, 6.0).graph;
  const auto fig3 = plant_ldependent_graph(2, {3, 4, 3}, 4.0).graph;
  const auto m2 = mult(laplacian(fig2), 6.0);
  const auto m3 = mult(laplacian(fig3), 4.0);
  if (m2 < 1 || m3 < 3) o.fail("D^1(6) or D^3(4) misses its multiplicity");
  if (o.pass) {
    o.detail = "200 graphs accepted; D^1(6) m_L(6) = " + std::to_string(m2) +
               ", D^3(4) m_L(4) = " + std::to_string(m3);
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto f1 = oracle::f1();
  const auto star = detect_stars(f1)[0];
  auto check = [&](const Graph& g, const Reduction& r, const std::string& tag) {
    if (kk_error(r) > 1e-10) o.fail(tag + ": K^T K != I");
    if (congruence_error(g, r) > 1e-9) o.fail(tag + ": congruence");
    const auto rec = verify_adjacency_reduction(g, r, 1e-8);
    if (!rec.passed()) o.fail(tag + ": " + first_failure(rec));
  };
  for (std::size_t q : {1u, 2u}) check(f1, reduce_star(f1, star, q), "F1 q=" + std::to_string(q));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    StarCase c;
    const auto r = random_reduction(seed, 100, c);
    check(c.graph, r, "seed " + std::to_string(seed));
  }
  if (o.pass) o.detail = "F1 q=1,2 and 200 random reductions: orthonormality, congruence, spectra, lifts";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto f1 = oracle::f1();
  const auto r = reduce_star(f1, detect_stars(f1)[0], 1);
  const auto s = sym_eigen(sym_mass_laplacian(r));
  if (oracle::max_diff(s.values, {0, 2, 3, 5}) > 1e-10) o.fail("reduced spectrum is not {0,2,3,5}");
  if (oracle::max_diff(oracle::without(sym_eigen(laplacian(f1)).values, 2.0, 1, 1e-8), s.values) > 1e-10) {
    o.fail("reduced spectrum is not sigma(L) minus one copy of 2");
  }
  Vector expected(5);
  expected << 1, 1, 1, -1.5, -1.5;
  expected.normalize();
  const Vector lifted = lift_vector(r, s.vector(3), LiftSource::TildeL).normalized();
  const double dev = std::min((lifted - expected).cwiseAbs().maxCoeff(), (lifted + expected).cwiseAbs().maxCoeff());
  if (dev > 1e-8) o.fail("lifted lambda=5 vector deviates by " + std::to_string(dev));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    StarCase c;
    const auto rr = random_reduction(seed, 100, c);
    const auto rec = verify_laplacian_reduction(c.graph, rr, 1e-8);
    if (!rec.passed()) o.fail("seed " + std::to_string(seed) + ": " + first_failure(rec));
  }
  if (o.pass) o.detail = "F1 q=1 {0,2,3,5}, lambda=5 lift within 1e-8, 200 random reductions";
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    StarCase c;
    const auto r = random_reduction(seed + 5000, 200, c);
    if (!interlacing_check(c.graph, r, 1e-8)) o.fail("seed " + std::to_string(seed));
  }
  if (o.pass) o.detail = "500 random reductions with n <= 200";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t degenerate = 0;
  std::size_t agreed = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto c = star_case(seed, 100);
    const auto rep = compare_signs(c.graph, reduce_all(c.graph, CollapsePolicy::CollapseToOne));
    if (rep.degenerate) {
      ++degenerate;
    } else if (rep.passed && rep.agreement == 1.0) {
      ++agreed;
    } else {
      o.fail("seed " + std::to_string(seed) + ": agreement " + std::to_string(rep.agreement));
    }
  }
  if (200 - degenerate < 100) o.fail("only " + std::to_string(200 - degenerate) + " non-degenerate seeds");
  if (o.pass) {
    o.detail = std::to_string(agreed) + " non-degenerate seeds agree, " + std::to_string(degenerate) +
               " degenerate excluded";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto f = fiedler(oracle::f4());
  if (!(f.vector(0) > 0 && f.vector(1) > 0 && f.vector(2) < 0 && f.vector(3) < 0)) o.fail("F4 signs");
  if (std::abs(f.lambda2 - (2.0 - std::sqrt(2.0))) > 1e-10) o.fail("F4 lambda2");
  const auto g = oracle::two_triangles(1e-3);
  const std::vector<std::size_t> truth{0, 0, 0, 1, 1, 1};
  auto same = [&](const Partition& p) {
    return p.labels == truth || p.labels == std::vector<std::size_t>{1, 1, 1, 0, 0, 0};
  };
  if (!same(sign_bipartition(g))) o.fail("bisect");
  if (!same(recursive_bisection(g, MaxClusters{2}))) o.fail("rsb");
  if (!same(kway(g, 2))) o.fail("kway(2)");
  if (o.pass) o.detail = "F4 (+,+,-,-), lambda2 = 2-sqrt2; triangles split by bisect, RSB and kway(2)";
  return o;
}

Outcome criterion9() {
  Outcome o;
  auto run = [](std::vector<std::string> args, std::string* out = nullptr) {
    std::ostringstream os;
    std::ostringstream es;
    const int code = run_cli(args, os, es);
    if (out) *out = os.str();
    return code;
  };
  for (const char* f : {"F1.graph", "F2.graph", "F3.graph", "F4.graph"}) {
    const int code = run({"verify", oracle::fixture(f)});
    if (code != kExitOk) o.fail(std::string("verify ") + f + " exited " + std::to_string(code));
  }
  std::string out;
  if (run({"verify", oracle::fixture("F1.graph"), "--q", "1"}, &out) != kExitOk ||
      out.find("{0,2,2,3,5} -> reduced {0,2,3,5}") == std::string::npos) {
    o.fail("verify F1 --q 1 does not show the spectrum match");
  }
  const int bad = run({"verify", oracle::fixture("F1_perturbed.graph")}, &out);
  if (bad != kExitVerification) o.fail("perturbed fixture exited " + std::to_string(bad));
  const auto at = out.find("verification FAILED: ");
  std::string named = at == std::string::npos ? "" : out.substr(at + 21, out.find('\n', at) - at - 21);
  if (named.empty()) o.fail("failed check not named");
  for (const char* f : {"F1.graph", "F2.graph", "F3.graph", "F4.graph"}) {
    std::string a;
    std::string b;
    run({"verify", oracle::fixture(f), "--json"}, &a);
    run({"verify", oracle::fixture(f), "--json"}, &b);
    if (a != b || a.empty()) o.fail(std::string("JSON for ") + f + " not byte-stable");
  }
  if (o.pass) o.detail = "F1-F4 exit 0, perturbed exits 2 naming " + named + ", JSON byte-stable";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 star multiplicity on F1", criterion1},
      {"2 star multiplicity, 200 planted graphs", criterion2},
      {"3 l-dependent multiplicity, 200 planted graphs", criterion3},
      {"4 adjacency reduction", criterion4},
      {"5 Laplacian reduction", criterion5},
      {"6 interlacing, 500 reductions", criterion6},
      {"7 Fiedler sign agreement", criterion7},
      {"8 partitioning sanity", criterion8},
      {"9 CLI contract", criterion9},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %s: %s (%.2fs) %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
