#include "mkstar/report.hpp"

#include <algorithm>

namespace mkstar {

namespace {

Json vertices(const std::vector<Vertex>& vs) { return Json(vs); }

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json predictions(const std::vector<Prediction>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back({{"eigenvalue", p.eigenvalue}, {"min_multiplicity", p.bound}});
  return out;
}

}  // namespace

Json graph_summary(const Graph& g) {
  const auto s = strengths(g);
  double total = 0.0;
  for (const auto& e : g.edges()) total += e.w;
  Json j;
  j["vertices"] = g.order();
  j["edges"] = g.size();
  j["components"] = connected_components(g).size();
  j["total_weight"] = total;
  j["min_strength"] = s.empty() ? 0.0 : *std::min_element(s.begin(), s.end());
  j["max_strength"] = s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
  j["unit_mass"] = g.unit_mass();
  return j;
}

Json to_json(const MkStar& s) {
  Json j;
  j["v1"] = vertices(s.v1);
  j["v2"] = vertices(s.v2);
  j["m"] = s.m();
  j["k"] = s.k();
  j["degree"] = s.degree();
  j["weight"] = s.weight_uniform ? Json(*s.weight_uniform) : Json(nullptr);
  j["weight_uniform"] = s.weight_uniform.has_value();
  j["rounded_weights"] = s.rounded_weights;
  return j;
}

Json to_json(const StarClass& c) {
  Json stars = Json::array();
  for (const auto& s : c.stars) stars.push_back(to_json(s));
  return {{"weight", c.weight}, {"degree", c.degree}, {"stars", stars}};
}

Json to_json(const LDependentPartition& p) {
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < p.v3.size(); ++i) {
    Json row = Json::object();
    for (const auto& c : p.coefficients[i]) row[std::to_string(c.vertex)] = c.value;
    coeffs.push_back({{"vertex", p.v3[i]}, {"coefficients", row}});
  }
  Json j;
  j["v1"] = vertices(p.v1);
  j["v2"] = vertices(p.v2);
  j["v3"] = vertices(p.v3);
  j["l"] = p.l();
  j["wtilde"] = p.wtilde;
  j["combinations"] = coeffs;
  j["max_residual"] = p.max_residual;
  j["coefficients_nonnegative"] = p.coefficients_nonnegative;
  return j;
}

Json to_json(const PredictionReport& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) classes.push_back(to_json(c));
  Json structural = Json::array();
  for (const auto& s : r.structural_only) structural.push_back(to_json(s));
  Json certs = Json::array();
  for (const auto& p : r.certificates) certs.push_back(to_json(p));
  Json j;
  j["star_classes"] = classes;
  j["structural_only_stars"] = structural;
  j["ldependent_certificates"] = certs;
  j["laplacian"] = predictions(r.laplacian);
  j["signless"] = predictions(r.signless);
  j["normalized"] = {{"eigenvalue", r.normalized.eigenvalue}, {"min_multiplicity", r.normalized.bound}};
  j["ldependent"] = predictions(r.ldependent);
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const VerificationRecord& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"measured", c.measured},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
  }
  return {{"passed", r.passed()}, {"checks", checks}, {"warnings", r.warnings}};
}

Json to_json(const Reduction& r) {
  Json stars = Json::array();
  for (const auto& s : r.stars) {
    stars.push_back({{"v1", vertices(s.star.v1)},
                     {"v2", vertices(s.star.v2)},
                     {"m", s.m()},
                     {"q", s.q},
                     {"weight", s.weight},
                     {"mass", s.mass()},
                     {"kept", vertices(s.kept)},
                     {"removed", vertices(s.removed)}});
  }
  Json map = Json::array();
  for (const auto& m : r.vertex_map) map.push_back(m ? Json(*m) : Json(nullptr));
  Json j;
  j["original_order"] = r.original.order();
  j["reduced_order"] = r.reduced.order();
  j["stars"] = stars;
  j["vertex_map"] = map;
  j["mass"] = r.reduced.mass();
  return j;
}

Json to_json(const FiedlerResult& f) {
  return {{"lambda2", f.lambda2},
          {"vector", vector_json(f.vector)},
          {"degenerate", f.degenerate},
          {"multiplicity", f.multiplicity}};
}

Json to_json(const Partition& p) {
  return {{"labels", p.labels},
          {"clusters", p.cluster_count()},
          {"provenance", p.provenance},
          {"zero_entries", vertices(p.zero_entries)}};
}

Json to_json(const SignAgreementReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"original", p.original},
                     {"reduced", p.reduced},
                     {"original_entry", p.original_entry},
                     {"reduced_entry", p.reduced_entry},
                     {"agrees", p.agrees}});
  }
  Json j;
  j["pairs"] = pairs;
  j["flipped"] = r.flipped;
  j["agreement"] = r.agreement;
  j["degenerate"] = r.degenerate;
  j["passed"] = r.passed;
  j["original_lambda2"] = r.original_lambda;
  j["reduced_lambda2"] = r.reduced_lambda;
  j["note"] = r.note;
  return j;
}

Json report_header(double tol_rel) {
  Json j;
  j["version"] = kVersion;
  j["tolerances"] = {{"multiplicity_rel", tol_rel},
                     {"weight_rel", kWeightTolerance},
                     {"orthonormality", 1e-10},
                     {"congruence_rel", 1e-9},
                     {"zero_entry", kZeroEntry}};
  j["mass_degree_definition"] = kMassDegreeNote;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mkstar
