#include "mkstar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "mkstar/io.hpp"
#include "mkstar/partition.hpp"
#include "mkstar/reduce.hpp"
#include "mkstar/report.hpp"
#include "mkstar/spectrum.hpp"
#include "mkstar/structure.hpp"

namespace mkstar {

namespace {

struct Options {
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
  bool json = false;
};

// Human-readable number: 10 significant digits, tiny values shown as 0.
std::string show(double x) {
  if (std::abs(x) < 1e-10) x = 0.0;
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

std::string show_values(const std::vector<double>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + show(xs[i]);
  return s + "}";
}

std::string show_set(const std::vector<Vertex>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
  return s + "}";
}

void print_record(std::ostream& out, const VerificationRecord& rec) {
  for (const auto& c : rec.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (c.measured != 0.0 || c.threshold != 0.0) {
      out << " (measured " << show(c.measured) << ", threshold " << show(c.threshold) << ")";
    }
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  for (const auto& w : rec.warnings) out << "warning: " << w << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

Graph load(const std::string& path) { return parse_graph_file(read_file(path)); }

DenseMatrix matrix_of(const Graph& g, const std::string& kind) {
  if (kind == "adjacency") return adjacency(g);
  if (kind == "signless") return signless_laplacian(g);
  if (kind == "normalized") return normalized_laplacian(g);
  return laplacian(g);
}

// Full reduction suite for one Reduction.
VerificationRecord reduction_suite(const Graph& g, const Reduction& r, double tol) {
  VerificationRecord rec;
  rec.merge(verify_adjacency_reduction(g, r, tol), "adjacency-reduction");
  rec.merge(verify_laplacian_reduction(g, r, tol), "laplacian-reduction");
  rec.add("interlacing", interlacing_check(g, r, tol), 0.0, tol,
          "eigenvalues of K^T A K interlace those of A");
  return rec;
}

int cmd_info(const Options& o, const std::string& file, std::ostream& out) {
  const Graph g = load(file);
  const auto stars = detect_stars(g);
  Json j = graph_summary(g);
  j["stars"] = stars.size();
  if (o.json) {
    out << dump(j);
    return kExitOk;
  }
  out << "vertices: " << g.order() << "\n"
      << "edges: " << g.size() << "\n"
      << "components: " << j["components"].get<std::size_t>() << "\n"
      << "total weight: " << show(j["total_weight"].get<double>()) << "\n"
      << "strength range: [" << show(j["min_strength"].get<double>()) << ", "
      << show(j["max_strength"].get<double>()) << "]\n"
      << "unit masses: " << (g.unit_mass() ? "yes" : "no") << "\n"
      << "k-clusters: " << stars.size() << "\n";
  return kExitOk;
}

int cmd_spectrum(const Options& o, const std::string& file, const std::string& kind,
                 std::ostream& out) {
  const Graph g = load(file);
  const auto s = sym_eigen(matrix_of(g, kind));
  const auto table = group_multiplicities(s.values, o.tol);
  if (o.json) {
    Json groups = Json::array();
    for (const auto& grp : table.groups) {
      groups.push_back({{"value", grp.value}, {"multiplicity", grp.multiplicity}});
    }
    Json j = report_header(o.tol);
    j["matrix"] = kind;
    j["values"] = s.values;
    j["groups"] = groups;
    out << dump(j);
    return kExitOk;
  }
  out << kind << " spectrum: " << show_values(s.values) << "\n";
  for (const auto& grp : table.groups) {
    out << "  " << show(grp.value) << " x" << grp.multiplicity << "\n";
  }
  return kExitOk;
}

int cmd_stars(const Options& o, const std::string& file, std::ostream& out) {
  const Graph g = load(file);
  const auto report = predict_multiplicities(g, o.tol);
  const auto rec = verify_star_predictions(g, o.tol);
  if (o.json) {
    Json j = report_header(o.tol);
    j["graph"] = graph_summary(g);
    j["predictions"] = to_json(report);
    j["verification"] = to_json(rec);
    out << dump(j);
  } else if (report.classes.empty() && report.structural_only.empty()) {
    out << "no stars detected\n";
  } else {
    for (const auto& c : report.classes) {
      for (const auto& s : c.stars) {
        out << "star S_{" << s.m() << "," << s.k() << "} v1=" << show_set(s.v1)
            << " v2=" << show_set(s.v2) << " weight=" << show(*s.weight_uniform) << "\n";
      }
      out << "class weight " << show(c.weight) << ": degree " << c.degree << "\n";
    }
    for (const auto& s : report.structural_only) {
      out << "structural k-cluster v1=" << show_set(s.v1) << " v2=" << show_set(s.v2)
          << " (unequal weights)\n";
    }
    print_record(out, rec);
  }
  return rec.passed() ? kExitOk : kExitVerification;
}

int cmd_ldep(const Options& o, const std::string& file, const std::string& partition_file,
             std::ostream& out) {
  const Graph g = load(file);
  std::vector<LDependentPartition> parts;
  VerificationRecord rec;
  if (!partition_file.empty()) {
    const auto cand = parse_partition_file(read_file(partition_file));
    try {
      parts.push_back(verify_ldependent(g, cand));
      rec.add("ldependent-conditions", true);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ConditionViolated && e.kind() != ErrorKind::NoCommonStrength) throw;
      rec.add("ldependent-conditions", false, 0.0, 0.0,
              std::string(to_string(e.kind())) + ": " + e.what());
    }
  } else {
    parts = predict_multiplicities(g, o.tol).certificates;
  }
  rec.merge(verify_ldependent_predictions(g, parts, o.tol), "");

  if (o.json) {
    Json certs = Json::array();
    for (const auto& p : parts) certs.push_back(to_json(p));
    Json j = report_header(o.tol);
    j["graph"] = graph_summary(g);
    j["certificates"] = certs;
    j["verification"] = to_json(rec);
    out << dump(j);
  } else {
    if (parts.empty()) out << "no l-dependent structure certified\n";
    for (const auto& p : parts) {
      out << "D^" << p.l() << "(" << show(p.wtilde) << "): v1=" << show_set(p.v1)
          << " v2=" << show_set(p.v2) << " v3=" << show_set(p.v3) << "\n";
      for (std::size_t i = 0; i < p.v3.size(); ++i) {
        out << "  row " << p.v3[i] << " =";
        for (const auto& c : p.coefficients[i]) out << " " << show(c.value) << "*row" << c.vertex;
        out << "\n";
      }
    }
    print_record(out, rec);
  }
  return rec.passed() ? kExitOk : kExitVerification;
}

CollapsePolicy parse_policy(const std::string& name) {
  return name == "keep-pair" ? CollapsePolicy::KeepPair : CollapsePolicy::CollapseToOne;
}

int cmd_reduce(const Options& o, const std::string& file, const std::string& policy,
               const std::string& output, const std::string& report_path, std::ostream& out) {
  const Graph g = load(file);
  const auto r = reduce_all(g, parse_policy(policy));
  write_text_file(output, write_graph_file(r.reduced));
  const auto rec = reduction_suite(g, r, o.tol);
  Json j = report_header(o.tol);
  j["reduction"] = to_json(r);
  j["verification"] = to_json(rec);
  if (!report_path.empty()) write_text_file(report_path, dump(j));
  if (o.json) {
    out << dump(j);
  } else {
    out << "reduced " << g.order() << " -> " << r.reduced.order() << " vertices ("
        << r.stars.size() << " stars), written to " << output << "\n";
    print_record(out, rec);
  }
  return rec.passed() ? kExitOk : kExitVerification;
}

int cmd_verify(const Options& o, const std::string& file, std::optional<std::size_t> q,
               std::ostream& out) {
  const Graph g = load(file);
  const double tol = o.tol;
  VerificationRecord all;

  const auto predictions = predict_multiplicities(g, tol);
  all.merge(verify_star_predictions(g, tol), "stars");

  // Every structural k-cluster must be certified by one of the multiplicity
  // bounds: weight-uniform stars directly, the rest as l-dependent.
  for (const auto& s : predictions.structural_only) {
    const bool certified = std::any_of(
        predictions.certificates.begin(), predictions.certificates.end(),
        [&](const LDependentPartition& p) {
          std::vector<Vertex> members = p.v1;
          members.insert(members.end(), p.v3.begin(), p.v3.end());
          std::sort(members.begin(), members.end());
          return members == s.v1;
        });
    all.add("k-cluster-certification" + show_set(s.v1), certified, 0.0, 0.0,
            certified ? "certified as l-dependent with common strength"
                      : "weight vectors differ and no common-strength l-dependence: neither "
                        "multiplicity bound applies");
  }
  all.merge(verify_ldependent_predictions(g, predictions.certificates, tol), "ldependent");

  const auto stars = detect_stars(g);
  std::vector<std::size_t> qs(stars.size(), 0);
  for (std::size_t i = 0; i < stars.size(); ++i) {
    if (stars[i].structural_only()) continue;
    const std::size_t full = stars[i].m() - 1;
    qs[i] = q ? std::min(*q, full) : full;
    if (q && *q > full) {
      all.warn("q clamped to " + std::to_string(full) + " for star v1=" + show_set(stars[i].v1));
    }
  }
  const auto r = reduce_all(g, qs);
  all.merge(reduction_suite(g, r, tol), "reduction");

  std::optional<SignAgreementReport> signs;
  std::optional<Partition> bisection;
  if (is_connected(g) && g.order() >= 2 && is_connected(r.reduced) && r.reduced.order() >= 2) {
    signs = compare_signs(g, r, tol);
    if (signs->degenerate) {
      all.warn("sign comparison inconclusive: " + signs->note);
    } else {
      all.add("sign-agreement", signs->passed, signs->agreement, 1.0,
              "Fiedler sign pattern preserved on kept vertices");
    }
    bisection = sign_bipartition(g);
  } else {
    all.warn("graph disconnected; partition checks skipped");
  }

  const auto lap = sym_eigen(laplacian(g)).values;
  const auto red = sym_eigen(sym_mass_laplacian(r)).values;
  if (o.json) {
    Json j = report_header(tol);
    j["graph"] = graph_summary(g);
    j["predictions"] = to_json(predictions);
    j["reduction"] = to_json(r);
    j["spectra"] = {{"laplacian", lap}, {"reduced_laplacian", red}};
    j["partition"] = bisection ? to_json(*bisection) : Json(nullptr);
    j["sign_agreement"] = signs ? to_json(*signs) : Json(nullptr);
    j["verification"] = to_json(all);
    out << dump(j);
  } else {
    out << "laplacian spectrum " << show_values(lap) << " -> reduced " << show_values(red) << "\n";
    print_record(out, all);
    if (const Check* f = all.first_failure()) {
      out << "verification FAILED: " << f->name << "\n";
    } else {
      out << "all checks passed\n";
    }
  }
  return all.passed() ? kExitOk : kExitVerification;
}

int cmd_partition(const Options& o, const std::string& file, bool bisect, bool rsb,
                  std::size_t max_clusters, std::optional<double> threshold,
                  const std::string& kway_arg, const std::string& dot, std::ostream& out) {
  const Graph g = load(file);
  Partition p;
  if (bisect) {
    p = sign_bipartition(g);
  } else if (rsb) {
    p = threshold ? recursive_bisection(g, Lambda2Threshold{*threshold})
                  : recursive_bisection(g, MaxClusters{max_clusters});
  } else if (kway_arg == "auto") {
    p = kway(g, std::nullopt);
  } else {
    std::size_t k = 0;
    try {
      k = std::stoul(kway_arg);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--kway", "expected an integer or 'auto'");
    }
    p = kway(g, k);
  }
  if (!dot.empty()) write_text_file(dot, emit_dot(g, p));
  if (o.json) {
    Json j = report_header(o.tol);
    j["partition"] = to_json(p);
    out << dump(j);
    return kExitOk;
  }
  out << p.provenance << ": " << p.cluster_count() << " clusters\n";
  for (std::size_t c = 0; c < p.cluster_count(); ++c) {
    std::vector<Vertex> members;
    for (Vertex v = 0; v < p.labels.size(); ++v) {
      if (p.labels[v] == c) members.push_back(v);
    }
    out << "  cluster " << c << ": " << show_set(members) << "\n";
  }
  if (!p.zero_entries.empty()) out << "zero Fiedler entries: " << show_set(p.zero_entries) << "\n";
  return kExitOk;
}

int cmd_compare(const Options& o, const std::string& file, const std::string& policy,
                std::ostream& out) {
  const Graph g = load(file);
  const auto r = reduce_all(g, parse_policy(policy));
  const auto rep = compare_signs(g, r, o.tol);
  if (o.json) {
    Json j = report_header(o.tol);
    j["reduction"] = to_json(r);
    j["sign_agreement"] = to_json(rep);
    out << dump(j);
  } else {
    out << "original lambda2 " << show(rep.original_lambda) << ", reduced lambda2 "
        << show(rep.reduced_lambda) << "\n";
    if (rep.degenerate) {
      out << "inconclusive (degenerate): " << rep.note << "\n";
    } else {
      for (const auto& p : rep.pairs) {
        out << "  vertex " << p.original << " -> " << p.reduced << ": " << show(p.original_entry)
            << " vs " << show(p.reduced_entry) << (p.agrees ? "" : "  MISMATCH") << "\n";
      }
      if (!rep.note.empty()) out << "note: " << rep.note << "\n";
      out << "agreement " << show(rep.agreement) << (rep.flipped ? " (after global flip)" : "")
          << ": " << (rep.passed ? "signs agree" : "signs DISAGREE") << "\n";
    }
  }
  if (rep.degenerate || rep.passed) return kExitOk;
  return kExitVerification;
}

std::vector<StarSpec> parse_star_specs(const std::vector<std::string>& raw) {
  std::vector<StarSpec> specs;
  for (const auto& s : raw) {
    StarSpec spec;
    char c1 = 0;
    char c2 = 0;
    std::istringstream is(s);
    if (!(is >> spec.m >> c1 >> spec.k >> c2 >> spec.w) || c1 != ',' || c2 != ',') {
      throw CLI::ValidationError("--star", "expected m,k,w, got '" + s + "'");
    }
    specs.push_back(spec);
  }
  return specs;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detect (m,k)-stars and l-dependent structure, predict Laplacian eigenvalue "
               "multiplicities, reduce stars with a mass matrix and compare spectral partitions.",
               "mkstar"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--tol", opt.tol, "relative multiplicity / matching tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for generators");
  app.add_flag("--json", opt.json, "machine-readable output");
  app.set_version_flag("--version", std::string(kVersion));

  std::string file;
  std::function<int()> action;

  auto* info = app.add_subcommand("info", "graph summary");
  info->add_option("file", file)->required();
  info->callback([&] { action = [&] { return cmd_info(opt, file, out); }; });

  std::string matrix = "laplacian";
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and multiplicities");
  spectrum->add_option("file", file)->required();
  spectrum->add_option("--matrix", matrix)
      ->check(CLI::IsMember({"laplacian", "adjacency", "signless", "normalized"}));
  spectrum->callback([&] { action = [&] { return cmd_spectrum(opt, file, matrix, out); }; });

  auto* stars = app.add_subcommand("stars", "star detection and multiplicity verification");
  stars->add_option("file", file)->required();
  stars->callback([&] { action = [&] { return cmd_stars(opt, file, out); }; });

  std::string partition_file;
  auto* ldep = app.add_subcommand("ldep", "l-dependent certification and verification");
  ldep->add_option("file", file)->required();
  ldep->add_option("--partition", partition_file, "file with v1/v2/v3 lines")->check(CLI::ExistingFile);
  ldep->callback([&] { action = [&] { return cmd_ldep(opt, file, partition_file, out); }; });

  std::string policy = "collapse";
  std::string output;
  std::string report_path;
  auto* reduce = app.add_subcommand("reduce", "q-reduce every weight-uniform star");
  reduce->add_option("file", file)->required();
  reduce->add_option("--policy", policy)->check(CLI::IsMember({"collapse", "keep-pair"}));
  reduce->add_option("-o,--output", output, "reduced graph file")->required();
  reduce->add_option("--report", report_path, "JSON verification report");
  reduce->callback([&] {
    action = [&] { return cmd_reduce(opt, file, policy, output, report_path, out); };
  });

  std::optional<std::size_t> q;
  auto* verify = app.add_subcommand("verify", "run every multiplicity, reduction and sign check");
  verify->add_option("file", file)->required();
  verify->add_option("--q", q, "vertices removed per star (default m-1)")->check(CLI::PositiveNumber);
  verify->callback([&] { action = [&] { return cmd_verify(opt, file, q, out); }; });

  bool bisect = false;
  bool rsb = false;
  std::size_t max_clusters = 2;
  std::optional<double> threshold;
  std::string kway_arg;
  std::string dot;
  auto* part = app.add_subcommand("partition", "spectral partitioning");
  part->add_option("file", file)->required();
  auto* o_bisect = part->add_flag("--bisect", bisect, "Fiedler sign bipartition");
  auto* o_rsb = part->add_flag("--rsb", rsb, "recursive spectral bisection");
  auto* o_kway = part->add_option("--kway", kway_arg, "k-way clustering: K or auto");
  part->add_option("--max-clusters", max_clusters)->check(CLI::PositiveNumber);
  part->add_option("--lambda2-threshold", threshold);
  part->add_option("--dot", dot, "write DOT with cluster colours");
  o_bisect->excludes(o_rsb)->excludes(o_kway);
  o_rsb->excludes(o_kway);
  part->callback([&] {
    if (!bisect && !rsb && kway_arg.empty()) {
      throw CLI::ValidationError("partition", "one of --bisect, --rsb, --kway is required");
    }
    action = [&] {
      return cmd_partition(opt, file, bisect, rsb, max_clusters, threshold, kway_arg, dot, out);
    };
  });

  auto* compare = app.add_subcommand("compare", "sign agreement of original and reduced Fiedler vectors");
  compare->add_option("file", file)->required();
  compare->add_option("--policy", policy)->check(CLI::IsMember({"collapse", "keep-pair"}));
  compare->callback([&] { action = [&] { return cmd_compare(opt, file, policy, out); }; });

  std::size_t gen_n = 0;
  std::vector<std::string> star_specs;
  std::string sizes;
  double wtilde = 1.0;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "planted test graphs");
  generate->require_subcommand(1);
  auto* gen_stars = generate->add_subcommand("stars", "graph with planted (m,k)-stars");
  gen_stars->add_option("--n", gen_n)->required();
  gen_stars->add_option("--star", star_specs, "m,k,w (repeatable)")->required();
  gen_stars->add_option("-o,--output", gen_out);
  gen_stars->callback([&] {
    action = [&] {
      const auto g = plant_star_graph(opt.seed, gen_n, parse_star_specs(star_specs));
      const auto text = write_graph_file(g);
      gen_out.empty() ? void(out << text) : write_text_file(gen_out, text);
      return kExitOk;
    };
  });
  auto* gen_ldep = generate->add_subcommand("ldep", "planted l-dependent graph");
  gen_ldep->add_option("--sizes", sizes, "|v1|,|v2|,l")->required();
  gen_ldep->add_option("--wtilde", wtilde)->required()->check(CLI::PositiveNumber);
  gen_ldep->add_option("-o,--output", gen_out);
  gen_ldep->callback([&] {
    action = [&] {
      LDependentSizes s;
      char c1 = 0;
      char c2 = 0;
      std::istringstream is(sizes);
      if (!(is >> s.v1 >> c1 >> s.v2 >> c2 >> s.l) || c1 != ',' || c2 != ',') {
        throw CLI::ValidationError("--sizes", "expected a,b,l");
      }
      const auto planted = plant_ldependent_graph(opt.seed, s, wtilde);
      const auto text = write_graph_file(planted.graph);
      gen_out.empty() ? void(out << text) : write_text_file(gen_out, text);
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return action ? action() : kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace mkstar
