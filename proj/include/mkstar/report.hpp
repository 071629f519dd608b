#pragma once

#include <string>

#include <json.hpp>

#include "mkstar/graph.hpp"
#include "mkstar/partition.hpp"
#include "mkstar/reduce.hpp"
#include "mkstar/structure.hpp"
#include "mkstar/verification.hpp"

namespace mkstar {

inline constexpr const char* kVersion = "0.1.0";

// Recorded in every report: the mass-degree definition is a modelling choice.
inline constexpr const char* kMassDegreeNote =
    "diag(MB) is taken as the column sums of MB (sum_i M_ii B_ij); with this "
    "choice diag(A) K = K diag(MB) and lifted eigenvectors of tilde L are "
    "eigenvectors of L(A).";

// JSON objects use std::map, so dumps are key-sorted and byte-stable.
using Json = nlohmann::json;

Json graph_summary(const Graph& g);
Json to_json(const MkStar& s);
Json to_json(const StarClass& c);
Json to_json(const LDependentPartition& p);
Json to_json(const PredictionReport& r);
Json to_json(const VerificationRecord& r);
Json to_json(const Reduction& r);
Json to_json(const FiedlerResult& f);
Json to_json(const Partition& p);
Json to_json(const SignAgreementReport& r);

// Tolerances and version block shared by all reports.
Json report_header(double tol_rel);

std::string dump(const Json& j);

}  // namespace mkstar
