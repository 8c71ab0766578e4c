#pragma once

#include "ugspec/generators.hpp"
#include "ugspec/maxlin.hpp"
#include "ugspec/numeric_config.hpp"
#include "ugspec/oracle.hpp"
#include "ugspec/recover.hpp"

#include <json.hpp>

namespace ugspec {

using nlohmann::json;

/// Non-finite doubles become null.
json finite_or_null(double x);

json to_json(const Labeling &L);
json to_json(const SolveReport &r, bool timings = true);
json to_json(const UniformityReport &r);
json to_json(const PerturbationReport &r);
json to_json(const MaxLinSolveReport &r, bool timings = true);
json to_json(const OracleResult &r);
json to_json(const ProjectionSplit &s);
json to_json(const NumericConfig &c);
json to_json(const std::vector<SpectrumLevel> &levels);
json to_json(const Eigenspace &S, bool with_vectors);

const char *to_string(Decision d);

} // namespace ugspec
