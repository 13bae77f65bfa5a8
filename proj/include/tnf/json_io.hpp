#pragma once

// JSON forms shared by the CLI and the experiment reports. Rationals travel as
// "p/q" strings; floats appear only in float mode.

#include <string>
#include <string_view>

#include <json.hpp>

#include "tnf/finite_lattice.hpp"
#include "tnf/measures.hpp"
#include "tnf/signed_young.hpp"

namespace tnf::io {

using nlohmann::json;

/// Parses `text` as JSON when it starts with '{' or '[', otherwise reads it
/// as a path to a JSON file.
json load_json_argument(std::string_view text);

/// Accepts {"weights": {...}} or a bare {"index": weight} object. Rational
/// mode takes "p/q", integer or decimal strings and integer numbers;
/// non-integer JSON numbers are rejected there because they are not exact.
Alpha alpha_from_json(const json& j);
AlphaF alpha_float_from_json(const json& j);
json to_json(const Alpha& alpha);
json to_json(const AlphaF& alpha);

/// {"window": n, "labels": [...]}.
SignedPartition partition_from_json(const json& j);
json to_json(const SignedPartition& eta);

json to_json(const CycleType& t);
json to_json(const FixProbReport<Rational>& r);
json to_json(const FixProbReport<double>& r);

json to_json(const lattice::SubgroupLattice& lattice);
/// Nonzero masses only, keyed by subgroup index.
json to_json(const lattice::LatticeMeasure& m);

} // namespace tnf::io
