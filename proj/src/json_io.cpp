#include "tnf/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tnf::io {

namespace {

const json& weights_object(const json& j) {
  const json& w = (j.is_object() && j.contains("weights")) ? j.at("weights") : j;
  if (!w.is_object())
    throw std::invalid_argument("alpha must be a JSON object of index -> weight");
  return w;
}

Label parse_index(const std::string& key) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size())
    throw std::invalid_argument("alpha index '" + key + "' is not an integer");
  return static_cast<Label>(v);
}

Rational exact_weight(const json& v, const std::string& key) {
  if (v.is_string())
    return parse_rational(v.get<std::string>());
  if (v.is_number_integer())
    return Rational(v.get<long long>());
  if (v.is_number_unsigned())
    return Rational(static_cast<long long>(v.get<unsigned long long>()));
  if (v.is_number_float())
    throw std::invalid_argument("weight of index " + key +
                                " is a float; use a \"p/q\" string or float mode");
  throw std::invalid_argument("weight of index " + key + " must be a string or number");
}

double float_weight(const json& v, const std::string& key) {
  if (v.is_number())
    return v.get<double>();
  if (v.is_string())
    return to_double(parse_rational(v.get<std::string>()));
  throw std::invalid_argument("weight of index " + key + " must be a string or number");
}

} // namespace

json load_json_argument(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  try {
    if (i < text.size() && (text[i] == '{' || text[i] == '['))
      return json::parse(text);
    std::ifstream in{std::string(text)};
    if (!in)
      throw std::invalid_argument("cannot open '" + std::string(text) + "'");
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

Alpha alpha_from_json(const json& j) {
  Alpha::Weights w;
  for (const auto& [key, value] : weights_object(j).items())
    w[parse_index(key)] += exact_weight(value, key);
  return Alpha(std::move(w));
}

AlphaF alpha_float_from_json(const json& j) {
  AlphaF::Weights w;
  for (const auto& [key, value] : weights_object(j).items())
    w[parse_index(key)] += float_weight(value, key);
  return AlphaF(std::move(w));
}

json to_json(const Alpha& alpha) {
  json w = json::object();
  for (const auto& [i, v] : alpha.weights())
    w[std::to_string(i)] = to_string(v);
  return json{{"weights", w}};
}

json to_json(const AlphaF& alpha) {
  json w = json::object();
  for (const auto& [i, v] : alpha.weights())
    w[std::to_string(i)] = v;
  return json{{"weights", w}};
}

SignedPartition partition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.at("labels").is_array())
    throw std::invalid_argument("partition must be {\"window\": n, \"labels\": [...]}");
  std::vector<Label> labels;
  for (const json& l : j.at("labels")) {
    if (!l.is_number_integer())
      throw std::invalid_argument("partition labels must be integers");
    labels.push_back(l.get<Label>());
  }
  if (j.contains("window") && j.at("window").get<std::size_t>() != labels.size())
    throw std::invalid_argument("partition window does not match the label count");
  if (labels.empty())
    throw std::invalid_argument("partition window must be at least 1");
  return SignedPartition(std::move(labels));
}

json to_json(const SignedPartition& eta) {
  return json{{"window", eta.window()}, {"labels", eta.labels()}};
}

json to_json(const CycleType& t) {
  json j = json::object();
  for (const auto& [k, c] : t.counts)
    j[std::to_string(k)] = c;
  return j;
}

namespace {

json scalar(const Rational& r) { return to_string(r); }
json scalar(double d) { return d; }

template <class Scalar>
json report_json(const FixProbReport<Scalar>& r) {
  json factors = json::array();
  for (const auto& f : r.factors)
    factors.push_back({{"length", f.length},
                       {"count", f.count},
                       {"paper_factor", scalar(f.paper)},
                       {"full_factor", scalar(f.full)},
                       {"character_factor", scalar(f.character)}});
  return json{{"cycle_type", to_json(r.cycle_type)},
              {"factors", factors},
              {"paper_value", scalar(r.paper_value)},
              {"full_value", scalar(r.full_value)},
              {"formulas_disagree", r.formulas_disagree()},
              {"mc_estimate", r.mc_estimate},
              {"mc_stderr", r.mc_stderr},
              {"sample_count", r.sample_count},
              {"hits", r.hits},
              {"seed", r.seed}};
}

} // namespace

json to_json(const FixProbReport<Rational>& r) { return report_json(r); }
json to_json(const FixProbReport<double>& r) { return report_json(r); }

json to_json(const lattice::SubgroupLattice& L) {
  json subgroups = json::array();
  for (std::size_t i = 0; i < L.size(); ++i) {
    json gens = json::array();
    for (const Permutation& g : L.subgroup(i).generator_permutations())
      gens.push_back(to_string(g));
    subgroups.push_back({{"index", i},
                         {"order", L.subgroup(i).order()},
                         {"generators", gens},
                         {"normalizer", L.normalizer_of(i)},
                         {"class", L.class_of(i)},
                         {"self_normalizing", L.normalizer_of(i) == i}});
  }
  json classes = json::array();
  for (const auto& c : L.conjugacy_classes())
    classes.push_back(c);
  return json{{"n", L.degree()},
              {"group_order", L.ambient().order()},
              {"subgroup_count", L.size()},
              {"class_count", L.conjugacy_classes().size()},
              {"subgroups", subgroups},
              {"classes", classes},
              {"self_normalizing", lattice::self_normalizing_set(L)}};
}

json to_json(const lattice::LatticeMeasure& m) {
  json j = json::object();
  for (std::size_t i : m.support())
    j[std::to_string(i)] = to_string(m.mass[i]);
  return j;
}

} // namespace tnf::io
