#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tnf/experiments.hpp"
#include "tnf/finite_lattice.hpp"
#include "tnf/json_io.hpp"
#include "tnf/measures.hpp"
#include "tnf/signed_young.hpp"

namespace tnf::cli {

namespace {

using nlohmann::json;

/// Raised for missing flags that CLI11 cannot express (e.g. --seed on
/// stochastic subcommands only); maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string mode = "rational";
  std::string format = "json";
  bool csv = false;
  bool verbose = false;

  bool float_mode() const { return mode == "float"; }
  bool want_csv() const { return csv || format == "csv"; }
};

std::uint64_t require_seed(const GlobalOptions& g, const std::string& command) {
  if (!g.seed)
    throw UsageError(command + " is stochastic and needs an explicit --seed");
  return *g.seed;
}

json header(const GlobalOptions& g, const std::string& command) {
  json j{{"command", command}, {"mode", g.mode}};
  j["seed"] = g.seed ? json(*g.seed) : json(nullptr);
  return j;
}

json scalar(const Rational& r) { return to_string(r); }
json scalar(double d) { return d; }

/// Calls fn with the validated alpha in the selected numeric mode.
template <class Fn>
void with_alpha(const GlobalOptions& g, const std::string& text, Fn&& fn) {
  const json j = io::load_json_argument(text);
  if (g.float_mode())
    fn(validate(io::alpha_float_from_json(j)));
  else
    fn(validate(io::alpha_from_json(j)));
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::size_t parse_subgroup_spec(const lattice::SubgroupLattice& L, const std::string& spec) {
  std::string s = spec;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (!s.empty() && s.front() == '#') {
    std::size_t idx = std::stoul(s.substr(1));
    if (idx >= L.size())
      throw std::domain_error("subgroup index " + std::to_string(idx) + " out of range");
    return idx;
  }
  // Generators in cycle notation separated by commas; "()" alone is trivial.
  std::vector<lattice::ElementIndex> gens;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string piece = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    gens.push_back(L.ambient().index_of(parse_permutation(piece)));
    if (comma == std::string::npos)
      break;
    pos = comma + 1;
  }
  return L.index_of(L.ambient().closure(gens));
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random signed Young subgroups, fixed-point measures and finite subgroup lattices",
               "tnf"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "64-bit master seed (required by stochastic commands)");
  app.add_option("--mode", g.mode, "numeric mode")
      ->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--csv", g.csv, "shorthand for --format csv");
  app.add_flag("-v,--verbose", g.verbose, "print timing notes to stderr");

  std::string alpha_text, g_text, partition_text, start_spec, config_path, out_dir, suite;
  std::size_t window = 0;
  std::uint64_t samples = 0, m = 0, replicates = 0;
  unsigned lattice_n = 0, block = 2, coords = 2;
  bool allow_n6 = false, tensor = false;

  auto* sample = app.add_subcommand("sample", "sample a random signed Young subgroup");
  sample->add_option("--alpha", alpha_text, "alpha as inline JSON or file")->required();
  sample->add_option("--n", window, "window size")->required()->check(CLI::PositiveNumber);

  auto* fixprob = app.add_subcommand("fixprob", "fixed-point probability of conjugation by g");
  fixprob->add_option("--alpha", alpha_text, "alpha as inline JSON or file")->required();
  fixprob->add_option("--g", g_text, "permutation in cycle notation")->required();
  fixprob->add_option("--samples", samples, "Monte Carlo sample count")
      ->required()
      ->check(CLI::PositiveNumber);

  auto* character = app.add_subcommand("character", "character value from super-Newton sums");
  character->add_option("--alpha", alpha_text, "alpha as inline JSON or file")->required();
  character->add_option("--g", g_text, "permutation in cycle notation")->required();

  auto* classify = app.add_subcommand("classify", "TNF/RTNF classification of alpha");
  classify->add_option("--alpha", alpha_text, "alpha as inline JSON or file")->required();

  auto* finetti = app.add_subcommand("finetti", "empirical label frequencies of one sample");
  finetti->add_option("--alpha", alpha_text, "alpha as inline JSON or file")->required();
  finetti->add_option("--n", window, "window size")->required()->check(CLI::PositiveNumber);
  finetti->add_option("--replicates", replicates,
                      "also run the independence check with this many replicates");
  finetti->add_option("--t", coords, "coordinates in the independence check")
      ->check(CLI::Range(1, 3));

  auto* partl = app.add_subcommand("part-l", "pair overlap for random perfect matchings");
  partl->add_option("--m", m, "number of blocks")->required()->check(CLI::PositiveNumber);
  partl->add_option("--block", block, "block length (above 2 needs --tensor)");
  partl->add_option("--samples", samples, "Monte Carlo sample count");
  partl->add_flag("--tensor", tensor, "allow block lengths above 2 (Monte Carlo only)");

  auto* young = app.add_subcommand("young", "inspect a signed partition");
  young->add_option("--partition", partition_text, "partition as inline JSON or file")->required();
  young->add_option("--g", g_text, "optional permutation to test");

  auto* lattice_cmd = app.add_subcommand("lattice", "subgroup lattices of S_n");
  lattice_cmd->require_subcommand(1);
  auto* enumerate = lattice_cmd->add_subcommand("enumerate", "list all subgroups of S_n");
  enumerate->add_option("--n", lattice_n, "degree")->required();
  enumerate->add_flag("--allow-n6", allow_n6, "permit n = 6");
  auto* hierarchy = lattice_cmd->add_subcommand("hierarchy", "normalization chain from a point mass");
  hierarchy->add_option("--n", lattice_n, "degree")->required();
  hierarchy->add_option("--start", start_spec,
                        "subgroup as '#index' or comma-separated generators")
      ->required();
  hierarchy->add_flag("--allow-n6", allow_n6, "permit n = 6");

  auto* exp_cmd = app.add_subcommand("experiments", "seeded experiment suites");
  exp_cmd->require_subcommand(1);
  auto* exp_run = exp_cmd->add_subcommand("run", "run one suite and write report.json/report.csv");
  exp_run->add_option("--name", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(experiments::suite_names()));
  exp_run->add_option("--config", config_path, "JSON config overlaying the pinned defaults");
  exp_run->add_option("--out", out_dir, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", e.what()}, {"kind", "usage"}}.dump() << '\n' << app.help();
    return 2;
  }

  try {
    if (sample->parsed()) {
      const std::uint64_t seed = require_seed(g, "sample");
      with_alpha(g, alpha_text, [&](const auto& alpha) {
        const LabelSample s = sample_labels(alpha, window, seed);
        const SignedYoungSubgroup y(SignedPartition(s.labels));
        if (g.want_csv()) {
          out << "point,label\n";
          for (std::size_t i = 0; i < s.labels.size(); ++i)
            out << i + 1 << ',' << s.labels[i] << '\n';
          return;
        }
        json j = header(g, "sample");
        j["alpha"] = io::to_json(alpha);
        j["partition"] = io::to_json(y.partition());
        j["self_normalizing"] = is_self_normalizing(y);
        j["n2_equals_n"] = check_n2_equals_n(y);
        j["normalizer"] = io::to_json(normalizer_symbolic(y).partition());
        emit(out, j);
      });
    } else if (fixprob->parsed()) {
      const std::uint64_t seed = require_seed(g, "fixprob");
      const Permutation perm = parse_permutation(g_text);
      with_alpha(g, alpha_text, [&](const auto& alpha) {
        const auto report = mc_fixed_probability(alpha, perm, samples, seed);
        if (g.want_csv()) {
          out << "row,length,count,paper,full,character,estimate,stderr\n";
          for (const auto& f : report.factors)
            out << "factor," << f.length << ',' << f.count << ',' << scalar(f.paper).dump()
                << ',' << scalar(f.full).dump() << ',' << scalar(f.character).dump() << ",,\n";
          out << "estimate,,," << scalar(report.paper_value).dump() << ','
              << scalar(report.full_value).dump() << ",," << report.mc_estimate << ','
              << report.mc_stderr << '\n';
          return;
        }
        json j = header(g, "fixprob");
        j["alpha"] = io::to_json(alpha);
        j["g"] = to_string(perm);
        j.update(io::to_json(report));
        try {
          j["exhaustive_value"] = scalar(exhaustive_fixed_probability(alpha, perm));
        } catch (const std::length_error&) {
          j["exhaustive_value"] = nullptr;
        }
        emit(out, j);
      });
    } else if (character->parsed()) {
      const Permutation perm = parse_permutation(g_text);
      with_alpha(g, alpha_text, [&](const auto& alpha) {
        json factors = json::array();
        for (const auto& [k, c] : cycle_type(perm).counts)
          factors.push_back({{"length", k}, {"count", c}, {"super_newton", scalar(super_newton_sum(alpha, k))}});
        if (g.want_csv()) {
          out << "length,count,super_newton\n";
          for (const auto& f : factors)
            out << f["length"] << ',' << f["count"] << ',' << f["super_newton"] << '\n';
          out << "character,," << scalar(thoma_character(alpha, perm)) << '\n';
          return;
        }
        json j = header(g, "character");
        j["alpha"] = io::to_json(alpha);
        j["g"] = to_string(perm);
        j["cycle_type"] = io::to_json(cycle_type(perm));
        j["factors"] = factors;
        j["character"] = scalar(thoma_character(alpha, perm));
        emit(out, j);
      });
    } else if (classify->parsed()) {
      with_alpha(g, alpha_text, [&](const auto& alpha) {
        const NuClassification nu = classify_nu(alpha);
        const SequenceClassification seq = classify_sequence_action(alpha);
        if (g.want_csv()) {
          out << "measure,class,degenerate,atomic,symmetry_size\n";
          out << "subgroups," << (nu.tnf ? "TNF" : "RTNF-not-TNF") << ','
              << to_string(nu.degenerate) << ',' << (nu.atomic ? "true" : "false") << ",\n";
          out << "sequences," << (seq.tnf ? "TNF" : "RTNF-not-TNF") << ",,,"
              << seq.symmetry_size << '\n';
          return;
        }
        json j = header(g, "classify");
        j["alpha"] = io::to_json(alpha);
        j["subgroup_measure"] = {{"class", nu.tnf ? "TNF" : "RTNF-not-TNF"},
                                 {"degenerate", to_string(nu.degenerate)},
                                 {"atomic", nu.atomic}};
        j["sequence_action"] = {{"class", seq.tnf ? "TNF" : "RTNF-not-TNF"},
                                {"symmetry_size", seq.symmetry_size}};
        emit(out, j);
      });
    } else if (finetti->parsed()) {
      const std::uint64_t seed = require_seed(g, "finetti");
      with_alpha(g, alpha_text, [&](const auto& alpha) {
        const LabelSample s = sample_labels(alpha, window, seed);
        const Alpha estimate = definetti_estimate(s);
        std::optional<double> deviation;
        if (replicates > 0)
          deviation = independence_check(alpha, window, coords, replicates, seed);
        if (g.want_csv()) {
          out << "label,weight,estimate\n";
          std::set<Label> keys;
          for (const auto& [i, _] : alpha.weights())
            keys.insert(i);
          for (const auto& [i, _] : estimate.weights())
            keys.insert(i);
          for (Label i : keys)
            out << i << ',' << scalar(alpha.weight(i)).dump() << ','
                << scalar(estimate.weight(i)).dump() << '\n';
          if (deviation)
            out << "independence_deviation,," << *deviation << '\n';
          return;
        }
        json j = header(g, "finetti");
        j["alpha"] = io::to_json(alpha);
        j["window"] = window;
        j["estimate"] = io::to_json(estimate);
        json gaps = json::object();
        for (const auto& [i, w] : alpha.weights())
          gaps[std::to_string(i)] = std::abs(to_double(estimate.weight(i)) - [&] {
            if constexpr (std::is_same_v<std::decay_t<decltype(w)>, double>)
              return w;
            else
              return to_double(w);
          }());
        j["absolute_gaps"] = gaps;
        if (deviation) {
          j["independence"] = {{"coordinates", coords}, {"replicates", replicates},
                               {"max_deviation", *deviation}};
        }
        emit(out, j);
      });
    } else if (partl->parsed()) {
      json j = header(g, "part-l");
      j["block"] = block;
      j["m"] = m;
      if (block == 2)
        j["overlap"] = to_string(part_l_overlap(block, m));
      else if (!tensor)
        throw std::domain_error("block lengths above 2 need --tensor");
      if (samples > 0) {
        const std::uint64_t seed = require_seed(g, "part-l with --samples");
        const OverlapEstimate e = part_l_overlap_mc(block, m, samples, seed, tensor);
        j["mc_estimate"] = e.estimate;
        j["mc_stderr"] = e.stderr_;
        j["samples"] = samples;
      } else if (block != 2) {
        throw UsageError("block lengths above 2 are Monte Carlo only; pass --samples");
      }
      if (g.want_csv()) {
        out << "block,m,overlap,mc_estimate,mc_stderr\n"
            << block << ',' << m << ',' << (j.contains("overlap") ? j["overlap"].get<std::string>() : "")
            << ',' << (j.contains("mc_estimate") ? j["mc_estimate"].dump() : "") << ','
            << (j.contains("mc_stderr") ? j["mc_stderr"].dump() : "") << '\n';
        return 0;
      }
      emit(out, j);
    } else if (young->parsed()) {
      const SignedPartition eta = io::partition_from_json(io::load_json_argument(partition_text));
      const SignedYoungSubgroup y(eta);
      json j = header(g, "young");
      j["partition"] = io::to_json(eta);
      j["normalizer"] = io::to_json(normalizer_symbolic(y).partition());
      j["self_normalizing"] = is_self_normalizing(y);
      j["n2_equals_n"] = check_n2_equals_n(y);
      if (!g_text.empty()) {
        const Permutation perm = parse_permutation(g_text);
        j["g"] = to_string(perm);
        j["contains"] = contains(y, perm);
        j["is_fixed"] = is_fixed(perm, eta);
        j["ad_image"] = io::to_json(ad_image(perm, eta));
      }
      emit(out, j);
    } else if (enumerate->parsed() || hierarchy->parsed()) {
      lattice::EnumerateOptions opts;
      if (allow_n6) {
        opts.cap = lattice::kMaxDegree;
        opts.allow_degree6 = true;
      }
      const lattice::SubgroupLattice L = lattice::enumerate_subgroups(lattice_n, opts);
      if (enumerate->parsed()) {
        if (g.want_csv()) {
          out << "index,order,generators,normalizer,class,self_normalizing\n";
          const json lj = io::to_json(L);
          for (const json& s : lj["subgroups"]) {
            std::string gens;
            for (const json& gen : s["generators"])
              gens += (gens.empty() ? "" : " ") + gen.get<std::string>();
            out << s["index"] << ',' << s["order"] << ",\"" << gens << "\"," << s["normalizer"]
                << ',' << s["class"] << ',' << s["self_normalizing"] << '\n';
          }
          return 0;
        }
        json j = header(g, "lattice enumerate");
        j.update(io::to_json(L));
        emit(out, j);
      } else {
        const std::size_t start = parse_subgroup_spec(L, start_spec);
        const auto chain = lattice::hierarchy_chain(lattice::LatticeMeasure::point_mass(L, start));
        json steps = json::array();
        for (const auto& m : chain)
          steps.push_back(io::to_json(m));
        if (g.want_csv()) {
          out << "step,subgroup,mass\n";
          for (std::size_t s = 0; s < chain.size(); ++s)
            for (std::size_t i : chain[s].support())
              out << s << ',' << i << ',' << to_string(chain[s].mass[i]) << '\n';
          return 0;
        }
        json j = header(g, "lattice hierarchy");
        j["n"] = lattice_n;
        j["start"] = start;
        j["chain"] = steps;
        j["steps"] = chain.size() - 1;
        j["fixpoint_self_normalizing"] = lattice::supported_on_self_normalizing(chain.back());
        emit(out, j);
      }
    } else if (exp_run->parsed()) {
      const experiments::ExperimentConfig cfg =
          config_path.empty() ? experiments::default_config(suite)
                              : experiments::config_from_json(suite, io::load_json_argument(config_path));
      const experiments::ExperimentReport report = experiments::run(cfg);
      experiments::write_report(report, out_dir);
      json j = header(g, "experiments run");
      j["name"] = report.name;
      j["verdict"] = report.verdict ? "pass" : "fail";
      j["rows"] = report.rows.size();
      j["out"] = out_dir;
      if (g.verbose)
        err << "experiment " << report.name << " took " << report.wall_seconds << " s\n";
      emit(out, j);
      return report.verdict ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << json{{"error", e.what()}, {"kind", "usage"}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << json{{"error", e.what()}, {"kind", "domain"}}.dump() << '\n';
    return 1;
  }
  return 0;
}

} // namespace tnf::cli
