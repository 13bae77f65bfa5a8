// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Seeds are pinned so the run is reproducible.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include "tnf/finite_lattice.hpp"
#include "tnf/measures.hpp"
#include "tnf/seeding.hpp"

using namespace tnf;
using namespace tnf::lattice;

namespace {

constexpr std::uint64_t kSeed = 20240601;

Alpha A(std::map<Label, Rational> w) { return validate(Alpha(std::move(w))); }
Rational R(long p, long q = 1) { return Rational(p, q); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass)
        detail = what;
      pass = false;
    }
  }
};

bool within_4sigma(double estimate, const Rational& exact, std::uint64_t n) {
  const double p = to_double(exact);
  if (p == 0.0 || p == 1.0)
    return estimate == p;
  return std::abs(estimate - p) <= 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(n));
}

std::vector<FiniteAction> corpus(const SubgroupLattice& l3, const SubgroupLattice& l4) {
  std::vector<FiniteAction> out;
  for (const SubgroupLattice* L : {&l3, &l4}) {
    out.push_back(FiniteAction::natural(L->ambient_ptr()));
    out.push_back(FiniteAction::regular(L->ambient_ptr()));
    for (const auto& cls : L->conjugacy_classes())
      out.push_back(FiniteAction::cosets(*L, cls.front()));
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  const std::vector<Alpha> grid{
      A({{1, R(1, 2)}, {2, R(1, 2)}}),  A({{1, R(1, 2)}, {-1, R(1, 2)}}),
      A({{1, R(2, 3)}, {2, R(1, 3)}}),  A({{1, R(1, 3)}, {2, R(1, 3)}, {3, R(1, 3)}}),
      A({{0, R(1, 2)}, {1, R(1, 2)}}),  A({{1, R(1, 2)}, {-1, R(1, 4)}, {0, R(1, 4)}})};
  const std::vector<std::string> perms{"()", "(1 2)", "(1 2 3)", "(1 2)(3 4)", "(1 2)(3 4 5)"};
  const std::uint64_t n = 100000;
  std::uint64_t cell = 0;
  for (const auto& a : grid)
    for (const auto& text : perms) {
      const auto g = parse_permutation(text);
      const Rational exact = exhaustive_fixed_probability(a, g);
      const Rational full = fixed_measure_full(a, g);
      o.require(exact == full, "exhaustive != full at g=" + text);
      const auto r = mc_fixed_probability(a, g, n, shard_seed(kSeed, cell++));
      o.require(within_4sigma(r.mc_estimate, full, n), "MC outside 4 sigma at g=" + text);
    }
  o.detail = o.pass ? std::to_string(cell) + " cells" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  const std::vector<Alpha> positive{A({{1, R(1, 2)}, {2, R(1, 2)}}), A({{1, R(2, 3)}, {2, R(1, 3)}}),
                                    A({{1, R(1, 3)}, {2, R(1, 3)}, {3, R(1, 3)}}), A({{1, 1}})};
  const std::vector<Alpha> other{A({{1, R(1, 2)}, {-1, R(1, 2)}}), A({{0, R(1, 2)}, {1, R(1, 2)}}),
                                 A({{1, R(1, 2)}, {-1, R(1, 4)}, {0, R(1, 4)}}), A({{-1, 1}}),
                                 A({{0, 1}})};
  std::uint64_t stream = 0;
  auto count = [&](const Alpha& a, std::size_t& sn, std::size_t& n2) {
    sn = n2 = 0;
    for (int s = 0; s < 1000; ++s) {
      const auto y = sample_signed_young(a, 200, shard_seed(kSeed + 2, stream++));
      sn += is_self_normalizing(y);
      n2 += check_n2_equals_n(y);
    }
  };
  for (const auto& a : positive) {
    std::size_t sn, n2;
    count(a, sn, n2);
    o.require(sn == 1000, "positive-only alpha with non-self-normalizing sample");
  }
  for (const auto& a : other) {
    std::size_t sn, n2;
    count(a, sn, n2);
    o.require(sn == 0, "self-normalizing sample for alpha with mass at i <= 0");
    o.require(n2 == 1000, "sample with N^2 != N");
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  o.require(classify_nu(A({{1, 1}})).degenerate == Degenerate::identity, "{1:1} tag");
  o.require(classify_nu(A({{-1, 1}})).degenerate == Degenerate::alternating, "{-1:1} tag");
  o.require(classify_nu(A({{0, 1}})).degenerate == Degenerate::regular, "{0:1} tag");
  for (const auto* text : {"()", "(1 2)", "(1 2 3)", "(1 2)(3 4)", "(1 2)(3 4 5)", "(1 2 3 4)"}) {
    const auto g = parse_permutation(text);
    o.require(thoma_character(A({{1, 1}}), g) == 1, std::string("chi != 1 at ") + text);
    o.require(thoma_character(A({{-1, 1}}), g) == parity(g), std::string("chi != sign at ") + text);
    o.require(thoma_character(A({{0, 1}}), g) == (g.is_identity() ? 1 : 0),
              std::string("chi != delta_e at ") + text);
  }
  return o;
}

Outcome criterion4(const std::vector<FiniteAction>& actions) {
  Outcome o;
  for (std::size_t i = 0; i < actions.size(); ++i)
    o.require(is_tnf(actions[i]).agree(), "conditions disagree on action " + std::to_string(i));
  o.require(actions.size() >= 10, "corpus too small");
  if (o.pass)
    o.detail = std::to_string(actions.size()) + " actions";
  return o;
}

Outcome criterion5(const SubgroupLattice& l3, const SubgroupLattice& l4) {
  Outcome o;
  o.require(l3.size() == 6 && l4.size() == 30, "lattice sizes");
  for (const SubgroupLattice* L : {&l3, &l4})
    for (std::size_t h = 0; h < L->size(); ++h)
      o.require(check_transitive_tnf(*L, h) == (L->normalizer_of(h) == h),
                "mismatch at S" + std::to_string(L->degree()) + " subgroup " + std::to_string(h));
  return o;
}

Outcome criterion6(const SubgroupLattice& l3, const SubgroupLattice& l4) {
  Outcome o;
  const auto e3 = ergodic_ad_measures(l3);
  const auto e4 = ergodic_ad_measures(l4);
  o.require(e3.size() == 4, "S3 ergodic count " + std::to_string(e3.size()));
  o.require(e4.size() == 11, "S4 ergodic count " + std::to_string(e4.size()));
  std::size_t longest = 0;
  for (const auto* list : {&e3, &e4})
    for (const auto& m : *list) {
      const auto chain = hierarchy_chain(m);
      longest = std::max(longest, chain.size() - 1);
      o.require(chain.size() - 1 <= 3, "chain longer than 3 steps");
      o.require(supported_on_self_normalizing(chain.back()), "fixpoint not self-normalizing");
    }
  if (o.pass)
    o.detail = "longest chain " + std::to_string(longest) + " steps";
  return o;
}

std::pair<std::uint64_t, std::uint64_t> count_matchings(unsigned m) {
  std::uint64_t total = 0, hit = 0;
  std::vector<int> partner(2 * m, -1);
  std::function<void()> rec = [&] {
    int first = -1;
    for (unsigned i = 0; i < 2 * m && first < 0; ++i)
      if (partner[i] < 0)
        first = static_cast<int>(i);
    if (first < 0) {
      ++total;
      hit += partner[0] == 1;
      return;
    }
    for (unsigned j = static_cast<unsigned>(first) + 1; j < 2 * m; ++j)
      if (partner[j] < 0) {
        partner[first] = static_cast<int>(j);
        partner[j] = first;
        rec();
        partner[first] = partner[j] = -1;
      }
  };
  rec();
  return {total, hit};
}

Outcome criterion7() {
  Outcome o;
  for (unsigned m = 2; m <= 6; ++m) {
    const auto [total, hit] = count_matchings(m);
    o.require(part_l_overlap(2, m) == Rational(hit, total), "matching count at m=" + std::to_string(m));
  }
  const std::uint64_t n = 100000;
  for (std::uint64_t m = 2; m <= 50; ++m) {
    const Rational exact = part_l_overlap(2, m);
    o.require(exact == Rational(1, static_cast<long long>(2 * m - 1)), "closed form at m=" + std::to_string(m));
    const auto mc = part_l_overlap_mc(2, m, n, shard_seed(kSeed + 7, m));
    o.require(within_4sigma(mc.estimate, exact, n), "MC outside 4 sigma at m=" + std::to_string(m));
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const Alpha a = A({{1, R(1, 2)}, {-1, R(1, 4)}, {0, R(1, 4)}});
  const Alpha est = definetti_estimate(sample_labels(a, 10000, kSeed + 8));
  double worst = 0.0;
  for (const auto& [v, w] : a.weights())
    worst = std::max(worst, std::abs(to_double(est.weight(v)) - to_double(w)));
  o.require(worst <= 0.03, "frequency gap " + std::to_string(worst));
  const double dev = independence_check(a, 10000, 2, 100000, kSeed + 9);
  o.require(dev <= 0.02, "independence deviation " + std::to_string(dev));
  if (o.pass)
    o.detail = "max gap " + std::to_string(worst) + ", independence " + std::to_string(dev);
  return o;
}

Outcome criterion9() {
  Outcome o;
  const std::vector<std::pair<Alpha, bool>> grid{
      {A({{1, R(2, 3)}, {2, R(1, 3)}}), true},
      {A({{1, R(1, 2)}, {2, R(1, 2)}}), false},
      {A({{1, 1}}), true},
      {A({{1, R(1, 2)}, {-1, R(1, 2)}}), false},
      {A({{1, R(1, 2)}, {-1, R(1, 4)}, {0, R(1, 4)}}), true},
      {A({{1, R(1, 4)}, {2, R(1, 4)}, {-1, R(1, 4)}, {0, R(1, 4)}}), false}};
  for (std::size_t i = 0; i < grid.size(); ++i)
    o.require(classify_sequence_action(grid[i].first).tnf == grid[i].second,
              "alpha " + std::to_string(i));
  return o;
}

Outcome criterion10(const std::vector<FiniteAction>& actions, const SubgroupLattice& l3,
                    const SubgroupLattice& l4) {
  Outcome o;
  std::mt19937_64 eng(kSeed + 10);
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const auto& a = actions[i];
    const SubgroupLattice& L = a.group().degree() == 3 ? l3 : l4;
    const auto mu = characteristic_measure(a, L);
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<std::size_t> bij(a.points());
      std::iota(bij.begin(), bij.end(), std::size_t{0});
      std::shuffle(bij.begin(), bij.end(), eng);
      o.require(characteristic_measure(a.relabel(bij), L) == mu,
                "measure changed on action " + std::to_string(i));
    }
  }
  return o;
}

template <class Fn>
bool report(int id, const char* name, double limit_seconds, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_seconds)) + " s budget)";
  }
  std::printf("%s criterion %2d %-34s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name, secs,
              o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

} // namespace

int main() {
  const SubgroupLattice l3 = enumerate_subgroups(3);
  const SubgroupLattice l4 = enumerate_subgroups(4);
  std::vector<FiniteAction> actions;
  bool ok = true;
  ok &= report(1, "fixed-point oracle triangle", 30, criterion1);
  ok &= report(2, "TNF criterion on samples", 0, criterion2);
  ok &= report(3, "degenerate triple", 0, criterion3);
  ok &= report(4, "three TNF conditions agree", 10, [&] {
    actions = corpus(l3, l4);
    return criterion4(actions);
  });
  ok &= report(5, "transitive-action criterion", 0, [&] { return criterion5(l3, l4); });
  ok &= report(6, "normalization hierarchy", 0, [&] { return criterion6(l3, l4); });
  ok &= report(7, "pair-overlap decay", 20, criterion7);
  ok &= report(8, "frequency estimator", 0, criterion8);
  ok &= report(9, "sequence-action classifier", 0, criterion9);
  ok &= report(10, "relabelling invariance", 0, [&] { return criterion10(actions, l3, l4); });
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
