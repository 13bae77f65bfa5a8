#include <doctest.h>

#include <cmath>
#include <functional>

#include "gen.hpp"
#include "tnf/measures.hpp"

using namespace tnf;

namespace {

Alpha A(std::map<Label, Rational> w) { return validate(Alpha(std::move(w))); }
Rational R(long p, long q = 1) { return Rational(p, q); }
Permutation P(const char* s) { return parse_permutation(s); }

// Perfect matchings of {0..2m-1}: (total, containing the pair {0,1}).
std::pair<std::uint64_t, std::uint64_t> count_matchings(unsigned m) {
  std::uint64_t total = 0, hit = 0;
  std::vector<int> partner(2 * m, -1);
  std::function<void()> rec = [&] {
    int first = -1;
    for (unsigned i = 0; i < 2 * m; ++i)
      if (partner[i] < 0) {
        first = static_cast<int>(i);
        break;
      }
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

} // namespace

TEST_CASE("validate") {
  const auto f = validate(AlphaF({{1, 0.3}, {2, 0.7}}));
  CHECK(f.weight(1) == 0.7);
  CHECK(f.weight(2) == 0.3);
  CHECK(f.canonical());
  const auto a = A({{1, R(1, 2)}, {-1, R(1, 2)}});
  CHECK(a.weight(1) == R(1, 2));
  CHECK(a.weight(-1) == R(1, 2));
  CHECK(A({{-3, R(1, 6)}, {-1, R(1, 3)}, {0, R(1, 2)}, {4, 0}}) ==
        Alpha({{-1, R(1, 3)}, {-2, R(1, 6)}, {0, R(1, 2)}}));
  CHECK_THROWS_AS(validate(AlphaF({{1, 0.6}, {2, 0.6}})), std::domain_error);
  CHECK_THROWS_AS(validate(Alpha({{1, R(3, 2)}, {2, R(-1, 2)}})), std::domain_error);
  CHECK_THROWS_AS(validate(Alpha(Alpha::Weights{})), std::domain_error);
  CHECK_THROWS_AS(validate(AlphaF({{1, NAN}})), std::domain_error);
  CHECK_NOTHROW(validate(AlphaF({{1, 0.1}, {2, 0.2}, {3, 0.7 + 1e-14}})));
  CHECK(!Alpha(Alpha::Weights{{1, 1}}).canonical());
  CHECK_THROWS_AS(sample_labels(Alpha(Alpha::Weights{{1, 1}}), 3, 1), std::invalid_argument);
}

TEST_CASE("sampling examples") {
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    const auto s = sample_labels(A({{1, 1}}), 50, seed);
    CHECK(std::all_of(s.labels.begin(), s.labels.end(), [](Label l) { return l == 1; }));
    const auto z = sample_labels(A({{0, 1}}), 50, seed);
    CHECK(std::all_of(z.labels.begin(), z.labels.end(), [](Label l) { return l == 0; }));
  }
  const auto s = sample_labels(A({{1, R(1, 2)}, {2, R(1, 2)}}), 10000, 4242);
  CHECK(s.labels == sample_labels(A({{1, R(1, 2)}, {2, R(1, 2)}}), 10000, 4242).labels);
  CHECK(s.labels != sample_labels(A({{1, R(1, 2)}, {2, R(1, 2)}}), 10000, 4243).labels);
  const double freq = static_cast<double>(std::count(s.labels.begin(), s.labels.end(), 1)) / 1e4;
  CHECK(std::abs(freq - 0.5) <= 4.0 / std::sqrt(1e4));

  CHECK(sample_signed_young(A({{1, 1}}), 6, 1) == SignedYoungSubgroup(SignedPartition({1, 1, 1, 1, 1, 1})));
  CHECK(sample_signed_young(A({{-1, 1}}), 6, 1) ==
        SignedYoungSubgroup(SignedPartition({-1, -1, -1, -1, -1, -1})));
  CHECK(sample_signed_young(A({{0, 1}}), 6, 1) == SignedYoungSubgroup(SignedPartition({0, 0, 0, 0, 0, 0})));
}

TEST_CASE("power sums") {
  const auto half = A({{1, R(1, 2)}, {2, R(1, 2)}});
  CHECK(newton_sum(half, 2) == R(1, 2));
  CHECK(newton_sum(A({{1, 1}}), 7) == 1);
  CHECK(newton_sum(A({{0, 1}}), 3) == 0);
  CHECK(super_newton_sum(A({{-1, 1}}), 2) == -1);
  CHECK(super_newton_sum(A({{-1, 1}}), 3) == 1);
  CHECK(super_newton_sum(A({{1, R(1, 2)}, {-1, R(1, 2)}}), 2) == 0);
}

TEST_CASE("fixed-point formulas") {
  const auto half = A({{1, R(1, 2)}, {2, R(1, 2)}});
  CHECK(fixed_measure_paper(half, P("(1 2)")) == R(1, 2));
  CHECK(fixed_measure_paper(half, P("()")) == 1);
  CHECK(fixed_measure_paper(half, P("(1 2)(3 4 5)")) == R(1, 8));
  const auto pool = A({{0, R(1, 2)}, {1, R(1, 2)}});
  CHECK(fixed_measure_full(pool, P("(1 2)")) == R(1, 2));
  CHECK(fixed_measure_paper(pool, P("(1 2)")) == R(1, 4));
  CHECK(fixed_measure_full(A({{0, 1}}), P("(1 2)(3 4 5)")) == 1);
  CHECK(exhaustive_fixed_probability(half, P("(1 2)")) == R(1, 2));
  const auto thirds = A({{1, R(1, 3)}, {2, R(1, 3)}, {3, R(1, 3)}});
  CHECK(exhaustive_fixed_probability(thirds, P("(1 2 3)")) == R(1, 9));
  CHECK(exhaustive_fixed_probability(thirds, P("()")) == 1);
  CHECK(exhaustive_fixed_probability(pool, P("(1 2)")) == R(1, 2));

  // 10 labels over 8 moved points is 10^8 cells.
  std::map<Label, Rational> w;
  for (Label i = 1; i <= 10; ++i)
    w[i] = R(1, 10);
  CHECK_THROWS_AS(exhaustive_fixed_probability(A(w), P("(1 2)(3 4)(5 6)(7 8)")), std::length_error);
}

TEST_CASE("characters") {
  for (const char* g : {"(1 2)", "(1 2 3)", "(1 2)(3 4)", "(1 2)(3 4 5)"}) {
    CHECK(thoma_character(A({{1, 1}}), P(g)) == 1);
    CHECK(thoma_character(A({{-1, 1}}), P(g)) == parity(P(g)));
    CHECK(thoma_character(A({{0, 1}}), P(g)) == 0);
  }
  CHECK(thoma_character(A({{0, 1}}), P("()")) == 1);
}

TEST_CASE("monte carlo estimates") {
  const auto half = A({{1, R(1, 2)}, {2, R(1, 2)}});
  const auto r = mc_fixed_probability(half, P("(1 2)"), 100000, 11);
  CHECK(r.sample_count == 100000);
  CHECK(std::abs(r.mc_estimate - 0.5) <= 4 * r.mc_stderr);
  CHECK(r.mc_stderr == doctest::Approx(std::sqrt(r.mc_estimate * (1 - r.mc_estimate) / 1e5)));
  const auto one = mc_fixed_probability(A({{1, 1}}), P("(1 2)(3 4 5)"), 1000, 3);
  CHECK(one.mc_estimate == 1.0);
  const auto pool = mc_fixed_probability(A({{0, R(1, 2)}, {1, R(1, 2)}}), P("(1 2)"), 100000, 12);
  CHECK(pool.formulas_disagree());
  CHECK(std::abs(pool.mc_estimate - 0.5) <= 4 * pool.mc_stderr);

  Rational prod_paper = 1, prod_full = 1;
  for (const auto& f : r.factors) {
    prod_paper *= power(f.paper, f.count);
    prod_full *= power(f.full, f.count);
  }
  CHECK(prod_paper == r.paper_value);
  CHECK(prod_full == r.full_value);
}

TEST_CASE("serial and parallel Monte Carlo are bit-identical") {
  const auto a = A({{1, R(1, 2)}, {-1, R(1, 4)}, {0, R(1, 4)}});
  const auto g = P("(1 2)(3 4 5)(6 7)");
  const auto s = mc_fixed_probability(a, g, 200000, 77, Execution::serial);
  const auto p = mc_fixed_probability(a, g, 200000, 77, Execution::parallel);
  CHECK(s.hits == p.hits);
  CHECK(s.mc_estimate == p.mc_estimate);
  CHECK(independence_check(a, 50, 2, 20000, 5, Execution::serial) ==
        independence_check(a, 50, 2, 20000, 5, Execution::parallel));
  const auto os = part_l_overlap_mc(2, 7, 50000, 9, false, Execution::serial);
  const auto op = part_l_overlap_mc(2, 7, 50000, 9, false, Execution::parallel);
  CHECK(os.hits == op.hits);
}

TEST_CASE("classification") {
  auto nu = classify_nu(A({{1, R(1, 2)}, {2, R(1, 2)}}));
  CHECK(nu.tnf);
  CHECK(nu.degenerate == Degenerate::none);
  CHECK(!nu.atomic);
  CHECK(!classify_nu(A({{1, R(1, 2)}, {-1, R(1, 2)}})).tnf);
  nu = classify_nu(A({{0, 1}}));
  CHECK(!nu.tnf);
  CHECK(nu.degenerate == Degenerate::regular);
  CHECK(nu.atomic);
  CHECK(classify_nu(A({{1, 1}})).degenerate == Degenerate::identity);
  CHECK(classify_nu(A({{-1, 1}})).degenerate == Degenerate::alternating);
  CHECK(classify_nu(validate(AlphaF({{1, 1.0}}))).degenerate == Degenerate::identity);

  auto seq = classify_sequence_action(A({{1, R(2, 3)}, {2, R(1, 3)}}));
  CHECK(seq.tnf);
  CHECK(seq.symmetry_size == 1);
  seq = classify_sequence_action(A({{1, R(1, 2)}, {2, R(1, 2)}}));
  CHECK(!seq.tnf);
  CHECK(seq.symmetry_size == 2);
  CHECK(classify_sequence_action(A({{1, 1}})).tnf);
  seq = classify_sequence_action(A({{1, R(1, 4)}, {2, R(1, 4)}, {-1, R(1, 4)}, {0, R(1, 4)}}));
  CHECK(seq.symmetry_size == 6);
}

TEST_CASE("frequency estimation") {
  const Alpha e = definetti_estimate(LabelSample{4, {1, 1, 2, 1}, 0});
  CHECK(e.weight(1) == R(3, 4));
  CHECK(e.weight(2) == R(1, 4));
  CHECK(definetti_estimate(LabelSample{3, {-2, -2, -2}, 0}).weight(-2) == 1);

  const auto a = A({{1, R(1, 2)}, {-1, R(1, 2)}});
  const Alpha est = definetti_estimate(sample_labels(a, 10000, 31));
  CHECK(std::abs(to_double(est.weight(1)) - 0.5) <= 0.03);
  CHECK(std::abs(to_double(est.weight(-1)) - 0.5) <= 0.03);

  CHECK(independence_check(A({{1, R(1, 2)}, {2, R(1, 2)}}), 10, 2, 100000, 8) <= 0.02);
  CHECK(independence_check(a, 10, 1, 1000, 8) == 0.0);
  CHECK(independence_check(A({{1, 1}}), 10, 3, 1000, 8) == 0.0);
  CHECK_THROWS_AS(independence_check(a, 10, 4, 10, 8), std::domain_error);
  CHECK_THROWS_AS(independence_check(a, 1, 2, 10, 8), std::domain_error);
}

TEST_CASE("pair overlap in random matchings") {
  CHECK(part_l_overlap(2, 2) == R(1, 3));
  CHECK(part_l_overlap(2, 3) == R(1, 5));
  for (unsigned m = 1; m <= 6; ++m) {
    const auto [total, hit] = count_matchings(m);
    CHECK(part_l_overlap(2, m) == Rational(hit, total));
  }
  for (unsigned m = 2; m < 40; ++m)
    CHECK(part_l_overlap(2, m + 1) < part_l_overlap(2, m));
  CHECK_THROWS_AS(part_l_overlap(2, 0), std::domain_error);
  CHECK_THROWS_AS(part_l_overlap(3, 4), std::domain_error);
  CHECK_THROWS_AS(part_l_overlap_mc(3, 4, 10, 1), std::domain_error);
  const auto t = part_l_overlap_mc(3, 4, 100000, 1, true);
  // Three named points in one of four triples: 4 * 3! * 9! / 12! = 1/55.
  CHECK(std::abs(t.estimate - 1.0 / 55) <= 4 * std::sqrt((1.0 / 55) * (54.0 / 55) / 1e5));
}

TEST_CASE("property: formula identities") {
  testgen::Gen gen(0x5eed0004);
  for (int c = 0; c < 200; ++c) {
    CAPTURE(c);
    const Alpha a = gen.alpha(-2, 3);
    const auto g = gen.sparse_perm(6, 6);
    const auto h = gen.perm(6);
    // A copy of a random permutation shifted onto {7..12}.
    std::vector<std::pair<Point, Point>> shifted;
    const auto base = gen.sparse_perm(6, 6);
    for (const auto& [p, q] : base.moved())
      shifted.emplace_back(p + 6, q + 6);
    const auto k = Permutation::from_pairs(shifted);

    CHECK(exhaustive_fixed_probability(a, g) == fixed_measure_full(a, g));
    if (a.weight(0) == 0)
      CHECK(fixed_measure_paper(a, g) == fixed_measure_full(a, g));
    CHECK(fixed_measure_full(a, compose(g, k)) == fixed_measure_full(a, g) * fixed_measure_full(a, k));
    CHECK(thoma_character(a, compose(g, k)) == thoma_character(a, g) * thoma_character(a, k));
    CHECK(fixed_measure_full(a, conjugate(g, h)) == fixed_measure_full(a, g));
    CHECK(fixed_measure_paper(a, conjugate(g, h)) == fixed_measure_paper(a, g));
    CHECK(thoma_character(a, conjugate(g, h)) == thoma_character(a, g));
    CHECK(abs(thoma_character(a, g)) <= 1);
    CHECK(thoma_character(a, Permutation{}) == 1);
    bool positive_only = true;
    for (const auto& [i, _] : a.weights())
      positive_only = positive_only && i > 0;
    if (positive_only)
      CHECK(thoma_character(a, g) == fixed_measure_paper(a, g));
  }
}

TEST_CASE("property: sampled subgroups follow the TNF criterion") {
  testgen::Gen gen(0x5eed0005);
  for (int c = 0; c < 60; ++c) {
    CAPTURE(c);
    const Alpha a = gen.alpha(-2, 3);
    const bool tnf = classify_nu(a).tnf;
    const auto y = sample_signed_young(a, 200, 1000 + c);
    CHECK(check_n2_equals_n(y));
    CHECK(is_self_normalizing(y) == tnf);
    const auto g = gen.perm(200);
    const SignedYoungSubgroup moved(ad_image(g, y.partition()));
    CHECK(is_self_normalizing(moved) == is_self_normalizing(y));
    CHECK(normalizer_symbolic(moved) == SignedYoungSubgroup(ad_image(g, normalizer_symbolic(y).partition())));
  }
}
