#pragma once
// Seeded generators for property tests. Each property takes a fixed master
// seed so failures reproduce; the case index is part of every message.
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "tnf/measures.hpp"
#include "tnf/perm.hpp"
#include "tnf/signed_young.hpp"

namespace tnf::testgen {

class Gen {
public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_);
  }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }
  bool coin() { return below(2) == 1; }

  /// Uniform permutation of {1..n} (identity on the rest).
  Permutation perm(std::size_t n) {
    std::vector<Point> images(n);
    std::iota(images.begin(), images.end(), Point{1});
    std::shuffle(images.begin(), images.end(), eng_);
    return Permutation::from_images(images);
  }

  /// Permutation whose support lies in {1..max_point} and has at most
  /// max_support points.
  Permutation sparse_perm(Point max_point, std::size_t max_support) {
    std::vector<Point> pts(max_point);
    std::iota(pts.begin(), pts.end(), Point{1});
    std::shuffle(pts.begin(), pts.end(), eng_);
    const std::size_t k = below(std::min<std::size_t>(max_support, max_point) + 1);
    std::vector<Point> chosen(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Point> shuffled = chosen;
    std::shuffle(shuffled.begin(), shuffled.end(), eng_);
    std::vector<std::pair<Point, Point>> pairs;
    for (std::size_t i = 0; i < k; ++i)
      pairs.emplace_back(chosen[i], shuffled[i]);
    return Permutation::from_pairs(pairs);
  }

  std::vector<Label> labels(std::size_t window, Label lo, Label hi) {
    std::vector<Label> out(window);
    for (auto& l : out)
      l = range(lo, hi);
    return out;
  }

  /// Random alpha with small denominators over indices in [lo, hi].
  Alpha alpha(Label lo, Label hi) {
    std::map<Label, Rational> w;
    Rational total = 0;
    for (Label i = lo; i <= hi; ++i) {
      const auto v = below(4);
      if (v) {
        w[i] = Rational(static_cast<long>(v));
        total += w[i];
      }
    }
    if (w.empty()) {
      w[hi] = 1;
      total = 1;
    }
    for (auto& [_, v] : w)
      v /= total;
    return validate(Alpha(w));
  }

  std::mt19937_64& engine() { return eng_; }

private:
  std::mt19937_64 eng_;
};

} // namespace tnf::testgen
