#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tnf {

/// A point of the natural numbers; valid points are >= 1.
using Point = std::uint64_t;

using Cycle = std::vector<Point>;

/// A bijection of {1, 2, ...} moving only finitely many points.
///
/// Only moved points are stored, sorted by preimage, so equality is structural
/// and the identity is the empty map. Values are immutable once built.
class Permutation {
public:
  using Entry = std::pair<Point, Point>;

  Permutation() = default;

  /// Builds from explicit (point, image) pairs. Pairs with point == image are
  /// dropped. Throws std::invalid_argument if the pairs do not describe a
  /// bijection of their key set or mention the point 0.
  static Permutation from_pairs(std::vector<Entry> pairs);

  /// Builds from disjoint cycles. Length-1 cycles are allowed and ignored.
  static Permutation from_cycles(std::span<const Cycle> cycles);

  /// images[i] is the image of point i + 1.
  static Permutation from_images(std::span<const Point> images);

  static Permutation transposition(Point a, Point b);

  Point operator()(Point x) const noexcept;

  std::span<const Entry> moved() const noexcept { return moved_; }
  std::vector<Point> support() const;
  std::size_t support_size() const noexcept { return moved_.size(); }
  bool is_identity() const noexcept { return moved_.empty(); }
  /// Largest moved point, or 0 for the identity.
  Point max_point() const noexcept { return moved_.empty() ? 0 : moved_.back().first; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  explicit Permutation(std::vector<Entry> sorted) : moved_(std::move(sorted)) {}

  std::vector<Entry> moved_;
};

/// Cycle length k >= 2 mapped to the number of k-cycles.
struct CycleType {
  std::map<unsigned, unsigned> counts;

  bool is_identity() const noexcept { return counts.empty(); }
  friend bool operator==(const CycleType&, const CycleType&) = default;
};

/// x -> g(h(x)).
Permutation compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& g);
/// h g h^-1.
Permutation conjugate(const Permutation& g, const Permutation& h);

/// Cycles rotated to start at their minimum, sorted by minimum.
std::vector<Cycle> cycle_decomposition(const Permutation& g);
CycleType cycle_type(const Permutation& g);
/// +1 for even, -1 for odd.
int parity(const Permutation& g);

/// Parses cycle notation such as "(1 2)(3 4 5)"; "()" is the identity.
/// Throws std::invalid_argument on malformed text or overlapping cycles.
Permutation parse_permutation(std::string_view text);

/// Canonical cycle notation; the identity prints as "()".
std::string to_string(const Permutation& g);
std::string to_string(const CycleType& t);

} // namespace tnf
