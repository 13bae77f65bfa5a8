#pragma once

// Exhaustive ground truth on small symmetric groups: the subgroup lattice of
// S_n (n <= 6) with its normalizer table and conjugacy classes, finite
// measure-preserving actions, and the measure operations on the lattice.
// All masses are exact rationals.

#include <bitset>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tnf/kernels.hpp"
#include "tnf/perm.hpp"
#include "tnf/rational.hpp"

namespace tnf::lattice {

inline constexpr unsigned kMaxDegree = 6;
inline constexpr unsigned kDefaultCap = 5;
inline constexpr std::size_t kMaxOrder = 720;

using ElementIndex = std::uint16_t;
using ElementSet = std::bitset<kMaxOrder>;

/// Raised when a window exceeds the configured cap.
class SizeLimitError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// S_n for n <= 6 with dense multiplication, inverse and action tables.
/// Elements are sorted by Permutation ordering; index 0 is the identity.
class SymmetricGroup {
public:
  explicit SymmetricGroup(unsigned degree);

  unsigned degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::span<const Permutation> elements() const noexcept { return elements_; }
  const Permutation& element(ElementIndex i) const { return elements_.at(i); }
  static constexpr ElementIndex identity() noexcept { return 0; }

  /// Throws std::out_of_range if g moves a point outside {1..degree}.
  ElementIndex index_of(const Permutation& g) const;

  /// Index of a o b, i.e. x -> a(b(x)).
  ElementIndex multiply(ElementIndex a, ElementIndex b) const noexcept {
    return mult_[static_cast<std::size_t>(a) * order() + b];
  }
  ElementIndex inverse(ElementIndex a) const noexcept { return inv_[a]; }
  /// by a by^-1.
  ElementIndex conjugate(ElementIndex a, ElementIndex by) const noexcept {
    return multiply(multiply(by, a), inv_[by]);
  }
  /// Image of point p (1-based) under element a.
  Point apply(ElementIndex a, Point p) const noexcept {
    return images_[static_cast<std::size_t>(a) * degree_ + (p - 1)];
  }

  /// Subgroup generated by `gens`.
  ElementSet closure(std::span<const ElementIndex> gens) const;
  /// { by h by^-1 : h in set }.
  ElementSet conjugate_set(const ElementSet& set, ElementIndex by) const;
  std::vector<ElementIndex> members(const ElementSet& set) const;
  /// A generating set found greedily in element order.
  std::vector<ElementIndex> small_generating_set(const ElementSet& set) const;

private:
  unsigned degree_;
  std::vector<Permutation> elements_;
  std::vector<ElementIndex> mult_;
  std::vector<ElementIndex> inv_;
  std::vector<Point> images_;
  std::unordered_map<std::uint64_t, ElementIndex> by_code_;
};

/// A subgroup of an ambient symmetric group, stored as its element set.
class FiniteGroup {
public:
  FiniteGroup(std::shared_ptr<const SymmetricGroup> ambient, ElementSet members,
              std::vector<ElementIndex> generators);

  const SymmetricGroup& ambient() const noexcept { return *ambient_; }
  unsigned degree() const noexcept { return ambient_->degree(); }
  const ElementSet& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.count(); }
  std::span<const ElementIndex> generators() const noexcept { return generators_; }
  bool contains(ElementIndex g) const noexcept { return members_.test(g); }
  bool contains(const Permutation& g) const;
  /// Elements as permutations, sorted.
  std::vector<Permutation> elements() const;
  std::vector<Permutation> generator_permutations() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.members_ == b.members_ && a.degree() == b.degree();
  }

private:
  std::shared_ptr<const SymmetricGroup> ambient_;
  ElementSet members_;
  std::vector<ElementIndex> generators_;
};

struct EnumerateOptions {
  unsigned cap = kDefaultCap;
  /// Must be set to enumerate S_6 even when cap allows it.
  bool allow_degree6 = false;
  Execution execution = Execution::parallel;
};

/// Every subgroup of S_n exactly once, ordered by (order, element set), with
/// the normalizer of each subgroup and the conjugacy classes of subgroups.
class SubgroupLattice {
public:
  const SymmetricGroup& ambient() const noexcept { return *ambient_; }
  const std::shared_ptr<const SymmetricGroup>& ambient_ptr() const noexcept { return ambient_; }
  unsigned degree() const noexcept { return ambient_->degree(); }

  std::size_t size() const noexcept { return subgroups_.size(); }
  const FiniteGroup& subgroup(std::size_t i) const { return subgroups_.at(i); }
  std::size_t normalizer_of(std::size_t i) const { return normalizer_.at(i); }
  std::span<const std::size_t> normalizer_table() const noexcept { return normalizer_; }
  std::span<const std::vector<std::size_t>> conjugacy_classes() const noexcept { return classes_; }
  std::size_t class_of(std::size_t i) const { return class_of_.at(i); }

  std::optional<std::size_t> find(const ElementSet& members) const;
  /// Throws std::logic_error when `members` is not a subgroup in the lattice.
  std::size_t index_of(const ElementSet& members) const;
  std::size_t trivial() const noexcept { return 0; }
  std::size_t whole() const noexcept { return subgroups_.size() - 1; }

private:
  friend SubgroupLattice enumerate_subgroups(unsigned n, const EnumerateOptions& options);

  std::shared_ptr<const SymmetricGroup> ambient_;
  std::vector<FiniteGroup> subgroups_;
  std::unordered_map<ElementSet, std::size_t> index_;
  std::vector<std::size_t> normalizer_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
};

SubgroupLattice enumerate_subgroups(unsigned n, const EnumerateOptions& options = {});

/// Normalizer table computation on its own, exposed for the serial/parallel
/// benchmark. Entry i is the element set of N(subgroups[i]).
std::vector<ElementSet> normalizer_sets(const SymmetricGroup& group,
                                        std::span<const ElementSet> subgroups, Execution exec);

std::size_t normalizer(std::size_t subgroup, const SubgroupLattice& lattice);
/// Indices H with N(H) = H, ascending.
std::vector<std::size_t> self_normalizing_set(const SubgroupLattice& lattice);

/// A finite measure-preserving action of an ambient S_n on points 0..m-1.
class FiniteAction {
public:
  /// `table[g * points + x]` is the image of point x under element g.
  /// Throws std::invalid_argument if the table is not an action or the
  /// measure is not a preserved probability measure.
  FiniteAction(std::shared_ptr<const SymmetricGroup> group, std::size_t points,
               std::vector<std::uint32_t> table, std::vector<Rational> measure);

  /// S_n on {1..n}; point x is the number x + 1.
  static FiniteAction natural(std::shared_ptr<const SymmetricGroup> group);
  /// S_n acting on itself by left multiplication.
  static FiniteAction regular(std::shared_ptr<const SymmetricGroup> group);
  /// S_n acting on the left cosets gH by left multiplication.
  static FiniteAction cosets(const SubgroupLattice& lattice, std::size_t subgroup);

  const SymmetricGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const SymmetricGroup>& group_ptr() const noexcept { return group_; }
  std::size_t points() const noexcept { return points_; }
  std::size_t act(ElementIndex g, std::size_t x) const noexcept {
    return table_[static_cast<std::size_t>(g) * points_ + x];
  }
  const Rational& measure(std::size_t x) const { return measure_.at(x); }
  std::span<const Rational> measure() const noexcept { return measure_; }

  /// The same action transported along the bijection x -> relabel[x].
  FiniteAction relabel(std::span<const std::size_t> relabel) const;

private:
  std::shared_ptr<const SymmetricGroup> group_;
  std::size_t points_;
  std::vector<std::uint32_t> table_;
  std::vector<Rational> measure_;
};

std::vector<std::size_t> fixed_set(const FiniteAction& action, ElementIndex g);
FiniteGroup stabilizer(const FiniteAction& action, std::size_t x);
/// Blocks of points with equal stabilizers, each sorted, ordered by first point.
std::vector<std::vector<std::size_t>> iso_stable_partition(const FiniteAction& action);

/// Mass assignment on the subgroups of a lattice. The lattice must outlive it.
struct LatticeMeasure {
  const SubgroupLattice* lattice = nullptr;
  std::vector<Rational> mass;

  static LatticeMeasure point_mass(const SubgroupLattice& lattice, std::size_t subgroup);
  std::vector<std::size_t> support() const;
  Rational total() const;

  friend bool operator==(const LatticeMeasure& a, const LatticeMeasure& b) {
    return a.lattice == b.lattice && a.mass == b.mass;
  }
};

/// Push-forward of the action measure along x -> stabilizer(x).
LatticeMeasure characteristic_measure(const FiniteAction& action, const SubgroupLattice& lattice);

/// The three equivalent totally-nonfree conditions, each computed on its own
/// route and restricted to points of positive mass.
struct TnfReport {
  bool condition1 = false; // iso-stable partition is into singletons
  bool condition2 = false; // distinct points have distinct stabilizers
  bool condition3 = false; // the stabilizer map is injective
  bool all() const noexcept { return condition1 && condition2 && condition3; }
  bool agree() const noexcept { return condition1 == condition2 && condition2 == condition3; }
};

TnfReport is_tnf(const FiniteAction& action);

/// Whether the coset action on G/H is totally nonfree.
bool check_transitive_tnf(const SubgroupLattice& lattice, std::size_t subgroup);

LatticeMeasure normalization_pushforward(const LatticeMeasure& m);
/// m, N(m), N(N(m)), ... up to and including the first fixpoint.
std::vector<LatticeMeasure> hierarchy_chain(const LatticeMeasure& m);
/// The uniform measure on each conjugacy class, in class order.
std::vector<LatticeMeasure> ergodic_ad_measures(const SubgroupLattice& lattice);
bool is_ad_invariant(const LatticeMeasure& m);
/// Weights of m over ergodic_ad_measures(), or nullopt when m is not
/// Ad-invariant (and so not a convex combination of them).
std::optional<std::vector<Rational>> ergodic_decomposition(const LatticeMeasure& m);
bool supported_on_self_normalizing(const LatticeMeasure& m);

enum class TransitivityVariant {
  /// The intersection of stabilizers acts transitively on all points.
  whole_space,
  /// The intersection acts transitively on the points outside the tuple.
  complement,
};

/// Throws std::domain_error when k is 0 or exceeds the number of points.
bool is_k_transitive(const FiniteAction& action, unsigned k, TransitivityVariant variant);

} // namespace tnf::lattice
