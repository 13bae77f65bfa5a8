#pragma once

// Signed partitions of a finite window {1..n} and the signed Young subgroups
// they define. Nonzero blocks are read as restrictions of infinite blocks:
// a finite-support permutation never exchanges two of them.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tnf/perm.hpp"

namespace tnf {

using Label = std::int64_t;

/// Raised when a permutation moves points beyond the window.
class WindowError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Labels on {1..n}: 0 marks the pool of fixed singletons, a positive label a
/// block carrying the full symmetric group, a negative label a block carrying
/// the alternating group.
class SignedPartition {
public:
  SignedPartition() = default;
  explicit SignedPartition(std::vector<Label> labels);

  std::size_t window() const noexcept { return labels_.size(); }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  /// Label of point p in 1..window().
  Label label(Point p) const { return labels_.at(p - 1); }

  /// Points per label, ascending label order, each block ascending.
  std::vector<std::pair<Label, std::vector<Point>>> blocks() const;
  /// Points labelled 0.
  std::vector<Point> pool() const;

  /// Nonzero labels renamed 1, 2, ... and -1, -2, ... in order of first
  /// appearance.
  SignedPartition canonical() const;

  friend bool operator==(const SignedPartition&, const SignedPartition&) = default;

private:
  std::vector<Label> labels_;
};

class SignedYoungSubgroup {
public:
  SignedYoungSubgroup() = default;
  explicit SignedYoungSubgroup(SignedPartition partition) : partition_(std::move(partition)) {}

  const SignedPartition& partition() const noexcept { return partition_; }
  std::size_t window() const noexcept { return partition_.window(); }

  /// Equal block families with equal signs; label names are irrelevant.
  friend bool operator==(const SignedYoungSubgroup& a, const SignedYoungSubgroup& b) {
    return a.partition_.canonical() == b.partition_.canonical();
  }

private:
  SignedPartition partition_;
};

/// Throws WindowError when supp(g) leaves the window.
bool contains(const SignedYoungSubgroup& y, const Permutation& g);
/// Labels transported along g: label'(g(x)) = label(x).
SignedPartition ad_image(const Permutation& g, const SignedPartition& eta);
/// Whether g Y g^-1 = Y, i.e. g preserves the label of every moved point.
bool is_fixed(const Permutation& g, const SignedPartition& eta);

/// Every block made positive; a pool of two or more points becomes one more
/// positive block.
SignedYoungSubgroup normalizer_symbolic(const SignedYoungSubgroup& y);
/// No negative blocks and at most one pooled point.
bool is_self_normalizing(const SignedYoungSubgroup& y);
/// Applies the normalizer twice and reports whether the second step is a fixpoint.
bool check_n2_equals_n(const SignedYoungSubgroup& y);

} // namespace tnf
