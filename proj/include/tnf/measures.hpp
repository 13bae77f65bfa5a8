#pragma once

// Random signed Young subgroups of the infinite symmetric group. A parameter
// sequence alpha (finite support over Z) gives i.i.d. labels with
// P(label = i) = alpha_i; the label level sets form the signed partition.
//
// Closed forms are templated on the scalar: tnf::Rational for exact work,
// double for float mode. A single comparison never mixes the two.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tnf/kernels.hpp"
#include "tnf/perm.hpp"
#include "tnf/rational.hpp"
#include "tnf/signed_young.hpp"

namespace tnf {

enum class NumericMode { rational, floating };

inline constexpr double kFloatSumTolerance = 1e-12;

/// Parameter weights alpha_i, i in Z; absent indices weigh zero.
template <class Scalar>
class BasicAlpha {
public:
  using Weights = std::map<Label, Scalar>;

  BasicAlpha() = default;
  explicit BasicAlpha(Weights weights) : weights_(std::move(weights)) {}

  const Weights& weights() const noexcept { return weights_; }
  Scalar weight(Label i) const {
    auto it = weights_.find(i);
    return it == weights_.end() ? Scalar(0) : it->second;
  }
  /// True only for values returned by validate().
  bool canonical() const noexcept { return canonical_; }

  friend bool operator==(const BasicAlpha& a, const BasicAlpha& b) {
    return a.weights_ == b.weights_;
  }

private:
  template <class S>
  friend BasicAlpha<S> validate(const BasicAlpha<S>& alpha);

  Weights weights_;
  bool canonical_ = false;
};

using Alpha = BasicAlpha<Rational>;
using AlphaF = BasicAlpha<double>;

/// Checks nonnegativity and normalization, drops zero weights, and reorders
/// so that alpha_1 >= alpha_2 >= ... and alpha_-1 >= alpha_-2 >= ...
/// Throws std::domain_error on bad input.
template <class Scalar>
BasicAlpha<Scalar> validate(const BasicAlpha<Scalar>& alpha);

AlphaF to_float(const Alpha& alpha);

struct LabelSample {
  std::size_t window = 0;
  std::vector<Label> labels;
  std::uint64_t seed = 0;
};

/// Inverse-CDF sampler over the support of a validated alpha.
template <class Scalar>
CategoricalSampler make_sampler(const BasicAlpha<Scalar>& alpha);

/// n i.i.d. labels from one stream seeded with shard_seed(seed, 0).
template <class Scalar>
LabelSample sample_labels(const BasicAlpha<Scalar>& alpha, std::size_t n, std::uint64_t seed);

template <class Scalar>
SignedYoungSubgroup sample_signed_young(const BasicAlpha<Scalar>& alpha, std::size_t n,
                                        std::uint64_t seed);

// ---------------------------------------------------------------------------
// Closed forms

template <class Scalar>
Scalar power(const Scalar& base, unsigned k) {
  Scalar r(1);
  for (unsigned i = 0; i < k; ++i)
    r *= base;
  return r;
}

/// sum over i != 0 of alpha_i^k.
template <class Scalar>
Scalar newton_sum(const BasicAlpha<Scalar>& alpha, unsigned k) {
  Scalar s(0);
  for (const auto& [i, w] : alpha.weights())
    if (i != 0)
      s += power(w, k);
  return s;
}

/// sum over i > 0 of alpha_i^k plus (-1)^(k-1) times the sum over i < 0.
template <class Scalar>
Scalar super_newton_sum(const BasicAlpha<Scalar>& alpha, unsigned k) {
  Scalar pos(0), neg(0);
  for (const auto& [i, w] : alpha.weights()) {
    if (i > 0)
      pos += power(w, k);
    else if (i < 0)
      neg += power(w, k);
  }
  return (k % 2 == 1) ? Scalar(pos + neg) : Scalar(pos - neg);
}

/// Product over cycle lengths k >= 2 of newton_sum(alpha, k)^c_k(g).
template <class Scalar>
Scalar fixed_measure_paper(const BasicAlpha<Scalar>& alpha, const Permutation& g) {
  Scalar v(1);
  for (const auto& [k, c] : cycle_type(g).counts)
    v *= power(newton_sum(alpha, k), c);
  return v;
}

/// As fixed_measure_paper but with alpha_0^k added to each factor: a cycle
/// inside the singleton pool is also preserved by conjugation.
template <class Scalar>
Scalar fixed_measure_full(const BasicAlpha<Scalar>& alpha, const Permutation& g) {
  Scalar v(1);
  const Scalar a0 = alpha.weight(0);
  for (const auto& [k, c] : cycle_type(g).counts)
    v *= power(Scalar(newton_sum(alpha, k) + power(a0, k)), c);
  return v;
}

/// Product over cycle lengths of super_newton_sum(alpha, k)^c_k(g).
template <class Scalar>
Scalar thoma_character(const BasicAlpha<Scalar>& alpha, const Permutation& g) {
  Scalar v(1);
  for (const auto& [k, c] : cycle_type(g).counts)
    v *= power(super_newton_sum(alpha, k), c);
  return v;
}

inline constexpr std::uint64_t kExhaustiveCellLimit = 10'000'000;

/// Sums the weight of every labelling of supp(g) by supp(alpha) that
/// satisfies is_fixed. Throws lattice-style std::length_error when the
/// assignment space exceeds kExhaustiveCellLimit cells.
template <class Scalar>
Scalar exhaustive_fixed_probability(const BasicAlpha<Scalar>& alpha, const Permutation& g);

// ---------------------------------------------------------------------------
// Monte Carlo

template <class Scalar>
struct CycleFactor {
  unsigned length = 0;
  unsigned count = 0;
  Scalar paper = 0;     // newton_sum(alpha, length)
  Scalar full = 0;      // newton_sum + alpha_0^length
  Scalar character = 0; // super_newton_sum(alpha, length)
};

template <class Scalar>
struct FixProbReport {
  CycleType cycle_type;
  std::vector<CycleFactor<Scalar>> factors;
  Scalar paper_value = 0;
  Scalar full_value = 0;
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  std::uint64_t sample_count = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;

  bool formulas_disagree() const { return paper_value != full_value; }
};

/// Labels only supp(g): the event g Y g^-1 = Y depends on nothing else.
template <class Scalar>
FixProbReport<Scalar> mc_fixed_probability(const BasicAlpha<Scalar>& alpha, const Permutation& g,
                                           std::uint64_t samples, std::uint64_t seed,
                                           Execution exec = Execution::parallel);

// ---------------------------------------------------------------------------
// Classification

enum class Degenerate { none, identity, alternating, regular };
std::string to_string(Degenerate d);

struct NuClassification {
  bool tnf = false;      // otherwise RTNF but not TNF
  Degenerate degenerate = Degenerate::none;
  bool atomic = false;   // exactly the three degenerate cases
};

template <class Scalar>
NuClassification classify_nu(const BasicAlpha<Scalar>& alpha);

struct SequenceClassification {
  bool tnf = false;
  /// Product over repeated nonzero-index weights of (multiplicity)!.
  std::uint64_t symmetry_size = 1;
};

/// The shift-free action on Z^N with the Bernoulli measure: TNF iff the
/// nonzero-index weights are pairwise distinct.
template <class Scalar>
SequenceClassification classify_sequence_action(const BasicAlpha<Scalar>& alpha);

// ---------------------------------------------------------------------------
// Frequency estimation

/// Empirical label frequencies count/n; not canonicalized.
Alpha definetti_estimate(const LabelSample& sample);

inline constexpr std::uint64_t kIndependenceCellLimit = 1000;

/// Draws `replicates` independent label vectors restricted to t coordinates
/// of an n-point window and returns the largest absolute gap between a joint
/// cell frequency and the product of the per-coordinate empirical marginals.
template <class Scalar>
double independence_check(const BasicAlpha<Scalar>& alpha, std::size_t n, unsigned t,
                          std::uint64_t replicates, std::uint64_t seed,
                          Execution exec = Execution::parallel);

/// Probability that a fixed pair is matched in a uniformly random perfect
/// matching of 2m points, computed as the average over S_{2m} of the entry
/// a_{g(1), g(2)} of a fixed matching: 2m (2m-2)! / (2m)! = 1/(2m-1).
/// Only block length 2 is exact; other lengths throw std::domain_error.
Rational part_l_overlap(unsigned block, std::uint64_t m);

struct OverlapEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

/// Monte Carlo over random conjugates of a fixed partition into m blocks of
/// length `block`: the fraction of g that keep {1..block} inside one block.
/// Block lengths above 2 (tensor entries) require allow_tensor.
OverlapEstimate part_l_overlap_mc(unsigned block, std::uint64_t m, std::uint64_t samples,
                                  std::uint64_t seed, bool allow_tensor = false,
                                  Execution exec = Execution::parallel);

} // namespace tnf
