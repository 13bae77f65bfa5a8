#pragma once

// Sharded Monte Carlo kernels. Every kernel has a serial reference path and an
// OpenMP path; both walk the same fixed shard plan, so their merged results are
// bit-identical for a given (seed, shard count).

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tnf/perm.hpp"
#include "tnf/seeding.hpp"

namespace tnf {

enum class Execution { serial, parallel };

inline constexpr std::size_t kDefaultShards = 64;

/// Number of samples assigned to `shard` when `total` samples are split over
/// `shards` shards; the first total % shards shards take one extra.
constexpr std::uint64_t shard_share(std::uint64_t total, std::size_t shards, std::size_t shard) {
  return total / shards + (shard < total % shards ? 1 : 0);
}

/// Runs fn(shard) for every shard and returns the results in shard order.
template <class Fn>
auto run_shards(std::size_t shards, Execution exec, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> out(shards);
  if (exec == Execution::serial) {
    for (std::size_t s = 0; s < shards; ++s)
      out[s] = fn(s);
  } else {
    const auto n = static_cast<std::int64_t>(shards);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < n; ++s)
      out[static_cast<std::size_t>(s)] = fn(static_cast<std::size_t>(s));
  }
  return out;
}

/// Inverse-CDF sampler over a finite label set.
class CategoricalSampler {
public:
  CategoricalSampler(std::vector<std::int64_t> labels, std::span<const double> weights);

  std::int64_t draw(Rng& rng) const;
  std::span<const std::int64_t> labels() const noexcept { return labels_; }
  /// Position of the drawn label in labels(); avoids a map lookup in hot loops.
  std::size_t draw_index(Rng& rng) const;

private:
  std::vector<std::int64_t> labels_;
  std::vector<double> cumulative_;
};

/// Number of draws, out of `samples`, in which labelling supp(g) i.i.d. from
/// `sampler` yields label(g(x)) == label(x) for every moved point x.
std::uint64_t count_fixed_labellings(const CategoricalSampler& sampler, const Permutation& g,
                                     std::uint64_t samples, std::uint64_t seed,
                                     Execution exec, std::size_t shards = kDefaultShards);

/// Joint counts of the labels at `t` coordinates over `replicates` i.i.d.
/// replicates. Indexed by the mixed-radix code of the label indices
/// (coordinate 0 is the least significant digit).
std::vector<std::uint64_t> joint_label_counts(const CategoricalSampler& sampler, unsigned t,
                                              std::uint64_t replicates, std::uint64_t seed,
                                              Execution exec, std::size_t shards = kDefaultShards);

/// Out of `samples` uniformly random g in S_{block * blocks}, how many send the
/// points 1..block into a single block of the fixed partition
/// {1..block}, {block+1..2*block}, ...
std::uint64_t count_block_hits(unsigned block, std::uint64_t blocks, std::uint64_t samples,
                               std::uint64_t seed, Execution exec,
                               std::size_t shards = kDefaultShards);

} // namespace tnf
