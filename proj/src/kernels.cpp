#include "tnf/kernels.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tnf {

CategoricalSampler::CategoricalSampler(std::vector<std::int64_t> labels,
                                       std::span<const double> weights)
    : labels_(std::move(labels)) {
  if (labels_.empty() || labels_.size() != weights.size())
    throw std::invalid_argument("categorical sampler needs one weight per label");
  cumulative_.resize(weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0)
      throw std::invalid_argument("negative weight");
    total += weights[i];
    cumulative_[i] = total;
  }
  if (!(total > 0.0))
    throw std::invalid_argument("weights sum to zero");
  for (double& c : cumulative_)
    c /= total;
  cumulative_.back() = 1.0;
}

std::size_t CategoricalSampler::draw_index(Rng& rng) const {
  const double u = rng.uniform01();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  // u < 1 and the last bound is exactly 1, so `it` is always valid.
  return static_cast<std::size_t>(it - cumulative_.begin());
}

std::int64_t CategoricalSampler::draw(Rng& rng) const { return labels_[draw_index(rng)]; }

std::uint64_t count_fixed_labellings(const CategoricalSampler& sampler, const Permutation& g,
                                     std::uint64_t samples, std::uint64_t seed,
                                     Execution exec, std::size_t shards) {
  const std::vector<Point> support = g.support();
  const std::size_t m = support.size();
  std::vector<std::size_t> image_pos(m);
  for (std::size_t i = 0; i < m; ++i)
    image_pos[i] = static_cast<std::size_t>(
        std::lower_bound(support.begin(), support.end(), g(support[i])) - support.begin());

  auto shard_fn = [&](std::size_t shard) -> std::uint64_t {
    const std::uint64_t n = shard_share(samples, shards, shard);
    if (m == 0)
      return n;
    Rng rng(shard_seed(seed, shard));
    std::vector<std::size_t> label(m);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
      for (std::size_t i = 0; i < m; ++i)
        label[i] = sampler.draw_index(rng);
      bool fixed = true;
      for (std::size_t i = 0; i < m && fixed; ++i)
        fixed = label[image_pos[i]] == label[i];
      hits += fixed ? 1 : 0;
    }
    return hits;
  };
  const auto per_shard = run_shards(shards, exec, shard_fn);
  return std::accumulate(per_shard.begin(), per_shard.end(), std::uint64_t{0});
}

std::vector<std::uint64_t> joint_label_counts(const CategoricalSampler& sampler, unsigned t,
                                              std::uint64_t replicates, std::uint64_t seed,
                                              Execution exec, std::size_t shards) {
  const std::size_t radix = sampler.labels().size();
  std::size_t cells = 1;
  for (unsigned i = 0; i < t; ++i)
    cells *= radix;

  auto shard_fn = [&](std::size_t shard) {
    std::vector<std::uint64_t> counts(cells, 0);
    Rng rng(shard_seed(seed, shard));
    const std::uint64_t n = shard_share(replicates, shards, shard);
    for (std::uint64_t r = 0; r < n; ++r) {
      std::size_t code = 0;
      std::size_t place = 1;
      for (unsigned i = 0; i < t; ++i) {
        code += sampler.draw_index(rng) * place;
        place *= radix;
      }
      ++counts[code];
    }
    return counts;
  };
  const auto per_shard = run_shards(shards, exec, shard_fn);
  std::vector<std::uint64_t> total(cells, 0);
  for (const auto& c : per_shard)
    for (std::size_t i = 0; i < cells; ++i)
      total[i] += c[i];
  return total;
}

std::uint64_t count_block_hits(unsigned block, std::uint64_t blocks, std::uint64_t samples,
                               std::uint64_t seed, Execution exec, std::size_t shards) {
  const std::uint64_t points = static_cast<std::uint64_t>(block) * blocks;
  if (block < 2 || blocks < 1)
    throw std::invalid_argument("block size must be >= 2 and block count >= 1");

  auto shard_fn = [&](std::size_t shard) -> std::uint64_t {
    Rng rng(shard_seed(seed, shard));
    const std::uint64_t n = shard_share(samples, shards, shard);
    std::vector<std::uint64_t> images(block);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
      // Images of 1..block under a uniform g: a uniform tuple of distinct points.
      for (unsigned i = 0; i < block; ++i) {
        std::uint64_t y;
        do {
          y = rng.below(points);
        } while (std::find(images.begin(), images.begin() + i, y) != images.begin() + i);
        images[i] = y;
      }
      const std::uint64_t b = images[0] / block;
      bool same = true;
      for (unsigned i = 1; i < block && same; ++i)
        same = images[i] / block == b;
      hits += same ? 1 : 0;
    }
    return hits;
  };
  const auto per_shard = run_shards(shards, exec, shard_fn);
  return std::accumulate(per_shard.begin(), per_shard.end(), std::uint64_t{0});
}

} // namespace tnf
