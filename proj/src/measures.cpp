#include "tnf/measures.hpp"

#include <algorithm>
#include <functional>

namespace tnf {

namespace {

double as_double(const Rational& r) { return to_double(r); }
double as_double(double d) { return d; }

template <class Scalar>
bool is_normalized(const Scalar& sum) {
  if constexpr (std::is_same_v<Scalar, double>)
    return std::abs(sum - 1.0) <= kFloatSumTolerance;
  else
    return sum == 1;
}

template <class Scalar>
bool weights_equal(const Scalar& a, const Scalar& b) {
  if constexpr (std::is_same_v<Scalar, double>)
    return std::abs(a - b) <= kFloatSumTolerance;
  else
    return a == b;
}

template <class Scalar>
void require_canonical(const BasicAlpha<Scalar>& alpha) {
  if (!alpha.canonical())
    throw std::invalid_argument("alpha must pass validate() before sampling");
}

} // namespace

template <class Scalar>
BasicAlpha<Scalar> validate(const BasicAlpha<Scalar>& alpha) {
  Scalar sum(0);
  std::vector<Scalar> positive, negative;
  Scalar zero_weight(0);
  for (const auto& [i, w] : alpha.weights()) {
    if constexpr (std::is_same_v<Scalar, double>)
      if (!std::isfinite(w))
        throw std::domain_error("weight of index " + std::to_string(i) + " is not finite");
    if (w < 0)
      throw std::domain_error("weight of index " + std::to_string(i) + " is negative");
    sum += w;
    if (w == 0)
      continue;
    if (i > 0)
      positive.push_back(w);
    else if (i < 0)
      negative.push_back(w);
    else
      zero_weight = w;
  }
  if (positive.empty() && negative.empty() && zero_weight == 0)
    throw std::domain_error("alpha has empty support");
  if (!is_normalized(sum)) {
    std::string shown;
    if constexpr (std::is_same_v<Scalar, double>)
      shown = std::to_string(sum);
    else
      shown = to_string(sum);
    throw std::domain_error("weights sum to " + shown + ", not 1");
  }
  std::sort(positive.begin(), positive.end(), std::greater<>{});
  std::sort(negative.begin(), negative.end(), std::greater<>{});
  typename BasicAlpha<Scalar>::Weights out;
  for (std::size_t k = 0; k < positive.size(); ++k)
    out.emplace(static_cast<Label>(k + 1), positive[k]);
  for (std::size_t k = 0; k < negative.size(); ++k)
    out.emplace(-static_cast<Label>(k + 1), negative[k]);
  if (zero_weight != 0)
    out.emplace(0, zero_weight);
  BasicAlpha<Scalar> result(std::move(out));
  result.canonical_ = true;
  return result;
}

AlphaF to_float(const Alpha& alpha) {
  AlphaF::Weights w;
  for (const auto& [i, v] : alpha.weights())
    w.emplace(i, to_double(v));
  return AlphaF(std::move(w));
}

template <class Scalar>
CategoricalSampler make_sampler(const BasicAlpha<Scalar>& alpha) {
  std::vector<Label> labels;
  std::vector<double> weights;
  for (const auto& [i, w] : alpha.weights())
    if (w != 0) {
      labels.push_back(i);
      weights.push_back(as_double(w));
    }
  return CategoricalSampler(std::move(labels), weights);
}

template <class Scalar>
LabelSample sample_labels(const BasicAlpha<Scalar>& alpha, std::size_t n, std::uint64_t seed) {
  require_canonical(alpha);
  if (n == 0)
    throw std::domain_error("window must be at least 1");
  const CategoricalSampler sampler = make_sampler(alpha);
  Rng rng(shard_seed(seed, 0));
  LabelSample s{n, std::vector<Label>(n), seed};
  for (std::size_t i = 0; i < n; ++i)
    s.labels[i] = sampler.draw(rng);
  return s;
}

template <class Scalar>
SignedYoungSubgroup sample_signed_young(const BasicAlpha<Scalar>& alpha, std::size_t n,
                                        std::uint64_t seed) {
  return SignedYoungSubgroup(SignedPartition(sample_labels(alpha, n, seed).labels));
}

template <class Scalar>
Scalar exhaustive_fixed_probability(const BasicAlpha<Scalar>& alpha, const Permutation& g) {
  std::vector<Label> labels;
  std::vector<Scalar> weights;
  for (const auto& [i, w] : alpha.weights())
    if (w != 0) {
      labels.push_back(i);
      weights.push_back(w);
    }
  const std::vector<Point> support = g.support();
  if (support.empty())
    return Scalar(1);
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < support.size(); ++i) {
    cells *= labels.size();
    if (cells > kExhaustiveCellLimit)
      throw std::length_error("exhaustive enumeration needs more than " +
                              std::to_string(kExhaustiveCellLimit) + " label assignments");
  }

  // Odometer over assignments of supp(alpha) to supp(g); points of the window
  // outside supp(g) keep label 0 and are never consulted by is_fixed.
  std::vector<std::size_t> digit(support.size(), 0);
  std::vector<Label> window(g.max_point(), 0);
  Scalar total(0);
  for (std::uint64_t cell = 0; cell < cells; ++cell) {
    for (std::size_t i = 0; i < support.size(); ++i)
      window[support[i] - 1] = labels[digit[i]];
    if (is_fixed(g, SignedPartition(window))) {
      Scalar w(1);
      for (std::size_t d : digit)
        w *= weights[d];
      total += w;
    }
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (++digit[i] < labels.size())
        break;
      digit[i] = 0;
    }
  }
  return total;
}

template <class Scalar>
FixProbReport<Scalar> mc_fixed_probability(const BasicAlpha<Scalar>& alpha, const Permutation& g,
                                           std::uint64_t samples, std::uint64_t seed,
                                           Execution exec) {
  require_canonical(alpha);
  if (samples == 0)
    throw std::domain_error("sample count must be at least 1");
  FixProbReport<Scalar> r;
  r.cycle_type = cycle_type(g);
  const Scalar a0 = alpha.weight(0);
  for (const auto& [k, c] : r.cycle_type.counts) {
    CycleFactor<Scalar> f;
    f.length = k;
    f.count = c;
    f.paper = newton_sum(alpha, k);
    f.full = f.paper + power(a0, k);
    f.character = super_newton_sum(alpha, k);
    r.factors.push_back(f);
  }
  r.paper_value = fixed_measure_paper(alpha, g);
  r.full_value = fixed_measure_full(alpha, g);
  r.sample_count = samples;
  r.seed = seed;
  r.hits = count_fixed_labellings(make_sampler(alpha), g, samples, seed, exec);
  const double p = static_cast<double>(r.hits) / static_cast<double>(samples);
  r.mc_estimate = p;
  r.mc_stderr = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return r;
}

std::string to_string(Degenerate d) {
  switch (d) {
  case Degenerate::identity:
    return "identity";
  case Degenerate::alternating:
    return "alternating";
  case Degenerate::regular:
    return "regular";
  case Degenerate::none:
    break;
  }
  return "none";
}

template <class Scalar>
NuClassification classify_nu(const BasicAlpha<Scalar>& alpha) {
  NuClassification c;
  c.tnf = true;
  std::vector<Label> support;
  for (const auto& [i, w] : alpha.weights()) {
    if (w == 0)
      continue;
    support.push_back(i);
    if (i <= 0)
      c.tnf = false;
  }
  if (support.size() == 1) {
    c.atomic = true;
    c.degenerate = support[0] > 0   ? Degenerate::identity
                   : support[0] < 0 ? Degenerate::alternating
                                    : Degenerate::regular;
  }
  return c;
}

template <class Scalar>
SequenceClassification classify_sequence_action(const BasicAlpha<Scalar>& alpha) {
  std::vector<Scalar> w;
  for (const auto& [i, v] : alpha.weights())
    if (i != 0 && v != 0)
      w.push_back(v);
  std::sort(w.begin(), w.end());
  SequenceClassification c;
  std::uint64_t run = 1;
  for (std::size_t k = 1; k <= w.size(); ++k) {
    if (k < w.size() && weights_equal(w[k], w[k - 1])) {
      ++run;
      c.symmetry_size *= run;
    } else {
      run = 1;
    }
  }
  c.tnf = c.symmetry_size == 1;
  return c;
}

Alpha definetti_estimate(const LabelSample& sample) {
  if (sample.window == 0 || sample.labels.size() != sample.window)
    throw std::domain_error("label sample must cover a window of at least one point");
  std::map<Label, std::uint64_t> counts;
  for (Label l : sample.labels)
    ++counts[l];
  Alpha::Weights w;
  for (const auto& [l, c] : counts)
    w.emplace(l, Rational(static_cast<long long>(c), static_cast<long long>(sample.window)));
  return Alpha(std::move(w));
}

template <class Scalar>
double independence_check(const BasicAlpha<Scalar>& alpha, std::size_t n, unsigned t,
                          std::uint64_t replicates, std::uint64_t seed, Execution exec) {
  require_canonical(alpha);
  if (t == 0 || t > 3)
    throw std::domain_error("coordinate count must lie in 1..3");
  if (t > n)
    throw std::domain_error("coordinate count exceeds the window");
  if (replicates == 0)
    throw std::domain_error("replicate count must be at least 1");
  const CategoricalSampler sampler = make_sampler(alpha);
  const std::size_t radix = sampler.labels().size();
  std::uint64_t cells = 1;
  for (unsigned i = 0; i < t; ++i)
    cells *= radix;
  if (cells > kIndependenceCellLimit)
    throw std::length_error("joint table would exceed " +
                            std::to_string(kIndependenceCellLimit) + " cells");

  const std::vector<std::uint64_t> joint = joint_label_counts(sampler, t, replicates, seed, exec);
  std::vector<std::vector<std::uint64_t>> marginal(t, std::vector<std::uint64_t>(radix, 0));
  for (std::size_t code = 0; code < joint.size(); ++code) {
    std::size_t rest = code;
    for (unsigned i = 0; i < t; ++i) {
      marginal[i][rest % radix] += joint[code];
      rest /= radix;
    }
  }
  const auto total = static_cast<double>(replicates);
  double worst = 0.0;
  for (std::size_t code = 0; code < joint.size(); ++code) {
    std::size_t rest = code;
    double product = 1.0;
    for (unsigned i = 0; i < t; ++i) {
      product *= static_cast<double>(marginal[i][rest % radix]) / total;
      rest /= radix;
    }
    worst = std::max(worst, std::abs(static_cast<double>(joint[code]) / total - product));
  }
  return worst;
}

Rational part_l_overlap(unsigned block, std::uint64_t m) {
  if (block != 2)
    throw std::domain_error("exact overlap is only defined for block length 2; use the "
                            "Monte Carlo tensor estimate for longer blocks");
  if (m < 1)
    throw std::domain_error("block count must be at least 1");
  const std::uint64_t points = 2 * m;
  // g(1) is free (2m choices), g(2) must be its partner, the rest is free.
  BigInt rest_factorial = 1;
  for (std::uint64_t k = 2; k + 2 <= points; ++k)
    rest_factorial *= k;
  BigInt group_order = rest_factorial * (points - 1) * points;
  return Rational(BigInt(points) * rest_factorial, group_order);
}

OverlapEstimate part_l_overlap_mc(unsigned block, std::uint64_t m, std::uint64_t samples,
                                  std::uint64_t seed, bool allow_tensor, Execution exec) {
  if (block < 2)
    throw std::domain_error("block length must be at least 2");
  if (block > 2 && !allow_tensor)
    throw std::domain_error("block lengths above 2 need the tensor flag");
  if (m < 1)
    throw std::domain_error("block count must be at least 1");
  if (samples == 0)
    throw std::domain_error("sample count must be at least 1");
  OverlapEstimate e;
  e.samples = samples;
  e.hits = count_block_hits(block, m, samples, seed, exec);
  e.estimate = static_cast<double>(e.hits) / static_cast<double>(samples);
  e.stderr_ = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(samples));
  return e;
}

#define TNF_INSTANTIATE(S)                                                                        \
  template BasicAlpha<S> validate(const BasicAlpha<S>&);                                          \
  template CategoricalSampler make_sampler(const BasicAlpha<S>&);                                 \
  template LabelSample sample_labels(const BasicAlpha<S>&, std::size_t, std::uint64_t);           \
  template SignedYoungSubgroup sample_signed_young(const BasicAlpha<S>&, std::size_t,             \
                                                   std::uint64_t);                                \
  template S exhaustive_fixed_probability(const BasicAlpha<S>&, const Permutation&);              \
  template FixProbReport<S> mc_fixed_probability(const BasicAlpha<S>&, const Permutation&,        \
                                                 std::uint64_t, std::uint64_t, Execution);        \
  template NuClassification classify_nu(const BasicAlpha<S>&);                                    \
  template SequenceClassification classify_sequence_action(const BasicAlpha<S>&);                 \
  template double independence_check(const BasicAlpha<S>&, std::size_t, unsigned, std::uint64_t, \
                                     std::uint64_t, Execution);

TNF_INSTANTIATE(Rational)
TNF_INSTANTIATE(double)

#undef TNF_INSTANTIATE

} // namespace tnf
