#include "tnf/signed_young.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace tnf {

namespace {

void require_in_window(const Permutation& g, std::size_t window) {
  if (g.max_point() > window)
    throw WindowError("permutation " + to_string(g) + " moves points outside the window {1.." +
                      std::to_string(window) + "}");
}

} // namespace

SignedPartition::SignedPartition(std::vector<Label> labels) : labels_(std::move(labels)) {}

std::vector<std::pair<Label, std::vector<Point>>> SignedPartition::blocks() const {
  std::map<Label, std::vector<Point>> by_label;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    by_label[labels_[i]].push_back(static_cast<Point>(i + 1));
  return {by_label.begin(), by_label.end()};
}

std::vector<Point> SignedPartition::pool() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == 0)
      out.push_back(static_cast<Point>(i + 1));
  return out;
}

SignedPartition SignedPartition::canonical() const {
  std::map<Label, Label> rename;
  Label next_pos = 1, next_neg = -1;
  std::vector<Label> out(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const Label l = labels_[i];
    if (l == 0)
      continue;
    auto [it, inserted] = rename.try_emplace(l, 0);
    if (inserted)
      it->second = l > 0 ? next_pos++ : next_neg--;
    out[i] = it->second;
  }
  return SignedPartition(std::move(out));
}

bool contains(const SignedYoungSubgroup& y, const Permutation& g) {
  const SignedPartition& eta = y.partition();
  require_in_window(g, eta.window());
  for (const auto& [p, img] : g.moved()) {
    const Label l = eta.label(p);
    if (l == 0 || eta.label(img) != l)
      return false;
  }
  // g preserves every block, so each cycle lies in one block; the parity of
  // g restricted to a block is the product over that block's cycles.
  std::map<Label, std::size_t> transpositions;
  for (const Cycle& c : cycle_decomposition(g))
    transpositions[eta.label(c.front())] += c.size() - 1;
  for (const auto& [l, t] : transpositions)
    if (l < 0 && t % 2 != 0)
      return false;
  return true;
}

SignedPartition ad_image(const Permutation& g, const SignedPartition& eta) {
  require_in_window(g, eta.window());
  std::vector<Label> out = eta.labels();
  for (const auto& [p, img] : g.moved())
    out[img - 1] = eta.label(p);
  return SignedPartition(std::move(out));
}

bool is_fixed(const Permutation& g, const SignedPartition& eta) {
  require_in_window(g, eta.window());
  for (const auto& [p, img] : g.moved())
    if (eta.label(img) != eta.label(p))
      return false;
  return true;
}

SignedYoungSubgroup normalizer_symbolic(const SignedYoungSubgroup& y) {
  const SignedPartition& eta = y.partition();
  const std::vector<Label>& labels = eta.labels();
  Label max_pos = 0;
  for (Label l : labels)
    max_pos = std::max(max_pos, l);
  const std::size_t pool_size = eta.pool().size();
  // Negative labels move above every positive label so no two blocks merge;
  // the pool gets a label above all of those.
  Label max_neg = 0;
  for (Label l : labels)
    max_neg = std::max(max_neg, -l);
  const Label pool_label = max_pos + max_neg + 1;
  std::vector<Label> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Label l = labels[i];
    if (l > 0)
      out[i] = l;
    else if (l < 0)
      out[i] = max_pos - l;
    else
      out[i] = pool_size >= 2 ? pool_label : 0;
  }
  return SignedYoungSubgroup(SignedPartition(std::move(out)).canonical());
}

bool is_self_normalizing(const SignedYoungSubgroup& y) {
  const auto& labels = y.partition().labels();
  if (std::any_of(labels.begin(), labels.end(), [](Label l) { return l < 0; }))
    return false;
  return y.partition().pool().size() <= 1;
}

bool check_n2_equals_n(const SignedYoungSubgroup& y) {
  const SignedYoungSubgroup n1 = normalizer_symbolic(y);
  return normalizer_symbolic(n1) == n1;
}

} // namespace tnf
