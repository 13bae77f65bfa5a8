#include "tnf/finite_lattice.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace tnf::lattice {

namespace {

std::uint64_t encode_images(std::span<const Point> images) {
  std::uint64_t code = 0;
  for (Point p : images)
    code = code * 8 + (p - 1);
  return code;
}

bool set_less(const ElementSet& a, const ElementSet& b) {
  for (std::size_t i = 0; i < kMaxOrder; ++i)
    if (a.test(i) != b.test(i))
      return a.test(i);
  return false;
}

bool is_prime_power(std::size_t k) {
  if (k < 2)
    return false;
  std::size_t p = 2;
  while (k % p != 0)
    ++p;
  while (k % p == 0)
    k /= p;
  return k == 1;
}

} // namespace

SymmetricGroup::SymmetricGroup(unsigned degree) : degree_(degree) {
  if (degree < 1)
    throw std::domain_error("symmetric group degree must be at least 1");
  if (degree > kMaxDegree)
    throw SizeLimitError("degree " + std::to_string(degree) + " exceeds the hard limit " +
                         std::to_string(kMaxDegree));
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{1});
  do {
    elements_.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  std::sort(elements_.begin(), elements_.end());

  const std::size_t n = elements_.size();
  images_.resize(n * degree);
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned x = 1; x <= degree; ++x)
      images_[i * degree + (x - 1)] = elements_[i](x);
    by_code_.emplace(encode_images({images_.data() + i * degree, degree}),
                     static_cast<ElementIndex>(i));
  }

  mult_.resize(n * n);
  std::vector<Point> composed(degree);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (unsigned x = 0; x < degree; ++x)
        composed[x] = images_[a * degree + (images_[b * degree + x] - 1)];
      mult_[a * n + b] = by_code_.at(encode_images(composed));
    }

  inv_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (mult_[a * n + b] == identity()) {
        inv_[a] = static_cast<ElementIndex>(b);
        break;
      }
}

ElementIndex SymmetricGroup::index_of(const Permutation& g) const {
  if (g.max_point() > degree_)
    throw std::out_of_range("permutation " + to_string(g) + " moves points outside {1.." +
                            std::to_string(degree_) + "}");
  std::vector<Point> images(degree_);
  for (unsigned x = 1; x <= degree_; ++x)
    images[x - 1] = g(x);
  return by_code_.at(encode_images(images));
}

ElementSet SymmetricGroup::closure(std::span<const ElementIndex> gens) const {
  // Dimino's algorithm: grow the group one generator at a time, adding whole
  // cosets of the previous subgroup.
  std::vector<ElementIndex> elements{identity()};
  ElementSet members;
  members.set(identity());
  std::vector<ElementIndex> used;
  for (ElementIndex c : gens) {
    if (members.test(c))
      continue;
    used.push_back(c);
    const std::vector<ElementIndex> previous = elements;
    std::vector<ElementIndex> reps{identity()};
    auto add_coset = [&](ElementIndex r) {
      for (ElementIndex h : previous) {
        ElementIndex e = multiply(h, r);
        elements.push_back(e);
        members.set(e);
      }
      reps.push_back(r);
    };
    add_coset(c);
    for (std::size_t pos = 1; pos < reps.size(); ++pos)
      for (ElementIndex s : used) {
        ElementIndex e = multiply(reps[pos], s);
        if (!members.test(e))
          add_coset(e);
      }
  }
  return members;
}

ElementSet SymmetricGroup::conjugate_set(const ElementSet& set, ElementIndex by) const {
  ElementSet out;
  const ElementIndex by_inv = inv_[by];
  for (std::size_t i = 0; i < order(); ++i)
    if (set.test(i))
      out.set(multiply(multiply(by, static_cast<ElementIndex>(i)), by_inv));
  return out;
}

std::vector<ElementIndex> SymmetricGroup::members(const ElementSet& set) const {
  std::vector<ElementIndex> out;
  for (std::size_t i = 0; i < order(); ++i)
    if (set.test(i))
      out.push_back(static_cast<ElementIndex>(i));
  return out;
}

std::vector<ElementIndex> SymmetricGroup::small_generating_set(const ElementSet& set) const {
  std::vector<ElementIndex> gens;
  ElementSet generated;
  generated.set(identity());
  // Prefer elements of large order: fewer generators for cyclic pieces.
  std::vector<ElementIndex> candidates = members(set);
  auto elt_order = [&](ElementIndex a) {
    std::size_t k = 1;
    for (ElementIndex x = a; x != identity(); x = multiply(x, a))
      ++k;
    return k;
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](ElementIndex a, ElementIndex b) { return elt_order(a) > elt_order(b); });
  for (ElementIndex c : candidates) {
    if (generated.test(c))
      continue;
    gens.push_back(c);
    generated = closure(gens);
    if (generated == set)
      break;
  }
  std::sort(gens.begin(), gens.end());
  return gens;
}

FiniteGroup::FiniteGroup(std::shared_ptr<const SymmetricGroup> ambient, ElementSet members,
                         std::vector<ElementIndex> generators)
    : ambient_(std::move(ambient)), members_(members), generators_(std::move(generators)) {}

bool FiniteGroup::contains(const Permutation& g) const {
  if (g.max_point() > degree())
    return false;
  return members_.test(ambient_->index_of(g));
}

std::vector<Permutation> FiniteGroup::elements() const {
  std::vector<Permutation> out;
  for (ElementIndex i : ambient_->members(members_))
    out.push_back(ambient_->element(i));
  return out;
}

std::vector<Permutation> FiniteGroup::generator_permutations() const {
  std::vector<Permutation> out;
  for (ElementIndex i : generators_)
    out.push_back(ambient_->element(i));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementSet> normalizer_sets(const SymmetricGroup& group,
                                        std::span<const ElementSet> subgroups, Execution exec) {
  std::vector<ElementSet> out(subgroups.size());
  auto one = [&](std::size_t i) {
    ElementSet n;
    for (std::size_t g = 0; g < group.order(); ++g) {
      const auto gi = static_cast<ElementIndex>(g);
      if (group.conjugate_set(subgroups[i], gi) == subgroups[i])
        n.set(g);
    }
    out[i] = n;
  };
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < subgroups.size(); ++i)
      one(i);
  } else {
    const auto count = static_cast<std::int64_t>(subgroups.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i)
      one(static_cast<std::size_t>(i));
  }
  return out;
}

SubgroupLattice enumerate_subgroups(unsigned n, const EnumerateOptions& options) {
  if (n < 1)
    throw std::domain_error("window size must be at least 1");
  const unsigned cap = std::min(options.cap, kMaxDegree);
  if (n > cap || (n == 6 && !options.allow_degree6)) {
    const unsigned effective = options.allow_degree6 ? cap : std::min(cap, 5u);
    throw SizeLimitError("window " + std::to_string(n) + " exceeds the subgroup-lattice cap " +
                         std::to_string(effective) +
                         (effective < kMaxDegree ? " (degree 6 requires an explicit flag)" : ""));
  }

  auto group = std::make_shared<const SymmetricGroup>(n);
  const SymmetricGroup& G = *group;

  // Cyclic subgroups of prime-power order generate every subgroup.
  std::vector<ElementIndex> seeds;
  {
    std::set<std::vector<ElementIndex>> seen;
    for (std::size_t g = 1; g < G.order(); ++g) {
      const auto gi = static_cast<ElementIndex>(g);
      const ElementIndex gens[] = {gi};
      ElementSet cyc = G.closure(gens);
      if (!is_prime_power(cyc.count()))
        continue;
      if (seen.insert(G.members(cyc)).second)
        seeds.push_back(gi);
    }
  }

  struct Found {
    ElementSet members;
    std::vector<ElementIndex> generators;
  };
  std::vector<Found> found;
  std::unordered_map<ElementSet, std::size_t> index;
  ElementSet trivial;
  trivial.set(SymmetricGroup::identity());
  found.push_back({trivial, {}});
  index.emplace(trivial, 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t h = queue.front();
    queue.pop_front();
    for (ElementIndex c : seeds) {
      if (found[h].members.test(c))
        continue;
      std::vector<ElementIndex> gens = found[h].generators;
      gens.push_back(c);
      ElementSet k = G.closure(gens);
      if (index.contains(k))
        continue;
      index.emplace(k, found.size());
      found.push_back({k, std::move(gens)});
      queue.push_back(found.size() - 1);
    }
  }

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    const auto ca = a.members.count(), cb = b.members.count();
    return ca != cb ? ca < cb : set_less(a.members, b.members);
  });

  SubgroupLattice L;
  L.ambient_ = group;
  std::vector<ElementSet> sets;
  for (std::size_t i = 0; i < found.size(); ++i) {
    L.index_.emplace(found[i].members, i);
    sets.push_back(found[i].members);
    L.subgroups_.emplace_back(group, found[i].members,
                              G.small_generating_set(found[i].members));
  }

  const std::vector<ElementSet> normalizers = normalizer_sets(G, sets, options.execution);
  L.normalizer_.resize(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    L.normalizer_[i] = L.index_.at(normalizers[i]);

  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  L.class_of_.assign(sets.size(), unassigned);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (L.class_of_[i] != unassigned)
      continue;
    std::set<std::size_t> orbit;
    for (std::size_t g = 0; g < G.order(); ++g)
      orbit.insert(L.index_.at(G.conjugate_set(sets[i], static_cast<ElementIndex>(g))));
    for (std::size_t j : orbit)
      L.class_of_[j] = L.classes_.size();
    L.classes_.emplace_back(orbit.begin(), orbit.end());
  }
  return L;
}

std::optional<std::size_t> SubgroupLattice::find(const ElementSet& members) const {
  if (auto it = index_.find(members); it != index_.end())
    return it->second;
  return std::nullopt;
}

std::size_t SubgroupLattice::index_of(const ElementSet& members) const {
  if (auto i = find(members))
    return *i;
  throw std::logic_error("element set is not a subgroup of the enumerated lattice");
}

std::size_t normalizer(std::size_t subgroup, const SubgroupLattice& lattice) {
  return lattice.normalizer_of(subgroup);
}

std::vector<std::size_t> self_normalizing_set(const SubgroupLattice& lattice) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (lattice.normalizer_of(i) == i)
      out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Finite actions

FiniteAction::FiniteAction(std::shared_ptr<const SymmetricGroup> group, std::size_t points,
                           std::vector<std::uint32_t> table, std::vector<Rational> measure)
    : group_(std::move(group)), points_(points), table_(std::move(table)),
      measure_(std::move(measure)) {
  const SymmetricGroup& G = *group_;
  if (points_ == 0)
    throw std::invalid_argument("an action needs at least one point");
  if (table_.size() != G.order() * points_)
    throw std::invalid_argument("action table has the wrong size");
  if (measure_.size() != points_)
    throw std::invalid_argument("measure needs one mass per point");
  for (std::uint32_t y : table_)
    if (y >= points_)
      throw std::invalid_argument("action table maps outside the point set");
  for (std::size_t x = 0; x < points_; ++x)
    if (act(SymmetricGroup::identity(), x) != x)
      throw std::invalid_argument("identity does not act trivially");
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h) {
      const auto gi = static_cast<ElementIndex>(g), hi = static_cast<ElementIndex>(h);
      const ElementIndex gh = G.multiply(gi, hi);
      for (std::size_t x = 0; x < points_; ++x)
        if (act(gh, x) != act(gi, act(hi, x)))
          throw std::invalid_argument("table is not compatible with composition");
    }
  Rational total = 0;
  for (const Rational& m : measure_) {
    if (m < 0)
      throw std::invalid_argument("negative point mass");
    total += m;
  }
  if (total != 1)
    throw std::invalid_argument("point masses must sum to 1");
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t x = 0; x < points_; ++x)
      if (measure_[act(static_cast<ElementIndex>(g), x)] != measure_[x])
        throw std::invalid_argument("measure is not preserved by the action");
}

namespace {

std::vector<Rational> uniform_measure(std::size_t points) {
  return std::vector<Rational>(points, Rational(1, static_cast<long long>(points)));
}

} // namespace

FiniteAction FiniteAction::natural(std::shared_ptr<const SymmetricGroup> group) {
  const std::size_t n = group->degree();
  std::vector<std::uint32_t> table(group->order() * n);
  for (std::size_t g = 0; g < group->order(); ++g)
    for (std::size_t x = 0; x < n; ++x)
      table[g * n + x] = static_cast<std::uint32_t>(group->apply(static_cast<ElementIndex>(g), x + 1) - 1);
  return FiniteAction(group, n, std::move(table), uniform_measure(n));
}

FiniteAction FiniteAction::regular(std::shared_ptr<const SymmetricGroup> group) {
  const std::size_t n = group->order();
  std::vector<std::uint32_t> table(n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t x = 0; x < n; ++x)
      table[g * n + x] = group->multiply(static_cast<ElementIndex>(g), static_cast<ElementIndex>(x));
  return FiniteAction(group, n, std::move(table), uniform_measure(n));
}

FiniteAction FiniteAction::cosets(const SubgroupLattice& lattice, std::size_t subgroup) {
  const auto& group = lattice.ambient_ptr();
  const SymmetricGroup& G = *group;
  const std::vector<ElementIndex> h = G.members(lattice.subgroup(subgroup).members());
  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> coset_of(G.order(), none);
  std::vector<ElementIndex> reps;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (coset_of[g] != none)
      continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(static_cast<ElementIndex>(g));
    for (ElementIndex x : h)
      coset_of[G.multiply(static_cast<ElementIndex>(g), x)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<std::uint32_t> table(G.order() * m);
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t c = 0; c < m; ++c)
      table[g * m + c] = coset_of[G.multiply(static_cast<ElementIndex>(g), reps[c])];
  return FiniteAction(group, m, std::move(table), uniform_measure(m));
}

FiniteAction FiniteAction::relabel(std::span<const std::size_t> relabel) const {
  if (relabel.size() != points_)
    throw std::invalid_argument("relabelling must cover every point");
  std::vector<std::size_t> back(points_, points_);
  for (std::size_t x = 0; x < points_; ++x) {
    if (relabel[x] >= points_ || back[relabel[x]] != points_)
      throw std::invalid_argument("relabelling is not a bijection");
    back[relabel[x]] = x;
  }
  std::vector<std::uint32_t> table(table_.size());
  std::vector<Rational> measure(points_);
  for (std::size_t g = 0; g < group_->order(); ++g)
    for (std::size_t y = 0; y < points_; ++y)
      table[g * points_ + y] = static_cast<std::uint32_t>(relabel[act(static_cast<ElementIndex>(g), back[y])]);
  for (std::size_t x = 0; x < points_; ++x)
    measure[relabel[x]] = measure_[x];
  return FiniteAction(group_, points_, std::move(table), std::move(measure));
}

std::vector<std::size_t> fixed_set(const FiniteAction& action, ElementIndex g) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < action.points(); ++x)
    if (action.act(g, x) == x)
      out.push_back(x);
  return out;
}

namespace {

ElementSet stabilizer_set(const FiniteAction& action, std::size_t x) {
  ElementSet s;
  for (std::size_t g = 0; g < action.group().order(); ++g)
    if (action.act(static_cast<ElementIndex>(g), x) == x)
      s.set(g);
  return s;
}

} // namespace

FiniteGroup stabilizer(const FiniteAction& action, std::size_t x) {
  if (x >= action.points())
    throw std::out_of_range("point outside the action");
  ElementSet s = stabilizer_set(action, x);
  return FiniteGroup(action.group_ptr(), s, action.group().small_generating_set(s));
}

std::vector<std::vector<std::size_t>> iso_stable_partition(const FiniteAction& action) {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<ElementSet> keys;
  for (std::size_t x = 0; x < action.points(); ++x) {
    const ElementSet s = stabilizer_set(action, x);
    auto it = std::find(keys.begin(), keys.end(), s);
    if (it == keys.end()) {
      keys.push_back(s);
      blocks.push_back({x});
    } else {
      blocks[static_cast<std::size_t>(it - keys.begin())].push_back(x);
    }
  }
  return blocks;
}

LatticeMeasure LatticeMeasure::point_mass(const SubgroupLattice& lattice, std::size_t subgroup) {
  LatticeMeasure m{&lattice, std::vector<Rational>(lattice.size(), Rational(0))};
  m.mass.at(subgroup) = 1;
  return m;
}

std::vector<std::size_t> LatticeMeasure::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mass.size(); ++i)
    if (mass[i] != 0)
      out.push_back(i);
  return out;
}

Rational LatticeMeasure::total() const {
  Rational t = 0;
  for (const Rational& m : mass)
    t += m;
  return t;
}

LatticeMeasure characteristic_measure(const FiniteAction& action, const SubgroupLattice& lattice) {
  if (action.group().degree() != lattice.degree())
    throw std::invalid_argument("action group is not the lattice's ambient group");
  LatticeMeasure m{&lattice, std::vector<Rational>(lattice.size(), Rational(0))};
  for (std::size_t x = 0; x < action.points(); ++x) {
    auto idx = lattice.find(stabilizer_set(action, x));
    if (!idx)
      throw std::logic_error("stabilizer missing from an exhaustive lattice");
    m.mass[*idx] += action.measure(x);
  }
  return m;
}

TnfReport is_tnf(const FiniteAction& action) {
  std::vector<std::size_t> live;
  for (std::size_t x = 0; x < action.points(); ++x)
    if (action.measure(x) > 0)
      live.push_back(x);

  TnfReport r;

  // 1: the iso-stable partition separates every positive-mass point.
  r.condition1 = true;
  for (const auto& block : iso_stable_partition(action)) {
    std::size_t live_in_block = 0;
    for (std::size_t x : block)
      live_in_block += action.measure(x) > 0 ? 1 : 0;
    if (live_in_block > 1)
      r.condition1 = false;
  }

  // 2: pairwise comparison of stabilizers.
  std::vector<ElementSet> stabs;
  for (std::size_t x : live)
    stabs.push_back(stabilizer_set(action, x));
  r.condition2 = true;
  for (std::size_t i = 0; i < stabs.size() && r.condition2; ++i)
    for (std::size_t j = i + 1; j < stabs.size(); ++j)
      if (stabs[i] == stabs[j]) {
        r.condition2 = false;
        break;
      }

  // 3: the map x -> G_x has an inverse on its image.
  std::unordered_map<ElementSet, std::size_t> inverse_map;
  r.condition3 = true;
  for (std::size_t i = 0; i < live.size(); ++i)
    if (!inverse_map.emplace(stabs[i], live[i]).second)
      r.condition3 = false;
  return r;
}

bool check_transitive_tnf(const SubgroupLattice& lattice, std::size_t subgroup) {
  return is_tnf(FiniteAction::cosets(lattice, subgroup)).all();
}

LatticeMeasure normalization_pushforward(const LatticeMeasure& m) {
  const SubgroupLattice& L = *m.lattice;
  LatticeMeasure out{m.lattice, std::vector<Rational>(L.size(), Rational(0))};
  for (std::size_t i = 0; i < m.mass.size(); ++i)
    if (m.mass[i] != 0)
      out.mass[L.normalizer_of(i)] += m.mass[i];
  return out;
}

std::vector<LatticeMeasure> hierarchy_chain(const LatticeMeasure& m) {
  std::vector<LatticeMeasure> chain{m};
  for (;;) {
    LatticeMeasure next = normalization_pushforward(chain.back());
    if (next == chain.back())
      break;
    chain.push_back(std::move(next));
    // Mass only moves strictly up a finite poset.
    if (chain.size() > m.lattice->size())
      throw std::logic_error("normalization chain failed to terminate");
  }
  return chain;
}

std::vector<LatticeMeasure> ergodic_ad_measures(const SubgroupLattice& lattice) {
  std::vector<LatticeMeasure> out;
  for (const auto& cls : lattice.conjugacy_classes()) {
    LatticeMeasure m{&lattice, std::vector<Rational>(lattice.size(), Rational(0))};
    for (std::size_t i : cls)
      m.mass[i] = Rational(1, static_cast<long long>(cls.size()));
    out.push_back(std::move(m));
  }
  return out;
}

bool is_ad_invariant(const LatticeMeasure& m) {
  for (const auto& cls : m.lattice->conjugacy_classes())
    for (std::size_t i : cls)
      if (m.mass[i] != m.mass[cls.front()])
        return false;
  return true;
}

std::optional<std::vector<Rational>> ergodic_decomposition(const LatticeMeasure& m) {
  if (!is_ad_invariant(m))
    return std::nullopt;
  std::vector<Rational> weights;
  for (const auto& cls : m.lattice->conjugacy_classes())
    weights.push_back(m.mass[cls.front()] * static_cast<long long>(cls.size()));
  return weights;
}

bool supported_on_self_normalizing(const LatticeMeasure& m) {
  for (std::size_t i : m.support())
    if (m.lattice->normalizer_of(i) != i)
      return false;
  return true;
}

bool is_k_transitive(const FiniteAction& action, unsigned k, TransitivityVariant variant) {
  const std::size_t points = action.points();
  if (k == 0 || k > points)
    throw std::domain_error("k must lie in 1.." + std::to_string(points));
  const SymmetricGroup& G = action.group();

  std::vector<ElementSet> stabs;
  for (std::size_t x = 0; x < points; ++x)
    stabs.push_back(stabilizer_set(action, x));

  // Intersections of stabilizers do not depend on tuple order, so walk
  // k-subsets in lexicographic order.
  std::vector<std::size_t> tuple(k);
  std::iota(tuple.begin(), tuple.end(), std::size_t{0});
  for (;;) {
    ElementSet common = stabs[tuple[0]];
    for (unsigned i = 1; i < k; ++i)
      common &= stabs[tuple[i]];
    const std::vector<ElementIndex> members = G.members(common);

    std::vector<bool> in_tuple(points, false);
    for (std::size_t x : tuple)
      in_tuple[x] = true;
    std::vector<std::size_t> target;
    for (std::size_t x = 0; x < points; ++x)
      if (variant == TransitivityVariant::whole_space || !in_tuple[x])
        target.push_back(x);

    if (!target.empty()) {
      std::vector<bool> reached(points, false);
      for (ElementIndex g : members)
        reached[action.act(g, target.front())] = true;
      for (std::size_t y : target)
        if (!reached[y])
          return false;
    }

    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && tuple[pos] == points - k + static_cast<std::size_t>(pos))
      --pos;
    if (pos < 0)
      break;
    ++tuple[pos];
    for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < k; ++i)
      tuple[i] = tuple[i - 1] + 1;
  }
  return true;
}

} // namespace tnf::lattice
