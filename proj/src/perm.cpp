#include "tnf/perm.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tnf {

Permutation Permutation::from_pairs(std::vector<Entry> pairs) {
  std::erase_if(pairs, [](const Entry& e) { return e.first == e.second; });
  std::sort(pairs.begin(), pairs.end());
  std::vector<Point> images;
  images.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].first == 0 || pairs[i].second == 0)
      throw std::invalid_argument("permutation points must be positive");
    if (i > 0 && pairs[i].first == pairs[i - 1].first)
      throw std::invalid_argument("point " + std::to_string(pairs[i].first) +
                                  " has two images");
    images.push_back(pairs[i].second);
  }
  std::sort(images.begin(), images.end());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (images[i] != pairs[i].first)
      throw std::invalid_argument("map is not a bijection of its moved points");
  return Permutation(std::move(pairs));
}

Permutation Permutation::from_cycles(std::span<const Cycle> cycles) {
  std::vector<Entry> pairs;
  std::set<Point> seen;
  for (const Cycle& c : cycles) {
    for (Point p : c) {
      if (p == 0)
        throw std::invalid_argument("permutation points must be positive");
      if (!seen.insert(p).second)
        throw std::invalid_argument("point " + std::to_string(p) +
                                    " appears in more than one cycle");
    }
    if (c.size() < 2)
      continue;
    for (std::size_t i = 0; i < c.size(); ++i)
      pairs.emplace_back(c[i], c[(i + 1) % c.size()]);
  }
  return from_pairs(std::move(pairs));
}

Permutation Permutation::from_images(std::span<const Point> images) {
  std::vector<Entry> pairs;
  for (std::size_t i = 0; i < images.size(); ++i)
    pairs.emplace_back(static_cast<Point>(i + 1), images[i]);
  return from_pairs(std::move(pairs));
}

Permutation Permutation::transposition(Point a, Point b) {
  return from_pairs({{a, b}, {b, a}});
}

Point Permutation::operator()(Point x) const noexcept {
  auto it = std::lower_bound(moved_.begin(), moved_.end(), x,
                             [](const Entry& e, Point p) { return e.first < p; });
  return (it != moved_.end() && it->first == x) ? it->second : x;
}

std::vector<Point> Permutation::support() const {
  std::vector<Point> s;
  s.reserve(moved_.size());
  for (const auto& [p, _] : moved_)
    s.push_back(p);
  return s;
}

Permutation compose(const Permutation& g, const Permutation& h) {
  std::vector<Permutation::Entry> pairs;
  pairs.reserve(g.support_size() + h.support_size());
  for (const auto& [p, _] : h.moved())
    pairs.emplace_back(p, g(h(p)));
  for (const auto& [p, img] : g.moved())
    if (h(p) == p)
      pairs.emplace_back(p, img);
  return Permutation::from_pairs(std::move(pairs));
}

Permutation inverse(const Permutation& g) {
  std::vector<Permutation::Entry> pairs;
  pairs.reserve(g.support_size());
  for (const auto& [p, img] : g.moved())
    pairs.emplace_back(img, p);
  return Permutation::from_pairs(std::move(pairs));
}

Permutation conjugate(const Permutation& g, const Permutation& h) {
  // h g h^-1 sends h(x) to h(g(x)).
  std::vector<Permutation::Entry> pairs;
  pairs.reserve(g.support_size());
  for (const auto& [p, img] : g.moved())
    pairs.emplace_back(h(p), h(img));
  return Permutation::from_pairs(std::move(pairs));
}

std::vector<Cycle> cycle_decomposition(const Permutation& g) {
  std::vector<Cycle> cycles;
  std::set<Point> visited;
  // moved() is sorted, so each cycle is discovered from its minimum point.
  for (const auto& [start, _] : g.moved()) {
    if (visited.contains(start))
      continue;
    Cycle c;
    Point p = start;
    do {
      c.push_back(p);
      visited.insert(p);
      p = g(p);
    } while (p != start);
    cycles.push_back(std::move(c));
  }
  return cycles;
}

CycleType cycle_type(const Permutation& g) {
  CycleType t;
  for (const Cycle& c : cycle_decomposition(g))
    ++t.counts[static_cast<unsigned>(c.size())];
  return t;
}

int parity(const Permutation& g) {
  std::size_t transpositions = 0;
  for (const auto& [len, count] : cycle_type(g).counts)
    transpositions += static_cast<std::size_t>(len - 1) * count;
  return (transpositions % 2 == 0) ? 1 : -1;
}

Permutation parse_permutation(std::string_view text) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("malformed permutation '" + std::string(text) + "': " + why);
  };
  std::vector<Cycle> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  if (i == text.size())
    fail("empty input");
  bool saw_empty = false;
  while (i < text.size()) {
    if (text[i] != '(')
      fail("expected '('");
    ++i;
    Cycle c;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        fail("unexpected character '" + std::string(1, text[i]) + "'");
      Point v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        Point next = v * 10 + static_cast<Point>(text[i] - '0');
        if (next / 10 != v)
          fail("point out of range");
        v = next;
        ++i;
      }
      if (v == 0)
        fail("points must be positive");
      c.push_back(v);
      if (i < text.size() && text[i] != ')' &&
          !std::isspace(static_cast<unsigned char>(text[i])))
        fail("unexpected character '" + std::string(1, text[i]) + "'");
      skip_ws();
    }
    if (i == text.size())
      fail("unterminated cycle");
    ++i;
    if (c.empty())
      saw_empty = true;
    else
      cycles.push_back(std::move(c));
    skip_ws();
  }
  if (saw_empty && !cycles.empty())
    fail("'()' must stand alone");
  try {
    return Permutation::from_cycles(cycles);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return {};
}

std::string to_string(const Permutation& g) {
  if (g.is_identity())
    return "()";
  std::ostringstream os;
  for (const Cycle& c : cycle_decomposition(g)) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i)
      os << (i ? " " : "") << c[i];
    os << ')';
  }
  return os.str();
}

std::string to_string(const CycleType& t) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [len, count] : t.counts) {
    os << (first ? "" : ", ") << len << ": " << count;
    first = false;
  }
  os << '}';
  return os.str();
}

} // namespace tnf
