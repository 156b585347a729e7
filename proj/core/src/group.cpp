#include "coarse/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "coarse/errors.hpp"
#include "coarse/linalg.hpp"

namespace coarse {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("matrix entry overflowed 64 bits");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("matrix entry overflowed 64 bits");
  return r;
}

Element matrix_product(const Element& a, const Element& b, std::size_t n) {
  Element out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t aik = a[i * n + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        out[i * n + j] = checked_add(out[i * n + j], checked_mul(aik, b[k * n + j]));
    }
  return out;
}

std::vector<std::string> default_names(std::size_t count, char first) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < count; ++j) out.emplace_back(1, static_cast<char>(first + j));
  return out;
}

}  // namespace

GroupSpec GroupSpec::free_abelian(std::size_t rank) {
  if (rank == 0 || rank > 26) throw std::invalid_argument("free abelian rank must be in 1..26");
  GroupSpec g;
  g.kind_ = GroupKind::FreeAbelian;
  g.rank_ = rank;
  g.names_ = default_names(rank, 'a');
  return g;
}

GroupSpec GroupSpec::free(std::size_t rank) {
  if (rank == 0 || rank > 26) throw std::invalid_argument("free group rank must be in 1..26");
  GroupSpec g;
  g.kind_ = GroupKind::Free;
  g.rank_ = rank;
  g.names_ = default_names(rank, 'a');
  return g;
}

GroupSpec GroupSpec::integer_matrix(std::size_t n, std::vector<std::vector<std::int64_t>> matrices,
                                    std::vector<std::string> names) {
  if (n == 0 || matrices.empty()) throw std::invalid_argument("matrix group needs a dimension and generators");
  if (names.empty()) names = default_names(matrices.size(), matrices.size() <= 3 ? 'x' : 'a');
  if (names.size() != matrices.size()) throw std::invalid_argument("one name per generator matrix");
  GroupSpec g;
  g.kind_ = GroupKind::IntegerMatrix;
  g.dim_ = n;
  g.names_ = std::move(names);
  for (std::size_t j = 0; j < matrices.size(); ++j) {
    const auto& m = matrices[j];
    if (m.size() != n * n) throw std::invalid_argument("generator " + g.names_[j] + " has the wrong entry count");
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n * n; ++i) a(i / n, i % n) = m[i];
    SmithForm s = smith_normal_form(a);
    bool unimodular = s.rank == n;
    for (std::size_t i = 0; i < s.rank; ++i) unimodular = unimodular && s.diagonal[i] == Integer(1);
    if (!unimodular) throw NonInvertibleGenerator("generator " + g.names_[j] + " is not invertible over Z");
    IntMatrix inv = s.v * s.u;
    Element e(m.begin(), m.end());
    Element ie(n * n);
    for (std::size_t i = 0; i < n * n; ++i) ie[i] = inv(i / n, i % n).to_int64();
    if (e == g.identity()) throw std::invalid_argument("generator " + g.names_[j] + " is the identity");
    g.gens_.push_back(std::move(e));
    g.gens_.push_back(std::move(ie));
  }
  return g;
}

GroupSpec GroupSpec::heisenberg() {
  return integer_matrix(3, {{1, 1, 0, 0, 1, 0, 0, 0, 1}, {1, 0, 0, 0, 1, 1, 0, 0, 1}}, {"x", "y"});
}

bool GroupSpec::is_heisenberg() const {
  if (kind_ != GroupKind::IntegerMatrix || dim_ != 3 || gens_.size() != 4) return false;
  return gens_[0] == Element{1, 1, 0, 0, 1, 0, 0, 0, 1} && gens_[2] == Element{1, 0, 0, 0, 1, 1, 0, 0, 1};
}

GroupSpec GroupSpec::from_json(const nlohmann::json& j) {
  static const std::vector<std::string> allowed{"kind", "rank", "dimension", "matrices", "names"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown group key '" + key + "'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "free_abelian") return free_abelian(j.at("rank").get<std::size_t>());
  if (kind == "free") return free(j.at("rank").get<std::size_t>());
  if (kind == "heisenberg") return heisenberg();
  if (kind == "matrix") {
    return integer_matrix(j.at("dimension").get<std::size_t>(),
                          j.at("matrices").get<std::vector<std::vector<std::int64_t>>>(),
                          j.value("names", std::vector<std::string>{}));
  }
  throw UnsupportedGroup("group kind '" + kind + "' is not supported (free_abelian, free, matrix, heisenberg)");
}

nlohmann::json GroupSpec::to_json() const {
  switch (kind_) {
    case GroupKind::FreeAbelian:
      return {{"kind", "free_abelian"}, {"rank", rank_}};
    case GroupKind::Free:
      return {{"kind", "free"}, {"rank", rank_}};
    case GroupKind::IntegerMatrix: {
      if (is_heisenberg()) return {{"kind", "heisenberg"}};
      nlohmann::json mats = nlohmann::json::array();
      for (std::size_t j = 0; j < gens_.size(); j += 2) mats.push_back(gens_[j]);
      return {{"kind", "matrix"}, {"dimension", dim_}, {"matrices", mats}, {"names", names_}};
    }
  }
  return {};
}

Element GroupSpec::identity() const {
  switch (kind_) {
    case GroupKind::FreeAbelian:
      return Element(rank_, 0);
    case GroupKind::Free:
      return {};
    case GroupKind::IntegerMatrix: {
      Element e(dim_ * dim_, 0);
      for (std::size_t i = 0; i < dim_; ++i) e[i * dim_ + i] = 1;
      return e;
    }
  }
  return {};
}

Element GroupSpec::generator(std::size_t s) const {
  if (s >= generator_count()) throw std::out_of_range("generator index out of range");
  switch (kind_) {
    case GroupKind::FreeAbelian: {
      Element e(rank_, 0);
      e[s / 2] = (s % 2 == 0) ? 1 : -1;
      return e;
    }
    case GroupKind::Free:
      return {static_cast<std::int64_t>(s)};
    case GroupKind::IntegerMatrix:
      return gens_[s];
  }
  return {};
}

Element GroupSpec::multiply(const Element& a, const Element& b) const {
  switch (kind_) {
    case GroupKind::FreeAbelian: {
      Element out(rank_);
      for (std::size_t i = 0; i < rank_; ++i) out[i] = checked_add(a[i], b[i]);
      return out;
    }
    case GroupKind::Free: {
      Element out = a;
      for (std::int64_t letter : b) {
        if (!out.empty() && (out.back() ^ 1) == letter) {
          out.pop_back();
        } else {
          out.push_back(letter);
        }
      }
      return out;
    }
    case GroupKind::IntegerMatrix:
      return matrix_product(a, b, dim_);
  }
  return {};
}

Element GroupSpec::inverse(const Element& a) const {
  switch (kind_) {
    case GroupKind::FreeAbelian: {
      Element out(a);
      for (auto& v : out) v = -v;
      return out;
    }
    case GroupKind::Free: {
      Element out(a.rbegin(), a.rend());
      for (auto& v : out) v ^= 1;
      return out;
    }
    case GroupKind::IntegerMatrix: {
      IntMatrix m(dim_, dim_);
      for (std::size_t i = 0; i < dim_ * dim_; ++i) m(i / dim_, i % dim_) = a[i];
      SmithForm s = smith_normal_form(m);
      IntMatrix inv = s.v * s.u;
      Element out(dim_ * dim_);
      for (std::size_t i = 0; i < dim_ * dim_; ++i) out[i] = inv(i / dim_, i % dim_).to_int64();
      return out;
    }
  }
  return {};
}

std::vector<std::size_t> GroupSpec::parse_word(const std::string& word) const {
  std::vector<std::size_t> out;
  for (char ch : word) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    const bool inverse = std::isupper(static_cast<unsigned char>(ch));
    const std::string name(1, static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw ParseError("unknown generator '" + std::string(1, ch) + "' in word '" + word + "'");
    out.push_back(2 * static_cast<std::size_t>(it - names_.begin()) + (inverse ? 1 : 0));
  }
  return out;
}

Element GroupSpec::evaluate(const std::vector<std::size_t>& word) const {
  Element e = identity();
  for (std::size_t s : word) e = multiply(e, generator(s));
  return e;
}

std::string GroupSpec::str(const Element& e) const {
  std::ostringstream os;
  switch (kind_) {
    case GroupKind::Free: {
      if (e.empty()) return "e";
      for (std::int64_t letter : e) {
        char c = names_[static_cast<std::size_t>(letter / 2)][0];
        os << static_cast<char>(letter % 2 ? std::toupper(c) : c);
      }
      return os.str();
    }
    case GroupKind::FreeAbelian:
    case GroupKind::IntegerMatrix: {
      os << '(';
      for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
      os << ')';
      return os.str();
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------------------------

std::int64_t CayleyBall::find(const Element& e) const {
  // Each BFS layer is sorted by canonical form, so search layer by layer.
  std::size_t begin = 0;
  while (begin < elements.size()) {
    std::size_t end = begin;
    while (end < elements.size() && length[end] == length[begin]) ++end;
    auto it = std::lower_bound(elements.begin() + static_cast<std::ptrdiff_t>(begin),
                               elements.begin() + static_cast<std::ptrdiff_t>(end), e);
    if (it != elements.begin() + static_cast<std::ptrdiff_t>(end) && *it == e) return it - elements.begin();
    begin = end;
  }
  return -1;
}

CayleyBall cayley_ball(const GroupSpec& spec, int radius, std::size_t cap) {
  if (radius < 1) throw std::invalid_argument("ball radius must be at least 1");
  CayleyBall ball;
  ball.spec = spec;
  ball.radius = radius;
  std::map<Element, std::uint32_t> index;
  ball.elements.push_back(spec.identity());
  ball.length.push_back(0);
  index.emplace(spec.identity(), 0);
  const std::size_t gens = spec.generator_count();
  std::vector<Element> generators;
  for (std::size_t s = 0; s < gens; ++s) generators.push_back(spec.generator(s));
  std::size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t layer_end = ball.elements.size();
    std::vector<Element> fresh;
    for (std::size_t g = layer_begin; g < layer_end; ++g) {
      for (const Element& s : generators) {
        Element h = spec.multiply(ball.elements[g], s);
        if (!index.count(h)) fresh.push_back(std::move(h));
      }
    }
    std::sort(fresh.begin(), fresh.end());
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
    if (ball.elements.size() + fresh.size() > cap) {
      throw BallTooLarge("ball of radius " + std::to_string(radius) + " exceeds the element cap " +
                         std::to_string(cap) + " (at least " + std::to_string(ball.elements.size() + fresh.size()) +
                         " elements)");
    }
    for (Element& h : fresh) {
      index.emplace(h, static_cast<std::uint32_t>(ball.elements.size()));
      ball.elements.push_back(std::move(h));
      ball.length.push_back(len);
    }
    layer_begin = layer_end;
  }
  ball.right.assign(ball.elements.size(), std::vector<std::int32_t>(gens, -1));
  std::vector<Edge> edges;
  for (std::uint32_t g = 0; g < ball.elements.size(); ++g) {
    for (std::size_t s = 0; s < gens; ++s) {
      auto it = index.find(spec.multiply(ball.elements[g], generators[s]));
      if (it == index.end()) continue;
      ball.right[g][s] = static_cast<std::int32_t>(it->second);
      if (g < it->second) edges.push_back({g, it->second});
    }
  }
  ball.graph = Graph(ball.elements.size(), edges);
  return ball;
}

// ---------------------------------------------------------------------------------------------
// Peripheral subgroups

PeripheralSpec parse_peripheral(const GroupSpec& spec, const std::string& text) {
  PeripheralSpec p;
  p.name = text;
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  for (std::string part : parts) {
    part.erase(std::remove_if(part.begin(), part.end(), [](unsigned char c) { return std::isspace(c); }), part.end());
    if (part.empty()) throw ParseError("empty generator in peripheral '" + text + "'");
    if (part.front() == '[') {
      if (part.back() != ']') throw ParseError("unbalanced commutator in '" + text + "'");
      auto comma = part.find(',');
      if (comma == std::string::npos) throw ParseError("commutator needs two words in '" + text + "'");
      auto u = spec.parse_word(part.substr(1, comma - 1));
      auto v = spec.parse_word(part.substr(comma + 1, part.size() - comma - 2));
      std::vector<std::size_t> w = u;
      w.insert(w.end(), v.begin(), v.end());
      for (auto it = u.rbegin(); it != u.rend(); ++it) w.push_back(*it ^ 1);
      for (auto it = v.rbegin(); it != v.rend(); ++it) w.push_back(*it ^ 1);
      p.words.push_back(std::move(w));
    } else {
      p.words.push_back(spec.parse_word(part));
    }
  }
  // Validate decidability up front.
  coset_key(spec, p, spec.identity());
  return p;
}

namespace {

/// Base generator indices when every word is a single letter; empty optional otherwise.
std::optional<std::vector<std::size_t>> letter_subset(const PeripheralSpec& p) {
  std::vector<std::size_t> out;
  for (const auto& w : p.words) {
    if (w.size() != 1) return std::nullopt;
    out.push_back(w[0] / 2);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Element coset_key(const GroupSpec& spec, const PeripheralSpec& p, const Element& g) {
  switch (spec.kind()) {
    case GroupKind::FreeAbelian: {
      auto subset = letter_subset(p);
      if (!subset) throw UndecidableMembership("free abelian peripherals must be spanned by basis generators");
      if (subset->size() == spec.rank()) throw GIsPeripheral("peripheral subgroup is the whole group");
      Element key = g;
      for (std::size_t j : *subset) key[j] = 0;
      return key;
    }
    case GroupKind::Free: {
      auto subset = letter_subset(p);
      if (!subset) throw UndecidableMembership("free-group peripherals must be generated by a subset of the basis");
      if (subset->size() == spec.rank()) throw GIsPeripheral("peripheral subgroup is the whole group");
      Element key = g;
      while (!key.empty() && std::binary_search(subset->begin(), subset->end(), static_cast<std::size_t>(key.back() / 2)))
        key.pop_back();
      return key;
    }
    case GroupKind::IntegerMatrix: {
      if (!spec.is_heisenberg() || p.words.size() != 1)
        throw UndecidableMembership("matrix peripherals are supported for cyclic subgroups of the Heisenberg group");
      const Element m = spec.evaluate(p.words[0]);
      const std::int64_t a = g[1], b = g[5], c = g[2];
      auto is = [&](std::int64_t ma, std::int64_t mb, std::int64_t mc) {
        return m[1] == ma && m[5] == mb && m[2] == mc;
      };
      if (is(1, 0, 0) || is(-1, 0, 0)) return {b, c};
      if (is(0, 1, 0) || is(0, -1, 0)) return {a, checked_add(c, -checked_mul(a, b))};
      if (is(0, 0, 1) || is(0, 0, -1)) return {a, b};
      throw UndecidableMembership("only <x>, <y> and the centre <[x,y]> are supported Heisenberg peripherals");
    }
  }
  return {};
}

std::vector<std::uint32_t> CosetOrder::members(const CayleyBall& ball, std::size_t entry) const {
  const CosetEntry& e = entries.at(entry);
  std::vector<std::uint32_t> out;
  for (std::uint32_t g = 0; g < ball.size(); ++g)
    if (coset_key(ball.spec, peripherals[e.subgroup], ball.elements[g]) == e.key) out.push_back(g);
  return out;
}

nlohmann::json CosetOrder::to_json(const CayleyBall& ball) const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : entries) {
    out.push_back({{"i", e.index},
                   {"subgroup", peripherals[e.subgroup].name},
                   {"representative", ball.spec.str(ball.elements[e.representative])}});
  }
  return out;
}

CosetOrder coset_order(const CayleyBall& ball, const std::vector<PeripheralSpec>& peripherals,
                       std::size_t max_cosets) {
  if (peripherals.empty()) throw std::invalid_argument("coset order needs at least one peripheral subgroup");
  CosetOrder order;
  order.peripherals = peripherals;
  const std::size_t k = peripherals.size();
  // Per subgroup: cosets in order of first appearance in the ball (BFS layer, canonical form).
  std::vector<std::vector<std::pair<Element, std::uint32_t>>> found(k);
  for (std::size_t r = 0; r < k; ++r) {
    std::map<Element, std::uint32_t> seen;
    for (std::uint32_t g = 0; g < ball.size(); ++g) {
      Element key = coset_key(ball.spec, peripherals[r], ball.elements[g]);
      if (seen.emplace(key, g).second) found[r].emplace_back(std::move(key), g);
    }
  }
  for (std::size_t a = 0;; ++a) {
    for (std::size_t r = 0; r < k; ++r) {
      if (order.entries.size() >= max_cosets || a >= found[r].size()) return order;
      CosetEntry e;
      e.index = order.entries.size() + 1;
      e.subgroup = r;
      e.representative = found[r][a].second;
      e.key = found[r][a].first;
      order.entries.push_back(std::move(e));
    }
  }
}

}  // namespace coarse
