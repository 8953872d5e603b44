#pragma once

// Tanglegrams: two plane binary trees with a perfect matching between their
// leaves, taken up to flips (swapping the children of internal vertices).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "plane_tree.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "tree_shape.hpp"
#include "tree_text.hpp"

namespace inducibility {

inline constexpr std::size_t kCrossingExactLimit = 10;
inline constexpr std::size_t kCrossingBruteforceLimit = 8;
inline constexpr std::size_t kCanonicalLimit = 6;
inline constexpr std::size_t kTanglegramEnumerationLimit = 5;
inline constexpr std::size_t kAutomorphismLimit = 12;
inline constexpr std::size_t kPlaneEnumerationLimit = 12;
inline constexpr std::size_t kNo6Limit = 512;

/// One bit per internal vertex of each tree, in pre-order.
struct FlipAssignment {
  std::vector<bool> left_flips;
  std::vector<bool> right_flips;
};

/// Bit vector of length `len` from the low bits of `mask`.
inline std::vector<bool> flip_bits(std::uint64_t mask, std::size_t len) {
  std::vector<bool> bits(len);
  for (std::size_t i = 0; i < len; ++i) bits[i] = (mask >> i) & 1U;
  return bits;
}

class Tanglegram {
 public:
  /// sigma[i-1] is the right rank matched to left rank i.
  Tanglegram(PlaneTree left, PlaneTree right, std::vector<std::size_t> sigma)
      : left_(std::move(left)), right_(std::move(right)), sigma_(std::move(sigma)) {
    const std::size_t n = left_.leaf_count();
    if (right_.leaf_count() != n)
      throw InvalidArgument("tanglegram trees must have the same number of leaves");
    if (sigma_.size() != n)
      throw InvalidArgument("matching must have one image per leaf (expected " +
                            std::to_string(n) + ", got " + std::to_string(sigma_.size()) + ")");
    std::vector<bool> seen(n + 1, false);
    for (std::size_t s : sigma_) {
      if (s < 1 || s > n || seen[s])
        throw InvalidArgument("matching is not a permutation of 1.." + std::to_string(n));
      seen[s] = true;
    }
  }

  /// `<left>|<right>|<s1,...,sn>`.
  static Tanglegram parse(std::string_view text) {
    const std::size_t p1 = text.find('|');
    const std::size_t p2 = p1 == std::string_view::npos ? p1 : text.find('|', p1 + 1);
    if (p2 == std::string_view::npos)
      throw ParseError("tanglegram needs three '|'-separated fields", text.size());
    auto tree_at = [&](std::size_t start, std::size_t end) {
      try {
        return parse_plane_tree(text.substr(start, end - start));
      } catch (const ParseError& e) {
        throw ParseError(std::string("in tanglegram tree: ") + strip_position(e.what()),
                         start + e.position());
      }
    };
    PlaneTree left = tree_at(0, p1);
    PlaneTree right = tree_at(p1 + 1, p2);
    std::vector<std::size_t> sigma;
    std::size_t pos = p2 + 1;
    while (true) {
      const std::size_t start = pos;
      std::size_t value = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (value > (std::size_t{1} << 40)) throw ParseError("matching value too large", start);
        ++pos;
      }
      if (pos == start) throw ParseError("expected a positive integer", pos);
      sigma.push_back(value);
      if (pos == text.size()) break;
      if (text[pos] != ',') throw ParseError("expected ',' in matching", pos);
      ++pos;
    }
    try {
      return Tanglegram(std::move(left), std::move(right), std::move(sigma));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), p2 + 1);
    }
  }

  std::size_t size() const { return sigma_.size(); }
  const PlaneTree& left() const { return left_; }
  const PlaneTree& right() const { return right_; }
  std::span<const std::size_t> sigma() const { return sigma_; }

  std::string to_string() const {
    std::string out = left_.to_string();
    out.push_back('|');
    out += right_.to_string();
    out.push_back('|');
    for (std::size_t i = 0; i < sigma_.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(sigma_[i]);
    }
    return out;
  }

  /// Same tanglegram, different layout: both trees flipped, matching carried along.
  Tanglegram apply(const FlipAssignment& f) const {
    std::vector<std::size_t> lmap, rmap;
    PlaneTree l = left_.flipped(f.left_flips, &lmap);
    PlaneTree r = right_.flipped(f.right_flips, &rmap);
    std::vector<std::size_t> s(sigma_.size());
    for (std::size_t i = 0; i < sigma_.size(); ++i) s[lmap[i] - 1] = rmap[sigma_[i] - 1];
    return Tanglegram(std::move(l), std::move(r), std::move(s));
  }

  friend bool operator==(const Tanglegram& a, const Tanglegram& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.sigma_ == b.sigma_;
  }

 private:
  static std::string strip_position(const std::string& what) {
    const auto at = what.rfind(" at position ");
    return at == std::string::npos ? what : what.substr(0, at);
  }

  PlaneTree left_;
  PlaneTree right_;
  std::vector<std::size_t> sigma_;
};

/// Uniform plane binary tree with n leaves (Remy's insertion: every step
/// picks one of the 2m-1 current vertices and a side for the new leaf).
inline PlaneTree random_plane_tree(std::size_t n, Rng& rng) {
  if (n < 1) throw InvalidArgument("random_plane_tree: n must be >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> children{{kNoChild, kNoChild}};
  std::vector<std::size_t> parent{kNoChild};
  children.reserve(2 * n - 1);
  parent.reserve(2 * n - 1);
  std::size_t root = 0;
  for (std::size_t m = 1; m < n; ++m) {
    const std::size_t x = rng.below(children.size());
    const std::size_t leaf = children.size();
    const std::size_t inner = leaf + 1;
    children.push_back({kNoChild, kNoChild});
    parent.push_back(inner);
    children.push_back(rng.coin() ? std::pair{x, leaf} : std::pair{leaf, x});
    parent.push_back(parent[x]);
    if (parent[x] == kNoChild) {
      root = inner;
    } else {
      auto& pc = children[parent[x]];
      (pc.first == x ? pc.first : pc.second) = inner;
    }
    parent[x] = inner;
  }
  return PlaneTree::from_children(root, children);
}

/// Uniform over the C_{n-1}^2 n! layouts (not over tanglegrams).
inline Tanglegram random_tanglegram_layout(std::size_t n, Rng& rng) {
  PlaneTree left = random_plane_tree(n, rng);
  PlaneTree right = random_plane_tree(n, rng);
  std::vector<std::size_t> sigma = random_permutation(n, rng);
  return Tanglegram(std::move(left), std::move(right), std::move(sigma));
}

/// Pairs i < j with p[i] > p[j], by a Fenwick tree over values 1..n.
inline std::uint64_t count_inversions(std::span<const std::size_t> p) {
  const std::size_t n = p.size();
  std::vector<std::uint32_t> bit(n + 1, 0);
  std::uint64_t inv = 0;
  for (std::size_t i = n; i-- > 0;) {
    // values already inserted are to the right; count those smaller than p[i]
    for (std::size_t v = p[i] - 1; v > 0; v -= v & (~v + 1)) inv += bit[v];
    for (std::size_t v = p[i]; v <= n; v += v & (~v + 1)) ++bit[v];
  }
  return inv;
}

/// Crossing pairs of matching edges in this layout.
inline std::uint64_t layout_crossings(const Tanglegram& t) { return count_inversions(t.sigma()); }

struct CrossingResult {
  std::uint64_t crossings = 0;
  FlipAssignment flips;  // a layout attaining the minimum
};

/// Crt by exhaustive search over left flips. For fixed left flips the right
/// tree's vertices decide disjoint sets of leaf pairs (those separated at
/// that vertex), so each right flip is chosen independently.
inline CrossingResult tangle_crossing_exact(const Tanglegram& t,
                                            std::size_t limit = kCrossingExactLimit) {
  const std::size_t n = t.size();
  if (n > limit) throw LimitExceeded("exact crossing number size", n, limit);
  const PlaneTree& L = t.left();
  const PlaneTree& R = t.right();
  std::vector<std::size_t> partner(n + 1);  // right rank -> left rank
  for (std::size_t i = 0; i < n; ++i) partner[t.sigma()[i]] = i + 1;
  std::vector<std::size_t> internal_index(L.node_count(), kNoChild);
  for (std::size_t i = 0; i < L.internal_vertices().size(); ++i)
    internal_index[L.internal_vertices()[i]] = i;

  const std::size_t m = n - 1;
  CrossingResult best;
  best.crossings = UINT64_MAX;
  std::vector<std::size_t> pos(n + 1);  // left rank -> position after flips
  std::vector<std::size_t> q(n + 1);    // right rank -> position of its partner
  std::vector<std::size_t> stack;
  std::vector<bool> right_flips(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::size_t next = 0;
    stack.assign(1, 0);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      const auto& node = L.node(v);
      if (node.is_leaf()) {
        pos[node.rank] = next++;
        continue;
      }
      const bool f = (mask >> internal_index[v]) & 1U;
      stack.push_back(f ? node.first : node.second);
      stack.push_back(f ? node.second : node.first);
    }
    for (std::size_t r = 1; r <= n; ++r) q[r] = pos[partner[r]];
    std::uint64_t total = 0;
    bool pruned = false;
    for (std::size_t k = 0; k < m; ++k) {
      const auto& v = R.node(R.internal_vertices()[k]);
      const auto& a = R.node(v.first);
      const auto& b = R.node(v.second);
      std::uint64_t inv = 0;
      for (std::size_t x = a.lo; x <= a.hi; ++x)
        for (std::size_t y = b.lo; y <= b.hi; ++y) inv += q[x] > q[y];
      const std::uint64_t pairs = (a.hi - a.lo + 1) * (b.hi - b.lo + 1);
      right_flips[k] = pairs - inv < inv;
      total += std::min(inv, pairs - inv);
      if (total >= best.crossings) {
        pruned = true;
        break;
      }
    }
    if (!pruned) {
      best.crossings = total;
      best.flips = FlipAssignment{flip_bits(mask, m), right_flips};
      if (total == 0) break;
    }
  }
  return best;
}

/// Crt by trying every one of the 2^{2(n-1)} layouts. Test oracle.
inline std::uint64_t tangle_crossing_bruteforce(const Tanglegram& t,
                                                std::size_t limit = kCrossingBruteforceLimit) {
  const std::size_t n = t.size();
  if (n > limit) throw LimitExceeded("brute-force crossing number size", n, limit);
  const std::size_t m = n - 1;
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a)
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b)
      best = std::min(best, layout_crossings(t.apply({flip_bits(a, m), flip_bits(b, m)})));
  return best;
}

/// All plane binary trees with n leaves (C_{n-1} of them).
inline std::vector<PlaneTree> enumerate_plane_trees(std::size_t n,
                                                    std::size_t limit = kPlaneEnumerationLimit) {
  if (n < 1) throw InvalidArgument("enumerate_plane_trees: n must be >= 1");
  if (n > limit) throw LimitExceeded("plane tree enumeration", n, limit);
  std::vector<std::vector<PlaneTree>> by_size(n + 1);
  by_size[1] = {PlaneTree::leaf()};
  for (std::size_t s = 2; s <= n; ++s)
    for (std::size_t a = 1; a < s; ++a)
      for (const auto& x : by_size[a])
        for (const auto& y : by_size[s - a]) by_size[s].push_back(PlaneTree::join(x, y));
  return by_size[n];
}

/// Every layout of t (2^{2(n-1)} flip assignments, with repeats when t has
/// automorphisms).
inline std::vector<Tanglegram> layouts_of(const Tanglegram& t, std::size_t limit = kCanonicalLimit) {
  const std::size_t n = t.size();
  if (n > limit) throw LimitExceeded("layout enumeration size", n, limit);
  const std::size_t m = n - 1;
  std::vector<Tanglegram> out;
  out.reserve(std::size_t{1} << (2 * m));
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a)
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); ++b)
      out.push_back(t.apply({flip_bits(a, m), flip_bits(b, m)}));
  return out;
}

/// Lexicographically least text encoding over all layouts; two layouts
/// represent the same tanglegram exactly when these agree.
inline std::string canonical_encoding(const Tanglegram& t, std::size_t limit = kCanonicalLimit) {
  std::string best;
  for (const auto& l : layouts_of(t, limit)) {
    std::string s = l.to_string();
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

/// One representative per tanglegram of size n, each in canonical form,
/// sorted by encoding.
inline std::vector<Tanglegram> enumerate_tanglegrams(
    std::size_t n, std::size_t limit = kTanglegramEnumerationLimit) {
  if (n < 1) throw InvalidArgument("enumerate_tanglegrams: n must be >= 1");
  if (n > limit) throw LimitExceeded("tanglegram enumeration size", n, limit);
  const auto trees = enumerate_plane_trees(n);
  std::vector<std::size_t> sigma(n);
  std::unordered_set<std::string> seen;
  std::vector<std::string> classes;
  for (const auto& l : trees) {
    for (const auto& r : trees) {
      for (std::size_t i = 0; i < n; ++i) sigma[i] = i + 1;
      do {
        Tanglegram t(l, r, sigma);
        if (seen.count(t.to_string())) continue;
        // mark the whole orbit; its least encoding names the class
        std::string least;
        for (const auto& x : layouts_of(t, limit)) {
          std::string s = x.to_string();
          if (least.empty() || s < least) least = s;
          seen.insert(std::move(s));
        }
        classes.push_back(std::move(least));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  }
  std::sort(classes.begin(), classes.end());
  std::vector<Tanglegram> out;
  out.reserve(classes.size());
  for (const auto& c : classes) out.push_back(Tanglegram::parse(c));
  return out;
}

/// Leaf maps (old rank -> new rank) of the flip assignments that leave the
/// plane tree unchanged.
inline std::vector<std::vector<std::size_t>> automorphism_leaf_maps(
    const PlaneTree& t, std::size_t limit = kAutomorphismLimit) {
  const std::size_t n = t.leaf_count();
  if (n > limit) throw LimitExceeded("automorphism search size", n, limit);
  const std::size_t m = n - 1;
  std::vector<std::vector<std::size_t>> maps;
  std::vector<std::size_t> map;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (t.flipped(flip_bits(mask, m), &map) == t) maps.push_back(map);
  }
  return maps;
}

/// |A(T)|: flip pairs (alpha, beta) fixing the layout, i.e. tree
/// automorphisms with beta o sigma = sigma o alpha on leaves.
inline std::uint64_t tanglegram_automorphism_order(const Tanglegram& t,
                                                   std::size_t limit = kAutomorphismLimit) {
  const std::size_t n = t.size();
  const auto left_maps = automorphism_leaf_maps(t.left(), limit);
  const auto right_maps = automorphism_leaf_maps(t.right(), limit);
  const std::set<std::vector<std::size_t>> right_set(right_maps.begin(), right_maps.end());
  std::vector<std::size_t> inverse(n + 1);
  for (std::size_t i = 0; i < n; ++i) inverse[t.sigma()[i]] = i + 1;
  std::uint64_t count = 0;
  std::vector<std::size_t> beta(n);
  for (const auto& alpha : left_maps) {
    for (std::size_t r = 1; r <= n; ++r) beta[r - 1] = t.sigma()[alpha[inverse[r] - 1] - 1];
    count += right_set.count(beta);
  }
  return count;
}

struct Size4Class {
  std::string canonical;
  std::string pair_type;  // "C4/C4", "C4/CB2", "CB2/C4" or "CB2/CB2"
  std::uint64_t crossing_number = 0;
  bool is_no6 = false;
  bool is_no13 = false;
};

inline Size4Class classify_size4(const Tanglegram& t) {
  if (t.size() != 4)
    throw InvalidArgument("classify_size4: tanglegram must have 4 leaves, got " +
                          std::to_string(t.size()));
  auto type = [](const PlaneTree& p) { return p.shape() == caterpillar(4) ? "C4" : "CB2"; };
  Size4Class c;
  c.canonical = canonical_encoding(t);
  c.pair_type = std::string(type(t.left())) + "/" + type(t.right());
  c.crossing_number = tangle_crossing_exact(t).crossings;
  c.is_no6 = c.pair_type == "C4/C4" && c.crossing_number == 1;
  c.is_no13 = c.pair_type == "CB2/CB2" && c.crossing_number == 1;
  return c;
}

/// 4-subsets of leaf ranks inducing C_4, each sorted, in lexicographic order.
inline std::vector<std::array<std::size_t, 4>> c4_quadruples(const PlaneTree& t) {
  const std::size_t n = t.leaf_count();
  if (n < 4) throw InvalidArgument("c4_quadruples: tree must have at least 4 leaves");
  const auto lca = lca_depth_table(t);
  std::vector<std::array<std::size_t, 4>> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const auto d1 = lca[a * n + b], d2 = lca[b * n + c], d3 = lca[c * n + d];
          if (d2 < d1 && d2 < d3) continue;  // split ab|cd: a cherry pair
          out.push_back({a + 1, b + 1, c + 1, d + 1});
        }
  return out;
}

/// The 4-leaf tanglegram induced by left leaves U (and their partners).
inline Tanglegram induced_tanglegram(const Tanglegram& t, std::span<const std::size_t> ranks) {
  std::vector<std::size_t> u(ranks.begin(), ranks.end());
  std::sort(u.begin(), u.end());
  std::vector<std::size_t> v;
  for (std::size_t x : u) v.push_back(t.sigma()[x - 1]);
  std::vector<std::size_t> sorted_v = v;
  std::sort(sorted_v.begin(), sorted_v.end());
  std::vector<std::size_t> sigma;
  for (std::size_t y : v)
    sigma.push_back(std::lower_bound(sorted_v.begin(), sorted_v.end(), y) - sorted_v.begin() + 1);
  return Tanglegram(t.left().restrict(u), t.right().restrict(sorted_v), std::move(sigma));
}

namespace detail {

// Which of the five 4-leaf plane trees leaves a<b<c<d induce, from the depths
// of lca(a,b), lca(b,c), lca(c,d). The root of the induced tree is the
// strict minimum; code = 2 * (which) + (shape of the 3-leaf side).
inline unsigned plane4_code(std::uint32_t d1, std::uint32_t d2, std::uint32_t d3) {
  if (d1 < d2 && d1 <= d3) return d2 < d3 ? 0 : 1;  // a | bcd
  if (d3 < d2) return d1 < d2 ? 4 : 5;              // abc | d
  return 2;                                         // ab | cd
}

inline const std::array<const char*, 6> kPlane4Text = {
    "(L (L (L L)))", "(L ((L L) L))", "((L L) (L L))", "", "((L (L L)) L)", "(((L L) L) L)"};

inline unsigned lehmer4(const std::array<unsigned, 4>& p) {
  static constexpr unsigned fact[4] = {6, 2, 1, 0};
  unsigned idx = 0;
  for (unsigned i = 0; i < 3; ++i) {
    unsigned smaller = 0;
    for (unsigned j = i + 1; j < 4; ++j) smaller += p[j] < p[i];
    idx += smaller * fact[i];
  }
  return idx;
}

// no6[left code][right code][lehmer index of the induced matching]
inline const std::array<std::array<std::array<bool, 24>, 6>, 6>& no6_table() {
  static const auto table = [] {
    std::array<std::array<std::array<bool, 24>, 6>, 6> tbl{};
    for (unsigned cl : {0U, 1U, 4U, 5U}) {
      for (unsigned cr : {0U, 1U, 4U, 5U}) {
        std::array<unsigned, 4> p = {0, 1, 2, 3};
        do {
          std::vector<std::size_t> sigma(p.begin(), p.end());
          for (auto& s : sigma) ++s;
          Tanglegram t(parse_plane_tree(kPlane4Text[cl]), parse_plane_tree(kPlane4Text[cr]), sigma);
          tbl[cl][cr][lehmer4(p)] = classify_size4(t).is_no6;
        } while (std::next_permutation(p.begin(), p.end()));
      }
    }
    return tbl;
  }();
  return table;
}

}  // namespace detail

/// Number of 4-subsets U of left leaves that, with sigma(U), induce tanglegram
/// No. 6 (two C_4's with crossing number 1). Leaf sets are classified from
/// lca depth tables, so no trees are materialized.
inline std::uint64_t no6_count(const Tanglegram& t, std::size_t limit = kNo6Limit) {
  const std::size_t n = t.size();
  if (n > limit) throw LimitExceeded("No. 6 bound size", n, limit);
  if (n < 4) return 0;
  const auto& table = detail::no6_table();
  const auto L = lca_depth_table(t.left());
  const auto R = lca_depth_table(t.right());
  std::vector<std::size_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = t.sigma()[i] - 1;
  std::uint64_t count = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto d1 = L[a * n + b];
      for (std::size_t c = b + 1; c < n; ++c) {
        const auto d2 = L[b * n + c];
        for (std::size_t d = c + 1; d < n; ++d) {
          const unsigned cl = detail::plane4_code(d1, d2, L[c * n + d]);
          if (cl == 2) continue;
          const std::array<std::size_t, 4> img = {s[a], s[b], s[c], s[d]};
          std::array<unsigned, 4> p{};
          std::array<std::size_t, 4> v{};
          for (unsigned i = 0; i < 4; ++i) {
            unsigned r = 0;
            for (unsigned j = 0; j < 4; ++j) r += img[j] < img[i];
            p[i] = r;
            v[r] = img[i];
          }
          const unsigned cr =
              detail::plane4_code(R[v[0] * n + v[1]], R[v[1] * n + v[2]], R[v[2] * n + v[3]]);
          if (cr == 2) continue;
          count += table[cl][cr][detail::lehmer4(p)];
        }
      }
    }
  }
  return count;
}

/// Same count by restricting both trees to every 4-subset. Test oracle.
inline std::uint64_t no6_count_slow(const Tanglegram& t) {
  const std::size_t n = t.size();
  std::uint64_t count = 0;
  std::array<std::size_t, 4> u{};
  for (u[0] = 1; u[0] <= n; ++u[0])
    for (u[1] = u[0] + 1; u[1] <= n; ++u[1])
      for (u[2] = u[1] + 1; u[2] <= n; ++u[2])
        for (u[3] = u[2] + 1; u[3] <= n; ++u[3])
          count += classify_size4(induced_tanglegram(t, u)).is_no6;
  return count;
}

/// Lower bound on Crt: each crossing lies in at most C(n-2, 2) No. 6 copies.
inline BigRational no6_lower_bound(const Tanglegram& t, std::size_t limit = kNo6Limit) {
  const std::size_t n = t.size();
  if (n < 4) throw InvalidArgument("no6_lower_bound: tanglegram must have at least 4 leaves");
  return BigRational(BigInt(static_cast<unsigned long>(no6_count(t, limit))), binomial(n - 2, 2));
}

}  // namespace inducibility
