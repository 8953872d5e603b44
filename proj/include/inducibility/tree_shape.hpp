#pragma once

// Unordered rooted binary tree shapes, interned in a content-addressed table.
//
// Every vertex is a leaf or has exactly two children. A shape is stored in
// canonical form: at each node the smaller branch (by leaf count, then by
// encoding string) comes first, so two shapes are isomorphic exactly when
// they are the same interned node.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace inducibility {

inline constexpr std::size_t kDefaultEnumerationLimit = 14;

namespace detail {

struct ShapeNode {
  const ShapeNode* left = nullptr;
  const ShapeNode* right = nullptr;
  std::size_t leaves = 1;
  std::size_t id = 0;
  std::string encoding = "L";
};

inline int compare_nodes(const ShapeNode* a, const ShapeNode* b) {
  if (a == b) return 0;
  if (a->leaves != b->leaves) return a->leaves < b->leaves ? -1 : 1;
  int c = a->encoding.compare(b->encoding);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace detail

/// Interning table. Lookup-or-insert is atomic, so the table can be shared
/// by concurrent constructors. Nodes live as long as the table.
class ShapeTable {
 public:
  ShapeTable() {
    nodes_.emplace_back();  // id 0 is the leaf
  }
  ShapeTable(const ShapeTable&) = delete;
  ShapeTable& operator=(const ShapeTable&) = delete;

  static ShapeTable& global() {
    static ShapeTable table;
    return table;
  }

  const detail::ShapeNode* leaf() const { return &nodes_.front(); }

  const detail::ShapeNode* node(const detail::ShapeNode* a, const detail::ShapeNode* b) {
    if (detail::compare_nodes(a, b) > 0) std::swap(a, b);
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(a, b);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    detail::ShapeNode& n = nodes_.emplace_back();
    n.left = a;
    n.right = b;
    n.leaves = a->leaves + b->leaves;
    n.id = nodes_.size() - 1;
    n.encoding.reserve(a->encoding.size() + b->encoding.size() + 2);
    n.encoding.append("(").append(a->encoding).append(b->encoding).append(")");
    index_.emplace(key, &n);
    return &n;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return nodes_.size();
  }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<const detail::ShapeNode*,
                                           const detail::ShapeNode*>& p) const noexcept {
      std::size_t h = std::hash<const void*>{}(p.first);
      return h ^ (std::hash<const void*>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
  };

  mutable std::mutex mutex_;
  std::deque<detail::ShapeNode> nodes_;
  std::unordered_map<std::pair<const detail::ShapeNode*, const detail::ShapeNode*>,
                     const detail::ShapeNode*, PairHash>
      index_;
};

/// Handle to an interned shape. Cheap to copy; equality is identity.
class Shape {
 public:
  Shape() : node_(ShapeTable::global().leaf()) {}
  explicit Shape(const detail::ShapeNode* node) : node_(node) {}

  static Shape leaf() { return Shape(); }

  bool is_leaf() const { return node_->left == nullptr; }
  /// Smaller branch. Precondition: !is_leaf().
  Shape left() const { return Shape(node_->left); }
  /// Larger (or equal) branch. Precondition: !is_leaf().
  Shape right() const { return Shape(node_->right); }
  std::size_t leaf_count() const { return node_->leaves; }
  /// Canonical order key: "L" or "(" + enc(smaller) + enc(larger) + ")".
  const std::string& encoding() const { return node_->encoding; }
  std::size_t id() const { return node_->id; }
  const detail::ShapeNode* node() const { return node_; }

  friend bool operator==(Shape a, Shape b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(Shape a, Shape b) {
    int c = detail::compare_nodes(a.node_, b.node_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  const detail::ShapeNode* node_;
};

/// Canonical node with branch multiset {a, b}; symmetric in its arguments.
inline Shape make_node(Shape a, Shape b) {
  return Shape(ShapeTable::global().node(a.node(), b.node()));
}

/// Caterpillar C_k: the internal vertices form a path.
inline Shape caterpillar(std::size_t k) {
  if (k == 0) throw InvalidArgument("caterpillar: k must be >= 1");
  Shape t;
  for (std::size_t i = 1; i < k; ++i) t = make_node(Shape::leaf(), t);
  return t;
}

/// Complete binary tree CB_h with 2^h leaves.
inline Shape complete(std::size_t h) {
  Shape t;
  for (std::size_t i = 0; i < h; ++i) t = make_node(t, t);
  return t;
}

namespace detail {
inline Shape even_memo(std::size_t n, std::map<std::size_t, Shape>& memo) {
  if (n == 1) return Shape::leaf();
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Shape t = make_node(even_memo(n / 2, memo), even_memo(n - n / 2, memo));
  memo.emplace(n, t);
  return t;
}
}  // namespace detail

/// Even tree E_n: at every internal vertex the branch sizes differ by at most 1.
inline Shape even(std::size_t n) {
  if (n == 0) throw InvalidArgument("even: n must be >= 1");
  std::map<std::size_t, Shape> memo;
  return detail::even_memo(n, memo);
}

/// The five-leaf tree made of a leaf and a CB_2 hanging off the root.
inline Shape a52() { return make_node(Shape::leaf(), complete(2)); }

/// All pairwise non-isomorphic shapes with n leaves, sorted by the
/// canonical order. Throws LimitExceeded above `limit`.
inline std::vector<Shape> enumerate_shapes(std::size_t n,
                                           std::size_t limit = kDefaultEnumerationLimit) {
  if (n == 0) throw InvalidArgument("enumerate_shapes: n must be >= 1");
  if (n > limit) throw LimitExceeded("shape enumeration", n, limit);
  std::vector<std::vector<Shape>> by_size(n + 1);
  by_size[1] = {Shape::leaf()};
  for (std::size_t m = 2; m <= n; ++m) {
    auto& out = by_size[m];
    for (std::size_t a = 1; a <= m / 2; ++a) {
      const std::size_t b = m - a;
      const auto& small = by_size[a];
      const auto& large = by_size[b];
      for (std::size_t i = 0; i < small.size(); ++i) {
        for (std::size_t j = (a == b ? i : 0); j < large.size(); ++j) {
          out.push_back(make_node(small[i], large[j]));
        }
      }
    }
    std::sort(out.begin(), out.end());
  }
  return by_size[n];
}

/// log2 |A(t)|: the automorphism group of a binary tree has order 2^e.
inline std::size_t automorphism_log2(Shape t) {
  std::unordered_map<std::size_t, std::size_t> memo;
  std::function<std::size_t(Shape)> rec = [&](Shape s) -> std::size_t {
    if (s.is_leaf()) return 0;
    if (auto it = memo.find(s.id()); it != memo.end()) return it->second;
    std::size_t e = s.left() == s.right() ? 2 * rec(s.left()) + 1
                                          : rec(s.left()) + rec(s.right());
    memo.emplace(s.id(), e);
    return e;
  };
  return rec(t);
}

/// |A(t)|: 1 for a leaf, |A(l)||A(r)| for distinct branches, 2|A(l)|^2 for
/// isomorphic ones.
inline BigInt automorphism_order(Shape t) { return pow2(automorphism_log2(t)); }

/// Length of the longest root-to-leaf path.
inline std::size_t height(Shape t) {
  std::unordered_map<std::size_t, std::size_t> memo;
  std::function<std::size_t(Shape)> rec = [&](Shape s) -> std::size_t {
    if (s.is_leaf()) return 0;
    if (auto it = memo.find(s.id()); it != memo.end()) return it->second;
    std::size_t d = 1 + std::max(rec(s.left()), rec(s.right()));
    memo.emplace(s.id(), d);
    return d;
  };
  return rec(t);
}

}  // namespace inducibility

template <>
struct std::hash<inducibility::Shape> {
  std::size_t operator()(inducibility::Shape s) const noexcept {
    return std::hash<const void*>{}(s.node());
  }
};
