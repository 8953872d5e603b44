#pragma once

// Ordered (plane) rooted binary trees with leaves ranked 1..n left to right.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "tree_shape.hpp"

namespace inducibility {

inline constexpr std::size_t kNoChild = static_cast<std::size_t>(-1);

/// Plane binary tree stored in pre-order (root at index 0). Because the
/// layout is a pure function of the structure, two trees are equal exactly
/// when their node arrays are.
class PlaneTree {
 public:
  struct Node {
    std::size_t first = kNoChild;
    std::size_t second = kNoChild;
    std::size_t parent = kNoChild;
    std::size_t rank = 0;  // 1-based for leaves, 0 for internal vertices
    std::size_t depth = 0;
    std::size_t lo = 0;  // leaf ranks below this vertex form [lo, hi]
    std::size_t hi = 0;

    bool is_leaf() const { return first == kNoChild; }
    friend bool operator==(const Node& a, const Node& b) {
      return a.first == b.first && a.second == b.second;
    }
  };

  PlaneTree() { nodes_.push_back(Node{}); finalize(); }

  static PlaneTree leaf() { return PlaneTree(); }

  static PlaneTree join(const PlaneTree& first, const PlaneTree& second) {
    PlaneTree t;
    t.nodes_.clear();
    t.nodes_.push_back(Node{});
    t.append(first, 0);
    t.nodes_[0].first = 1;
    t.nodes_[0].second = t.nodes_.size();
    t.append(second, 0);
    t.finalize();
    return t;
  }

  /// Plane embedding of a shape with the smaller branch first at each vertex.
  static PlaneTree from_shape(Shape s) {
    PlaneTree t;
    t.nodes_.clear();
    std::function<std::size_t(Shape, std::size_t)> build = [&](Shape x, std::size_t parent) {
      std::size_t idx = t.nodes_.size();
      t.nodes_.push_back(Node{});
      t.nodes_[idx].parent = parent;
      if (!x.is_leaf()) {
        std::size_t a = build(x.left(), idx);
        std::size_t b = build(x.right(), idx);
        t.nodes_[idx].first = a;
        t.nodes_[idx].second = b;
      }
      return idx;
    };
    build(s, kNoChild);
    t.finalize();
    return t;
  }

  /// Build from an arbitrary child table: children[v] = {first, second}, or
  /// {kNoChild, kNoChild} for a leaf. Vertex numbering need not be pre-order.
  static PlaneTree from_children(std::size_t root,
                                 std::span<const std::pair<std::size_t, std::size_t>> children) {
    PlaneTree t;
    t.nodes_.clear();
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, kNoChild}};
    // explicit pre-order so deep trees do not recurse
    while (!stack.empty()) {
      auto [v, parent] = stack.back();
      stack.pop_back();
      const std::size_t idx = t.nodes_.size();
      t.nodes_.push_back(Node{});
      t.nodes_[idx].parent = parent;
      if (parent != kNoChild) {
        Node& p = t.nodes_[parent];
        (p.first == kNoChild ? p.first : p.second) = idx;
      }
      const auto [a, b] = children[v];
      if (a != kNoChild) {
        stack.push_back({b, idx});
        stack.push_back({a, idx});
      }
    }
    t.finalize();
    return t;
  }

  std::size_t leaf_count() const { return leaves_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  std::span<const Node> nodes() const { return nodes_; }
  /// Node index of the leaf with the given 1-based rank.
  std::size_t leaf_node(std::size_t rank) const { return leaves_.at(rank - 1); }
  /// Internal vertices in pre-order; a flip bit vector is indexed the same way.
  std::span<const std::size_t> internal_vertices() const { return internals_; }

  /// The tree with children swapped at every internal vertex whose bit is
  /// set. If `rank_map` is given, (*rank_map)[r-1] is the new rank of the
  /// leaf that had rank r.
  PlaneTree flipped(const std::vector<bool>& flips,
                    std::vector<std::size_t>* rank_map = nullptr) const {
    if (flips.size() != internals_.size())
      throw InvalidArgument("flip vector length must equal the number of internal vertices");
    std::vector<bool> at(nodes_.size(), false);
    for (std::size_t i = 0; i < internals_.size(); ++i) at[internals_[i]] = flips[i];
    PlaneTree t;
    t.nodes_.clear();
    std::vector<std::size_t> origin;  // new node -> old node
    std::function<std::size_t(std::size_t, std::size_t)> build = [&](std::size_t v,
                                                                     std::size_t parent) {
      std::size_t idx = t.nodes_.size();
      t.nodes_.push_back(Node{});
      origin.push_back(v);
      t.nodes_[idx].parent = parent;
      const Node& n = nodes_[v];
      if (!n.is_leaf()) {
        std::size_t a = at[v] ? n.second : n.first;
        std::size_t b = at[v] ? n.first : n.second;
        std::size_t x = build(a, idx);
        std::size_t y = build(b, idx);
        t.nodes_[idx].first = x;
        t.nodes_[idx].second = y;
      }
      return idx;
    };
    build(0, kNoChild);
    t.finalize();
    if (rank_map) {
      rank_map->assign(leaf_count(), 0);
      for (std::size_t i = 0; i < t.nodes_.size(); ++i) {
        if (t.nodes_[i].is_leaf()) (*rank_map)[nodes_[origin[i]].rank - 1] = t.nodes_[i].rank;
      }
    }
    return t;
  }

  /// Unordered shape obtained by forgetting child order.
  Shape shape() const { return shape_below(0); }

  Shape shape_below(std::size_t v) const {
    const Node& n = nodes_[v];
    if (n.is_leaf()) return Shape::leaf();
    return make_node(shape_below(n.first), shape_below(n.second));
  }

  /// Plane tree induced by a set of leaf ranks: the smallest subtree
  /// containing them with degree-2 vertices suppressed, leaves renumbered
  /// in their original left-to-right order.
  PlaneTree restrict(std::span<const std::size_t> ranks) const {
    std::vector<bool> keep = membership(ranks);
    std::function<std::optional<PlaneTree>(std::size_t)> rec =
        [&](std::size_t v) -> std::optional<PlaneTree> {
      const Node& n = nodes_[v];
      if (n.is_leaf()) {
        if (keep[n.rank]) return PlaneTree::leaf();
        return std::nullopt;
      }
      auto a = rec(n.first);
      auto b = rec(n.second);
      if (a && b) return PlaneTree::join(*a, *b);
      return a ? a : b;
    };
    return *rec(0);
  }

  /// Text form in the `L` / `(X Y)` grammar, child order preserved.
  std::string to_string() const {
    std::string out;
    out.reserve(4 * nodes_.size());
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
      const Node& n = nodes_[v];
      if (n.is_leaf()) {
        out.push_back('L');
        return;
      }
      out.push_back('(');
      rec(n.first);
      out.push_back(' ');
      rec(n.second);
      out.push_back(')');
    };
    rec(0);
    return out;
  }

  friend bool operator==(const PlaneTree& a, const PlaneTree& b) { return a.nodes_ == b.nodes_; }

  /// Bitmap over ranks 0..n (index 0 unused); validates every rank.
  std::vector<bool> membership(std::span<const std::size_t> ranks) const {
    if (ranks.empty()) throw InvalidArgument("leaf subset must be nonempty");
    std::vector<bool> keep(leaf_count() + 1, false);
    for (std::size_t r : ranks) {
      if (r < 1 || r > leaf_count())
        throw InvalidArgument("invalid leaf rank " + std::to_string(r) + " for a tree with " +
                              std::to_string(leaf_count()) + " leaves");
      if (keep[r]) throw InvalidArgument("duplicate leaf rank " + std::to_string(r));
      keep[r] = true;
    }
    return keep;
  }

 private:
  void append(const PlaneTree& sub, std::size_t parent) {
    const std::size_t offset = nodes_.size();
    for (const Node& n : sub.nodes_) {
      Node c = n;
      if (!c.is_leaf()) {
        c.first += offset;
        c.second += offset;
      }
      c.parent = c.parent == kNoChild ? parent : c.parent + offset;
      nodes_.push_back(c);
    }
  }

  void finalize() {
    leaves_.clear();
    internals_.clear();
    // pre-order layout means children follow parents
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      Node& n = nodes_[i];
      n.depth = n.parent == kNoChild ? 0 : nodes_[n.parent].depth + 1;
      if (n.is_leaf()) {
        leaves_.push_back(i);
        n.rank = leaves_.size();
        n.lo = n.hi = n.rank;
      } else {
        n.rank = 0;
        internals_.push_back(i);
      }
    }
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      Node& n = nodes_[i];
      if (!n.is_leaf()) {
        n.lo = nodes_[n.first].lo;
        n.hi = nodes_[n.second].hi;
      }
    }
  }

  std::vector<Node> nodes_;
  std::vector<std::size_t> leaves_;
  std::vector<std::size_t> internals_;
};

/// Canonical shape induced by a set of leaf ranks of `host`.
inline Shape induce(const PlaneTree& host, std::span<const std::size_t> ranks) {
  std::vector<bool> keep = host.membership(ranks);
  std::function<std::optional<Shape>(std::size_t)> rec =
      [&](std::size_t v) -> std::optional<Shape> {
    const auto& n = host.node(v);
    if (n.is_leaf()) {
      if (keep[n.rank]) return Shape::leaf();
      return std::nullopt;
    }
    // subtrees without selected leaves are skipped wholesale
    bool any_first = false, any_second = false;
    for (std::size_t r : ranks) {
      const auto& a = host.node(n.first);
      const auto& b = host.node(n.second);
      if (r >= a.lo && r <= a.hi) any_first = true;
      if (r >= b.lo && r <= b.hi) any_second = true;
    }
    std::optional<Shape> a = any_first ? rec(n.first) : std::nullopt;
    std::optional<Shape> b = any_second ? rec(n.second) : std::nullopt;
    if (a && b) return make_node(*a, *b);
    return a ? a : b;
  };
  return *rec(0);
}

/// Depth of the lowest common ancestor of every pair of leaves, as an n x n
/// row-major table indexed by 0-based ranks. The diagonal holds leaf depths.
inline std::vector<std::uint32_t> lca_depth_table(const PlaneTree& t) {
  const std::size_t n = t.leaf_count();
  std::vector<std::uint32_t> table(n * n, 0);
  for (const auto& v : t.nodes()) {
    if (v.is_leaf()) {
      table[(v.rank - 1) * n + (v.rank - 1)] = static_cast<std::uint32_t>(v.depth);
      continue;
    }
    const auto& a = t.node(v.first);
    const auto& b = t.node(v.second);
    for (std::size_t x = a.lo; x <= a.hi; ++x) {
      for (std::size_t y = b.lo; y <= b.hi; ++y) {
        table[(x - 1) * n + (y - 1)] = static_cast<std::uint32_t>(v.depth);
        table[(y - 1) * n + (x - 1)] = static_cast<std::uint32_t>(v.depth);
      }
    }
  }
  return table;
}

}  // namespace inducibility
