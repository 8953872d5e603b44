#pragma once

// Maximizing gamma(B, .) over hosts with n leaves: exhaustively for small n,
// and by beam search plus local search beyond that.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "counting.hpp"
#include "errors.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "tree_shape.hpp"

namespace inducibility {

struct SearchConfig {
  std::size_t exact_limit = kDefaultEnumerationLimit;
  std::size_t beam_width = 64;
  std::size_t restarts = 32;
  std::size_t local_moves = 2000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  void validate() const {
    if (exact_limit == 0 || beam_width == 0 || restarts == 0 || local_moves == 0 || jobs == 0)
      throw InvalidArgument("search configuration values must be positive");
  }
};

enum class SearchMethod { exact, heuristic };

inline std::string_view to_string(SearchMethod m) {
  return m == SearchMethod::exact ? "exact" : "heuristic";
}

struct ExtremalReport {
  Shape pattern;
  std::size_t n = 0;
  BigRational best_value;
  std::vector<Shape> argmax;  // for exact reports, every maximizer
  SearchMethod method = SearchMethod::exact;
  std::optional<BigRational> gap_to_limit;  // i(B) - best_value when i(B) is known
  std::uint64_t seed = 0;
};

/// i(B) where it is known in closed form: 1 for caterpillars, r! c_r for
/// even trees.
inline std::optional<BigRational> known_inducibility(Shape pattern) {
  const std::size_t k = pattern.leaf_count();
  if (pattern == caterpillar(k)) return BigRational(1);
  if (pattern == even(k)) return even_inducibility(k);
  return std::nullopt;
}

/// Full enumeration over all shapes with n leaves.
inline ExtremalReport max_gamma_exact(Shape pattern, std::size_t n, const SearchConfig& cfg = {}) {
  cfg.validate();
  if (n < pattern.leaf_count())
    throw InvalidArgument("max_gamma_exact: n must be at least the pattern size");
  const std::vector<Shape> hosts = enumerate_shapes(n, cfg.exact_limit);
  std::vector<BigInt> counts(hosts.size());
  const std::size_t chunks = std::min(cfg.jobs, hosts.size());
  parallel_for(chunks, cfg.jobs, [&](std::size_t c) {
    InducedCounter counter(pattern);
    for (std::size_t i = c; i < hosts.size(); i += chunks) counts[i] = counter.count(hosts[i]);
  });
  const BigInt best = *std::max_element(counts.begin(), counts.end());
  ExtremalReport r;
  r.pattern = pattern;
  r.n = n;
  r.method = SearchMethod::exact;
  r.seed = cfg.seed;
  r.best_value = BigRational(best, binomial(n, pattern.leaf_count()));
  for (std::size_t i = 0; i < hosts.size(); ++i)
    if (counts[i] == best) r.argmax.push_back(hosts[i]);
  if (auto limit = known_inducibility(pattern)) r.gap_to_limit = *limit - r.best_value;
  return r;
}

namespace detail {

inline double binomial_d(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// Mutable binary tree used by the local search. Node 0..size-1, parent -1
/// at the root.
class MutableTree {
 public:
  struct Node {
    int parent = -1;
    int child[2] = {-1, -1};
    bool is_leaf() const { return child[0] < 0; }
  };

  static MutableTree from_shape(Shape s) {
    MutableTree t;
    std::function<int(Shape, int)> build = [&](Shape x, int parent) {
      const int idx = static_cast<int>(t.nodes_.size());
      t.nodes_.push_back(Node{parent, {-1, -1}});
      if (!x.is_leaf()) {
        const int a = build(x.left(), idx);
        const int b = build(x.right(), idx);
        t.nodes_[idx].child[0] = a;
        t.nodes_[idx].child[1] = b;
      }
      return idx;
    };
    t.root_ = build(s, -1);
    return t;
  }

  /// Uniform random shape growth: each new leaf is attached above a node
  /// chosen uniformly among the existing ones.
  static MutableTree random(std::size_t n, Rng& rng) {
    MutableTree t;
    t.nodes_.push_back(Node{});
    t.root_ = 0;
    for (std::size_t m = 1; m < n; ++m) {
      const int target = static_cast<int>(rng.below(t.nodes_.size()));
      const int leaf = static_cast<int>(t.nodes_.size());
      t.nodes_.push_back(Node{});
      const int inner = static_cast<int>(t.nodes_.size());
      t.nodes_.push_back(Node{});
      t.insert_above(target, inner, leaf);
    }
    return t;
  }

  Shape to_shape() const {
    std::function<Shape(int)> rec = [&](int v) -> Shape {
      const Node& n = nodes_[v];
      if (n.is_leaf()) return Shape::leaf();
      return make_node(rec(n.child[0]), rec(n.child[1]));
    };
    return rec(root_);
  }

  /// Count vector of the whole tree (doubles), written into `scratch`.
  double evaluate(const PatternTable& table, std::vector<double>& scratch) const {
    const std::size_t m = table.size();
    scratch.assign(nodes_.size() * m, 0.0);
    order_.clear();
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      order_.push_back(v);
      if (!nodes_[v].is_leaf()) {
        stack.push_back(nodes_[v].child[0]);
        stack.push_back(nodes_[v].child[1]);
      }
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const int v = *it;
      std::span<double> out(scratch.data() + v * m, m);
      if (nodes_[v].is_leaf()) {
        out[0] = 1.0;
        continue;
      }
      const int a = nodes_[v].child[0];
      const int b = nodes_[v].child[1];
      combine_counts<double>(table, std::span<const double>(scratch.data() + a * m, m),
                             std::span<const double>(scratch.data() + b * m, m), out);
    }
    return scratch[root_ * m + m - 1];
  }

  /// Prune a random subtree and regraft it above a random remaining node.
  void regraft(Rng& rng) {
    if (nodes_.size() < 5) return;
    int s;
    do {
      s = static_cast<int>(rng.below(nodes_.size()));
    } while (s == root_);
    const int p = nodes_[s].parent;
    const int sib = nodes_[p].child[0] == s ? nodes_[p].child[1] : nodes_[p].child[0];
    const int g = nodes_[p].parent;
    if (g < 0) {
      root_ = sib;
      nodes_[sib].parent = -1;
    } else {
      replace_child(g, p, sib);
      nodes_[sib].parent = g;
    }
    // collect the remaining tree; p and the subtree of s are detached
    std::vector<int> remaining;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      remaining.push_back(v);
      if (!nodes_[v].is_leaf()) {
        stack.push_back(nodes_[v].child[0]);
        stack.push_back(nodes_[v].child[1]);
      }
    }
    const int t = remaining[rng.below(remaining.size())];
    nodes_[p].child[0] = nodes_[p].child[1] = -1;
    insert_above(t, p, s);
  }

  /// Exchange two disjoint subtrees.
  void swap_subtrees(Rng& rng) {
    if (nodes_.size() < 5) return;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const int u = static_cast<int>(rng.below(nodes_.size()));
      const int v = static_cast<int>(rng.below(nodes_.size()));
      if (u == root_ || v == root_ || u == v) continue;
      if (is_ancestor(u, v) || is_ancestor(v, u)) continue;
      const int pu = nodes_[u].parent;
      const int pv = nodes_[v].parent;
      if (pu == pv) continue;  // siblings: same unordered tree
      replace_child(pu, u, v);
      replace_child(pv, v, u);
      nodes_[u].parent = pv;
      nodes_[v].parent = pu;
      return;
    }
  }

 private:
  void replace_child(int parent, int from, int to) {
    auto& c = nodes_[parent].child;
    (c[0] == from ? c[0] : c[1]) = to;
  }

  /// Makes `inner` the parent of `target` and `extra`, in target's place.
  void insert_above(int target, int inner, int extra) {
    const int tp = nodes_[target].parent;
    nodes_[inner].child[0] = target;
    nodes_[inner].child[1] = extra;
    nodes_[inner].parent = tp;
    nodes_[target].parent = inner;
    nodes_[extra].parent = inner;
    if (tp < 0) {
      root_ = inner;
    } else {
      replace_child(tp, target, inner);
    }
  }

  bool is_ancestor(int a, int v) const {
    for (int x = nodes_[v].parent; x >= 0; x = nodes_[x].parent)
      if (x == a) return true;
    return false;
  }

  std::vector<Node> nodes_;
  int root_ = 0;
  mutable std::vector<int> order_;
};

// One level of the beam: candidate hosts with a fixed leaf count.
struct BeamLevel {
  std::vector<double> counts;  // row-major, one row of table.size() per candidate
  struct Link {
    std::size_t left_size = 0;  // 0 for the single leaf
    std::uint32_t left = 0;
    std::uint32_t right = 0;
  };
  std::vector<Link> links;
  std::size_t size() const { return links.size(); }
};

class BeamSearch {
 public:
  BeamSearch(const PatternTable& table, std::size_t width) : table_(table), width_(width) {
    const std::size_t m = table.size();
    for (std::size_t i = 0; i + 1 < m; ++i)
      if (table[i].shape.leaf_count() >= 4) aux_.push_back(i);
    // Cells per auxiliary dimension, so that the grid has about 4 * width cells.
    const double cells = 4.0 * static_cast<double>(width);
    grid_ = aux_.empty() ? 1
                         : std::max<std::size_t>(
                               2, static_cast<std::size_t>(std::floor(std::pow(
                                      cells, 1.0 / static_cast<double>(aux_.size())))));
  }

  void run(std::size_t n) {
    const std::size_t m = table_.size();
    levels_.assign(n + 1, BeamLevel{});
    levels_[1].counts = leaf_counts<double>(table_);
    levels_[1].links.push_back({});
    std::vector<double> scratch(m);
    for (std::size_t s = 2; s <= n; ++s) {
      cells_.clear();
      for (std::size_t a = 1; a <= s / 2; ++a) {
        const std::size_t b = s - a;
        const BeamLevel& la = levels_[a];
        const BeamLevel& lb = levels_[b];
        for (std::uint32_t i = 0; i < la.size(); ++i) {
          for (std::uint32_t j = (a == b ? i : 0); j < lb.size(); ++j) {
            combine_counts<double>(table_, std::span<const double>(la.counts.data() + i * m, m),
                                   std::span<const double>(lb.counts.data() + j * m, m),
                                   std::span<double>(scratch));
            offer(s, scratch, {a, i, j});
          }
        }
      }
      select(s);
    }
  }

  const BeamLevel& level(std::size_t s) const { return levels_[s]; }

  Shape shape(std::size_t s, std::size_t idx) const {
    const auto& link = levels_[s].links[idx];
    if (link.left_size == 0) return Shape::leaf();
    return make_node(shape(link.left_size, link.left), shape(s - link.left_size, link.right));
  }

  /// Index of the candidate with the largest target count at size s.
  std::size_t best(std::size_t s) const {
    const std::size_t m = table_.size();
    const BeamLevel& l = levels_[s];
    std::size_t arg = 0;
    for (std::size_t i = 1; i < l.size(); ++i)
      if (l.counts[i * m + m - 1] > l.counts[arg * m + m - 1]) arg = i;
    return arg;
  }

 private:
  struct Cell {
    std::vector<double> counts;
    BeamLevel::Link link;
    std::uint64_t order = 0;
  };

  // Keep, per grid cell of auxiliary densities, the candidate with the
  // largest target count.
  void offer(std::size_t s, const std::vector<double>& counts, BeamLevel::Link link) {
    const std::size_t m = table_.size();
    std::uint64_t key = 0;
    for (std::size_t d : aux_) {
      const double density = counts[d] / binomial_d(s, table_[d].shape.leaf_count());
      auto c = static_cast<std::uint64_t>(density * static_cast<double>(grid_));
      c = std::min<std::uint64_t>(c, grid_ - 1);
      key = key * grid_ + c;
    }
    auto [it, inserted] = cells_.try_emplace(key);
    if (inserted || counts[m - 1] > it->second.counts[m - 1]) {
      it->second.counts = counts;
      it->second.link = link;
      if (inserted) it->second.order = cells_.size();
    }
  }

  void select(std::size_t s) {
    const std::size_t m = table_.size();
    std::vector<const Cell*> pool;
    pool.reserve(cells_.size());
    for (const auto& [key, cell] : cells_) pool.push_back(&cell);
    std::sort(pool.begin(), pool.end(), [m](const Cell* x, const Cell* y) {
      if (x->counts[m - 1] != y->counts[m - 1]) return x->counts[m - 1] > y->counts[m - 1];
      return x->order < y->order;
    });
    // Pareto filter on (auxiliary counts, target count); the pool is sorted
    // by target so only earlier cells can dominate later ones.
    std::vector<const Cell*> front;
    for (const Cell* c : pool) {
      bool dominated = false;
      for (const Cell* f : front) {
        bool geq = f->counts[m - 1] >= c->counts[m - 1];
        for (std::size_t d : aux_) geq = geq && f->counts[d] >= c->counts[d];
        if (geq) {
          dominated = true;
          break;
        }
      }
      if (!dominated) front.push_back(c);
    }
    std::vector<const Cell*> kept;
    if (front.size() <= width_) {
      kept = front;
    } else {
      // evenly spaced along the target ordering, always keeping the best
      for (std::size_t i = 0; i < width_; ++i) {
        const std::size_t idx =
            width_ == 1 ? 0 : (i * (front.size() - 1) + (width_ - 1) / 2) / (width_ - 1);
        if (kept.empty() || kept.back() != front[idx]) kept.push_back(front[idx]);
      }
    }
    BeamLevel& level = levels_[s];
    level.counts.reserve(kept.size() * m);
    for (const Cell* c : kept) {
      level.counts.insert(level.counts.end(), c->counts.begin(), c->counts.end());
      level.links.push_back(c->link);
    }
  }

  const PatternTable& table_;
  std::size_t width_;
  std::vector<std::size_t> aux_;
  std::size_t grid_ = 1;
  std::vector<BeamLevel> levels_;
  std::unordered_map<std::uint64_t, Cell> cells_;
};

/// Hill climbing with regraft and swap moves; sideways moves are accepted
/// so the search can cross plateaus.
inline Shape local_search(const PatternTable& table, MutableTree start, std::size_t moves,
                          Rng& rng) {
  std::vector<double> scratch;
  double current = start.evaluate(table, scratch);
  MutableTree best = start;
  double best_value = current;
  for (std::size_t i = 0; i < moves; ++i) {
    MutableTree next = start;
    if (rng.coin())
      next.regraft(rng);
    else
      next.swap_subtrees(rng);
    const double v = next.evaluate(table, scratch);
    if (v >= current) {
      start = std::move(next);
      current = v;
      if (v > best_value) {
        best = start;
        best_value = v;
      }
    }
  }
  return best.to_shape();
}

}  // namespace detail

/// Certified lower bound on max gamma(B, .) over n-leaf hosts: the reported
/// value is gamma(B, T*) computed exactly for each listed host T*.
///
/// Candidate hosts come from (a) a beam over root splits, keeping per size a
/// spread of Pareto-optimal count vectors, and (b) local search from E_n,
/// C_n, the beam winner and random shapes.
inline ExtremalReport max_gamma_search(Shape pattern, std::size_t n, const SearchConfig& cfg) {
  cfg.validate();
  const std::size_t k = pattern.leaf_count();
  if (n < k) throw InvalidArgument("max_gamma_search: n must be at least the pattern size");
  const PatternTable table(pattern);

  std::vector<Shape> candidates{even(n), caterpillar(n)};
  detail::BeamSearch beam(table, cfg.beam_width);
  beam.run(n);
  const Shape beam_best = beam.shape(n, beam.best(n));
  candidates.push_back(beam_best);

  std::vector<Shape> restart_best(cfg.restarts);
  parallel_for(cfg.restarts, cfg.jobs, [&](std::size_t r) {
    Rng rng(stream_seed(cfg.seed, r));
    detail::MutableTree start = r == 0   ? detail::MutableTree::from_shape(even(n))
                                : r == 1 ? detail::MutableTree::from_shape(caterpillar(n))
                                : r == 2 ? detail::MutableTree::from_shape(beam_best)
                                         : detail::MutableTree::random(n, rng);
    restart_best[r] = detail::local_search(table, std::move(start), cfg.local_moves, rng);
  });
  candidates.insert(candidates.end(), restart_best.begin(), restart_best.end());

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  InducedCounter counter(pattern);
  std::vector<BigInt> counts;
  counts.reserve(candidates.size());
  for (Shape c : candidates) counts.push_back(counter.count(c));
  const BigInt best = *std::max_element(counts.begin(), counts.end());

  ExtremalReport r;
  r.pattern = pattern;
  r.n = n;
  r.method = SearchMethod::heuristic;
  r.seed = cfg.seed;
  r.best_value = BigRational(best, binomial(n, k));
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (counts[i] == best) r.argmax.push_back(candidates[i]);
  if (auto limit = known_inducibility(pattern)) r.gap_to_limit = *limit - r.best_value;
  return r;
}

/// Exact for n <= exact_limit, heuristic beyond.
inline ExtremalReport max_gamma(Shape pattern, std::size_t n, const SearchConfig& cfg) {
  return n <= cfg.exact_limit ? max_gamma_exact(pattern, n, cfg)
                              : max_gamma_search(pattern, n, cfg);
}

struct ConjectureRow {
  std::size_t n = 0;
  BigInt max_count;   // max over n-leaf hosts of c(E_k, T)
  BigInt even_count;  // c(E_k, E_n)
  bool even_is_maximizer = false;
  BigRational max_gamma;
  BigRational limit;  // i(E_k)
  BigRational gap;    // limit - max_gamma, signed
  BigRational n_gap;  // n * gap
};

/// For each n in [k, n_max]: whether E_n maximizes the number of copies of
/// E_k, and how far the finite maximum of gamma sits from i(E_k).
inline std::vector<ConjectureRow> conjecture_report(std::size_t k, std::size_t n_max,
                                                    const SearchConfig& cfg = {}) {
  cfg.validate();
  if (k < 1) throw InvalidArgument("conjecture_report: k must be >= 1");
  if (n_max > cfg.exact_limit) throw LimitExceeded("shape enumeration", n_max, cfg.exact_limit);
  const Shape pattern = even(k);
  const BigRational limit = even_inducibility(k);
  std::vector<ConjectureRow> rows;
  InducedCounter counter(pattern);
  for (std::size_t n = k; n <= n_max; ++n) {
    const ExtremalReport rep = max_gamma_exact(pattern, n, cfg);
    ConjectureRow row;
    row.n = n;
    row.max_count = rep.best_value.numerator() * binomial(n, k) / rep.best_value.denominator();
    row.even_count = counter.count(even(n));
    row.even_is_maximizer = row.even_count == row.max_count;
    row.max_gamma = rep.best_value;
    row.limit = limit;
    row.gap = limit - rep.best_value;
    row.n_gap = BigRational(static_cast<long>(n)) * row.gap;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace inducibility
