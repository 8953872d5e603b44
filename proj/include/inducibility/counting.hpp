#pragma once

// Exact counts c(B,T) of leaf subsets of T inducing B, the densities
// gamma(B,T) = c(B,T) / C(|T|,|B|), and the closed forms that go with them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "plane_tree.hpp"
#include "rational.hpp"
#include "tree_shape.hpp"

namespace inducibility {

inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000;

/// Distinct rooted subtrees of a pattern B, children before parents.
/// Entry 0 is the leaf; the last entry is B.
class PatternTable {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Entry {
    Shape shape;
    std::size_t first = npos;   // index of the smaller branch
    std::size_t second = npos;  // index of the larger branch
    bool branches_isomorphic = false;

    bool is_leaf() const { return first == npos; }
  };

  explicit PatternTable(Shape pattern) : pattern_(pattern) {
    entries_.push_back(Entry{Shape::leaf()});
    index_.emplace(Shape::leaf(), 0);
    add(pattern);
  }

  Shape pattern() const { return pattern_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }

  std::optional<std::size_t> index_of(Shape s) const {
    if (auto it = index_.find(s); it != index_.end()) return it->second;
    return std::nullopt;
  }

 private:
  std::size_t add(Shape s) {
    if (auto it = index_.find(s); it != index_.end()) return it->second;
    std::size_t a = add(s.left());
    std::size_t b = add(s.right());
    entries_.push_back(Entry{s, a, b, a == b});
    index_.emplace(s, entries_.size() - 1);
    return entries_.size() - 1;
  }

  Shape pattern_;
  std::vector<Entry> entries_;
  std::unordered_map<Shape, std::size_t> index_;
};

/// Per-entry counts N[b] for one host subtree.
template <class Num>
using BasicCountVector = std::vector<Num>;
using CountVector = BasicCountVector<BigInt>;

template <class Num>
BasicCountVector<Num> leaf_counts(const PatternTable& table) {
  BasicCountVector<Num> v(table.size(), Num(0));
  v[0] = Num(1);
  return v;
}

/// Counts for a host t = (t1, t2) from the counts of its branches:
///   N_t[b] = N_t1[b] + N_t2[b] + S,
///   S = N_t1[b1] N_t2[b2] + N_t1[b2] N_t2[b1]   if b1 and b2 differ,
///   S = N_t1[b1] N_t2[b1]                        if they are isomorphic,
/// and N_t[leaf] = |t|.
template <class Num>
void combine_counts(const PatternTable& table, std::span<const Num> a, std::span<const Num> b,
                    std::span<Num> out) {
  out[0] = a[0] + b[0];
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto& e = table[i];
    Num s = a[e.first] * b[e.second];
    if (!e.branches_isomorphic) s += a[e.second] * b[e.first];
    out[i] = a[i] + b[i] + s;
  }
}

template <class Num>
BasicCountVector<Num> combine_counts(const PatternTable& table, const BasicCountVector<Num>& a,
                                     const BasicCountVector<Num>& b) {
  BasicCountVector<Num> out(table.size());
  combine_counts<Num>(table, std::span<const Num>(a), std::span<const Num>(b),
                      std::span<Num>(out));
  return out;
}

/// Memoized counter for one pattern, reusable across hosts. Repeated host
/// subtrees (every level of CB_h, say) are evaluated once. Not thread-safe;
/// use one instance per worker.
class InducedCounter {
 public:
  explicit InducedCounter(Shape pattern) : table_(pattern) {}

  const PatternTable& table() const { return table_; }

  const CountVector& counts(Shape host) {
    if (auto it = memo_.find(host.id()); it != memo_.end()) return it->second;
    // Post-order without recursion so that long caterpillars are fine.
    std::vector<std::pair<Shape, bool>> stack{{host, false}};
    while (!stack.empty()) {
      auto [s, expanded] = stack.back();
      stack.pop_back();
      if (memo_.count(s.id())) continue;
      if (s.is_leaf()) {
        memo_.emplace(s.id(), leaf_counts<BigInt>(table_));
        continue;
      }
      if (!expanded) {
        stack.push_back({s, true});
        stack.push_back({s.left(), false});
        stack.push_back({s.right(), false});
        continue;
      }
      memo_.emplace(s.id(), combine_counts<BigInt>(table_, memo_.at(s.left().id()),
                                                   memo_.at(s.right().id())));
    }
    return memo_.at(host.id());
  }

  BigInt count(Shape host) { return counts(host).back(); }

 private:
  PatternTable table_;
  std::unordered_map<std::size_t, CountVector> memo_;
};

/// c(B,T) by the branch-splitting recursion.
inline BigInt count_induced(Shape pattern, Shape host) {
  return InducedCounter(pattern).count(host);
}

/// c(B,T) by enumerating every |B|-subset of leaves and inducing it.
inline BigInt count_induced_bruteforce(Shape pattern, const PlaneTree& host,
                                       std::uint64_t budget = kDefaultOracleBudget) {
  const std::size_t n = host.leaf_count();
  const std::size_t k = pattern.leaf_count();
  if (k > n) return BigInt(0);
  BigInt subsets = binomial(n, k);
  if (subsets > BigInt(static_cast<unsigned long>(budget)))
    throw LimitExceeded("brute-force oracle subset budget",
                        subsets.fits_ulong_p() ? subsets.get_ui() : SIZE_MAX, budget);
  std::vector<std::size_t> subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = i + 1;
  std::uint64_t hits = 0;
  while (true) {
    if (induce(host, subset) == pattern) ++hits;
    // next k-combination of {1..n} in lexicographic order
    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + i) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
  return BigInt(static_cast<unsigned long>(hits));
}

inline BigRational gamma(Shape pattern, Shape host) {
  if (host.leaf_count() < pattern.leaf_count())
    throw InvalidArgument("gamma: host has fewer leaves than the pattern");
  return BigRational(count_induced(pattern, host),
                     binomial(host.leaf_count(), pattern.leaf_count()));
}

/// P(n) = n(n-1)(n-2)(3n-5)/168, the upper bound on c(CB_2, T) for |T| = n.
inline BigRational cb2_bound(long n) {
  BigInt num = BigInt(n) * (n - 1) * (n - 2) * (3 * n - 5);
  return BigRational(num, BigInt(168));
}

/// c_1 = 1, c_{2s} = c_s^2 / (2^{2s} - 2), c_{2s+1} = c_s c_{s+1} / (2^{2s} - 1).
inline BigRational even_constant(std::size_t r) {
  if (r < 1) throw InvalidArgument("even_constant: r must be >= 1");
  std::unordered_map<std::size_t, BigRational> memo{{1, BigRational(1)}};
  std::function<BigRational(std::size_t)> c = [&](std::size_t m) -> BigRational {
    if (auto it = memo.find(m); it != memo.end()) return it->second;
    const std::size_t s = m / 2;
    BigRational v = m % 2 == 0 ? c(s) * c(s) / BigRational(pow2(2 * s) - 2)
                               : c(s) * c(s + 1) / BigRational(pow2(2 * s) - 1);
    memo.emplace(m, v);
    return v;
  };
  return c(r);
}

/// Inducibility of the even tree E_r, r! c_r.
inline BigRational even_inducibility(std::size_t r) {
  return BigRational(factorial(r)) * even_constant(r);
}

/// liminf of gamma(C_k, T): (k!/2) prod_{j=1}^{k-1} (2^j - 1)^{-1}.
inline BigRational caterpillar_liminf(std::size_t k) {
  if (k < 2) throw InvalidArgument("caterpillar_liminf: k must be >= 2");
  BigInt den = 2;
  for (std::size_t j = 1; j < k; ++j) den *= pow2(j) - 1;
  return BigRational(factorial(k), den);
}

/// c(C_k, CB_h) = 2^{h-1} prod_{j=1}^{k-1} (2^h - 2^{j-1}) / (2^j - 1).
inline BigInt caterpillar_count_complete(std::size_t k, std::size_t h) {
  if (k < 2) throw InvalidArgument("caterpillar_count_complete: k must be >= 2");
  if (h < 1) throw InvalidArgument("caterpillar_count_complete: h must be >= 1");
  BigInt num = pow2(h - 1);
  BigInt den = 1;
  for (std::size_t j = 1; j < k; ++j) {
    num *= pow2(h) - pow2(j - 1);
    den *= pow2(j) - 1;
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw std::logic_error("caterpillar_count_complete: product is not an integer");
  BigInt q = num / den;
  return q;
}

}  // namespace inducibility
