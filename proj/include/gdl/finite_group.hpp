#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

namespace gdl {

/// Union-find over 0..n-1 with path halving and union by size.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }

  /// Returns true if a union was performed.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_delta_;
    return true;
  }

  std::size_t components() const { return parent_.size() + static_cast<std::size_t>(components_delta_); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::ptrdiff_t components_delta_ = 0;
};

/// Closure of a generating set under a binary operation, by breadth-first
/// multiplication. Elements must be totally ordered; `identity` seeds the set.
template <class T, class Mul>
std::vector<T> generate_group(const T& identity, const std::vector<T>& gens, Mul mul,
                              std::size_t limit = SIZE_MAX) {
  std::set<T> seen{identity};
  std::vector<T> frontier{identity};
  while (!frontier.empty()) {
    std::vector<T> next;
    for (const T& x : frontier)
      for (const T& g : gens) {
        T y = mul(x, g);
        if (seen.insert(y).second) {
          next.push_back(y);
          if (seen.size() > limit) return {};
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// Finite group given by its multiplication table on indices 0..n-1.
/// Subgroups are represented as sorted index lists.
class TableGroup {
 public:
  TableGroup(std::vector<std::vector<std::size_t>> table, std::size_t identity)
      : table_(std::move(table)), identity_(identity) {}

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }

  std::vector<std::size_t> closure(const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(order(), false);
    std::vector<std::size_t> elems{identity_};
    in[identity_] = true;
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (std::size_t g : gens) {
        std::size_t y = mul(elems[k], g);
        if (!in[y]) {
          in[y] = true;
          elems.push_back(y);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  /// Every subgroup, found by repeatedly joining known subgroups with single
  /// elements starting from the trivial group.
  std::vector<std::vector<std::size_t>> all_subgroups() const {
    std::set<std::vector<std::size_t>> found;
    std::vector<std::vector<std::size_t>> queue{{identity_}};
    found.insert(queue.front());
    for (std::size_t k = 0; k < queue.size(); ++k) {
      const auto current = queue[k];
      std::vector<bool> in(order(), false);
      for (std::size_t x : current) in[x] = true;
      for (std::size_t g = 0; g < order(); ++g) {
        if (in[g]) continue;
        auto gens = current;
        gens.push_back(g);
        auto h = closure(gens);
        if (found.insert(h).second) queue.push_back(std::move(h));
      }
    }
    return {found.begin(), found.end()};
  }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_;
};

}  // namespace gdl
