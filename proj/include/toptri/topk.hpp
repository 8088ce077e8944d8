#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "toptri/weighting.hpp"

namespace toptri {

inline constexpr std::size_t kAll = std::numeric_limits<std::size_t>::max();

// Clique of 3..5 nodes. edge_weights follow lexicographic pair order
// (0,1), (0,2), ..., (s-2,s-1) over the sorted node list.
struct Clique {
  std::vector<NodeId> nodes;
  std::vector<double> edge_weights;
  double weight = 0.0;
  double score = 0.0;

  friend bool operator==(const Clique&, const Clique&) = default;
};

inline bool ranks_before(const Clique& x, const Clique& y) {
  if (x.score != y.score) return x.score > y.score;
  return x.nodes < y.nodes;
}

inline void fill_weight(Clique& c, PMeanParam p) { c.weight = p_mean(c.edge_weights, p); }

template <class Item>
struct TopK {
  std::size_t k = 0;
  std::vector<Item> items;  // ranked, best first
  bool exact = false;
};

using TopKResult = TopK<Triangle>;
using CliqueResult = TopK<Clique>;

// Bounded selection of the k best items under ranks_before.
template <class Item>
class TopKCollector {
 public:
  explicit TopKCollector(std::size_t k) : k_(k) {}

  bool would_accept(const Item& item) const {
    return heap_.size() < k_ || (k_ > 0 && ranks_before(item, heap_.front()));
  }

  void offer(Item item) {
    if (heap_.size() < k_) {
      heap_.push_back(std::move(item));
      std::push_heap(heap_.begin(), heap_.end(), cmp);
    } else if (would_accept(item)) {
      std::pop_heap(heap_.begin(), heap_.end(), cmp);
      heap_.back() = std::move(item);
      std::push_heap(heap_.begin(), heap_.end(), cmp);
    }
  }

  std::size_t size() const { return heap_.size(); }

  // Best first. Leaves the collector empty.
  std::vector<Item> take() {
    std::sort_heap(heap_.begin(), heap_.end(), cmp);
    return std::move(heap_);
  }

 private:
  // Max-heap under ranks_before: front() is the worst retained item.
  static bool cmp(const Item& x, const Item& y) { return ranks_before(x, y); }

  std::size_t k_;
  std::vector<Item> heap_;
};

// k best of `items`, ranked, with p-means filled in.
template <class Item>
std::vector<Item> select_top(std::vector<Item> items, std::size_t k, PMeanParam p) {
  auto cmp = [](const Item& x, const Item& y) { return ranks_before(x, y); };
  if (k < items.size()) {
    std::nth_element(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(k), items.end(),
                     cmp);
    items.resize(k);
  }
  std::sort(items.begin(), items.end(), cmp);
  for (auto& it : items) fill_weight(it, p);
  return items;
}

}  // namespace toptri
