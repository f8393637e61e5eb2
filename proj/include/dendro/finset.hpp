#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dendro {

/// A finite set is identified with its cardinality n: its elements are 0..n-1.
/// A map of finite sets is a value table plus the size of the codomain.
struct FinMap {
  std::vector<int> values;
  int codomain = 0;

  int domain() const { return static_cast<int>(values.size()); }
  int operator()(int x) const { return values[x]; }
  bool operator==(const FinMap&) const = default;
};

FinMap identity_fin(int n);
/// g o f.
FinMap compose(const FinMap& g, const FinMap& f);
bool is_injective(const FinMap& f);
bool is_surjective(const FinMap& f);
inline bool is_bijective(const FinMap& f) { return is_injective(f) && is_surjective(f); }

/// A finite diagram of finite sets. Arrows are covariant: arrow a sends
/// elements of sizes[a.src] to elements of sizes[a.dst]. Only generating
/// arrows are needed for limits and colimits; `relations` records the
/// composition table when functoriality is to be checked.
struct Diagram {
  struct Arrow {
    int src = 0;
    int dst = 0;
    std::vector<int> map;
  };
  /// arrows[composite] == arrows[second] o arrows[first]
  struct Relation {
    int first = 0;
    int second = 0;
    int composite = 0;
  };

  std::vector<int> sizes;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  int add_object(int size) {
    sizes.push_back(size);
    return static_cast<int>(sizes.size()) - 1;
  }
  void add_arrow(int src, int dst, std::vector<int> map) { arrows.push_back({src, dst, std::move(map)}); }
};

bool check_functorial(const Diagram& d);

/// Elements of the limit, each a tuple with one entry per object; sorted
/// lexicographically. Projection i sends tuple t to t[i].
struct Limit {
  std::vector<std::vector<int>> tuples;
  int size() const { return static_cast<int>(tuples.size()); }
  FinMap projection(int object, int object_size) const;
  /// Index of a tuple, or -1.
  int find(const std::vector<int>& tuple) const;
};

inline constexpr std::size_t kDefaultLimitBudget = 2'000'000;

/// Throws kBudgetExceeded when the search visits more than `budget` partial
/// assignments.
Limit limit(const Diagram& d, std::size_t budget = kDefaultLimitBudget);

/// Disjoint union modulo the relation generated by the arrows. Classes are
/// numbered by their least element in the order (object, element).
struct Colimit {
  int size = 0;
  std::vector<std::vector<int>> injections;          // object -> element -> class
  std::vector<std::pair<int, int>> representatives;  // class -> (object, element)
};

Colimit colimit(const Diagram& d);

/// Union-find with path compression; the representative is the least id.
class UnionFind {
 public:
  explicit UnionFind(int n);
  int find(int x);
  void unite(int a, int b);

 private:
  std::vector<int> parent_;
};

}  // namespace dendro
