/**
 * @file partitions.hpp
 * @brief Integer partitions, the dominance order, and Kostka numbers via
 *        semistandard tableau counting.
 */
#ifndef QAB_PARTITIONS_HH
#define QAB_PARTITIONS_HH

#include "qab/laurent.hpp"

#include <algorithm>
#include <vector>

namespace qab {

/// Weakly decreasing positive parts; the empty partition is allowed.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    for (size_t i = 0; i + 1 < parts.size(); ++i)
      if (parts[i] < parts[i + 1]) throw InternalError("Partition parts not weakly decreasing");
    if (!parts.empty() && parts.back() < 0) throw InternalError("Partition with negative part");
  }

  int size() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  int length() const { return static_cast<int>(parts.size()); }
  int part(int i) const { return i < length() ? parts[static_cast<size_t>(i)] : 0; }
  bool empty() const { return parts.empty(); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  /// Lexicographic on the parts sequence; a linear extension of dominance.
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts[i]);
    }
    return s + ")";
  }
};

/// Dominance: true iff |la| = |mu| and every prefix sum of la is <= that of mu.
inline bool dominance_leq(const Partition& la, const Partition& mu) {
  if (la.size() != mu.size()) return false;
  int rows = std::max(la.length(), mu.length());
  long long sa = 0, sb = 0;
  for (int i = 0; i < rows; ++i) {
    sa += la.part(i);
    sb += mu.part(i);
    if (sa > sb) return false;
  }
  return true;
}

/// All partitions of m, parts bounded by max_part, in lexicographic order.
inline std::vector<Partition> partitions_of(int m, int max_part = -1) {
  if (max_part < 0 || max_part > m) max_part = m;
  std::vector<Partition> out;
  if (m == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rem, int bound) -> void {
    if (rem == 0) {
      out.emplace_back(Partition(cur));
      return;
    }
    for (int p = std::min(rem, bound); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, m, max_part);
  std::sort(out.begin(), out.end());
  return out;
}

/**
 * Kostka number K_{la,mu}: the number of semistandard Young tableaux of
 * shape la and content mu.  Zero unless mu is dominated by la.
 */
inline long long kostka(const Partition& la, const Partition& mu) {
  if (la.size() != mu.size()) return 0;
  if (la.size() == 0) return 1;
  if (!dominance_leq(mu, la)) return 0;
  int rows = la.length();
  int kinds = std::max(mu.length(), 1);
  // fill entries 1..kinds row by row; rows weakly increase left-to-right,
  // columns strictly increase top-to-bottom
  std::vector<std::vector<int>> tab(static_cast<size_t>(rows));
  for (int r = 0; r < rows; ++r) tab[static_cast<size_t>(r)].assign(static_cast<size_t>(la.part(r)), 0);
  std::vector<int> used(static_cast<size_t>(kinds), 0);
  long long count = 0;
  auto rec = [&](auto&& self, int r, int c) -> void {
    if (r == rows) {
      ++count;
      return;
    }
    int nr = r, nc = c + 1;
    if (nc >= la.part(r)) {
      nr = r + 1;
      nc = 0;
    }
    int lo = 1;
    if (c > 0) lo = std::max(lo, tab[static_cast<size_t>(r)][static_cast<size_t>(c - 1)]);
    if (r > 0 && c < la.part(r - 1)) lo = std::max(lo, tab[static_cast<size_t>(r - 1)][static_cast<size_t>(c)] + 1);
    for (int v = lo; v <= kinds; ++v) {
      if (used[static_cast<size_t>(v - 1)] >= mu.part(v - 1)) continue;
      tab[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
      ++used[static_cast<size_t>(v - 1)];
      self(self, nr, nc);
      --used[static_cast<size_t>(v - 1)];
    }
    tab[static_cast<size_t>(r)][static_cast<size_t>(c)] = 0;
  };
  rec(rec, 0, 0);
  return count;
}

}  // namespace qab

#endif  // QAB_PARTITIONS_HH
