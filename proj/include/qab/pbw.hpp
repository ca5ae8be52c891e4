/**
 * @file pbw.hpp
 * @brief The PBW/canonical basis index set: triples (c_+, c_0, c_-), weight
 *        fibers, the coarse and refined partial orders, the equivalence on
 *        real parts, and a compatible total order with contiguous classes.
 */
#ifndef QAB_PBW_HH
#define QAB_PBW_HH

#include "qab/partitions.hpp"
#include "qab/weyl.hpp"

#include <limits>
#include <map>

namespace qab {

/**
 * Index of a PBW / monomial / canonical basis element.  plus maps k <= 0 to
 * the multiplicity of beta_k, minus maps k >= 1 likewise, zero maps vertices
 * of I_0 to partitions.  Zero multiplicities and empty partitions are never
 * stored.
 */
struct PBWIndex {
  std::map<long long, int> plus;   // keys <= 0
  std::map<long long, int> minus;  // keys >= 1
  std::map<int, Partition> zero;   // vertex -> nonempty partition

  void set_real(long long k, int mult) {
    if (mult < 0) throw InternalError("PBWIndex negative multiplicity");
    auto& side = k <= 0 ? plus : minus;
    if (mult == 0)
      side.erase(k);
    else
      side[k] = mult;
  }
  void set_partition(int vertex, const Partition& la) {
    if (la.empty())
      zero.erase(vertex);
    else
      zero[vertex] = la;
  }

  bool is_zero() const { return plus.empty() && minus.empty() && zero.empty(); }
  bool real_part_trivial() const { return plus.empty() && minus.empty(); }

  int imaginary_size() const {
    int s = 0;
    for (const auto& [v, la] : zero) s += la.size();
    return s;
  }

  friend bool operator==(const PBWIndex& a, const PBWIndex& b) {
    return a.plus == b.plus && a.minus == b.minus && a.zero == b.zero;
  }
  friend bool operator!=(const PBWIndex& a, const PBWIndex& b) { return !(a == b); }
  friend bool operator<(const PBWIndex& a, const PBWIndex& b) {
    if (a.plus != b.plus) return a.plus < b.plus;
    if (a.minus != b.minus) return a.minus < b.minus;
    return a.zero < b.zero;
  }

  std::string str() const {
    std::string s = "{+:";
    for (auto it = plus.rbegin(); it != plus.rend(); ++it)
      s += "[" + std::to_string(it->first) + "]" + std::to_string(it->second);
    s += " 0:";
    for (const auto& [v, la] : zero) s += std::to_string(v) + la.str();
    s += " -:";
    for (const auto& [k, c] : minus)
      s += "[" + std::to_string(k) + "]" + std::to_string(c);
    return s + "}";
  }
};

/// weight(c) = sum_k c_k beta_k + |c_0| delta, an element of Q_+.
inline Root index_weight(const PBWIndex& c, const BetaSequence& seq) {
  Root w(static_cast<size_t>(seq.datum().vertex_count()));
  for (const auto& [k, mult] : c.plus) w = w + mult * seq.beta(k);
  for (const auto& [k, mult] : c.minus) w = w + mult * seq.beta(k);
  long long m = c.imaginary_size();
  if (m) w = w + m * seq.datum().delta();
  return w;
}

namespace detail {

/// Lexicographic "left to right" comparison of the c_+ tuples (c_0, c_-1, ...):
/// -1, 0, +1 as the first differing coordinate compares.
inline int cmp_plus(const std::map<long long, int>& a, const std::map<long long, int>& b) {
  auto ia = a.rbegin();
  auto ib = b.rbegin();
  while (ia != a.rend() || ib != b.rend()) {
    long long ka = ia != a.rend() ? ia->first : std::numeric_limits<long long>::min();
    long long kb = ib != b.rend() ? ib->first : std::numeric_limits<long long>::min();
    long long k = std::max(ka, kb);  // scan k = 0, -1, -2, ...
    int va = (ia != a.rend() && ia->first == k) ? ia->second : 0;
    int vb = (ib != b.rend() && ib->first == k) ? ib->second : 0;
    if (va != vb) return va < vb ? -1 : 1;
    if (ia != a.rend() && ia->first == k) ++ia;
    if (ib != b.rend() && ib->first == k) ++ib;
  }
  return 0;
}

/// Same rule for c_- = (c_1, c_2, ...), compared at k = 1 first.
inline int cmp_minus(const std::map<long long, int>& a, const std::map<long long, int>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    long long ka = ia != a.end() ? ia->first : std::numeric_limits<long long>::max();
    long long kb = ib != b.end() ? ib->first : std::numeric_limits<long long>::max();
    long long k = std::min(ka, kb);  // scan k = 1, 2, ...
    int va = (ia != a.end() && ia->first == k) ? ia->second : 0;
    int vb = (ib != b.end() && ib->first == k) ? ib->second : 0;
    if (va != vb) return va < vb ? -1 : 1;
    if (ia != a.end() && ia->first == k) ++ia;
    if (ib != b.end() && ib->first == k) ++ib;
  }
  return 0;
}

/// Product-of-dominance comparison of c_0 tuples: -1 (strictly below), 0
/// (equal), +1 (strictly above), 2 (incomparable).
inline int cmp_zero_dominance(const PBWIndex& a, const PBWIndex& b,
                              const std::vector<int>& vertices_I0) {
  bool le = true, ge = true;
  for (int v : vertices_I0) {
    static const Partition kEmpty;
    auto ita = a.zero.find(v);
    auto itb = b.zero.find(v);
    const Partition& pa = ita == a.zero.end() ? kEmpty : ita->second;
    const Partition& pb = itb == b.zero.end() ? kEmpty : itb->second;
    if (pa == pb) continue;
    if (!dominance_leq(pa, pb)) le = false;
    if (!dominance_leq(pb, pa)) ge = false;
  }
  if (le && ge) return 0;
  if (le) return -1;
  if (ge) return 1;
  return 2;
}

}  // namespace detail

/// The coarse strict partial order: both real tuples <= lexicographically,
/// at least one strictly; c_0 plays no role.
inline bool prec0(const PBWIndex& a, const PBWIndex& b) {
  int cp = detail::cmp_plus(a.plus, b.plus);
  int cm = detail::cmp_minus(a.minus, b.minus);
  return cp <= 0 && cm <= 0 && (cp < 0 || cm < 0);
}

/// The refinement: additionally c_0 <= c_0' in the product-of-dominance order.
inline bool prec(const PBWIndex& a, const PBWIndex& b, const BetaSequence& seq) {
  int cp = detail::cmp_plus(a.plus, b.plus);
  int cm = detail::cmp_minus(a.minus, b.minus);
  if (cp > 0 || cm > 0) return false;
  std::vector<int> i0;
  for (int v : seq.total_order_I())
    if (v != 0) i0.push_back(v);
  int cz = detail::cmp_zero_dominance(a, b, i0);
  if (cz == 2 || cz > 0) return false;
  return cp < 0 || cm < 0 || cz < 0;
}

/// c ~ c' iff the real parts agree.
inline bool equivalent(const PBWIndex& a, const PBWIndex& b) {
  return a.plus == b.plus && a.minus == b.minus;
}

/**
 * All indices of a given weight.  For each imaginary budget m with
 * m*delta <= nu, a bounded knapsack over the real roots inside the box
 * nu - m*delta, times all I_0-tuples of partitions of total size m.
 */
inline std::vector<PBWIndex> enumerate_indices(const Root& nu, const BetaSequence& seq) {
  if (!nu.nonneg()) throw ConfigError("enumerate_indices: weight must lie in Q+");
  const CartanDatum& d = seq.datum();
  std::vector<PBWIndex> out;

  long long mmax = std::numeric_limits<long long>::max();
  for (int i = 0; i < d.vertex_count(); ++i)
    mmax = std::min(mmax, nu[static_cast<size_t>(i)] / d.delta()[static_cast<size_t>(i)]);

  for (long long m = 0; m <= mmax; ++m) {
    Root target = nu - m * d.delta();
    auto roots = seq.real_roots_below(target);
    // I_0-tuples of partitions of total size m, vertices in ascending label order
    std::vector<int> verts;
    for (int v = 1; v <= d.rank(); ++v) verts.push_back(v);
    std::vector<std::map<int, Partition>> zero_choices;
    {
      std::map<int, Partition> cur;
      auto rec0 = [&](auto&& self, size_t vi, int rem) -> void {
        if (vi == verts.size()) {
          if (rem == 0) zero_choices.push_back(cur);
          return;
        }
        for (int take = 0; take <= rem; ++take)
          for (const auto& la : partitions_of(take)) {
            if (!la.empty()) cur[verts[vi]] = la;
            self(self, vi + 1, rem - take);
            cur.erase(verts[vi]);
          }
      };
      rec0(rec0, 0, static_cast<int>(m));
    }
    // bounded knapsack over the real roots
    std::vector<std::pair<long long, int>> picked;
    auto recr = [&](auto&& self, size_t ri, Root rem) -> void {
      if (rem.is_zero()) {
        for (const auto& zc : zero_choices) {
          PBWIndex c;
          for (auto [k, mult] : picked) c.set_real(k, mult);
          c.zero = zc;
          out.push_back(std::move(c));
        }
        return;
      }
      if (ri == roots.size()) return;
      const auto& [k, beta] = roots[ri];
      self(self, ri + 1, rem);  // skip this root
      int mult = 0;
      Root r = rem;
      while (beta.leq(r)) {
        r = r - beta;
        ++mult;
        picked.emplace_back(k, mult);
        self(self, ri + 1, r);
        picked.pop_back();
      }
    };
    recr(recr, 0, target);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// A weight fiber arranged in the solver's total order, with its ~-classes
/// marked as contiguous [begin, end) ranges.
struct IndexFiber {
  std::vector<PBWIndex> indices;
  std::vector<std::pair<size_t, size_t>> classes;

  size_t size() const { return indices.size(); }
  /// Class number containing position i.
  size_t class_of(size_t i) const {
    for (size_t c = 0; c < classes.size(); ++c)
      if (i >= classes[c].first && i < classes[c].second) return c;
    throw InternalError("class_of: position outside fiber");
  }
};

namespace detail {

/// Deterministic sort key for the c_0 tuple: partitions in the I_0 order
/// induced by the vertex total order, each compared parts-lexicographically
/// (a linear extension of product dominance).
inline std::vector<std::vector<int>> zero_key(const PBWIndex& c, const std::vector<int>& order_I) {
  std::vector<std::vector<int>> key;
  for (int v : order_I) {
    if (v == 0) continue;
    auto it = c.zero.find(v);
    key.push_back(it == c.zero.end() ? std::vector<int>{} : it->second.parts);
  }
  return key;
}

}  // namespace detail

/**
 * Linear extension of the refined order in which every ~-class is a
 * contiguous block: classes sorted by the lexicographic keys of (c_+, c_-),
 * members within a class by the deterministic c_0 key.
 */
inline IndexFiber total_order(const Root& nu, const BetaSequence& seq) {
  IndexFiber fiber;
  fiber.indices = enumerate_indices(nu, seq);
  const auto& order_I = seq.total_order_I();
  std::sort(fiber.indices.begin(), fiber.indices.end(),
            [&](const PBWIndex& a, const PBWIndex& b) {
              int cp = detail::cmp_plus(a.plus, b.plus);
              if (cp != 0) return cp < 0;
              int cm = detail::cmp_minus(a.minus, b.minus);
              if (cm != 0) return cm < 0;
              return detail::zero_key(a, order_I) < detail::zero_key(b, order_I);
            });
  for (size_t i = 0; i < fiber.indices.size();) {
    size_t j = i;
    while (j < fiber.indices.size() && equivalent(fiber.indices[i], fiber.indices[j])) ++j;
    fiber.classes.emplace_back(i, j);
    i = j;
  }
  return fiber;
}

}  // namespace qab

#endif  // QAB_PBW_HH
