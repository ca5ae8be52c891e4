/**
 * @file quiver.hpp
 * @brief Quiver orientation induced by the vertex total order, flag
 *        dimension formulas, defect-based classification of real roots,
 *        and stratum data attached to basis indices.
 */
#ifndef QAB_QUIVER_HH
#define QAB_QUIVER_HH

#include "qab/pbw.hpp"

#include <set>

namespace qab {

/// Finite quiver on the vertex set I; arrows as ordered pairs (from, to).
struct Quiver {
  int vertices = 0;
  std::set<std::pair<int, int>> arrows;

  bool has_arrow(int a, int b) const { return arrows.count({a, b}) > 0; }
  bool is_sink(int v) const {
    for (const auto& [a, b] : arrows)
      if (a == v) return false;
    return true;
  }
  /// Reverse every arrow incident to v.
  Quiver flipped_at(int v) const {
    Quiver q;
    q.vertices = vertices;
    for (const auto& [a, b] : arrows) {
      if (a == v || b == v)
        q.arrows.emplace(b, a);
      else
        q.arrows.emplace(a, b);
    }
    return q;
  }
  bool acyclic() const {
    // Kahn peeling
    std::vector<int> indeg(static_cast<size_t>(vertices), 0);
    for (const auto& [a, b] : arrows) ++indeg[static_cast<size_t>(b)];
    std::vector<int> stack;
    for (int v = 0; v < vertices; ++v)
      if (indeg[static_cast<size_t>(v)] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      ++seen;
      for (const auto& [a, b] : arrows)
        if (a == v && --indeg[static_cast<size_t>(b)] == 0) stack.push_back(b);
    }
    return seen == vertices;
  }
};

/**
 * The orientation attached to the vertex total order (i_0, ..., i_n):
 * joined vertices get the arrow i_{k'} -> i_k exactly when k' > k.  The
 * construction makes i_0 a sink and the order a sink sequence for the
 * reflection flips; both are asserted, as is the full-cycle identity.
 */
inline Quiver orientation_from_order(const std::vector<int>& order, const CartanDatum& d) {
  Quiver q;
  q.vertices = d.vertex_count();
  for (size_t kp = 0; kp < order.size(); ++kp)
    for (size_t k = 0; k < kp; ++k)
      if (d.joined(order[kp], order[k])) q.arrows.emplace(order[kp], order[k]);
  if (!q.acyclic()) throw InternalError("orientation_from_order: quiver has a cycle");
  Quiver cur = q;
  for (int v : order) {
    if (!cur.is_sink(v))
      throw InternalError("orientation_from_order: sink sequence fails at vertex " +
                          std::to_string(v));
    cur = cur.flipped_at(v);
  }
  if (cur.arrows != q.arrows)
    throw InternalError("orientation_from_order: full flip cycle does not return the quiver");
  return q;
}

/// A pair of sequences (vertices, multiplicities) of common length.
struct FlagWord {
  std::vector<int> vertices;
  std::vector<int> mults;

  size_t size() const { return vertices.size(); }
};

/// Flag variety dimension: sum over equal-color position pairs k' < k of c_k' c_k.
inline long long flag_dim(const FlagWord& w) {
  long long s = 0;
  for (size_t k = 0; k < w.size(); ++k)
    for (size_t kp = 0; kp < k; ++kp)
      if (w.vertices[kp] == w.vertices[k])
        s += static_cast<long long>(w.mults[kp]) * w.mults[k];
  return s;
}

/// Fibre dimension of the stable locus over the flag variety: sum over
/// arrows h and position pairs k' < k with colors (h', h'').
inline long long fibre_dim(const FlagWord& w, const Quiver& q) {
  long long s = 0;
  for (size_t k = 0; k < w.size(); ++k)
    for (size_t kp = 0; kp < k; ++kp)
      if (q.has_arrow(w.vertices[kp], w.vertices[k]))
        s += static_cast<long long>(w.mults[kp]) * w.mults[k];
  return s;
}

inline long long tilde_flag_dim(const FlagWord& w, const Quiver& q) {
  return flag_dim(w) + fibre_dim(w, q);
}

enum class IndecClass { preprojective, preinjective, regular_nonhomogeneous };

/// Sign of the defect classifies the indecomposable with the given real
/// dimension vector; imaginary vectors are rejected.
inline IndecClass classify_indecomposable(const Root& beta, const BetaSequence& seq) {
  if (!seq.datum().is_positive_real_root(beta))
    throw ConfigError("classify_indecomposable: not a positive real root: " + beta.str());
  long long def = seq.defect(beta);
  if (def < 0) return IndecClass::preprojective;
  if (def > 0) return IndecClass::preinjective;
  return IndecClass::regular_nonhomogeneous;
}

inline std::string indec_class_string(IndecClass c) {
  switch (c) {
    case IndecClass::preprojective: return "preprojective";
    case IndecClass::preinjective: return "preinjective";
    case IndecClass::regular_nonhomogeneous: return "regular_nonhomogeneous";
  }
  return "?";
}

/**
 * Stratum data (Y, l, l', lambda): the real support split by defect sign,
 * the first-vertex partition lambda with l = |lambda|, and the total size
 * l' of the remaining imaginary budget.
 */
struct StratumData {
  std::vector<std::pair<Root, int>> Y_P, Y_R, Y_I;  // defect < 0, = 0, > 0
  int l = 0;
  int l_prime = 0;
  Partition lambda;

  Root dimension(const CartanDatum& d) const {
    Root dim(static_cast<size_t>(d.vertex_count()));
    for (const auto& [beta, c] : Y_P) dim = dim + c * beta;
    for (const auto& [beta, c] : Y_R) dim = dim + c * beta;
    for (const auto& [beta, c] : Y_I) dim = dim + c * beta;
    return dim + static_cast<long long>(l + l_prime) * d.delta();
  }
};

inline StratumData stratum_data_of_index(const PBWIndex& c, const BetaSequence& seq) {
  StratumData s;
  auto place = [&](long long k, int mult) {
    Root beta = seq.beta(k);
    long long def = seq.defect(beta);
    if (def < 0)
      s.Y_P.emplace_back(beta, mult);
    else if (def > 0)
      s.Y_I.emplace_back(beta, mult);
    else
      s.Y_R.emplace_back(beta, mult);
  };
  for (const auto& [k, mult] : c.plus) place(k, mult);
  for (const auto& [k, mult] : c.minus) place(k, mult);
  int first_vertex = seq.total_order_I().front();
  for (const auto& [v, la] : c.zero) {
    if (v == first_vertex) {
      s.lambda = la;
      s.l = la.size();
    } else {
      s.l_prime += la.size();
    }
  }
  Root dim = s.dimension(seq.datum());
  if (dim != index_weight(c, seq))
    throw InternalError("stratum_data_of_index: dimension bookkeeping mismatch");
  return s;
}

/// Multiplicity of the lambda-isotypic piece in the permutation action on
/// mu-flags; coincides with the Kostka number.
inline long long induced_multiplicity(const Partition& mu, const Partition& la) {
  if (mu.size() != la.size())
    throw ConfigError("induced_multiplicity: partition sizes differ");
  return kostka(la, mu);
}

}  // namespace qab

#endif  // QAB_QUIVER_HH
