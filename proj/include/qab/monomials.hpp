/**
 * @file monomials.hpp
 * @brief Monomial basis words: free-algebra products of divided powers
 *        f_i^(d), built from PBW indices through the vertex total order.
 *
 * Words are free-algebra representatives only; no Serre reduction happens
 * anywhere.  All structure flows through the inner product.
 */
#ifndef QAB_MONOMIALS_HH
#define QAB_MONOMIALS_HH

#include "qab/pbw.hpp"

namespace qab {

/// A word of (vertex, divided power) letters, powers strictly positive.
struct MonomialWord {
  std::vector<std::pair<int, int>> letters;

  void append(int vertex, int power) {
    if (power < 0) throw InternalError("MonomialWord negative power");
    if (power > 0) letters.emplace_back(vertex, power);
  }
  void append(const MonomialWord& w) {
    for (auto [v, p] : w.letters) letters.emplace_back(v, p);
  }

  Root weight(const CartanDatum& d) const {
    Root w(static_cast<size_t>(d.vertex_count()));
    for (auto [v, p] : letters) w[static_cast<size_t>(v)] += p;
    return w;
  }

  /// Total divided-power count = length of the color sequence.
  int color_length() const {
    int t = 0;
    for (auto [v, p] : letters) t += p;
    return t;
  }

  friend bool operator==(const MonomialWord& a, const MonomialWord& b) {
    return a.letters == b.letters;
  }
  friend bool operator!=(const MonomialWord& a, const MonomialWord& b) { return !(a == b); }
  friend bool operator<(const MonomialWord& a, const MonomialWord& b) {
    return a.letters < b.letters;
  }

  /// "f3^(2) f1^(1)" (empty word renders as "1").
  std::string str() const {
    if (letters.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < letters.size(); ++i) {
      if (i) s += " ";
      s += "f" + std::to_string(letters[i].first) + "^(" +
           std::to_string(letters[i].second) + ")";
    }
    return s;
  }

  std::string cache_key() const {
    std::string s;
    for (auto [v, p] : letters) s += std::to_string(v) + "^" + std::to_string(p) + ".";
    return s;
  }
};

/**
 * m(c*beta) for a real positive root beta: write c*beta = sum_j d_j alpha_{i_j}
 * over the vertex total order (i_0, ..., i_n) and emit the letters
 * (i_n, d_n), ..., (i_0, d_0), dropping zero powers.
 */
inline MonomialWord m_real(int c, const Root& beta, const BetaSequence& seq) {
  const CartanDatum& d = seq.datum();
  if (!d.is_positive_real_root(beta))
    throw ConfigError("m_real: not a positive real root: " + beta.str());
  const auto& order = seq.total_order_I();
  MonomialWord w;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    long long power = static_cast<long long>(c) * beta[static_cast<size_t>(*it)];
    w.append(*it, static_cast<int>(power));
  }
  return w;
}

/// m(c_+) = m(c_0 beta_0) m(c_-1 beta_-1) ... (descending k).
inline MonomialWord m_plus(const std::map<long long, int>& plus, const BetaSequence& seq) {
  MonomialWord w;
  for (auto it = plus.rbegin(); it != plus.rend(); ++it)
    w.append(m_real(it->second, seq.beta(it->first), seq));
  return w;
}

/// m(c_-) = ... m(c_2 beta_2) m(c_1 beta_1) (largest k leftmost).
inline MonomialWord m_minus(const std::map<long long, int>& minus, const BetaSequence& seq) {
  MonomialWord w;
  for (auto it = minus.rbegin(); it != minus.rend(); ++it)
    w.append(m_real(it->second, seq.beta(it->first), seq));
  return w;
}

/// m(i,c) = m(c(delta - alpha_i)) f_i^(c), a word of weight c*delta.
inline MonomialWord m_imag_single(int i, int c, const BetaSequence& seq) {
  if (i == 0) throw ConfigError("m_imag_single: vertex must lie in I_0");
  const CartanDatum& d = seq.datum();
  Root beta = d.delta() - d.simple_root(i);
  MonomialWord w = m_real(c, beta, seq);
  w.append(i, c);
  return w;
}

/// m(i,mu) = m(i,mu_1) m(i,mu_2) ... over the parts in decreasing order.
inline MonomialWord m_imag_partition(int i, const Partition& mu, const BetaSequence& seq) {
  MonomialWord w;
  for (int part : mu.parts) w.append(m_imag_single(i, part, seq));
  return w;
}

/// m(c) = m(c_+) m(c_0) m(c_-), the I_0 factors of m(c_0) taken in the
/// restriction of the vertex total order to I_0.
inline MonomialWord m_index(const PBWIndex& c, const BetaSequence& seq) {
  MonomialWord w = m_plus(c.plus, seq);
  for (int v : seq.total_order_I()) {
    if (v == 0) continue;
    auto it = c.zero.find(v);
    if (it != c.zero.end()) w.append(m_imag_partition(v, it->second, seq));
  }
  w.append(m_minus(c.minus, seq));
  return w;
}

}  // namespace qab

#endif  // QAB_MONOMIALS_HH
