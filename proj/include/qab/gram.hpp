/**
 * @file gram.hpp
 * @brief Exact inner products of monomial words, and Gram matrices of
 *        monomial bases over weight fibers.
 *
 * Three independent evaluation routes are provided:
 *   - a brute-force sum over color-matching permutations, weighted by the
 *     inversion statistic A(xi);
 *   - a dynamic program over per-letter consumption counts that evaluates
 *     the same sum without enumerating permutations (the production path);
 *   - a recursion through the twisted coproduct, peeling one generator at
 *     a time from the second word.
 * The first two compute the permutation sum
 *     (F, F') = (prod [c_k]! [c'_k]!)^{-1} (1-q^2)^{-t} sum_xi q^{-A(xi)},
 * the third uses only the defining axioms of the form, so their agreement
 * is a genuine cross-check.
 */
#ifndef QAB_GRAM_HH
#define QAB_GRAM_HH

#include "qab/matrix.hpp"
#include "qab/monomials.hpp"
#include "qab/ratfn.hpp"

#include <atomic>
#include <thread>
#include <unordered_map>

namespace qab {

/// Color sequence of a word: each vertex repeated by its divided power.
inline std::vector<int> color_sequence(const MonomialWord& w) {
  std::vector<int> colors;
  for (auto [v, p] : w.letters)
    for (int r = 0; r < p; ++r) colors.push_back(v);
  return colors;
}

namespace detail {

/// (1-q^2)^t * prod of divided-power factorials of both words, the global
/// normalization of the permutation sum.
inline LaurentPoly xi_normalizer(const MonomialWord& a, const MonomialWord& b) {
  int t = a.color_length();
  LaurentPoly one_minus_q2;
  one_minus_q2.add_term(0, 1);
  one_minus_q2.add_term(2, -1);
  LaurentPoly norm = one_minus_q2.pow(t);
  for (auto [v, p] : a.letters) norm *= qfact(p);
  for (auto [v, p] : b.letters) norm *= qfact(p);
  return norm;
}

/// sum over sigma in S_d of q^(-2 * inv(sigma)) = prod_{j<=d} (1 + q^-2 + ... + q^-2(j-1)).
inline LaurentPoly inversion_factor(int d) {
  LaurentPoly r = LaurentPoly::one();
  for (int j = 2; j <= d; ++j) {
    LaurentPoly row;
    for (int l = 0; l < j; ++l) row.add_term(-2 * l, 1);
    r *= row;
  }
  return r;
}

}  // namespace detail

/**
 * The raw permutation sum  sum_{xi in Xi(nu,nu')} q^{-A(xi)}  by explicit
 * enumeration of color-matching bijections.  Oracle path; exponential in t.
 */
inline LaurentPoly xi_sum_bruteforce(const MonomialWord& w1, const MonomialWord& w2,
                                     const CartanDatum& d) {
  std::vector<int> nu = color_sequence(w1);
  std::vector<int> nup = color_sequence(w2);
  size_t t = nu.size();
  LaurentPoly sum;
  std::vector<int> assigned(t, -1);  // w(k) for k already placed
  std::vector<bool> used(t, false);
  auto rec = [&](auto&& self, size_t k, long long A) -> void {
    if (k == t) {
      sum.add_term(static_cast<int>(-A), 1);
      return;
    }
    for (size_t j = 0; j < t; ++j) {
      if (used[j] || nup[j] != nu[k]) continue;
      long long inc = 0;
      for (size_t kp = 0; kp < k; ++kp)
        if (assigned[kp] > static_cast<int>(j))
          inc += d.cartan(nu[kp], nu[k]);
      used[j] = true;
      assigned[k] = static_cast<int>(j);
      self(self, k + 1, A + inc);
      used[j] = false;
      assigned[k] = -1;
    }
  };
  rec(rec, 0, 0);
  return sum;
}

/**
 * The same permutation sum by dynamic programming.  Within one letter block
 * of w1 the colors agree, so summing over the block-internal arrangements
 * factors out as prod_j [j]_{q^-2}, and the cross-block inversion increments
 * depend only on how many positions of each letter are already consumed.
 * State: consumption count per letter of w1, advanced along the colors of w2.
 */
inline LaurentPoly xi_sum_dp(const MonomialWord& w1, const MonomialWord& w2,
                             const CartanDatum& d) {
  const auto& blocks = w1.letters;
  std::vector<int> targets = color_sequence(w2);
  size_t nb = blocks.size();

  std::map<std::vector<int>, LaurentPoly> state;
  state[std::vector<int>(nb, 0)] = LaurentPoly::one();
  for (int color : targets) {
    std::map<std::vector<int>, LaurentPoly> next;
    for (const auto& [consumed, val] : state) {
      for (size_t b = 0; b < nb; ++b) {
        if (blocks[b].first != color || consumed[b] >= blocks[b].second) continue;
        long long inc = 0;
        for (size_t bp = b + 1; bp < nb; ++bp)
          if (consumed[bp] > 0)
            inc += static_cast<long long>(consumed[bp]) * d.cartan(color, blocks[bp].first);
        std::vector<int> c2 = consumed;
        ++c2[b];
        auto& slot = next[std::move(c2)];
        slot += val.shifted(static_cast<int>(-inc));
      }
    }
    state = std::move(next);
    if (state.empty()) return LaurentPoly();  // colors cannot match
  }
  if (state.size() != 1) throw InternalError("xi_sum_dp: nonterminal final state");
  LaurentPoly total = state.begin()->second;
  for (auto [v, p] : blocks) total *= detail::inversion_factor(p);
  return total;
}

enum class Engine { dp, brute };

inline Engine engine_from_string(const std::string& s) {
  if (s == "dp") return Engine::dp;
  if (s == "brute") return Engine::brute;
  throw ConfigError("unknown engine '" + s + "' (expected dp or brute)");
}

/// Brute-force inner product (the stated oracle for the DP).
inline RatFn inner_product_bruteforce(const MonomialWord& w1, const MonomialWord& w2,
                                      const CartanDatum& d) {
  if (w1.weight(d) != w2.weight(d)) return RatFn();
  return RatFn(xi_sum_bruteforce(w1, w2, d), detail::xi_normalizer(w1, w2));
}

/// Production inner product; identical values to the brute-force route.
inline RatFn inner_product(const MonomialWord& w1, const MonomialWord& w2,
                           const CartanDatum& d, Engine engine = Engine::dp) {
  if (w1.weight(d) != w2.weight(d)) return RatFn();
  if (engine == Engine::brute) return inner_product_bruteforce(w1, w2, d);
  return RatFn(xi_sum_dp(w1, w2, d), detail::xi_normalizer(w1, w2));
}

namespace detail {

/// Memoized coproduct recursion on color sequences; divided powers are
/// expanded beforehand and normalized by the caller.
class CoproductEvaluator {
 public:
  explicit CoproductEvaluator(const CartanDatum& d) : d_(d) {
    LaurentPoly den;
    den.add_term(0, 1);
    den.add_term(2, -1);
    pair_value_ = RatFn(LaurentPoly::one(), den);  // (f_i, f_i)
  }

  RatFn eval(const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) return RatFn();
    if (x.empty()) return RatFn::one();
    std::string key = key_of(x, y);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    // (x, y' f_i) = sum over occurrences of f_i in x, with the twist factor
    // collected while commuting the extracted letter past the tail of x
    int i = y.back();
    std::vector<int> y2(y.begin(), y.end() - 1);
    RatFn total;
    for (size_t m = 0; m < x.size(); ++m) {
      if (x[m] != i) continue;
      long long twist = 0;
      for (size_t k = m + 1; k < x.size(); ++k) twist += d_.cartan(i, x[k]);
      std::vector<int> x2 = x;
      x2.erase(x2.begin() + static_cast<std::ptrdiff_t>(m));
      RatFn term = eval(x2, y2) * pair_value_;
      total += RatFn(LaurentPoly::q_power(static_cast<int>(-twist))) * term;
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

 private:
  static std::string key_of(const std::vector<int>& x, const std::vector<int>& y) {
    std::string s;
    for (int v : x) s += std::to_string(v) + ",";
    s += "|";
    for (int v : y) s += std::to_string(v) + ",";
    return s;
  }

  const CartanDatum& d_;
  RatFn pair_value_;
  std::unordered_map<std::string, RatFn> memo_;
};

}  // namespace detail

/**
 * Independent evaluation through the coproduct axioms (x, y'y'') =
 * (r(x), y' (x) y'') with r(f_i) = f_i (x) 1 + 1 (x) f_i and the twisted
 * product on the tensor square.
 */
inline RatFn inner_product_coproduct(const MonomialWord& w1, const MonomialWord& w2,
                                     const CartanDatum& d) {
  if (w1.weight(d) != w2.weight(d)) return RatFn();
  detail::CoproductEvaluator ev(d);
  RatFn raw = ev.eval(color_sequence(w1), color_sequence(w2));
  LaurentPoly facts = LaurentPoly::one();
  for (auto [v, p] : w1.letters) facts *= qfact(p);
  for (auto [v, p] : w2.letters) facts *= qfact(p);
  return raw / RatFn(facts);
}

/// Gram matrix of the monomial basis over one weight fiber, indices in the
/// solver's total order.
struct GramMatrix {
  IndexFiber fiber;
  std::vector<MonomialWord> words;
  Matrix<RatFn> entries;
  Matrix<LaurentPoly> within_class;  // block-diagonal transition chosen by basis_words
};

}  // namespace qab

#endif  // QAB_GRAM_HH
