/**
 * @file weyl.hpp
 * @brief Affine Weyl group action on the root lattice, the doubly infinite
 *        reduced sequence attached to the translation by rho, the roots
 *        beta_k, the induced total order on vertices, and the defect map.
 *
 * Group elements act linearly on the affine root lattice (level zero), so
 * every element of the extended Weyl group, including translations and
 * diagram automorphisms, is an integer matrix.  Translations follow the
 * convention t_lambda : x -> x + (lambda, x) delta.
 */
#ifndef QAB_WEYL_HH
#define QAB_WEYL_HH

#include "qab/cartan.hpp"

#include <array>
#include <memory>
#include <mutex>

namespace qab {

/// Integer matrix acting on the affine root lattice, with tracked inverse.
class WeylElt {
 public:
  explicit WeylElt(int n) : n_(n), mat_(ident(n)), inv_(ident(n)) {}
  WeylElt(std::vector<std::vector<long long>> m, std::vector<std::vector<long long>> mi)
      : n_(static_cast<int>(m.size())), mat_(std::move(m)), inv_(std::move(mi)) {}

  static WeylElt identity(int n) { return WeylElt(n); }

  static WeylElt reflection(const CartanDatum& d, int i) {
    int n = d.vertex_count();
    auto m = ident(n);
    for (int j = 0; j < n; ++j) m[i][j] -= d.cartan(i, j);
    return WeylElt(m, m);  // involution
  }

  Root apply(const Root& x) const { return mul(mat_, x); }
  Root apply_inverse(const Root& x) const { return mul(inv_, x); }

  friend WeylElt operator*(const WeylElt& a, const WeylElt& b) {
    return WeylElt(matmul(a.mat_, b.mat_), matmul(b.inv_, a.inv_));
  }

  WeylElt inverse() const { return WeylElt(inv_, mat_); }

  bool is_identity() const { return mat_ == ident(n_); }

  /// If this permutes the simple roots, return the permutation i -> pi(i).
  std::optional<std::vector<int>> as_simple_permutation() const {
    std::vector<int> perm(n_, -1);
    std::vector<bool> hit(n_, false);
    for (int j = 0; j < n_; ++j) {
      int image = -1;
      for (int i = 0; i < n_; ++i) {
        if (mat_[i][j] == 0) continue;
        if (mat_[i][j] != 1 || image != -1) return std::nullopt;
        image = i;
      }
      if (image < 0 || hit[image]) return std::nullopt;
      hit[image] = true;
      perm[j] = image;
    }
    return perm;
  }

  int size() const { return n_; }

 private:
  static std::vector<std::vector<long long>> ident(int n) {
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
  }
  static Root mul(const std::vector<std::vector<long long>>& m, const Root& x) {
    Root r(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
      long long s = 0;
      for (size_t j = 0; j < x.size(); ++j) s += m[i][j] * x[j];
      r[i] = s;
    }
    return r;
  }
  static std::vector<std::vector<long long>> matmul(
      const std::vector<std::vector<long long>>& a,
      const std::vector<std::vector<long long>>& b) {
    size_t n = a.size();
    std::vector<std::vector<long long>> r(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        if (a[i][k] == 0) continue;
        for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
      }
    return r;
  }

  int n_;
  std::vector<std::vector<long long>> mat_;
  std::vector<std::vector<long long>> inv_;
};

/// t_lambda : x -> x + (lambda, x) delta, lambda specified by the pairings
/// (lambda, alpha_j) for every vertex j.
inline WeylElt make_translation(const CartanDatum& d,
                                const std::vector<long long>& pairings) {
  int n = d.vertex_count();
  long long level = 0;  // (lambda, delta) must vanish for t_{-lambda} to invert
  for (int j = 0; j < n; ++j) level += pairings[static_cast<size_t>(j)] * d.delta()[static_cast<size_t>(j)];
  if (level != 0) throw InternalError("make_translation: (lambda, delta) != 0");
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0)),
      mi(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = mi[i][i] = 1;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      m[i][j] += pairings[j] * d.delta()[i];
      mi[i][j] -= pairings[j] * d.delta()[i];
    }
  return WeylElt(std::move(m), std::move(mi));
}

/**
 * Length of an extended affine Weyl group element, computed as the size of
 * its inversion set {positive real roots mapped to negative roots}.  The
 * count is finite and reduces to a closed form over the finite positive
 * roots, so no search bound is involved.
 */
inline long long weyl_length(const CartanDatum& d, const WeylElt& g) {
  long long total = 0;
  for (const auto& a : d.finite_positive_roots()) {
    // g(a) = mu + m * delta with mu finite
    Root ga = g.apply(a);
    long long m = ga[0];
    Root mu = ga - m * d.delta();
    bool mu_pos = d.is_finite_positive_root(mu);
    if (!mu_pos && !d.is_finite_positive_root(-mu))
      throw InternalError("weyl_length: image not a root");
    // branch a + k*delta, k >= 0, image mu + (m+k) delta
    if (mu_pos) {
      if (m < 0) total += -m;          // k in [0, -m-1]
    } else {
      if (m <= 0) total += 1 - m;      // k in [0, -m]
    }
    // branch -a + k*delta, k >= 1, image -mu + (k-m) delta
    if (mu_pos) {
      if (m >= 1) total += m;          // k in [1, m]
    } else {
      if (m >= 2) total += m - 1;      // k in [1, m-1]
    }
  }
  return total;
}

/// Result of peeling a reduced word off the left of an element: g = word * tau.
struct ReducedDecomposition {
  std::vector<int> word;
  std::vector<int> tau;  // diagram automorphism as a vertex permutation
};

/**
 * Greedy left-descent peeling: repeatedly pick the smallest vertex i with
 * g^{-1}(alpha_i) negative.  Terminates in exactly length(g) steps and
 * leaves a diagram automorphism.
 */
inline ReducedDecomposition greedy_decompose(const CartanDatum& d, WeylElt g) {
  ReducedDecomposition out;
  long long len = weyl_length(d, g);
  for (long long step = 0; step < len; ++step) {
    int descent = -1;
    for (int i = 0; i < d.vertex_count(); ++i) {
      if (g.apply_inverse(d.simple_root(i)).nonpos()) {
        descent = i;
        break;
      }
    }
    if (descent < 0) throw InternalError("greedy_decompose: no descent while length > 0");
    out.word.push_back(descent);
    g = WeylElt::reflection(d, descent) * g;
  }
  auto perm = g.as_simple_permutation();
  if (!perm) throw InternalError("greedy_decompose: residual is not a diagram automorphism");
  // the residual must be a diagram symmetry, not just any permutation
  for (int i = 0; i < d.vertex_count(); ++i)
    for (int j = 0; j < d.vertex_count(); ++j)
      if (d.cartan(i, j) != d.cartan((*perm)[i], (*perm)[j]))
        throw InternalError("greedy_decompose: residual permutation is not a diagram automorphism");
  out.tau = *perm;
  return out;
}

/**
 * The doubly infinite sequence attached to the translation by rho, together
 * with the map k -> beta_k, the induced total order on vertices and the
 * defect.  Construct via build_h().
 */
class BetaSequence {
 public:
  const CartanDatum& datum() const { return *datum_; }
  int period() const { return period_; }
  const std::vector<int>& word() const { return word_; }
  const std::vector<int>& tau() const { return tau_; }
  bool word_runs_backward() const { return backward_; }

  /// Letter i_k of the doubly infinite sequence.
  int letter(long long k) const {
    // base window holds the word letters; other positions are tau-twisted
    // whole-period shifts, i_{k+N} = tau(i_k)
    long long base_lo = backward_ ? 1 - period_ : 1;
    long long t = floor_div(k - base_lo, period_);
    long long k0 = k - t * period_;
    // backward: (i_0, i_-1, ..., i_{1-N}) = word; forward: (i_1, ..., i_N) = word
    int v = backward_ ? word_[static_cast<size_t>(-k0)]
                      : word_[static_cast<size_t>(k0 - 1)];
    if (t > 0)
      for (long long s = 0; s < t; ++s) v = tau_[static_cast<size_t>(v)];
    else
      for (long long s = 0; s < -t; ++s) v = tau_inv_[static_cast<size_t>(v)];
    return v;
  }

  /**
   * beta_k: for k <= 0 the product s_{i_0} s_{i_-1} ... s_{i_{k+1}} applied
   * to alpha_{i_k}; for k > 0 the product s_{i_1} ... s_{i_{k-1}} applied to
   * alpha_{i_k}.  Cached; concurrent reads are guarded.
   */
  Root beta(long long k) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (k <= 0) {
      while (static_cast<long long>(beta_neg_.size()) <= -k) extend_negative();
      return beta_neg_[static_cast<size_t>(-k)];
    }
    while (static_cast<long long>(beta_pos_.size()) < k) extend_positive();
    return beta_pos_[static_cast<size_t>(k - 1)];
  }

  /**
   * Vertices of I ordered by the position at which each simple root occurs
   * in the chain beta_0 < beta_-1 < ... < delta < ... < beta_2 < beta_1.
   */
  const std::vector<int>& total_order_I() const {
    std::call_once(order_once_, [this] { order_ = compute_total_order(); });
    return order_;
  }

  /// Defect via the Coxeter element C = s_{i_n} ... s_{i_0} of the total order.
  long long defect(const Root& x) const {
    std::call_once(defect_once_, [this] { defect_form_ = compute_defect_form(); });
    long long s = 0;
    for (size_t j = 0; j < x.size(); ++j) s += defect_form_[j] * x[j];
    return s;
  }

  /**
   * All pairs (k, beta_k) with beta_k <= nu componentwise.  Enumerates k in
   * whole periods outward and stops after a full period in which every
   * beta_k escapes the box; per-period growth of the delta coefficient
   * makes the list complete.
   */
  std::vector<std::pair<long long, Root>> real_roots_below(const Root& nu) const {
    if (!nu.nonneg()) throw ConfigError("real_roots_below: weight must lie in Q+");
    std::vector<std::pair<long long, Root>> out;
    for (int dir = 0; dir < 2; ++dir) {
      long long k = dir == 0 ? 0 : 1;
      for (;;) {
        bool any_inside = false;
        for (int step = 0; step < period_; ++step) {
          Root b = beta(k);
          if (b.leq(nu)) {
            out.emplace_back(k, b);
            any_inside = true;
          }
          k += dir == 0 ? -1 : 1;
        }
        if (!any_inside) break;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /**
   * Construct the sequence for the translation by rho.  The reduced word is
   * peeled greedily from the translation matrix; both the element and its
   * inverse, and both unrolling directions of the word, are candidates, and
   * the one realizing the positive-real-root partition
   * { beta_k : k <= 0 } = Delta_>, { beta_k : k > 0 } = Delta_< is kept.
   */
  static std::shared_ptr<BetaSequence> build_h(std::shared_ptr<const CartanDatum> datum) {
    const CartanDatum& d = *datum;
    std::vector<long long> pairings(static_cast<size_t>(d.vertex_count()), 1);
    // (rho, alpha_0) = -(rho, theta) = -(height of theta)
    Root theta = d.delta() - d.simple_root(0);
    pairings[0] = -(theta.height());
    WeylElt t_rho = make_translation(d, pairings);

    std::vector<ReducedDecomposition> decomps = {greedy_decompose(d, t_rho),
                                                 greedy_decompose(d, t_rho.inverse())};
    for (const auto& dec : decomps)
      for (bool backward : {true, false}) {
        std::shared_ptr<BetaSequence> seq(new BetaSequence(datum, dec, backward));
        if (seq->partition_holds()) return seq;
      }
    throw InternalError("build_h: no word orientation realizes the root partition");
  }

  /// The (1.4.3)-style check used to pick the orientation; exposed for tests.
  bool partition_holds(long long half_window = 0) const {
    if (half_window == 0) half_window = std::max(2 * period_, 24);
    std::set<Root> seen;
    for (long long k = -half_window; k <= half_window; ++k) {
      Root b = beta(k);
      RootClass cls = datum_->classify_root(b);
      if (k <= 0 && cls != RootClass::real_gt) return false;
      if (k > 0 && cls != RootClass::real_lt) return false;
      if (!seen.insert(b).second) return false;  // must be pairwise distinct
    }
    return true;
  }

 private:
  BetaSequence(std::shared_ptr<const CartanDatum> datum, ReducedDecomposition dec,
               bool backward)
      : datum_(std::move(datum)),
        word_(std::move(dec.word)),
        tau_(std::move(dec.tau)),
        period_(static_cast<int>(word_.size())),
        backward_(backward) {
    tau_inv_.assign(tau_.size(), 0);
    for (size_t i = 0; i < tau_.size(); ++i) tau_inv_[static_cast<size_t>(tau_[i])] = static_cast<int>(i);
    beta_neg_.push_back(datum_->simple_root(letter(0)));
    prod_neg_ = std::make_unique<WeylElt>(WeylElt::identity(datum_->vertex_count()));
    beta_pos_.push_back(datum_->simple_root(letter(1)));
    prod_pos_ = std::make_unique<WeylElt>(WeylElt::identity(datum_->vertex_count()));
  }

  static long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
  }

  // beta_neg_[j] = beta_{-j}; prod_neg_ = s_{i_0} ... s_{i_{-j+1}} after j entries
  void extend_negative() const {
    long long j = static_cast<long long>(beta_neg_.size());
    // next: beta_{-j} = s_{i_0} ... s_{i_{-j+1}} (alpha_{i_{-j}})
    *prod_neg_ = *prod_neg_ * WeylElt::reflection(*datum_, letter(-(j - 1)));
    beta_neg_.push_back(prod_neg_->apply(datum_->simple_root(letter(-j))));
  }

  // beta_pos_[j-1] = beta_j; prod_pos_ = s_{i_1} ... s_{i_{j-1}} after j entries
  void extend_positive() const {
    long long j = static_cast<long long>(beta_pos_.size()) + 1;
    *prod_pos_ = *prod_pos_ * WeylElt::reflection(*datum_, letter(j - 1));
    beta_pos_.push_back(prod_pos_->apply(datum_->simple_root(letter(j))));
  }

  std::vector<int> compute_total_order() const {
    int n1 = datum_->vertex_count();
    std::vector<long long> found_at(static_cast<size_t>(n1), 0);
    std::vector<bool> found(static_cast<size_t>(n1), false);
    const long long bound = 100 * static_cast<long long>(period_);
    int remaining = n1;
    for (long long k = 0; k >= -bound && remaining > 0; --k) {
      Root b = beta(k);
      if (b.height() == 1) {
        int v = -1;
        for (int i = 0; i < n1; ++i)
          if (b[static_cast<size_t>(i)] == 1) v = i;
        if (found[static_cast<size_t>(v)])
          throw InternalError("total_order_I: simple root repeated among beta_k");
        found[static_cast<size_t>(v)] = true;
        found_at[static_cast<size_t>(v)] = k;
        --remaining;
      }
    }
    for (long long k = 1; k <= bound && remaining > 0; ++k) {
      Root b = beta(k);
      if (b.height() == 1) {
        int v = -1;
        for (int i = 0; i < n1; ++i)
          if (b[static_cast<size_t>(i)] == 1) v = i;
        if (found[static_cast<size_t>(v)])
          throw InternalError("total_order_I: simple root repeated among beta_k");
        found[static_cast<size_t>(v)] = true;
        found_at[static_cast<size_t>(v)] = k;
        --remaining;
      }
    }
    if (remaining > 0)
      throw InternalError("total_order_I: some simple root not found within the search bound");
    // chain position: k <= 0 branch first (by -k ascending), then k > 0 by k descending
    std::vector<int> verts(static_cast<size_t>(n1));
    for (int i = 0; i < n1; ++i) verts[static_cast<size_t>(i)] = i;
    std::sort(verts.begin(), verts.end(), [&](int a, int b) {
      long long ka = found_at[static_cast<size_t>(a)], kb = found_at[static_cast<size_t>(b)];
      bool pa = ka > 0, pb = kb > 0;
      if (pa != pb) return pb;          // negative-branch roots come first
      if (!pa) return -ka < -kb;        // scan order k = 0, -1, -2, ...
      return ka > kb;                   // positive branch by k descending
    });
    return verts;
  }

  std::vector<long long> compute_defect_form() const {
    const auto& order = total_order_I();
    WeylElt c = WeylElt::identity(datum_->vertex_count());
    for (int v : order) c = WeylElt::reflection(*datum_, v) * c;  // s_{i_n} ... s_{i_0}
    WeylElt power = c;
    const int max_g = 1000;
    for (int g = 1; g <= max_g; ++g) {
      // translation iff (power - id) maps every alpha_j into Z * delta
      std::vector<long long> form(static_cast<size_t>(datum_->vertex_count()), 0);
      bool ok = true;
      for (int j = 0; j < datum_->vertex_count() && ok; ++j) {
        Root img = power.apply(datum_->simple_root(j)) - datum_->simple_root(j);
        long long m = img[0];
        if (img != m * datum_->delta()) ok = false;
        form[static_cast<size_t>(j)] = m;
      }
      if (ok) return form;
      power = power * c;
    }
    throw InternalError("defect: no power of the Coxeter element is a translation");
  }

  std::shared_ptr<const CartanDatum> datum_;
  std::vector<int> word_;
  std::vector<int> tau_, tau_inv_;
  int period_;
  bool backward_;

  mutable std::mutex mu_;
  mutable std::vector<Root> beta_neg_, beta_pos_;
  mutable std::unique_ptr<WeylElt> prod_neg_, prod_pos_;

  mutable std::once_flag order_once_;
  mutable std::vector<int> order_;
  mutable std::once_flag defect_once_;
  mutable std::vector<long long> defect_form_;
};

}  // namespace qab

#endif  // QAB_WEYL_HH
