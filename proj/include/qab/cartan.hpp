/**
 * @file cartan.hpp
 * @brief Simply-laced affine Cartan data, the root lattice, and the
 *        classification of positive roots.
 *
 * Supported types: A_n^(1) (n >= 2), D_n^(1) (n >= 4), E_6^(1), E_7^(1),
 * E_8^(1).  Vertex 0 is always the affine vertex; the finite sub-datum
 * lives on I_0 = {1, ..., n}.  Roots are integer coordinate vectors on the
 * simple roots alpha_0, ..., alpha_n.
 */
#ifndef QAB_CARTAN_HH
#define QAB_CARTAN_HH

#include "qab/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

namespace qab {

/// Raised on invalid user-facing configuration; the CLI maps it to exit 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Element of the affine root lattice in simple-root coordinates.
struct Root {
  std::vector<long long> c;

  Root() = default;
  explicit Root(size_t n) : c(n, 0) {}
  explicit Root(std::vector<long long> v) : c(std::move(v)) {}

  size_t size() const { return c.size(); }
  long long operator[](size_t i) const { return c[i]; }
  long long& operator[](size_t i) { return c[i]; }

  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
  }
  /// Coordinate sum (height for positive roots).
  long long height() const { return std::accumulate(c.begin(), c.end(), 0LL); }

  friend Root operator+(Root a, const Root& b) {
    for (size_t i = 0; i < a.c.size(); ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Root operator-(Root a, const Root& b) {
    for (size_t i = 0; i < a.c.size(); ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend Root operator-(Root a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend Root operator*(long long m, Root a) {
    for (auto& x : a.c) x *= m;
    return a;
  }
  friend bool operator==(const Root& a, const Root& b) { return a.c == b.c; }
  friend bool operator!=(const Root& a, const Root& b) { return a.c != b.c; }
  friend bool operator<(const Root& a, const Root& b) { return a.c < b.c; }

  /// Componentwise a <= b.
  bool leq(const Root& b) const {
    for (size_t i = 0; i < c.size(); ++i)
      if (c[i] > b.c[i]) return false;
    return true;
  }
  bool nonneg() const {
    return std::all_of(c.begin(), c.end(), [](long long x) { return x >= 0; });
  }
  bool nonpos() const {
    return std::all_of(c.begin(), c.end(), [](long long x) { return x <= 0; });
  }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s + ")";
  }
};

enum class RootClass { real_gt, real_lt, imaginary, not_positive_root };

enum class CartanType { A, D, E };

inline CartanType cartan_type_from_string(const std::string& s) {
  if (s == "A" || s == "a") return CartanType::A;
  if (s == "D" || s == "d") return CartanType::D;
  if (s == "E" || s == "e") return CartanType::E;
  throw ConfigError("unknown Cartan type '" + s + "' (expected A, D or E)");
}

class CartanDatum {
 public:
  /// Build the untwisted affine datum of the given finite type and rank.
  static CartanDatum make(CartanType type, int rank) {
    CartanDatum d;
    d.type_ = type;
    d.rank_ = rank;
    std::vector<std::pair<int, int>> edges;
    switch (type) {
      case CartanType::A:
        if (rank < 2) throw ConfigError("type A requires rank >= 2 (A_1^(1) is not simply-laced)");
        for (int i = 0; i < rank; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(rank, 0);  // close the cycle
        break;
      case CartanType::D:
        if (rank < 4) throw ConfigError("type D requires rank >= 4");
        // chain 2-3-...-(n-2), forks 1,0 at vertex 2 and n-1,n at n-2
        for (int i = 2; i + 1 <= rank - 2; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(1, 2);
        edges.emplace_back(0, 2);
        edges.emplace_back(rank - 1, rank - 2);
        edges.emplace_back(rank, rank - 2);
        break;
      case CartanType::E: {
        if (rank < 6 || rank > 8) throw ConfigError("type E requires rank in {6,7,8}");
        // Bourbaki finite diagram: chain 1-3-4-...-rank, with 2 attached to 4
        edges.emplace_back(1, 3);
        for (int i = 3; i + 1 <= rank; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(2, 4);
        // affine vertex attachment
        if (rank == 6) edges.emplace_back(0, 2);
        if (rank == 7) edges.emplace_back(0, 1);
        if (rank == 8) edges.emplace_back(0, 8);
        break;
      }
    }
    int n1 = rank + 1;
    d.cartan_.assign(n1, std::vector<int>(n1, 0));
    for (int i = 0; i < n1; ++i) d.cartan_[i][i] = 2;
    for (auto [a, b] : edges) {
      d.cartan_[a][b] = -1;
      d.cartan_[b][a] = -1;
    }
    d.delta_ = d.compute_delta();
    d.check();
    d.finite_positive_roots();  // populate eagerly; concurrent reads are then safe
    return d;
  }

  CartanType type() const { return type_; }
  int rank() const { return rank_; }
  int vertex_count() const { return rank_ + 1; }
  const Root& delta() const { return delta_; }

  int cartan(int i, int j) const { return cartan_[i][j]; }
  bool joined(int i, int j) const { return i != j && cartan_[i][j] == -1; }

  std::string type_string() const {
    switch (type_) {
      case CartanType::A: return "A";
      case CartanType::D: return "D";
      case CartanType::E: return "E";
    }
    return "?";
  }

  /// Symmetric bilinear form (x, y) = x^T A y.
  long long form(const Root& x, const Root& y) const {
    long long s = 0;
    for (int i = 0; i < vertex_count(); ++i) {
      if (x[i] == 0) continue;
      long long row = 0;
      for (int j = 0; j < vertex_count(); ++j)
        if (y[j] != 0) row += cartan_[i][j] * y[j];
      s += x[i] * row;
    }
    return s;
  }

  Root simple_root(int i) const {
    Root r(static_cast<size_t>(vertex_count()));
    r[static_cast<size_t>(i)] = 1;
    return r;
  }

  /// s_i(x) = x - (x, alpha_i) alpha_i.
  Root simple_reflect(int i, const Root& x) const {
    long long pairing = 0;
    for (int j = 0; j < vertex_count(); ++j) pairing += cartan_[i][j] * x[j];
    Root r = x;
    r[static_cast<size_t>(i)] -= pairing;
    return r;
  }

  /// Positive roots of the finite sub-datum on I_0, in full-lattice coordinates.
  const std::vector<Root>& finite_positive_roots() const {
    if (fin_pos_.empty()) {
      std::set<Root> seen;
      std::vector<Root> queue;
      for (int i = 1; i <= rank_; ++i) {
        Root a = simple_root(i);
        seen.insert(a);
        queue.push_back(a);
      }
      for (size_t head = 0; head < queue.size(); ++head) {
        Root x = queue[head];
        for (int i = 1; i <= rank_; ++i) {
          Root y = simple_reflect(i, x);
          if (y.nonneg() && !seen.count(y)) {
            seen.insert(y);
            queue.push_back(y);
          }
        }
      }
      fin_pos_.assign(seen.begin(), seen.end());
    }
    return fin_pos_;
  }

  bool is_finite_positive_root(const Root& x) const {
    const auto& roots = finite_positive_roots();
    return std::binary_search(roots.begin(), roots.end(), x);
  }

  /**
   * Classify x by the decomposition x = y + m*delta with y supported on I_0:
   * real_gt for y in Delta_0^+, m >= 0; real_lt for -y in Delta_0^+, m > 0;
   * imaginary for y = 0, m > 0.
   */
  RootClass classify_root(const Root& x) const {
    long long m = x[0];  // delta has coefficient 1 at the affine vertex
    Root y = x - m * delta_;
    if (y.is_zero()) return m > 0 ? RootClass::imaginary : RootClass::not_positive_root;
    if (m >= 0 && is_finite_positive_root(y)) return RootClass::real_gt;
    if (m > 0 && is_finite_positive_root(-y)) return RootClass::real_lt;
    return RootClass::not_positive_root;
  }

  bool is_positive_real_root(const Root& x) const {
    RootClass k = classify_root(x);
    return k == RootClass::real_gt || k == RootClass::real_lt;
  }

  /// All positive real roots of height <= bound (used by tests and fiber enumeration).
  std::vector<Root> positive_real_roots_up_to_height(long long bound) const {
    std::vector<Root> out;
    for (long long m = 0;; ++m) {
      Root md = m * delta_;
      if (md.height() - delta_.height() >= bound) break;
      for (const auto& a : finite_positive_roots()) {
        Root up = a + md;
        if (up.height() <= bound) out.push_back(up);
        if (m > 0) {
          Root dn = md - a;
          if (dn.height() <= bound) out.push_back(dn);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  CartanDatum() = default;

  /// Primitive positive integer null vector of the affine Cartan matrix.
  Root compute_delta() const {
    int n1 = vertex_count();
    // rational Gaussian elimination on A x = 0 with x_0 = 1
    std::vector<std::vector<BigRat>> m(n1, std::vector<BigRat>(n1 + 1, 0));
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) m[i][j] = cartan_[i][j];
    // impose x_0 = 1 as the last equation
    for (int j = 0; j <= n1; ++j) m[n1 - 1][j] = 0;
    m[n1 - 1][0] = 1;
    m[n1 - 1][n1] = 1;
    for (int col = 0, row = 0; col < n1 && row < n1; ++col) {
      int piv = -1;
      for (int r = row; r < n1; ++r)
        if (m[r][col] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[piv], m[row]);
      BigRat d = m[row][col];
      for (int j = col; j <= n1; ++j) m[row][j] /= d;
      for (int r = 0; r < n1; ++r) {
        if (r == row || m[r][col] == 0) continue;
        BigRat f = m[r][col];
        for (int j = col; j <= n1; ++j) m[r][j] -= f * m[row][j];
      }
      ++row;
    }
    Root d(static_cast<size_t>(n1));
    BigInt lcm_den = 1;
    std::vector<BigRat> x(n1);
    for (int i = 0; i < n1; ++i) {
      x[i] = m[i][n1];
      lcm_den = boost::multiprecision::lcm(lcm_den,
                                           boost::multiprecision::denominator(x[i]));
    }
    for (int i = 0; i < n1; ++i) {
      BigInt v = boost::multiprecision::numerator(x[i]) *
                 (lcm_den / boost::multiprecision::denominator(x[i]));
      d[i] = v.convert_to<long long>();
    }
    return d;
  }

  void check() const {
    for (int i = 0; i < vertex_count(); ++i)
      for (int j = 0; j < vertex_count(); ++j) {
        if (i == j && cartan_[i][j] != 2) throw InternalError("Cartan diagonal != 2");
        if (i != j && cartan_[i][j] != 0 && cartan_[i][j] != -1)
          throw InternalError("Cartan datum not simply-laced");
      }
    // A * delta = 0 and delta > 0
    for (int i = 0; i < vertex_count(); ++i) {
      long long s = 0;
      for (int j = 0; j < vertex_count(); ++j) s += cartan_[i][j] * delta_[j];
      if (s != 0) throw InternalError("delta is not a null vector");
      if (delta_[i] <= 0) throw InternalError("delta not positive");
    }
  }

  CartanType type_ = CartanType::A;
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  Root delta_;
  mutable std::vector<Root> fin_pos_;
};

}  // namespace qab

#endif  // QAB_CARTAN_HH
