#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hkgeom/error.hpp"

namespace hk {

constexpr int kMaxJetVars = 8;

/// Exponent multi-index. Unused trailing slots stay zero.
using Exponents = std::array<std::uint8_t, kMaxJetVars>;

inline int total_degree(const Exponents& e) {
  int d = 0;
  for (auto k : e) d += k;
  return d;
}

/**
 * Truncated multivariate polynomial (a jet at the origin).
 *
 * A jet with max_degree m stands for a function known modulo terms of degree
 * > m. Products keep the largest degree that is still exact given each
 * factor's lowest nonzero degree, so a product of a jet exact through 5 with
 * valuation 1 and one exact through 4 with valuation 0 is exact through 5.
 * Derivatives lower the exact degree by one.
 */
template <typename Scalar>
class Jet {
 public:
  using Terms = std::map<Exponents, Scalar>;

  Jet(int num_vars, int max_degree) : num_vars_(num_vars), max_degree_(max_degree) {
    if (num_vars < 0 || num_vars > kMaxJetVars) fail(ErrorKind::MalformedInput, "jet variable count out of range");
  }

  static Jet constant(int num_vars, int max_degree, Scalar value) {
    Jet j(num_vars, max_degree);
    j.add_term(Exponents{}, value);
    return j;
  }

  static Jet variable(int num_vars, int max_degree, int var) {
    Jet j(num_vars, max_degree);
    Exponents e{};
    e[var] = 1;
    j.add_term(e, Scalar(1));
    return j;
  }

  int num_vars() const { return num_vars_; }
  int max_degree() const { return max_degree_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Lowest degree carrying a stored term; max_degree + 1 when there is none.
  int valuation() const {
    int v = max_degree_ + 1;
    for (const auto& [e, c] : terms_) v = std::min(v, total_degree(e));
    return v;
  }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  Scalar coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const Exponents& e, Scalar c) {
    for (int k = num_vars_; k < kMaxJetVars; ++k)
      if (e[k] != 0) fail(ErrorKind::MalformedInput, "exponent uses a variable beyond num_vars");
    if (total_degree(e) > max_degree_) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    } else if (c == Scalar(0)) {
      terms_.erase(it);
    }
  }

  Jet& operator+=(const Jet& o) {
    check_compatible(o);
    max_degree_ = std::min(max_degree_, o.max_degree_);
    drop_above(max_degree_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Jet& operator-=(const Jet& o) {
    check_compatible(o);
    max_degree_ = std::min(max_degree_, o.max_degree_);
    drop_above(max_degree_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Jet& operator*=(Scalar s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, Scalar s) { return a *= s; }
  friend Jet operator*(Scalar s, Jet a) { return a *= s; }
  Jet operator-() const { return Jet(*this) *= Scalar(-1); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    const int exact = std::min(a.max_degree_ + b.valuation(), b.max_degree_ + a.valuation());
    Jet out(a.num_vars_, exact);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e{};
        for (int k = 0; k < kMaxJetVars; ++k) e[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
        out.add_term(e, ca * cb);
      }
    return out;
  }

  Jet derivative(int var) const {
    if (var < 0 || var >= num_vars_) fail(ErrorKind::IndexOutOfRange, "derivative variable out of range");
    Jet out(num_vars_, max_degree_ - 1);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      out.add_term(d, c * static_cast<double>(e[var]));
    }
    return out;
  }

  Jet homogeneous_part(int deg) const {
    Jet out(num_vars_, max_degree_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == deg) out.add_term(e, c);
    return out;
  }

  Jet truncated(int deg) const {
    Jet out(num_vars_, std::min(deg, max_degree_));
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
  }

  /// Keep the stored polynomial but declare it exact through `deg`.
  Jet with_max_degree(int deg) const {
    Jet out(num_vars_, deg);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
  }

  /// Substitute zero for every variable flagged in `mask`.
  Jet restricted(const std::vector<bool>& zero_mask) const {
    Jet out(num_vars_, max_degree_);
    for (const auto& [e, c] : terms_) {
      bool keep = true;
      for (int k = 0; k < num_vars_ && keep; ++k)
        if (zero_mask[k] && e[k] != 0) keep = false;
      if (keep) out.add_term(e, c);
    }
    return out;
  }

  template <typename Point>
  auto evaluate(const Point& point) const {
    using Value = std::common_type_t<Scalar, std::decay_t<decltype(point[0])>>;
    Value sum(0);
    for (const auto& [e, c] : terms_) {
      Value term(c);
      for (int k = 0; k < num_vars_; ++k)
        for (int p = 0; p < e[k]; ++p) term *= point[k];
      sum += term;
    }
    return sum;
  }

  Scalar constant_term() const { return coefficient(Exponents{}); }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, static_cast<double>(std::abs(c)));
    return m;
  }

  /// Drop coefficients with magnitude below tol.
  Jet pruned(double tol) const {
    Jet out(num_vars_, max_degree_);
    for (const auto& [e, c] : terms_)
      if (std::abs(c) > tol) out.add_term(e, c);
    return out;
  }

 private:
  void check_compatible(const Jet& o) const {
    if (num_vars_ != o.num_vars_) fail(ErrorKind::MalformedInput, "jets have different variable counts");
  }

  void drop_above(int deg) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (total_degree(it->first) > deg) {
        it = terms_.erase(it);
      } else {
        ++it;
      }
    }
  }

  int num_vars_;
  int max_degree_;
  Terms terms_;
};

using JetPolynomial = Jet<double>;
using ComplexJet = Jet<std::complex<double>>;

/// Square matrix of jets, row-major.
template <typename Scalar>
struct JetMatrix {
  int n = 0;
  std::vector<Jet<Scalar>> entries;

  Jet<Scalar>& operator()(int r, int c) { return entries[static_cast<std::size_t>(r * n + c)]; }
  const Jet<Scalar>& operator()(int r, int c) const { return entries[static_cast<std::size_t>(r * n + c)]; }
};

using RealJetMatrix = JetMatrix<double>;
using ComplexJetMatrix = JetMatrix<std::complex<double>>;

inline ComplexJet complexify(const JetPolynomial& j) {
  ComplexJet out(j.num_vars(), j.max_degree());
  for (const auto& [e, c] : j.terms()) out.add_term(e, std::complex<double>(c, 0.0));
  return out;
}

inline JetPolynomial real_part(const ComplexJet& j) {
  JetPolynomial out(j.num_vars(), j.max_degree());
  for (const auto& [e, c] : j.terms()) out.add_term(e, c.real());
  return out;
}

inline JetPolynomial imag_part(const ComplexJet& j) {
  JetPolynomial out(j.num_vars(), j.max_degree());
  for (const auto& [e, c] : j.terms()) out.add_term(e, c.imag());
  return out;
}

/// Multi-index helper: exponents from a list of variable indices (with repetition).
inline Exponents monomial(std::initializer_list<int> vars) {
  Exponents e{};
  for (int v : vars) e[v] += 1;
  return e;
}

/// Matrix product of jet matrices.
template <typename Scalar>
JetMatrix<Scalar> multiply(const JetMatrix<Scalar>& a, const JetMatrix<Scalar>& b) {
  JetMatrix<Scalar> out{a.n, {}};
  const int vars = a.entries.front().num_vars();
  for (int r = 0; r < a.n; ++r)
    for (int c = 0; c < a.n; ++c) {
      int exact = 1 << 20;
      Jet<Scalar> sum(vars, exact);
      for (int k = 0; k < a.n; ++k) sum += a(r, k) * b(k, c);
      out.entries.push_back(std::move(sum));
    }
  return out;
}

}  // namespace hk
