#pragma once

// Truncated formal power series over exact rationals, and the fixed-point
// solvers for
//
//   psi(z) = z exp(q(q-1) psi(z)),     H_q(z) = exp(q psi(z)) = exp(q z H_q^{q-1}).
//
// Everything is formal: no convergence or floating point is involved.

#include "chaintree/numeric.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaintree {

/// Coefficients c_0..c_N; every operation is exact through order N. Binary
/// operations on series of different order truncate to the smaller one.
class FormalPowerSeries {
 public:
  /// The zero series of order N.
  explicit FormalPowerSeries(int order) : coeffs_(checked_size(order)) {}

  FormalPowerSeries(int order, std::initializer_list<Rational> leading) : FormalPowerSeries(order) {
    std::size_t i = 0;
    for (const auto& c : leading) {
      if (i > static_cast<std::size_t>(order)) break;
      coeffs_[i++] = c;
    }
  }

  static FormalPowerSeries constant(int order, const Rational& c) { return {order, {c}}; }
  static FormalPowerSeries variable(int order) { return {order, {Rational(0), Rational(1)}}; }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Rational& operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
  Rational& operator[](int n) { return coeffs_.at(static_cast<std::size_t>(n)); }

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  FormalPowerSeries truncated(int order) const {
    FormalPowerSeries out(std::min(order, this->order()));
    for (int i = 0; i <= out.order(); ++i) out[i] = (*this)[i];
    return out;
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
  }

  /// Lowest index with a nonzero coefficient.
  std::optional<int> first_nonzero() const {
    for (int i = 0; i <= order(); ++i) {
      if ((*this)[i] != 0) return i;
    }
    return std::nullopt;
  }

  friend FormalPowerSeries operator+(const FormalPowerSeries& a, const FormalPowerSeries& b) {
    FormalPowerSeries out(std::min(a.order(), b.order()));
    for (int i = 0; i <= out.order(); ++i) out[i] = a[i] + b[i];
    return out;
  }

  friend FormalPowerSeries operator-(const FormalPowerSeries& a, const FormalPowerSeries& b) {
    FormalPowerSeries out(std::min(a.order(), b.order()));
    for (int i = 0; i <= out.order(); ++i) out[i] = a[i] - b[i];
    return out;
  }

  friend FormalPowerSeries operator*(const FormalPowerSeries& a, const FormalPowerSeries& b) {
    FormalPowerSeries out(std::min(a.order(), b.order()));
    const int n = out.order();
    for (int i = 0; i <= n; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (b[j] != 0) out[i + j] += a[i] * b[j];
      }
    }
    return out;
  }

  friend FormalPowerSeries operator*(const Rational& s, const FormalPowerSeries& a) {
    FormalPowerSeries out(a.order());
    for (int i = 0; i <= a.order(); ++i) out[i] = s * a[i];
    return out;
  }

  /// Multiplication by z, keeping the order.
  FormalPowerSeries shifted() const {
    FormalPowerSeries out(order());
    for (int i = 1; i <= order(); ++i) out[i] = (*this)[i - 1];
    return out;
  }

  /// Formal derivative; the result has order N - 1 (order 0 stays 0).
  FormalPowerSeries derivative() const {
    FormalPowerSeries out(std::max(order() - 1, 0));
    for (int i = 1; i <= order(); ++i) out[i - 1] = (*this)[i] * i;
    return out;
  }

  bool operator==(const FormalPowerSeries&) const = default;

 private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    return static_cast<std::size_t>(order) + 1;
  }

  std::vector<Rational> coeffs_;
};

inline FormalPowerSeries fps_add(const FormalPowerSeries& a, const FormalPowerSeries& b) { return a + b; }
inline FormalPowerSeries fps_mul(const FormalPowerSeries& a, const FormalPowerSeries& b) { return a * b; }

inline FormalPowerSeries fps_pow(const FormalPowerSeries& base, unsigned n) {
  FormalPowerSeries result = FormalPowerSeries::constant(base.order(), 1);
  FormalPowerSeries square = base;
  while (n != 0) {
    if (n & 1u) result = result * square;
    n >>= 1;
    if (n != 0) square = square * square;
  }
  return result;
}

/// exp(f) for f(0) = 0, from g' = f' g:  n g_n = sum_{j=1}^n j f_j g_{n-j}.
inline FormalPowerSeries fps_exp(const FormalPowerSeries& f) {
  if (f[0] != 0) throw std::domain_error("fps_exp: constant term must be zero");
  const int n = f.order();
  FormalPowerSeries g(n);
  g[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational acc = 0;
    for (int j = 1; j <= m; ++j) {
      if (f[j] != 0) acc += f[j] * j * g[m - j];
    }
    g[m] = acc / m;
  }
  return g;
}

/// The series with psi(0) = 0 solving psi = z exp(a psi), by fixed-point
/// iteration from psi = z. Each pass fixes one more coefficient, so N passes
/// reach order N.
inline FormalPowerSeries solve_psi(int a, int order) {
  if (order < 1) throw std::invalid_argument("solve_psi: order must be >= 1");
  const Rational scale(a);
  FormalPowerSeries psi = FormalPowerSeries::variable(order);
  for (int pass = 1; pass < order; ++pass) {
    psi = fps_exp(scale * psi).shifted();
  }
  return psi;
}

/// H_q = exp(q psi) with psi solving psi = z exp(q(q-1) psi). Coefficient k is h_k.
inline FormalPowerSeries solve_H(int q, int order) {
  if (q < 2) throw std::invalid_argument("solve_H: q must be >= 2");
  if (order < 0) throw std::invalid_argument("solve_H: order must be >= 0");
  if (order == 0) return FormalPowerSeries::constant(0, 1);
  return fps_exp(Rational(q) * solve_psi(q * (q - 1), order));
}

/// k-th Taylor coefficient of exp(c w): c^k / k!.
inline Rational exp_taylor_coefficient(const BigInt& c, int k) {
  return Rational(ipow(c, static_cast<unsigned>(k)), factorial(static_cast<unsigned>(k)));
}

/// Coefficient extraction after substituting z = w exp(-q(q-1)w):
///   h_k = [w^k] e^{c w} - q(q-1) [w^{k-1}] e^{c w},   c = q((q-1)k+1).
/// Both terms are evaluated separately; the cancellation is not pre-applied.
inline Rational lagrange_h(int q, int k) {
  if (q < 2) throw std::invalid_argument("lagrange_h: q must be >= 2");
  if (k < 1) throw std::invalid_argument("lagrange_h: k must be >= 1");
  const BigInt c = BigInt(q) * ((q - 1) * k + 1);
  return exp_taylor_coefficient(c, k) - Rational(q * (q - 1)) * exp_taylor_coefficient(c, k - 1);
}

struct IdentityResidual {
  std::string name;
  FormalPowerSeries residual;

  bool vanishes() const { return residual.is_zero(); }
  /// Highest order through which the residual is determined.
  int checked_order() const { return residual.order(); }
};

struct IdentityReport {
  int q;
  std::array<IdentityResidual, 4> residuals;

  bool all_vanish() const {
    return std::all_of(residuals.begin(), residuals.end(), [](const auto& r) { return r.vanishes(); });
  }
  int checked_order() const {
    int order = residuals.front().checked_order();
    for (const auto& r : residuals) order = std::min(order, r.checked_order());
    return order;
  }
};

/// Residuals for a caller-supplied pair (H, psi):
///   polya_H     H - exp(q z H^{q-1})
///   psi_subst   psi - z H^{q-1}
///   polya_psi   psi - z exp(q(q-1) psi)
///   ode         H' (1 - q(q-1) z H^{q-1}) - q H^q
/// The ODE residual loses one order to differentiation.
inline IdentityReport verify_identities(int q, const FormalPowerSeries& H, const FormalPowerSeries& psi) {
  const int n = std::min(H.order(), psi.order());
  const FormalPowerSeries h = H.truncated(n);
  const FormalPowerSeries p = psi.truncated(n);
  const FormalPowerSeries h_pow = fps_pow(h, static_cast<unsigned>(q - 1));
  const FormalPowerSeries z_h_pow = h_pow.shifted();

  const FormalPowerSeries polya_h = h - fps_exp(Rational(q) * z_h_pow);
  const FormalPowerSeries subst = p - z_h_pow;
  const FormalPowerSeries polya_psi = p - fps_exp(Rational(q * (q - 1)) * p).shifted();

  const FormalPowerSeries one = FormalPowerSeries::constant(n, 1);
  const FormalPowerSeries ode =
      h.derivative() * (one - Rational(q * (q - 1)) * z_h_pow) - Rational(q) * (h_pow * h);

  return IdentityReport{q,
                        {IdentityResidual{"polya_H", polya_h}, IdentityResidual{"psi_subst", subst},
                         IdentityResidual{"polya_psi", polya_psi}, IdentityResidual{"ode", ode}}};
}

inline IdentityReport verify_identities(int q, int order) {
  if (q < 2) throw std::invalid_argument("verify_identities: q must be >= 2");
  if (order < 2) throw std::invalid_argument("verify_identities: order must be >= 2");
  return verify_identities(q, solve_H(q, order), solve_psi(q * (q - 1), order));
}

/// JSON-friendly exact coefficient strings: ["1","3","45/2",...].
inline std::vector<std::string> coefficient_strings(const FormalPowerSeries& f) {
  std::vector<std::string> out;
  out.reserve(f.coefficients().size());
  for (const auto& c : f.coefficients()) out.push_back(to_string(c));
  return out;
}

}  // namespace chaintree
