#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>
#include <mpfr.h>

#include "ffm/core/errors.hpp"
#include "ffm/core/precision.hpp"

namespace ffm::rmt {

template <class R>
struct QuadRule {
  std::vector<R> x;
  std::vector<R> w;
};

namespace detail {

template <class R>
R gamma_r(const R& x) {
  if constexpr (std::is_same_v<R, double>) {
    return std::tgamma(x);
  } else {
    R out;
    mpfr_gamma(out.backend().data(), x.backend().data(), MPFR_RNDN);
    return out;
  }
}

// Monic Jacobi recurrence p_{k+1} = (x - a_k) p_k - b_k p_{k-1} for (1-t)^alpha (1+t)^beta.
template <class R>
void jacobi_recurrence(int n, const R& alpha, const R& beta, std::vector<R>& a, std::vector<R>& b) {
  a.assign(n, R(0));
  b.assign(n + 1, R(0));
  const R ab = alpha + beta;
  a[0] = (beta - alpha) / (ab + 2);
  for (int k = 1; k < n; ++k) {
    R s = R(2 * k) + ab;
    a[k] = (beta * beta - alpha * alpha) / (s * (s + 2));
  }
  for (int k = 1; k <= n; ++k) {
    R s = R(2 * k) + ab;
    b[k] = R(4 * k) * (R(k) + alpha) * (R(k) + beta) * (R(k) + ab) / (s * s * (s + 1) * (s - 1));
  }
}

}  // namespace detail

// n-point Gauss-Jacobi rule for weight (1-t)^alpha (1+t)^beta on [-1, 1].
// Nodes from the Golub-Welsch eigenproblem in double, then Newton-polished in R;
// weights are Christoffel numbers 1 / sum_k phat_k(x)^2.
template <class R>
QuadRule<R> compute_gauss_jacobi(int n, double alpha_d, double beta_d) {
  using std::abs;
  using std::pow;
  using std::sqrt;
  if (n < 1) throw InvalidArgument("quadrature needs at least one node");
  const R alpha(alpha_d), beta(beta_d);
  std::vector<R> a, b;
  detail::jacobi_recurrence<R>(n, alpha, beta, a, b);
  std::vector<R> sb(n + 1);
  for (int k = 1; k <= n; ++k) sb[k] = sqrt(b[k]);
  const R mu0 = pow(R(2), alpha + beta + 1) * detail::gamma_r<R>(alpha + 1) * detail::gamma_r<R>(beta + 1) /
                detail::gamma_r<R>(alpha + beta + 2);

  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) diag[k] = static_cast<double>(a[k]);
  for (int k = 1; k < n; ++k) sub[k - 1] = static_cast<double>(sb[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  if (n == 1) {
    QuadRule<R> r;
    r.x = {a[0]};
    r.w = {mu0};
    return r;
  }
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InternalError("Golub-Welsch eigenproblem failed");

  const R p0 = 1 / sqrt(mu0);
  // orthonormal recurrence, returns value and derivative of phat_n, optionally sum of squares
  auto eval = [&](const R& x, R& val, R& der, R* sumsq) {
    R pm(0), p = p0, dm(0), d(0);
    if (sumsq) *sumsq = p * p;
    for (int k = 0; k < n; ++k) {
      R pn = ((x - a[k]) * p - sb[k] * pm) / sb[k + 1];
      R dn = ((x - a[k]) * d + p - sb[k] * dm) / sb[k + 1];
      pm = p;
      p = pn;
      dm = d;
      d = dn;
      if (sumsq && k + 1 < n) *sumsq += p * p;
    }
    val = p;
    der = d;
  };

  QuadRule<R> rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const R tol = pow(R(10), -static_cast<int>(digits_of<R>()) + 2);
  for (int i = 0; i < n; ++i) {
    R x(es.eigenvalues()[i]);
    for (int it = 0; it < 30; ++it) {
      R val, der;
      eval(x, val, der, nullptr);
      R step = val / der;
      x -= step;
      if (abs(step) <= tol) break;
    }
    R val, der, sumsq;
    eval(x, val, der, &sumsq);
    rule.x[i] = x;
    rule.w[i] = 1 / sumsq;
  }
  return rule;
}

// Cached variant; safe to call from several threads.
template <class R>
const QuadRule<R>& gauss_jacobi(int n, double alpha, double beta) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, QuadRule<R>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({n, alpha, beta});
    if (it != cache.end()) return it->second;
  }
  QuadRule<R> rule = compute_gauss_jacobi<R>(n, alpha, beta);
  std::lock_guard lock(mutex);
  return cache.emplace(std::make_tuple(n, alpha, beta), std::move(rule)).first->second;
}

// Weight prod_i |x - c_i|^{e_i} on [lo, hi]; lo and hi must be among the points.
template <class R>
struct SingularWeight {
  std::vector<R> points;         // ascending
  std::vector<double> exponents;
};

// Discrete measure integrating polynomial-times-weight.
template <class R>
struct DiscreteMeasure {
  std::vector<R> x;
  std::vector<R> w;
};

template <class R>
struct PanelR {
  R lo, hi;
  long left = -1, right = -1;  // singular point at each end, -1 if none
};

// Geometric grading: every panel keeps the non-endpoint singular points at a
// distance of at least half its width.
template <class R>
std::vector<PanelR<R>> graded_panels(const SingularWeight<R>& wt) {
  std::vector<PanelR<R>> out;
  const std::size_t m = wt.points.size();
  std::vector<double> pd(m);
  for (std::size_t i = 0; i < m; ++i) pd[i] = static_cast<double>(wt.points[i]);
  struct Work {
    R lo, hi;
    long left, right;
  };
  for (std::size_t s = 0; s + 1 < m; ++s) {
    std::vector<Work> stack{{wt.points[s], wt.points[s + 1], static_cast<long>(s), static_cast<long>(s + 1)}};
    std::vector<PanelR<R>> seg;
    while (!stack.empty()) {
      Work w = stack.back();
      stack.pop_back();
      const double lo = static_cast<double>(w.lo), hi = static_cast<double>(w.hi);
      const double width = hi - lo;
      // nearest singular point strictly outside, on each side
      double dl = INFINITY, dr = INFINITY;
      for (std::size_t i = 0; i < m; ++i) {
        if (static_cast<long>(i) == w.left || static_cast<long>(i) == w.right) continue;
        if (wt.exponents[i] == 0.0) continue;
        if (pd[i] <= lo) dl = std::min(dl, lo - pd[i]);
        if (pd[i] >= hi) dr = std::min(dr, pd[i] - hi);
      }
      if (width <= 2 * std::min(dl, dr) * (1 + 1e-12) || width < 1e-300) {
        seg.push_back({w.lo, w.hi, w.left, w.right});
        continue;
      }
      if (dl <= dr) {
        R cut = w.lo + R(2 * dl);
        stack.push_back({cut, w.hi, -1, w.right});
        stack.push_back({w.lo, cut, w.left, -1});
      } else {
        R cut = w.hi - R(2 * dr);
        stack.push_back({w.lo, cut, w.left, -1});
        stack.push_back({cut, w.hi, -1, w.right});
      }
    }
    std::sort(seg.begin(), seg.end(), [](const PanelR<R>& a, const PanelR<R>& b) { return a.lo < b.lo; });
    out.insert(out.end(), seg.begin(), seg.end());
  }
  return out;
}

// n-point Gauss-Jacobi on each graded panel, with the panel's endpoint
// singularities absorbed into the Jacobi weight.
template <class R>
DiscreteMeasure<R> build_measure(const SingularWeight<R>& wt, int n) {
  using std::abs;
  using std::pow;
  DiscreteMeasure<R> m;
  for (const auto& pn : graded_panels(wt)) {
    const double alpha = pn.right >= 0 ? wt.exponents[pn.right] : 0.0;
    const double beta = pn.left >= 0 ? wt.exponents[pn.left] : 0.0;
    const auto& rule = gauss_jacobi<R>(n, alpha, beta);
    const R h = (pn.hi - pn.lo) / 2;
    const R mid = (pn.hi + pn.lo) / 2;
    const R scale = pow(h, R(1.0 + alpha + beta));
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      R x = mid + h * rule.x[i];
      R w = rule.w[i] * scale;
      for (std::size_t c = 0; c < wt.points.size(); ++c) {
        if (static_cast<long>(c) == pn.left || static_cast<long>(c) == pn.right) continue;
        if (wt.exponents[c] == 0.0) continue;
        w *= pow(abs(x - wt.points[c]), R(wt.exponents[c]));
      }
      m.x.push_back(std::move(x));
      m.w.push_back(std::move(w));
    }
  }
  return m;
}

}  // namespace ffm::rmt
