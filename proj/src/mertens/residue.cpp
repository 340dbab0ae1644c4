#include "ffm/mertens/residue.hpp"

#include <cmath>

namespace ffm::mertens {

unsigned residue_digits(const zeta::ZeroData& zd, long N) {
  double d = 0.5 * static_cast<double>(N) * std::log10(static_cast<double>(zd.q)) +
             2.0 * zd.r_max * std::log10(static_cast<double>(N) + 2.0) + 30.0;
  return static_cast<unsigned>(std::ceil(d));
}

std::complex<double> residue_sum(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long N) {
  if (zd.zeros.empty()) return {0.0, 0.0};
  return with_digits(residue_digits(zd, N), [&]<class R>() { return residue_sum_at<R>(P, zd, N).to_complex(); });
}

double residue_defect(const zeta::LPolynomial& P, const zeta::ZeroData& zd, const BigInt& c_N, long N) {
  if (zd.zeros.empty()) return std::abs(to_double(c_N));
  return with_digits(residue_digits(zd, N), [&]<class R>() {
    Cx<R> s = residue_sum_at<R>(P, zd, N);
    s += Cx<R>(to_real<R>(c_N));
    return static_cast<double>(s.abs());
  });
}

double residue_bound(const zeta::LPolynomial& P) {
  const double q = static_cast<double>(P.q);
  return 2.0 * (1.0 + q) / std::pow(std::sqrt(q) - 1.0, 2.0 * P.genus());
}

std::vector<std::complex<double>> main_term_amplitudes(const zeta::LPolynomial& P, const zeta::ZeroData& zd) {
  std::vector<std::complex<double>> out(zd.zeros.size(), 0.0);
  const double q = static_cast<double>(P.q);
  for (std::size_t i = 0; i < zd.zeros.size(); ++i) {
    const auto& z = zd.zeros[i];
    if (z.order != zd.r_max) continue;
    const int r = z.order;
    const std::complex<double> g = z.gamma;
    const std::complex<double> u0 = 1.0 / g;
    auto p = taylor_at<double>(P, Cx<double>(u0.real(), u0.imag()), r);
    std::complex<double> pr = p[r].to_complex();
    double fact = 1;
    for (int k = 2; k <= r; ++k) fact *= k;
    std::complex<double> e0 = (1.0 - u0) * (1.0 - q * u0);
    std::complex<double> zr = fact * pr / e0;  // Z^{(r)}(u0)
    out[i] = std::pow(-g, r) * static_cast<double>(r) / zr * g / (g - 1.0);
  }
  return out;
}

double asymptotic_main_term(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long X) {
  auto amp = main_term_amplitudes(P, zd);
  std::complex<double> acc = 0;
  for (std::size_t i = 0; i < zd.zeros.size(); ++i) {
    if (amp[i] == 0.0) continue;
    // e^{iX theta} with theta = arg gamma
    acc += amp[i] * std::polar(1.0, std::arg(zd.zeros[i].gamma) * static_cast<double>(X));
  }
  return acc.real();
}

std::vector<CosineTerm> cosine_terms(const zeta::LPolynomial& P, const zeta::ZeroData& zd) {
  if (!zd.all_simple()) throw Refusal("cosine form needs simple zeros");
  auto amp = main_term_amplitudes(P, zd);
  std::vector<CosineTerm> out;
  for (std::size_t i = 0; i < zd.zeros.size(); ++i) {
    if (zd.zeros[i].gamma.imag() <= 0) continue;
    std::complex<double> a = -amp[i];  // gamma/Z'(1/gamma) * gamma/(gamma-1)
    out.push_back({std::abs(a), std::arg(a), std::arg(zd.zeros[i].gamma)});
  }
  return out;
}

double bound_D(const zeta::LPolynomial& P, const zeta::ZeroData& zd) {
  double s = 0;
  for (auto a : main_term_amplitudes(P, zd)) s += std::abs(a);
  return s / std::sqrt(static_cast<double>(P.q));
}

}  // namespace ffm::mertens
