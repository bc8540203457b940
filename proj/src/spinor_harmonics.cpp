#include "rdf/spinor_harmonics.hpp"
#include <algorithm>
#include <cmath>

namespace rdf::Angular {

std::complex<double> Ylm(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l)
    return 0.0;
  const int am = std::abs(m);
  // std::sph_legendre includes the (-1)^m Condon-Shortley factor
  const auto y = std::sph_legendre(unsigned(l), unsigned(am), theta) *
                 std::polar(1.0, double(am) * phi);
  if (m >= 0)
    return y;
  return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

Eigen::Vector2cd spinor_harmonic(int kappa, int twom, double x, double y,
                                 double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  const double theta = r > 0.0 ? std::acos(std::clamp(z / r, -1.0, 1.0)) : 0.0;
  const double phi = std::atan2(y, x);
  const int l = l_k(kappa);
  const double m = 0.5 * twom;
  const int m_lo = (twom - 1) / 2; // m - 1/2
  const int m_hi = (twom + 1) / 2; // m + 1/2
  const double norm = 2.0 * l + 1.0;
  Eigen::Vector2cd omega;
  if (kappa < 0) {
    omega(0) = std::sqrt((l + m + 0.5) / norm) * Ylm(l, m_lo, theta, phi);
    omega(1) = std::sqrt((l - m + 0.5) / norm) * Ylm(l, m_hi, theta, phi);
  } else {
    omega(0) = -std::sqrt((l - m + 0.5) / norm) * Ylm(l, m_lo, theta, phi);
    omega(1) = std::sqrt((l + m + 0.5) / norm) * Ylm(l, m_hi, theta, phi);
  }
  return omega;
}

} // namespace rdf::Angular
