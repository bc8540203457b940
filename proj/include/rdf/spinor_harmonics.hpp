#pragma once
#include <Eigen/Dense>
#include <complex>

namespace rdf::Angular {

//! Orbital angular momentum of the upper component
constexpr int l_k(int kappa) { return kappa > 0 ? kappa : -kappa - 1; }
//! 2j = 2|kappa| - 1
constexpr int twoj_k(int kappa) { return 2 * (kappa > 0 ? kappa : -kappa) - 1; }

//! Y_lm with the Condon-Shortley phase
std::complex<double> Ylm(int l, int m, double theta, double phi);

//! Two-component spin-angular function Omega_{kappa m}(r^), twom = 2m.
//! Phases are such that (sigma . r^) Omega_{kappa m} = -Omega_{-kappa m}.
Eigen::Vector2cd spinor_harmonic(int kappa, int twom, double x, double y,
                                 double z);

} // namespace rdf::Angular
