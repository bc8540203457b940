#pragma once
#include "rdf/algebra.hpp"
#include "rdf/lattice.hpp"
#include "rdf/radial.hpp"
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

/*
Stationary states of the Dirac field bound to a point charge |e| at rest.

Natural units hbar = c = m = 1 (kappa = 1, K = 1, e|e|/K = -alpha). The
radial reduction uses r-weighted amplitudes G, F with

  phi(r) = (1/r) ( G(r) Omega_{k m}, i F(r) Omega_{-k m} ),
  G' = -(k/r) G + (E - V + 1) F,
  F' = +(k/r) F - (E - V - 1) G,        V = -alpha / r,

k the relativistic quantum number. The eigenvalue search works with the
binding W = E - 1 directly, so that relative accuracy on W survives the
cancellation in E - 1.
*/
namespace rdf {

struct BoundStateSpec {
  int n;
  int kappa;
  double alpha;

  //! Throws DomainError unless n >= 1, kappa != 0, |kappa| <= n, kappa != n,
  //! 0 < alpha < |kappa|.
  void validate() const;
  int l() const;
  //! Interior sign changes of G: n - l - 1
  int radial_nodes() const;
  double s() const; // sqrt(kappa^2 - alpha^2)
  std::string label() const; // e.g. "2p3/2"
};

//! E = [1 + (alpha / (n - |k| + sqrt(k^2 - alpha^2)))^2]^{-1/2}
double sommerfeld_energy(int n, int kappa, double alpha);
//! E - 1 evaluated without cancellation
double sommerfeld_binding(int n, int kappa, double alpha);

//! r_min = 1e-6/alpha, r_max = 40 n^2/alpha
RadialGrid default_grid(const BoundStateSpec &spec, std::size_t count = 4000);

struct RadialOrbital {
  BoundStateSpec spec;
  RadialGrid grid;
  std::vector<double> G;
  std::vector<double> F;
  double energy;    // E, units mc^2
  double binding;   // E - 1, computed directly
  int nodes;        // interior sign changes of G
  double norm_constant; // factor applied to reach int (G^2 + F^2) dr = 1
  std::size_t match_index;
};

//! Shooting solution of the radial equations. tol bounds the width of the
//! final bisection bracket on E (bisection also stops when the bracket
//! reaches machine resolution). Throws ConvergenceError or GridTooSmallError.
RadialOrbital solve_bound_state(const BoundStateSpec &spec,
                                const RadialGrid &grid, double tol = 1e-15);

//! Value of (G, F) anywhere in (0, inf): a single RK4 step from the
//! nearest grid node below r, series form below r_min, decaying tail
//! beyond r_max.
std::array<double, 2> orbital_amplitudes(const RadialOrbital &orb, double r);

//! Complex spinor at (x, y, z), scaled so that int 2 kappa^2 phi^dagger phi d^3x = 1
//! (the electron then carries total Dirac charge e). twom = 2m.
ComplexSpinor4 orbital_spinor(const RadialOrbital &orb, int twom, double x,
                              double y, double z);

//! realify(phi) sampled on a Cartesian lattice. A non-frozen time axis
//! carries the stationary phase exp(-i E t).
Field4<RealSpinor8> sample_orbital(const RadialOrbital &orb, int twom,
                                   const Grid4 &grid, double amplitude = 1.0);

//! Electron charge in natural Gaussian units, e = -sqrt(alpha)
inline double electron_charge(double alpha) { return -std::sqrt(alpha); }

//! rho(r) = e (G^2 + F^2) / (4 pi r^2)
RadialScalarField orbital_density(const RadialOrbital &orb);

//! <1/r> = int (G^2 + F^2)/r dr
double expectation_inverse_r(const RadialOrbital &orb);

//! Kappa K int (d^0 Phi~ eta^0 N Phi - Phi~ eta^0 N d^0 Phi) d^3x with
//! d^0 Phi = E N Phi, in units mc^2. amplitude multiplies Phi.
double energy_functional_integral(const RadialOrbital &orb,
                                  const AlgebraSet &alg, double amplitude = 1.0);

//! As above, after checking int (G^2 + F^2) dr = 1 (InputError otherwise).
double energy_functional(const RadialOrbital &orb, const AlgebraSet &alg);

//! Gauss-Legendre (cos theta) x uniform (phi) rule on the unit sphere,
//! exact for the spin-angular densities of |kappa| <= 4.
struct SphereRule {
  std::vector<std::array<double, 3>> directions;
  std::vector<double> weights; // sum to 4 pi
};
const SphereRule &sphere_rule();

} // namespace rdf
