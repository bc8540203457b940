#pragma once
#include "rdf/algebra.hpp"
#include "rdf/lattice.hpp"
#include "rdf/radial.hpp"
#include <functional>
#include <vector>

/*
Dirac currents and electromagnetic potentials.

Gaussian units with c = 1: d_m d^m A^a = 4 pi j^a, and a static
spherically symmetric density rho(r) has

  A^0(r) = (1/r) int_0^r rho 4 pi r'^2 dr' + int_r^inf rho 4 pi r' dr'.

Currents are returned as j^a / c with upper index.
*/
namespace rdf {

using CurrentDensity = Field4<FourVector>;

//! 2 e kappa^2 Phi~ eta^a Phi
FourVector dirac_current_linear(const AlgebraSet &alg, const RealSpinor8 &Phi,
                                double e, double kappa = 1.0);
CurrentDensity dirac_current_linear(const AlgebraSet &alg,
                                    const Field4<RealSpinor8> &Phi, double e,
                                    double kappa = 1.0);

//! e [kappa^2 Phi~ eta^a Phi + Psi~ eta^a Psi / (1 - a^2)
//!    - 2 (e/K) A^a Psi~ (1 - a) Psi / (1 - a^2)^2],
//! Psi = eta^b d_b Phi, a = (e/K) A_b eta^b (so a^2 = (e/K)^2 A.A).
//! Throws SingularDenominatorError where |1 - a^2| <= 1e-12.
FourVector dirac_current_full(const AlgebraSet &alg, const Jet<RealSpinor8> &Phi,
                              const FourVector &A, double e, double K = 1.0,
                              double kappa = 1.0);
//! Lattice form on the stencil interior
CurrentDensity dirac_current_full(const AlgebraSet &alg,
                                  const Field4<RealSpinor8> &Phi,
                                  const Field4<FourVector> &A, double e,
                                  double K = 1.0, double kappa = 1.0,
                                  int order = 2,
                                  const std::function<RealSpinor8(const RealSpinor8 &)>
                                      &time_rule = {});

//==============================================================================
//! Shell-theorem potential A^0 of a spherically symmetric density. Throws
//! DomainError if rho r^3 does not vanish towards r -> 0 or rho r^2 grows
//! towards r_max (non-integrable density).
RadialScalarField coulomb_solve(const RadialScalarField &rho);

//! Shell-theorem potential of a density given as a function, exact per
//! grid interval (adaptive Gauss-Kronrod, split at the listed breakpoints
//! where rho may jump). Tails to 0 and infinity are integrated as well.
RadialScalarField coulomb_solve(const std::function<double(double)> &rho,
                                const RadialGrid &grid,
                                const std::vector<double> &breakpoints = {});

//! q / r on the grid (the point charge is never sampled as a density)
RadialScalarField point_charge_potential(const RadialGrid &grid, double q);

//! Total charge int rho 4 pi r^2 dr
double total_charge(const RadialScalarField &rho);

//! Discrete radial Poisson residual r^-2 (r^2 A')' + 4 pi rho (fourth-order
//! stencils in ln r); interior nodes only, the two outermost on each side 0.
std::vector<double> poisson_residual(const RadialScalarField &A0,
                                     const RadialScalarField &rho);

//==============================================================================
template <class Field>
struct RadiationSplit {
  Field symmetric; // (ret + adv) / 2
  Field radiation; // (ret - adv) / 2
};

RadiationSplit<Field4<FourVector>>
symmetric_and_radiation_parts(const Field4<FourVector> &ret,
                              const Field4<FourVector> &adv);
RadiationSplit<RadialScalarField>
symmetric_and_radiation_parts(const RadialScalarField &ret,
                              const RadialScalarField &adv);

//! max |ret - (symmetric + radiation)|
double split_identity_residual(const Field4<FourVector> &ret,
                               const RadiationSplit<Field4<FourVector>> &split);

//==============================================================================
//! d_a j^a with centred stencils on the interior; frozen axes contribute 0.
Field4<double> four_divergence(const CurrentDensity &j, int order = 2);
//! max-norm of the above
double charge_conservation_residual(const CurrentDensity &j, int order = 2);

} // namespace rdf
