#pragma once
#include "rdf/algebra.hpp"
#include "rdf/hydrogen.hpp"
#include "rdf/lattice.hpp"
#include "rdf/potentials.hpp"
#include "rdf/residuals.hpp"
#include <string>
#include <vector>

/*
Canonical energy-momentum tensors, all indices up, metric (+,-,-,-):

  T_em^{ab} = -(1/4pi) d^a A_c F^{bc} + (1/16pi) g^{ab} F_{mn} F^{mn},
  T_DI^{ab} = K kappa (d^a Phi~ eta^b N Phi - Phi~ eta^b N d^a Phi),

with F^{ab} = d^a A^b - d^b A^a. Their divergences satisfy

  d_b T_em^{ab} = -d^a A^c j_c,       d_b T_DI^{ab} = 2 kappa^2 K Phi~ (d^a a) Phi,

a = (e/K) A_b eta^b, which cancel for j = 2 e kappa^2 Phi~ eta Phi. For a
static potential the canonical form gives T_em^{00} = -|grad A^0|^2 / 8pi.
*/
namespace rdf {

using TensorField = Field4<Tensor4>;

Tensor4 em_tensor(const Jet<FourVector> &A);
//! On the stencil interior of A. Throws InputError if the grid is too coarse.
TensorField em_tensor(const Field4<FourVector> &A, int order = 2);

Tensor4 dirac_tensor(const AlgebraSet &alg, const Jet<RealSpinor8> &Phi,
                     double kappa = 1.0, double K = 1.0);
TensorField dirac_tensor(const AlgebraSet &alg, const Field4<RealSpinor8> &Phi,
                         double kappa = 1.0, double K = 1.0, int order = 2,
                         const TimeRuleR &time_rule = {});

//! d_b T^{ab} on the stencil interior of T
Field4<FourVector> divergence(const TensorField &T, int order = 2);

//! -d^a A^c j_c, on the stencil interior of A (j cropped to match)
Field4<FourVector> em_divergence_source(const Field4<FourVector> &A,
                                        const CurrentDensity &j, int order = 2);

//! 2 kappa^2 K Phi~ (d^a a) Phi with a = (e/K) A_b eta^b; A differentiated
//! on the grid, Phi cropped to the interior.
Field4<FourVector> dirac_divergence_source(const AlgebraSet &alg,
                                           const Field4<RealSpinor8> &Phi,
                                           const Field4<FourVector> &A,
                                           double e, double kappa = 1.0,
                                           double K = 1.0, int order = 2);

//! Restrict f to the centred sub-lattice g (same spacing, smaller shape).
template <class T>
Field4<T> crop_to(const Field4<T> &f, const Grid4 &g) {
  Index4 m{};
  for (int a = 0; a < 4; ++a) {
    if (g.shape[a] > f.grid.shape[a] || (f.grid.shape[a] - g.shape[a]) % 2)
      throw ShapeMismatchError("crop_to: target is not a centred sub-lattice");
    m[a] = (f.grid.shape[a] - g.shape[a]) / 2;
  }
  auto out = crop(f, m);
  if (!out.grid.same_as(g))
    throw ShapeMismatchError("crop_to: target is not a centred sub-lattice");
  return out;
}

struct DivergenceCheck {
  FourVector lhs;      // max |d_b T^{ab}| per a
  FourVector rhs;      // max |source^a|
  FourVector residual; // max |lhs - rhs| per a
  double max_residual() const { return residual.maxCoeff(); }
};

//! Compares the two sides on their common (smaller) interior.
DivergenceCheck compare_divergence(const Field4<FourVector> &lhs,
                                   const Field4<FourVector> &rhs);

//! max |T^{ab}| over the field, the scale for divergence tolerances
double max_entry(const TensorField &T);

//==============================================================================
//! T_em^{00} = -(A0')^2 / 8pi for a static radial potential
std::vector<double> static_em_energy_density(const RadialScalarField &A0);

struct EnergyAuditReport {
  BoundStateSpec spec;
  double energy;         // solver eigenvalue E
  double I_em;           // int T_em^00[A_D + A_ext] minus the proton self-energy
  double I_emB;          // int T_em^00[A_D]
  double I_DI;           // int T_DI^00
  double I_ext;          // int A_0 j_ext^0, proton self-part excluded
  double total;          // I_em - I_emB + I_DI + I_ext
  double cross_term;     // I_em - I_emB from field gradients
  double cross_oracle;   // -int rho_D A_ext^0 d^3x
  double em_remainder;   // total - I_DI, reported only
  double I_DI_over_E;
  std::vector<std::string> notes;

  double cross_relative_error() const;
  bool passed(double tol = 1e-6) const; // |I_DI/E - 1| <= tol
};

//! amplitude scales the Dirac field (and hence rho_D, A_D). Throws
//! InputError if the orbital is not normalized.
EnergyAuditReport hydrogen_energy_audit(const RadialOrbital &orb,
                                        const AlgebraSet &alg,
                                        double amplitude = 1.0);

} // namespace rdf
