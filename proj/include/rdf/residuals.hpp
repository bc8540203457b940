#pragma once
#include "rdf/algebra.hpp"
#include "rdf/lattice.hpp"
#include <functional>

//! Field-equation residuals for the complex and real forms of the Dirac
//! equation, and for the canonical (Phi, Pi) pair under the selection
//! Pi = kappa N Phi. All are pointwise maps of first-derivative jets; the
//! lattice overloads build the jets with centred stencils.
namespace rdf {

using ComplexJet = Jet<ComplexSpinor4>;
using RealJet = Jet<RealSpinor8>;

RealJet realify(const ComplexJet &jet);

//! i gamma^a d_a phi - kappa (1 + a~) phi,  a~ = (e/K) A_b gamma^b
ComplexSpinor4 dirac_residual(const AlgebraSet &alg, const ComplexJet &phi,
                              const FourVector &A, double kappa,
                              double e_over_K);

//! [D - kappa (1 + a) N] Phi,  D = eta^a d_a
RealSpinor8 real_dirac_residual(const AlgebraSet &alg, const RealJet &Phi,
                                const FourVector &A, double kappa,
                                double e_over_K);

//! Pi := (c/K) Pi_{Phi+} fixed by the selection rule
RealSpinor8 selection_momentum(const AlgebraSet &alg, const RealSpinor8 &Phi,
                               double kappa);

struct CanonicalPairResidual {
  RealSpinor8 first;  // D Phi - (1 + a) Pi
  RealSpinor8 second; // D Pi + kappa^2 (1 + a) Phi
};

//! Residuals of the two canonical equations given independent jets of Phi and Pi.
CanonicalPairResidual canonical_pair_residual(const AlgebraSet &alg,
                                              const RealJet &Phi,
                                              const RealJet &Pi,
                                              const FourVector &A,
                                              double kappa, double e_over_K);

//! (d_m d^m + kappa^2) Phi from the diagonal second derivatives d_a d_a Phi
RealSpinor8 klein_gordon_residual(const RealSpinor8 &Phi,
                                  const std::array<RealSpinor8, 4> &d2,
                                  double kappa);

//==============================================================================
// Lattice versions. A is sampled on the same grid as the spinor field; the
// residual lives on the stencil interior.

using TimeRuleC = std::function<ComplexSpinor4(const ComplexSpinor4 &)>;
using TimeRuleR = std::function<RealSpinor8(const RealSpinor8 &)>;

Field4<ComplexSpinor4> dirac_residual(const AlgebraSet &alg,
                                      const Field4<ComplexSpinor4> &phi,
                                      const Field4<FourVector> &A,
                                      double kappa, double e_over_K,
                                      int order = 2,
                                      const TimeRuleC &time_rule = {});

Field4<RealSpinor8> real_dirac_residual(const AlgebraSet &alg,
                                        const Field4<RealSpinor8> &Phi,
                                        const Field4<FourVector> &A,
                                        double kappa, double e_over_K,
                                        int order = 2,
                                        const TimeRuleR &time_rule = {});

struct CanonicalPairNorms {
  double first;  // max-norm over the interior
  double second;
  double field;  // max-norm of Phi itself, for scaling
};

//! Pi is built from Phi by the selection rule and differentiated on its own.
CanonicalPairNorms canonical_pair_residual(const AlgebraSet &alg,
                                           const Field4<RealSpinor8> &Phi,
                                           const Field4<FourVector> &A,
                                           double kappa, double e_over_K,
                                           int order = 2,
                                           const TimeRuleR &time_rule = {});

//! d_t Phi = E N Phi, for Phi(t) = e^{-iEt} Phi(0) in complex form
TimeRuleR stationary_time_rule(const AlgebraSet &alg, double energy);
TimeRuleC stationary_time_rule_complex(double energy);

//==============================================================================
//! Free plane wave phi = u exp(-i k_a x^a), k^a = (omega, p), omega = +-sqrt(p^2 + kappa^2)
struct PlaneWave {
  FourVector k; // contravariant
  ComplexSpinor4 u;

  ComplexJet jet(const std::array<double, 4> &x) const;
  //! d_a d_a phi (no sum), a = 0..3
  std::array<ComplexSpinor4, 4> second_derivatives(const std::array<double, 4> &x) const;
};

//! branch = +1 (positive energy) or -1; spin selects one of the two
//! degenerate eigenvectors. u is unit-normalised (u^dagger u = 1).
PlaneWave free_plane_wave(const AlgebraSet &alg, const std::array<double, 3> &p,
                          double kappa, int branch, int spin = 0);

} // namespace rdf
