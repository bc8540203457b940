#include "rdf/residuals.hpp"
#include <cmath>

namespace rdf {

namespace {
using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

double max_norm(const RealSpinor8 &v) { return v.cwiseAbs().maxCoeff(); }
} // namespace

RealJet realify(const ComplexJet &jet) {
  RealJet r;
  r.value = realify(jet.value);
  for (int a = 0; a < 4; ++a)
    r.d[a] = realify(jet.d[a]);
  return r;
}

ComplexSpinor4 dirac_residual(const AlgebraSet &alg, const ComplexJet &phi,
                              const FourVector &A, double kappa,
                              double e_over_K) {
  ComplexSpinor4 r = ComplexSpinor4::Zero();
  for (int a = 0; a < 4; ++a)
    r += I * (alg.gamma[a] * phi.d[a]);
  const ComplexMatrix4 one_plus_a =
      ComplexMatrix4::Identity() + e_over_K * slashed_complex(alg, A);
  r -= kappa * (one_plus_a * phi.value);
  return r;
}

RealSpinor8 real_dirac_residual(const AlgebraSet &alg, const RealJet &Phi,
                                const FourVector &A, double kappa,
                                double e_over_K) {
  RealSpinor8 r = RealSpinor8::Zero();
  for (int a = 0; a < 4; ++a)
    r += alg.eta[a] * Phi.d[a];
  const RealMatrix8 one_plus_a =
      RealMatrix8::Identity() + e_over_K * slashed(alg, A);
  r -= kappa * (one_plus_a * (alg.n_matrix * Phi.value));
  return r;
}

RealSpinor8 selection_momentum(const AlgebraSet &alg, const RealSpinor8 &Phi,
                               double kappa) {
  return kappa * (alg.n_matrix * Phi);
}

CanonicalPairResidual canonical_pair_residual(const AlgebraSet &alg,
                                              const RealJet &Phi,
                                              const RealJet &Pi,
                                              const FourVector &A,
                                              double kappa, double e_over_K) {
  const RealMatrix8 one_plus_a =
      RealMatrix8::Identity() + e_over_K * slashed(alg, A);
  CanonicalPairResidual r;
  r.first = -one_plus_a * Pi.value;
  r.second = kappa * kappa * (one_plus_a * Phi.value);
  for (int a = 0; a < 4; ++a) {
    r.first += alg.eta[a] * Phi.d[a];
    r.second += alg.eta[a] * Pi.d[a];
  }
  return r;
}

RealSpinor8 klein_gordon_residual(const RealSpinor8 &Phi,
                                  const std::array<RealSpinor8, 4> &d2,
                                  double kappa) {
  RealSpinor8 r = kappa * kappa * Phi;
  for (int a = 0; a < 4; ++a)
    r += metric[a] * d2[a];
  return r;
}

//==============================================================================
Field4<ComplexSpinor4> dirac_residual(const AlgebraSet &alg,
                                      const Field4<ComplexSpinor4> &phi,
                                      const Field4<FourVector> &A,
                                      double kappa, double e_over_K, int order,
                                      const TimeRuleC &time_rule) {
  require_same_grid(phi, A, "dirac_residual");
  const auto jets = differentiate(phi, order, time_rule);
  const auto Ai = crop(A, stencil_margins(phi.grid, order));
  Field4<ComplexSpinor4> out(jets.grid, ComplexSpinor4::Zero());
  for (std::size_t k = 0; k < jets.data.size(); ++k)
    out.data[k] = dirac_residual(alg, jets.data[k], Ai.data[k], kappa, e_over_K);
  return out;
}

Field4<RealSpinor8> real_dirac_residual(const AlgebraSet &alg,
                                        const Field4<RealSpinor8> &Phi,
                                        const Field4<FourVector> &A,
                                        double kappa, double e_over_K,
                                        int order, const TimeRuleR &time_rule) {
  require_same_grid(Phi, A, "real_dirac_residual");
  const auto jets = differentiate(Phi, order, time_rule);
  const auto Ai = crop(A, stencil_margins(Phi.grid, order));
  Field4<RealSpinor8> out(jets.grid, RealSpinor8::Zero());
  for (std::size_t k = 0; k < jets.data.size(); ++k)
    out.data[k] =
        real_dirac_residual(alg, jets.data[k], Ai.data[k], kappa, e_over_K);
  return out;
}

CanonicalPairNorms canonical_pair_residual(const AlgebraSet &alg,
                                           const Field4<RealSpinor8> &Phi,
                                           const Field4<FourVector> &A,
                                           double kappa, double e_over_K,
                                           int order,
                                           const TimeRuleR &time_rule) {
  require_same_grid(Phi, A, "canonical_pair_residual");
  const auto Pi = map(Phi, [&](const RealSpinor8 &v) -> RealSpinor8 {
    return selection_momentum(alg, v, kappa);
  });
  // Pi(t) inherits the stationary phase of Phi, so the same rule applies
  const auto jPhi = differentiate(Phi, order, time_rule);
  const auto jPi = differentiate(Pi, order, time_rule);
  const auto Ai = crop(A, stencil_margins(Phi.grid, order));
  CanonicalPairNorms n{0.0, 0.0, 0.0};
  for (const auto &v : Phi.data)
    n.field = std::max(n.field, max_norm(v));
  for (std::size_t k = 0; k < jPhi.data.size(); ++k) {
    const auto r = canonical_pair_residual(alg, jPhi.data[k], jPi.data[k],
                                           Ai.data[k], kappa, e_over_K);
    n.first = std::max(n.first, max_norm(r.first));
    n.second = std::max(n.second, max_norm(r.second));
  }
  return n;
}

TimeRuleR stationary_time_rule(const AlgebraSet &alg, double energy) {
  const RealMatrix8 EN = energy * alg.n_matrix;
  return [EN](const RealSpinor8 &v) -> RealSpinor8 { return EN * v; };
}

TimeRuleC stationary_time_rule_complex(double energy) {
  return [energy](const ComplexSpinor4 &v) -> ComplexSpinor4 {
    return (-I * energy) * v;
  };
}

//==============================================================================
ComplexJet PlaneWave::jet(const std::array<double, 4> &x) const {
  const FourVector kl = lower(k);
  double phase = 0.0;
  for (int a = 0; a < 4; ++a)
    phase += kl(a) * x[a];
  const ComplexSpinor4 v = std::exp(-I * phase) * u;
  ComplexJet j{v, {}};
  for (int a = 0; a < 4; ++a)
    j.d[a] = (-I * kl(a)) * v;
  return j;
}

std::array<ComplexSpinor4, 4>
PlaneWave::second_derivatives(const std::array<double, 4> &x) const {
  const FourVector kl = lower(k);
  const auto v = jet(x).value;
  std::array<ComplexSpinor4, 4> d2;
  for (int a = 0; a < 4; ++a)
    d2[a] = -(kl(a) * kl(a)) * v;
  return d2;
}

PlaneWave free_plane_wave(const AlgebraSet &alg, const std::array<double, 3> &p,
                          double kappa, int branch, int spin) {
  // H(p) = gamma^0 (gamma . p + kappa)
  ComplexMatrix4 H = kappa * alg.gamma[0];
  for (int j = 0; j < 3; ++j)
    H += p[j] * (alg.gamma[0] * alg.gamma[j + 1]);
  const double omega =
      (branch >= 0 ? 1.0 : -1.0) *
      std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + kappa * kappa);
  const ComplexMatrix4 P =
      0.5 * (ComplexMatrix4::Identity() + H / omega); // projector on the branch
  // upper components dominate the positive branch, lower the negative one
  const int seed = (branch >= 0 ? 0 : 2) + (spin ? 1 : 0);
  ComplexSpinor4 u = P.col(seed);
  PlaneWave w;
  w.k = FourVector{omega, p[0], p[1], p[2]};
  w.u = u / u.norm();
  return w;
}

} // namespace rdf
