#include "rdf/potentials.hpp"
#include "rdf/constants.hpp"
#include "rdf/errors.hpp"
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <limits>
#include <cmath>
#include <fmt/format.h>

namespace rdf {

namespace {
constexpr double four_pi = 4.0 * PhysConst::pi;
}

FourVector dirac_current_linear(const AlgebraSet &alg, const RealSpinor8 &Phi,
                                double e, double kappa) {
  return 2.0 * e * kappa * kappa * vector_bilinear(alg, Phi);
}

CurrentDensity dirac_current_linear(const AlgebraSet &alg,
                                    const Field4<RealSpinor8> &Phi, double e,
                                    double kappa) {
  return map(Phi, [&](const RealSpinor8 &v) -> FourVector {
    return dirac_current_linear(alg, v, e, kappa);
  });
}

FourVector dirac_current_full(const AlgebraSet &alg, const Jet<RealSpinor8> &Phi,
                              const FourVector &A, double e, double K,
                              double kappa) {
  const double eK = e / K;
  RealSpinor8 Psi = RealSpinor8::Zero();
  for (int b = 0; b < 4; ++b)
    Psi += alg.eta[b] * Phi.d[b];
  const FourVector Al = lower(A);
  const double a2 = eK * eK * A.dot(Al);
  const double s = 1.0 - a2;
  if (std::abs(s) <= 1e-12)
    throw SingularDenominatorError(
        fmt::format("dirac_current_full: 1 - a^2 = {:.3e} is singular", s));
  const RealMatrix8 one_minus_a = RealMatrix8::Identity() - eK * slashed(alg, A);
  const double psi_a_psi = adjoint_bilinear(alg, Psi, one_minus_a, Psi);
  FourVector j;
  for (int a = 0; a < 4; ++a) {
    j(a) = e * (kappa * kappa * adjoint_bilinear(alg, Phi.value, alg.eta[a], Phi.value) +
                adjoint_bilinear(alg, Psi, alg.eta[a], Psi) / s -
                2.0 * eK * A(a) * psi_a_psi / (s * s));
  }
  return j;
}

CurrentDensity dirac_current_full(
    const AlgebraSet &alg, const Field4<RealSpinor8> &Phi,
    const Field4<FourVector> &A, double e, double K, double kappa, int order,
    const std::function<RealSpinor8(const RealSpinor8 &)> &time_rule) {
  require_same_grid(Phi, A, "dirac_current_full");
  const auto jets = differentiate(Phi, order, time_rule);
  const auto Ai = crop(A, stencil_margins(Phi.grid, order));
  CurrentDensity out(jets.grid, FourVector::Zero());
  for (std::size_t k = 0; k < jets.data.size(); ++k)
    out.data[k] = dirac_current_full(alg, jets.data[k], Ai.data[k], e, K, kappa);
  return out;
}

//==============================================================================
double total_charge(const RadialScalarField &rho) {
  std::vector<double> f(rho.f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = four_pi * rho.grid.r(i) * rho.grid.r(i) * rho.f[i];
  return Radial::integrate(rho.grid, f);
}

RadialScalarField coulomb_solve(const RadialScalarField &rho) {
  const auto &g = rho.grid;
  const std::size_t n = g.size();
  std::vector<double> shell(n), inner(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = g.r(i);
    shell[i] = four_pi * r * r * rho.f[i];
    inner[i] = four_pi * r * rho.f[i];
    peak = std::max(peak, std::abs(shell[i] * r));
  }
  // rho r^3 must vanish towards the origin and towards infinity
  if (peak > 0.0) {
    const double y0 = shell[0] * g.r(0), y1 = shell[1] * g.r(1);
    if (std::abs(y0) > 1e-8 * peak && std::abs(y0) >= std::abs(y1))
      throw DomainError("coulomb_solve: density not integrable at r -> 0");
    const double ya = shell[n - 2] * g.r(n - 2), yb = shell[n - 1] * g.r(n - 1);
    if (std::abs(yb) > 1e-8 * peak && std::abs(yb) >= std::abs(ya))
      throw DomainError("coulomb_solve: density not integrable at r -> inf");
  }
  const auto Q = Radial::cumulative_from_zero(g, shell);
  const auto O = Radial::cumulative_to_infinity(g, inner);
  std::vector<double> A(n);
  for (std::size_t i = 0; i < n; ++i)
    A[i] = Q[i] / g.r(i) + O[i];
  return RadialScalarField(g, std::move(A));
}

RadialScalarField coulomb_solve(const std::function<double(double)> &rho,
                                const RadialGrid &g,
                                const std::vector<double> &breakpoints) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  auto integral = [&](auto &&f, double a, double b) {
    // split [a, b] at the breakpoints inside it
    std::vector<double> cuts{a};
    for (double c : breakpoints)
      if (c > a && c < b)
        cuts.push_back(c);
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(b);
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
      s += GK::integrate(f, cuts[k], cuts[k + 1], 4, 1e-14);
    return s;
  };
  auto shell = [&](double r) { return four_pi * r * r * rho(r); };
  auto inner = [&](double r) { return four_pi * r * rho(r); };
  // the head and tail integrals must converge; a divergent density shows
  // up as an error estimate comparable to the value itself
  auto checked = [&](auto &&f, double a, double b, const char *where) {
    double err = 0.0;
    const double v = GK::integrate(f, a, b, 15, 1e-15, &err);
    if (!std::isfinite(v) || err > 1e-3 * std::abs(v) + 1e-300)
      throw DomainError(fmt::format("coulomb_solve: density not integrable at {}", where));
    return v;
  };
  const std::size_t n = g.size();
  std::vector<double> Q(n), O(n);
  Q[0] = rho(g.r(0)) == 0.0 && shell(0.5 * g.r(0)) == 0.0
             ? 0.0
             : checked(shell, 0.0, g.r(0), "r -> 0");
  for (std::size_t i = 0; i + 1 < n; ++i)
    Q[i + 1] = Q[i] + integral(shell, g.r(i), g.r(i + 1));
  O[n - 1] = checked(inner, g.r(n - 1), std::numeric_limits<double>::infinity(),
                     "r -> inf");
  for (std::size_t i = n - 1; i > 0; --i)
    O[i - 1] = O[i] + integral(inner, g.r(i - 1), g.r(i));
  std::vector<double> A(n);
  for (std::size_t i = 0; i < n; ++i) {
    A[i] = Q[i] / g.r(i) + O[i];
    if (!std::isfinite(A[i]))
      throw DomainError("coulomb_solve: density not integrable");
  }
  return RadialScalarField(g, std::move(A));
}

RadialScalarField point_charge_potential(const RadialGrid &grid, double q) {
  std::vector<double> A(grid.size());
  for (std::size_t i = 0; i < A.size(); ++i)
    A[i] = q / grid.r(i);
  return RadialScalarField(grid, std::move(A));
}

std::vector<double> poisson_residual(const RadialScalarField &A0,
                                     const RadialScalarField &rho) {
  if (A0.f.size() != rho.f.size())
    throw ShapeMismatchError("poisson_residual: fields on different grids");
  const auto &g = A0.grid;
  const auto dA = Radial::derivative(g, A0.f);
  std::vector<double> flux(dA.size());
  for (std::size_t i = 0; i < flux.size(); ++i)
    flux[i] = g.r(i) * g.r(i) * dA[i];
  const auto dflux = Radial::derivative(g, flux);
  std::vector<double> res(flux.size(), 0.0);
  for (std::size_t i = 2; i + 2 < res.size(); ++i)
    res[i] = dflux[i] / (g.r(i) * g.r(i)) + four_pi * rho.f[i];
  return res;
}

//==============================================================================
RadiationSplit<Field4<FourVector>>
symmetric_and_radiation_parts(const Field4<FourVector> &ret,
                              const Field4<FourVector> &adv) {
  require_same_grid(ret, adv, "symmetric_and_radiation_parts");
  RadiationSplit<Field4<FourVector>> s{ret, ret};
  for (std::size_t k = 0; k < ret.data.size(); ++k) {
    s.symmetric.data[k] = 0.5 * (ret.data[k] + adv.data[k]);
    s.radiation.data[k] = 0.5 * (ret.data[k] - adv.data[k]);
  }
  return s;
}

RadiationSplit<RadialScalarField>
symmetric_and_radiation_parts(const RadialScalarField &ret,
                              const RadialScalarField &adv) {
  if (ret.f.size() != adv.f.size() || ret.grid.r_min() != adv.grid.r_min() ||
      ret.grid.r_max() != adv.grid.r_max())
    throw ShapeMismatchError("symmetric_and_radiation_parts: grid mismatch");
  std::vector<double> b(ret.f.size()), r(ret.f.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    b[i] = 0.5 * (ret.f[i] + adv.f[i]);
    r[i] = 0.5 * (ret.f[i] - adv.f[i]);
  }
  return {RadialScalarField(ret.grid, std::move(b)),
          RadialScalarField(ret.grid, std::move(r))};
}

double split_identity_residual(const Field4<FourVector> &ret,
                               const RadiationSplit<Field4<FourVector>> &split) {
  require_same_grid(ret, split.symmetric, "split_identity_residual");
  double m = 0.0;
  for (std::size_t k = 0; k < ret.data.size(); ++k)
    m = std::max(m, (ret.data[k] - (split.symmetric.data[k] + split.radiation.data[k]))
                        .cwiseAbs()
                        .maxCoeff());
  return m;
}

//==============================================================================
Field4<double> four_divergence(const CurrentDensity &j, int order) {
  const auto jets = differentiate(j, order);
  Field4<double> out(jets.grid, 0.0);
  for (std::size_t k = 0; k < jets.data.size(); ++k) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
      s += jets.data[k].d[a](a);
    out.data[k] = s;
  }
  return out;
}

double charge_conservation_residual(const CurrentDensity &j, int order) {
  const auto div = four_divergence(j, order);
  double m = 0.0;
  for (double v : div.data)
    m = std::max(m, std::abs(v));
  return m;
}

} // namespace rdf
