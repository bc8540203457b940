#include "oracles.hpp"
#include "rdf/errors.hpp"
#include "rdf/hydrogen.hpp"
#include "rdf/potentials.hpp"
#include "rdf/residuals.hpp"
#include <catch_amalgamated.hpp>
#include <limits>

using namespace rdf;

namespace {
const double a = oracle::alpha;

const AlgebraSet &alg() {
  static const AlgebraSet s = build_algebra();
  return s;
}

const RadialOrbital &ground() {
  static const RadialOrbital o = [] {
    const BoundStateSpec s{1, -1, a};
    return solve_bound_state(s, default_grid(s));
  }();
  return o;
}

RadialScalarField sampled(const RadialGrid &g, const std::function<double(double)> &f) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    v[i] = f(g.r(i));
  return {g, v};
}

std::function<double(double)> gaussian_cloud(double Q, double w) {
  return [=](double r) {
    return Q / (std::pow(oracle::pi, 1.5) * w * w * w) * std::exp(-r * r / (w * w));
  };
}

// 1s hydrogen on a 7^3 Cartesian patch (frozen time axis)
Field4<RealSpinor8> patch(double h, std::array<double, 3> centre, int n = 7) {
  Grid4 g;
  g.shape = {1, std::size_t(n), std::size_t(n), std::size_t(n)};
  const double m = 0.5 * (n - 1) * h;
  g.origin = {0, centre[0] - m, centre[1] - m, centre[2] - m};
  g.spacing = {1, h, h, h};
  return sample_orbital(ground(), 1, g);
}
} // namespace

TEST_CASE("potentials: point charge", "[potentials]") {
  const RadialGrid g(1e-3, 1e3, 200);
  const auto A = point_charge_potential(g, 2.5);
  for (std::size_t i = 0; i < g.size(); ++i)
    REQUIRE(A.f[i] == Catch::Approx(2.5 / g.r(i)).epsilon(1e-15));
}

TEST_CASE("potentials: uniform ball", "[potentials]") {
  const double Q = 1.0, R = 2.0;
  const RadialGrid g(1e-6 * R, 100 * R, 4000);
  auto rho = [=](double r) { return r <= R ? 3 * Q / (4 * oracle::pi * R * R * R) : 0.0; };
  const auto A = coulomb_solve(rho, g, {R});
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(A.f[i] / oracle::ball_potential(Q, R, g.r(i)) - 1));
  REQUIRE(worst <= 1e-10);
  // matched at the surface
  const auto AR = coulomb_solve(rho, RadialGrid(R / 4, R, 9), {R});
  REQUIRE(AR.f.back() == Catch::Approx(Q / R).epsilon(1e-12));
  // samples cannot resolve the jump: first order in the spacing
  const auto As = coulomb_solve(sampled(g, rho));
  REQUIRE(std::abs(As.f[0] / oracle::ball_potential(Q, R, g.r(0)) - 1) < 1e-2);
}

TEST_CASE("potentials: Gaussian cloud", "[potentials]") {
  const double Q = -0.7, w = 1.5;
  const RadialGrid g(1e-6, 200, 4000);
  const auto A = coulomb_solve(sampled(g, gaussian_cloud(Q, w)));
  const auto B = coulomb_solve(gaussian_cloud(Q, w), g);
  double ws = 0.0, wf = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ref = oracle::gaussian_cloud_potential(Q, w, g.r(i));
    ws = std::max(ws, std::abs(A.f[i] / ref - 1));
    wf = std::max(wf, std::abs(B.f[i] / ref - 1));
  }
  REQUIRE(ws <= 1e-8);
  REQUIRE(wf <= 1e-12);
  REQUIRE(total_charge(sampled(g, gaussian_cloud(Q, w))) == Catch::Approx(Q).epsilon(1e-10));
}

TEST_CASE("potentials: hydrogen density", "[potentials]") {
  const auto rho = orbital_density(ground());
  const auto A = coulomb_solve(rho);
  const double e = electron_charge(a);
  REQUIRE(total_charge(rho) == Catch::Approx(e).epsilon(1e-10));
  // outside the cloud A -> e / r
  REQUIRE(A.at(30 / a) * (30 / a) / e == Catch::Approx(1.0).epsilon(1e-6));
  // at the centre -> e <1/r>
  REQUIRE(A.f.front() / (e * oracle::ground_state_inverse_r(a)) ==
          Catch::Approx(1.0).epsilon(1e-6));
  // discrete Poisson residual at stencil level, relative to 4 pi |rho|
  const auto res = poisson_residual(A, rho);
  const std::size_t i = rho.grid.index_below(1.0 / a);
  REQUIRE(std::abs(res[i]) < 1e-6 * 4 * oracle::pi * std::abs(rho.f[i]));
}

TEST_CASE("potentials: linearity", "[potentials]") {
  const RadialGrid g(1e-6, 200, 3000);
  const auto r1 = sampled(g, gaussian_cloud(1.0, 1.0));
  const auto r2 = sampled(g, gaussian_cloud(-2.0, 3.0));
  std::vector<double> mix(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    mix[i] = 0.3 * r1.f[i] + 1.7 * r2.f[i];
  const auto A1 = coulomb_solve(r1), A2 = coulomb_solve(r2);
  const auto Am = coulomb_solve(RadialScalarField(g, mix));
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(Am.f[i] - 0.3 * A1.f[i] - 1.7 * A2.f[i]));
  REQUIRE(worst <= 1e-12);
}

TEST_CASE("potentials: non-integrable densities are rejected", "[potentials]") {
  const RadialGrid g(1e-6, 100, 500);
  REQUIRE_THROWS_AS(coulomb_solve(sampled(g, [](double r) { return std::pow(r, -3.5); })),
                    DomainError);
  REQUIRE_THROWS_AS(coulomb_solve(sampled(g, [](double) { return 1.0; })), DomainError);
  REQUIRE_THROWS_AS(coulomb_solve([](double r) { return 1.0 / (r * r * r * r); }, g),
                    DomainError);
}

TEST_CASE("potentials: Dirac current of a stationary state", "[potentials]") {
  const double e = electron_charge(a);
  // charge density equals the radial density
  const auto &o = ground();
  for (double r : {30.0, 137.0, 400.0}) {
    const auto phi = orbital_spinor(o, 1, 0.6 * r, 0.0, 0.8 * r);
    const auto j = dirac_current_linear(alg(), realify(phi), e);
    const auto GF = orbital_amplitudes(o, r);
    REQUIRE(j(0) == Catch::Approx(e * (GF[0] * GF[0] + GF[1] * GF[1]) /
                                  (4 * oracle::pi * r * r))
                        .epsilon(1e-12));
    // no radial flow
    REQUIRE(std::abs(j(1) * 0.6 + j(3) * 0.8) <= 1e-12 * std::abs(j(0)));
  }
  REQUIRE(dirac_current_linear(alg(), RealSpinor8::Zero(), e).norm() == 0.0);
}

TEST_CASE("potentials: full current reduces to the linear one at A = 0", "[potentials]") {
  std::mt19937_64 rng(17);
  const double e = -0.3;
  for (int s = 0; s < 20; ++s) {
    Jet<RealSpinor8> J{realify(oracle::random_spinor(rng)), {}};
    for (auto &d : J.d)
      d = realify(oracle::random_spinor(rng));
    RealSpinor8 Psi = RealSpinor8::Zero();
    for (int b = 0; b < 4; ++b)
      Psi += alg().eta[b] * J.d[b];
    const auto j = dirac_current_full(alg(), J, FourVector::Zero(), e);
    FourVector ref;
    for (int c = 0; c < 4; ++c)
      ref(c) = e * (adjoint_bilinear(alg(), J.value, alg().eta[c], J.value) +
                    adjoint_bilinear(alg(), Psi, alg().eta[c], Psi));
    REQUIRE((j - ref).cwiseAbs().maxCoeff() <= 1e-12 * ref.cwiseAbs().maxCoeff());
    // first correction is linear in A: halving A halves the deviation
    const FourVector A(2e-4, 1e-4, -5e-5, 7e-5);
    const double d1 = (dirac_current_full(alg(), J, A, e) - j).norm();
    const double d2 = (dirac_current_full(alg(), J, 0.5 * A, e) - j).norm();
    REQUIRE(d1 / d2 == Catch::Approx(2.0).margin(0.1));
  }
  // 1 - a^2 = 0 for e A.A / K^2 = 1
  Jet<RealSpinor8> J{RealSpinor8::Ones(), {}};
  for (auto &d : J.d)
    d.setZero();
  REQUIRE_THROWS_AS(dirac_current_full(alg(), J, FourVector(1, 0, 0, 0), 1.0),
                    SingularDenominatorError);
}

TEST_CASE("potentials: radiation split", "[potentials]") {
  // a static source: ret = adv, so the radiation part vanishes identically
  const RadialGrid g(1e-6, 200, 1000);
  const auto A = coulomb_solve(sampled(g, gaussian_cloud(1.0, 1.0)));
  const auto s = symmetric_and_radiation_parts(A, A);
  for (std::size_t i = 0; i < g.size(); ++i) {
    REQUIRE(std::abs(s.radiation.f[i]) <= 1e-14);
    REQUIRE(s.symmetric.f[i] == A.f[i]);
  }
  Grid4 G;
  G.shape = {3, 4, 1, 5};
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  auto rnd = [&](const std::array<double, 4> &) {
    return FourVector(nd(rng), nd(rng), nd(rng), nd(rng));
  };
  const auto ret = sample(G, rnd), adv = sample(G, rnd);
  const auto sp = symmetric_and_radiation_parts(ret, adv);
  // exact up to rounding of the two halves
  REQUIRE(split_identity_residual(ret, sp) <= 4 * std::numeric_limits<double>::epsilon() * 5);
  // ret = -adv: the symmetric part vanishes
  const auto neg = map(ret, [](const FourVector &v) { return FourVector(-v); });
  for (const auto &v : symmetric_and_radiation_parts(ret, neg).symmetric.data)
    REQUIRE(v.norm() == 0.0);
}

TEST_CASE("potentials: charge conservation of stationary currents", "[potentials]") {
  const double e = electron_charge(a);
  auto rel = [&](double h) {
    const auto j = dirac_current_linear(alg(), patch(h, {40, 25, 70}, 9), e);
    double jmax = 0.0;
    for (const auto &v : j.data)
      jmax = std::max(jmax, v.cwiseAbs().maxCoeff());
    return charge_conservation_residual(j, 4) / jmax;
  };
  const double r1 = rel(1.0), r2 = rel(0.5);
  INFO(r1 << " -> " << r2);
  REQUIRE(r1 <= 1e-10);
  REQUIRE(r2 <= 1e-10);
  // a constant current is divergence free exactly
  Grid4 G;
  G.shape = {5, 5, 5, 5};
  const auto c = sample(G, [](const std::array<double, 4> &) { return FourVector(1, 2, 3, 4); });
  REQUIRE(charge_conservation_residual(c, 2) == 0.0);
  REQUIRE(charge_conservation_residual(c, 4) == 0.0);
  // order 2 converges at second order on the same state
  auto rel2 = [&](double h) {
    const auto j = dirac_current_linear(alg(), patch(h, {40, 25, 70}), e);
    double jmax = 0.0;
    for (const auto &v : j.data)
      jmax = std::max(jmax, v.cwiseAbs().maxCoeff());
    return charge_conservation_residual(j, 2) / jmax;
  };
  REQUIRE(rel2(2.0) / rel2(1.0) > 3.5);
}
