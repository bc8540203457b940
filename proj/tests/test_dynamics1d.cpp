#include "oracles.hpp"
#include "rdf/dynamics1d.hpp"
#include "rdf/potentials.hpp"
#include <catch_amalgamated.hpp>
#include <limits>
#include <numeric>

using namespace rdf;

namespace {
const double e_phys = -std::sqrt(oracle::alpha);

double max_diff(const SpinorLattice1D &a, const SpinorLattice1D &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.n; ++i)
    m = std::max(m, (a.phi[i] - b.phi[i]).cwiseAbs().maxCoeff());
  return m;
}

std::vector<double> mean_free(std::vector<double> v) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
  for (auto &x : v)
    x -= m;
  return v;
}

// Gaussian charge cloud on the periodic line, background-neutralized
std::vector<FourVector> gaussian_source(const SpinorLattice1D &s, double q, double z0,
                                        double w) {
  std::vector<double> rho(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    const double u = (s.z(i) - z0) / w;
    rho[i] = q / (std::sqrt(2 * oracle::pi) * w) * std::exp(-0.5 * u * u);
  }
  rho = mean_free(rho);
  std::vector<FourVector> j(s.n, FourVector::Zero());
  for (std::size_t i = 0; i < s.n; ++i)
    j[i](0) = rho[i];
  return j;
}

// j on a (t, z) lattice from the recorded history
CurrentDensity history_current(const SourceHistory &h) {
  Grid4 g;
  g.shape = {h.size(), 1, 1, h.j.front().size()};
  g.origin = {h.t0, 0, 0, 0};
  g.spacing = {h.dt, 1, 1, h.dz};
  CurrentDensity j(g, FourVector::Zero());
  for (std::size_t m = 0; m < h.size(); ++m)
    for (std::size_t i = 0; i < h.j[m].size(); ++i)
      j({m, 0, 0, i}) = h.j[m][i];
  return j;
}
} // namespace

TEST_CASE("dynamics1d: free Hamiltonian spectrum", "[dynamics1d]") {
  for (double k : {0.0, 0.7, -2.3}) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix4> es(free_hamiltonian(k));
    const double w = std::sqrt(k * k + 1);
    REQUIRE(es.eigenvalues()(0) == Catch::Approx(-w).epsilon(1e-14));
    REQUIRE(es.eigenvalues()(3) == Catch::Approx(w).epsilon(1e-14));
    REQUIRE((free_hamiltonian(k) - oracle::free_hamiltonian(k)).cwiseAbs().maxCoeff() == 0.0);
    for (int spin : {0, 1}) {
      const auto u = positive_energy_spinor(k, spin);
      REQUIRE(u.norm() == Catch::Approx(1.0).epsilon(1e-14));
      REQUIRE((free_hamiltonian(k) * u - w * u).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("dynamics1d: lattice preconditions", "[dynamics1d]") {
  REQUIRE_THROWS_AS(SpinorLattice1D(6, 0.1, 0.1), InputError);
  REQUIRE_THROWS_AS(SpinorLattice1D(8, 0.0, 0.1), InputError);
  const SpinorLattice1D s(8, 0.5, 0.1);
  REQUIRE(s.wavenumber(1) == Catch::Approx(2 * oracle::pi / 4.0));
  REQUIRE(s.wavenumber(7) == Catch::Approx(-2 * oracle::pi / 4.0));
}

TEST_CASE("dynamics1d: rest spinor rotates as exp(-i t)", "[dynamics1d]") {
  auto s = plane_wave_lattice(16, 0.5, 0.1, 0);
  REQUIRE(norm(s) == Catch::Approx(0.5).epsilon(1e-14));
  REQUIRE(total_charge(s, e_phys) == Catch::Approx(e_phys).epsilon(1e-14));
  const auto s0 = s;
  s = evolve_free(s, 250);
  const oracle::cd ph = std::exp(oracle::cd(0, -s.t));
  double m = 0.0;
  for (std::size_t i = 0; i < s.n; ++i)
    m = std::max(m, (s.phi[i] - ph * s0.phi[i]).cwiseAbs().maxCoeff());
  REQUIRE(m <= 1e-12);
}

TEST_CASE("dynamics1d: dispersion and norm over 10^4 steps", "[dynamics1d]") {
  const double L = 32 * oracle::pi;
  auto s = gaussian_packet(256, L / 256, 0.05, L / 2, 1.0, 0.5);
  const double n0 = norm(s);
  std::vector<SpinorLattice1D> snaps{s};
  // snapshots close enough that no mode turns by more than pi/2
  for (int c = 0; c < 2500; ++c) {
    s = evolve_free(s, 4);
    snaps.push_back(s);
  }
  REQUIRE(std::abs(norm(s) - n0) <= 1e-10);
  const auto pts = measure_dispersion(snaps);
  REQUIRE(pts.size() >= 16);
  double worst = 0.0;
  for (const auto &p : pts)
    worst = std::max(worst, std::abs(p.omega - p.expected));
  REQUIRE(worst <= 1e-6);
  // even in k
  for (const auto &p : pts)
    REQUIRE(p.expected == Catch::Approx(std::sqrt(p.k * p.k + 1)).epsilon(1e-15));
  REQUIRE_THROWS_AS(measure_dispersion({snaps[0], snaps[1]}), InputError);
}

TEST_CASE("dynamics1d: constant potential shifts the frequency", "[dynamics1d]") {
  const double V0 = 0.05;
  auto s = plane_wave_lattice(32, 0.4, 0.1, 3);
  WaveLattice1D A(s.n);
  for (auto &v : A.A)
    v(0) = V0 / e_phys;
  std::vector<SpinorLattice1D> snaps{s};
  for (int c = 0; c < 40; ++c) {
    s = evolve_external(s, A, 5, e_phys);
    snaps.push_back(s);
  }
  const auto pts = measure_dispersion(snaps);
  REQUIRE(pts.size() == 1);
  REQUIRE(pts[0].omega - pts[0].expected == Catch::Approx(V0).epsilon(1e-8));
}

TEST_CASE("dynamics1d: zero external field is free evolution", "[dynamics1d]") {
  const auto s = gaussian_packet(64, 0.5, 0.1, 16, 2.0, 0.3);
  const auto a = evolve_external(s, WaveLattice1D(64), 200, e_phys);
  const auto b = evolve_free(s, 200);
  REQUIRE(max_diff(a, b) <= 1e-12);
}

TEST_CASE("dynamics1d: Strang splitting is second order in dt", "[dynamics1d]") {
  const std::size_t n = 128;
  const double dz = 0.25, T = 4.0;
  WaveLattice1D A(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (double(i) * dz - 16.0) / 2.0;
    A.A[i](0) = 0.3 * std::exp(-0.5 * u * u) / e_phys;
    A.A[i](3) = 0.1 * std::exp(-0.5 * u * u) / e_phys;
  }
  auto run = [&](double dt) {
    auto s = gaussian_packet(n, dz, dt, 10.0, 2.0, 0.8);
    return evolve_external(s, A, std::size_t(std::lround(T / dt)), e_phys);
  };
  const auto a = run(0.2), b = run(0.1), c = run(0.05);
  const double r = max_diff(a, b) / max_diff(b, c);
  INFO(max_diff(a, b) << " " << max_diff(b, c));
  REQUIRE(r == Catch::Approx(4.0).margin(0.3));
  REQUIRE(std::abs(norm(c) - norm(a)) < 1e-12);
}

TEST_CASE("dynamics1d: Courant bound is enforced", "[dynamics1d]") {
  const auto s = plane_wave_lattice(16, 0.5, 0.6, 1);
  REQUIRE_THROWS_AS(evolve_external(s, WaveLattice1D(16), 1, e_phys), CflError);
  REQUIRE_THROWS_AS(evolve_coupled(s, WaveLattice1D(16), 1, CoupledOptions{}), CflError);
  REQUIRE_THROWS_AS(evolve_external(plane_wave_lattice(16, 0.5, 0.1, 1), WaveLattice1D(8), 1,
                                    e_phys),
                    ShapeMismatchError);
  REQUIRE_NOTHROW(evolve_free(s, 1));
}

TEST_CASE("dynamics1d: empty field stays empty", "[dynamics1d]") {
  const SpinorLattice1D s(32, 0.5, 0.25);
  const auto run = evolve_coupled(s, WaveLattice1D(32), 100, CoupledOptions{});
  for (std::size_t i = 0; i < 32; ++i) {
    REQUIRE(run.wave.A[i].norm() == 0.0);
    REQUIRE(run.spinor.phi[i].norm() == 0.0);
  }
}

TEST_CASE("dynamics1d: damped field relaxes to the Poisson solution", "[dynamics1d]") {
  const std::size_t n = 256;
  const SpinorLattice1D s(n, 64.0 / n, 0.2);
  CoupledOptions opt;
  opt.j_ext = gaussian_source(s, 0.0854, 32.0, 2.0);
  opt.damping = damping_layer(s, 16.0, 0.25);
  const auto run = evolve_coupled(s, WaveLattice1D(n), 3000, opt);
  std::vector<double> rho(n), A0(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = opt.j_ext[i](0);
    A0[i] = run.wave.A[i](0);
  }
  const auto ref = oracle::periodic_poisson(rho, s.dz);
  A0 = mean_free(A0);
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(A0[i] - ref[i]));
    peak = std::max(peak, std::abs(ref[i]));
  }
  INFO(worst / peak);
  REQUIRE(worst <= 1e-4 * peak);
}

TEST_CASE("dynamics1d: coupled energy is conserved without damping", "[dynamics1d]") {
  auto s = gaussian_packet(128, 0.25, 0.02, 16.0, 2.0, 0.5);
  CoupledOptions opt;
  opt.e = e_phys;
  WaveLattice1D w(128);
  const double E0 = coupled_energy(s, w, opt).total;
  const auto run = evolve_coupled(s, w, 1000, opt);
  const double E1 = coupled_energy(run.spinor, run.wave, opt).total;
  INFO(E0 << " -> " << E1);
  REQUIRE(std::abs(E1 - E0) <= 1e-4 * std::abs(E0));
  REQUIRE(std::abs(norm(run.spinor) - norm(s)) <= 1e-12);
}

TEST_CASE("dynamics1d: retarded = symmetric + radiation", "[dynamics1d]") {
  // a static source: ret and adv agree at the centre of the record window
  const std::size_t n = 64;
  const SpinorLattice1D empty(n, 0.5, 0.25);
  CoupledOptions st;
  st.j_ext = gaussian_source(empty, 0.1, 16.0, 1.5);
  st.record = true;
  const auto rs = evolve_coupled(empty, WaveLattice1D(n), 40, st);
  {
    const auto ret = retarded_potential(rs.history, 20);
    const auto adv = advanced_potential(rs.history, 20);
    double rad = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rad = std::max(rad, 0.5 * (ret[i] - adv[i]).cwiseAbs().maxCoeff());
      scale = std::max(scale, ret[i].cwiseAbs().maxCoeff());
    }
    REQUIRE(scale > 0.0);
    REQUIRE(rad <= 1e-14 * scale);
  }
  REQUIRE_THROWS_AS(retarded_potential(rs.history, 0), InputError);

  // an oscillating packet radiates; the split reconstructs ret in any case
  auto s = gaussian_packet(n, 0.5, 0.25, 16.0, 1.0, 1.0);
  CoupledOptions opt;
  opt.record = true;
  const auto run = evolve_coupled(s, WaveLattice1D(n), 40, opt);
  Grid4 g;
  g.shape = {1, 1, 1, n};
  Field4<FourVector> ret(g, FourVector::Zero()), adv(g, FourVector::Zero());
  const auto r = retarded_potential(run.history, 20), a = advanced_potential(run.history, 20);
  for (std::size_t i = 0; i < n; ++i) {
    ret.data[i] = r[i];
    adv.data[i] = a[i];
  }
  const auto split = symmetric_and_radiation_parts(ret, adv);
  double peak = 0.0, radmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    peak = std::max({peak, ret.data[i].cwiseAbs().maxCoeff(), adv.data[i].cwiseAbs().maxCoeff()});
    radmax = std::max(radmax, split.radiation.data[i].cwiseAbs().maxCoeff());
  }
  REQUIRE(split_identity_residual(ret, split) <= 2 * std::numeric_limits<double>::epsilon() * peak);
  REQUIRE(radmax > 1e-6 * peak);
}

TEST_CASE("dynamics1d: charge conservation at second order", "[dynamics1d]") {
  const double L = 32.0;
  auto rel = [&](std::size_t n) {
    const double dz = L / double(n);
    auto s = gaussian_packet(n, dz, 0.5 * dz, L / 2, 2.0, 0.7);
    CoupledOptions opt;
    opt.e = e_phys;
    opt.record = true;
    const auto run = evolve_coupled(s, WaveLattice1D(n), std::size_t(4.0 / (0.5 * dz)), opt);
    const auto j = history_current(run.history);
    double jmax = 0.0;
    for (const auto &v : j.data)
      jmax = std::max(jmax, v.cwiseAbs().maxCoeff());
    return charge_conservation_residual(j, 2) / jmax;
  };
  const double r1 = rel(64), r2 = rel(128), r3 = rel(256);
  INFO(r1 << " " << r2 << " " << r3);
  REQUIRE(r1 / r2 > 3.5);
  REQUIRE(r2 / r3 > 3.5);
}
