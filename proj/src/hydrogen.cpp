#include "rdf/hydrogen.hpp"
#include "rdf/constants.hpp"
#include "rdf/errors.hpp"
#include "rdf/spinor_harmonics.hpp"
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace rdf {

namespace {

using cd = std::complex<double>;

//! Radial equations in x = ln r for a fixed binding W = E - 1
struct CoulombRadial {
  int kappa;
  double alpha;
  double W;

  void deriv(double r, double G, double F, double &dG, double &dF) const {
    dG = -kappa * G + (r * (2.0 + W) + alpha) * F;
    dF = kappa * F - (r * W + alpha) * G;
  }
  //! Scaled Pruefer angle, G = rho sin(theta), F = sigma rho cos(theta).
  //! With sigma = sqrt(-W/(2+W)) the far-zone rotation rate drops from 2r to
  //! about lambda r; multiples of pi (and their ordering) are unchanged.
  double sigma() const { return std::sqrt(-W / (2.0 + W)); }
  double dtheta(double r, double th, double sg) const {
    const double c = std::cos(th), sn = std::sin(th);
    return -kappa * std::sin(2.0 * th) + (r * (2.0 + W) + alpha) * sg * c * c +
           (r * W + alpha) / sg * sn * sn;
  }

  //! One RK4 step of length h in x, starting at radius r
  void step(double r, double h, double &G, double &F) const {
    const double rm = r * std::exp(0.5 * h);
    const double re = r * std::exp(h);
    double k1g, k1f, k2g, k2f, k3g, k3f, k4g, k4f;
    deriv(r, G, F, k1g, k1f);
    deriv(rm, G + 0.5 * h * k1g, F + 0.5 * h * k1f, k2g, k2f);
    deriv(rm, G + 0.5 * h * k2g, F + 0.5 * h * k2f, k3g, k3f);
    deriv(re, G + h * k3g, F + h * k3f, k4g, k4f);
    G += h / 6.0 * (k1g + 2 * k2g + 2 * k3g + k4g);
    F += h / 6.0 * (k1f + 2 * k2f + 2 * k3f + k4f);
  }

  //! RK4 in x from r over h, substepped so that |h d(theta')/d(theta)| < 1/2
  double step_theta(double r, double h, double th, double sg) const {
    const double re = r * std::exp(h);
    const double rate =
        2.0 * std::abs(kappa) +
        std::max(r, re) * ((2.0 + W) * sg + std::abs(W) / sg) + alpha * (sg + 1.0 / sg);
    const int nsub = std::max(1, int(std::ceil(2.0 * std::abs(h) * rate)));
    const double hs = h / nsub;
    for (int k = 0; k < nsub; ++k) {
      const double r0 = r * std::exp(k * hs);
      const double rm = r0 * std::exp(0.5 * hs);
      const double r1 = r0 * std::exp(hs);
      const double k1 = dtheta(r0, th, sg);
      const double k2 = dtheta(rm, th + 0.5 * hs * k1, sg);
      const double k3 = dtheta(rm, th + 0.5 * hs * k2, sg);
      const double k4 = dtheta(r1, th + hs * k3, sg);
      th += hs / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return th;
  }

  //! F/G at small r for G ~ r^s (written to avoid cancellation in s + kappa)
  double origin_ratio() const {
    const double s = std::sqrt(kappa * kappa - alpha * alpha);
    return kappa < 0 ? -alpha / (s - kappa) : (s + kappa) / alpha;
  }
  double decay_rate() const { return std::sqrt(-W * (2.0 + W)); }
  //! F/G for G ~ exp(-lambda r)
  double tail_ratio() const { return -decay_rate() / (2.0 + W); }
};

//! theta_out - theta_in at the matching node
double angle_mismatch(const CoulombRadial &sys, const RadialGrid &grid,
                      std::size_t m) {
  const double h = grid.dx();
  const double sg = sys.sigma();
  double th = std::atan2(sg, sys.origin_ratio());
  for (std::size_t i = 0; i < m; ++i)
    th = sys.step_theta(grid.r(i), h, th, sg);
  double ti = std::atan2(sg, sys.tail_ratio());
  for (std::size_t i = grid.size() - 1; i > m; --i)
    ti = sys.step_theta(grid.r(i), -h, ti, sg);
  return th - ti;
}

std::size_t matching_index(const BoundStateSpec &spec, const RadialGrid &grid) {
  // outer classical turning point at the nonrelativistic energy estimate
  const double n = spec.n;
  const double l = spec.l();
  const double r_tp = n * n / spec.alpha * (1.0 + std::sqrt(1.0 - l * (l + 1) / (n * n)));
  const auto i = grid.index_below(std::clamp(r_tp, grid.r_min(), grid.r_max()));
  return std::clamp<std::size_t>(i, 4, grid.size() - 5);
}

} // namespace

//==============================================================================
void BoundStateSpec::validate() const {
  if (n < 1)
    throw DomainError(fmt::format("principal quantum number n = {} < 1", n));
  if (kappa == 0 || std::abs(kappa) > n || kappa == n)
    throw DomainError(fmt::format("invalid kappa_D = {} for n = {}", kappa, n));
  if (!(alpha > 0.0) || !(alpha < std::abs(kappa)))
    throw DomainError(fmt::format(
        "alpha = {} outside (0, |kappa_D|) = (0, {}): sqrt(kappa^2 - alpha^2) not real",
        alpha, std::abs(kappa)));
}

int BoundStateSpec::l() const { return Angular::l_k(kappa); }
int BoundStateSpec::radial_nodes() const { return n - l() - 1; }
double BoundStateSpec::s() const {
  return std::sqrt(double(kappa) * kappa - alpha * alpha);
}
std::string BoundStateSpec::label() const {
  static const char *spdf = "spdfghik";
  return fmt::format("{}{}{}/2", n, spdf[std::min(l(), 7)], Angular::twoj_k(kappa));
}

double sommerfeld_binding(int n, int kappa, double alpha) {
  BoundStateSpec{n, kappa, alpha}.validate();
  const double s = std::sqrt(double(kappa) * kappa - alpha * alpha);
  const double q = alpha / (n - std::abs(kappa) + s);
  const double root = std::sqrt(1.0 + q * q);
  return -q * q / (root * (1.0 + root));
}

double sommerfeld_energy(int n, int kappa, double alpha) {
  BoundStateSpec{n, kappa, alpha}.validate();
  const double s = std::sqrt(double(kappa) * kappa - alpha * alpha);
  const double q = alpha / (n - std::abs(kappa) + s);
  return 1.0 / std::sqrt(1.0 + q * q);
}

RadialGrid default_grid(const BoundStateSpec &spec, std::size_t count) {
  spec.validate();
  return RadialGrid(1.0e-6 / spec.alpha, 40.0 * spec.n * spec.n / spec.alpha,
                    count);
}

//==============================================================================
RadialOrbital solve_bound_state(const BoundStateSpec &spec,
                                const RadialGrid &grid, double tol) {
  spec.validate();
  if (!(tol > 0.0))
    throw InputError("solve_bound_state: tol must be positive");
  constexpr double pi = PhysConst::pi;
  const std::size_t m = matching_index(spec, grid);
  auto mismatch = [&](double W) {
    return angle_mismatch(CoulombRadial{spec.kappa, spec.alpha, W}, grid, m);
  };

  // Each eigenvalue of this kappa is a crossing of the (increasing) mismatch
  // through a multiple of pi. Count from a reference energy below every state
  // of this l: three times the nonrelativistic lowest binding. Going deeper
  // makes the far-zone integration stiff on a Bohr-scale grid.
  const double l1 = spec.l() + 1.0;
  const double W_floor =
      std::max(-1.0 + 1e-9, -1.5 * spec.alpha * spec.alpha / (l1 * l1));
  const double base = std::floor(mismatch(W_floor) / pi) + 1.0;
  const double target = (base + spec.radial_nodes()) * pi;

  const double n = spec.n;
  const double W_est = -0.5 * spec.alpha * spec.alpha / (n * n);
  double lo = W_est * std::pow(n / (n - 0.5), 2);
  if (!(lo > W_floor) || !(mismatch(lo) < target))
    lo = W_floor;
  double hi = W_est * std::pow(n / (n + 0.5), 2);
  // Widen towards W = 0 a little; near threshold the scaled angle equation
  // becomes stiff, and a state that needs it is not held by the grid anyway.
  int expand = 0;
  while (!(mismatch(hi) > target)) {
    hi *= 0.5;
    if (++expand > 8) {
      if (grid.r_max() < 10.0 * n * n / spec.alpha)
        throw GridTooSmallError(fmt::format(
            "solve_bound_state({}): no eigenvalue bracket; r_max = {:.3e} is too "
            "small for n = {}", spec.label(), grid.r_max(), spec.n));
      throw ConvergenceError(fmt::format(
          "solve_bound_state({}): could not bracket the eigenvalue", spec.label()));
    }
  }

  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    (mismatch(mid) < target ? lo : hi) = mid;
  }
  if (hi - lo > std::max(tol, 8.0 * std::numeric_limits<double>::epsilon()))
    throw ConvergenceError(fmt::format(
        "solve_bound_state({}): bracket stalled at width {:.3e}", spec.label(), hi - lo));
  const double W = 0.5 * (lo + hi);

  // amplitudes at the converged energy
  const CoulombRadial sys{spec.kappa, spec.alpha, W};
  const std::size_t N = grid.size();
  const double h = grid.dx();
  std::vector<double> G(N), F(N);
  G[0] = 1.0;
  F[0] = sys.origin_ratio();
  for (std::size_t i = 0; i < m; ++i) {
    G[i + 1] = G[i];
    F[i + 1] = F[i];
    sys.step(grid.r(i), h, G[i + 1], F[i + 1]);
  }
  const double Gm = G[m], Fm = F[m];
  G[N - 1] = 1.0;
  F[N - 1] = sys.tail_ratio();
  for (std::size_t i = N - 1; i > m; --i) {
    G[i - 1] = G[i];
    F[i - 1] = F[i];
    sys.step(grid.r(i), -h, G[i - 1], F[i - 1]);
    if (std::abs(G[i - 1]) > 1e150) {
      for (std::size_t j = i - 1; j < N; ++j) {
        G[j] *= 1e-150;
        F[j] *= 1e-150;
      }
    }
  }
  const double scale = (Gm * G[m] + Fm * F[m]) / (G[m] * G[m] + F[m] * F[m]);
  for (std::size_t i = m + 1; i < N; ++i) {
    G[i] *= scale;
    F[i] *= scale;
  }
  G[m] = Gm;
  F[m] = Fm;

  std::vector<double> dens(N);
  for (std::size_t i = 0; i < N; ++i)
    dens[i] = G[i] * G[i] + F[i] * F[i];
  const double norm = Radial::integrate(grid, dens);
  const double c = 1.0 / std::sqrt(norm);
  double peak = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    G[i] *= c;
    F[i] *= c;
    peak = std::max(peak, std::abs(G[i]));
  }
  const double tail = std::max(std::abs(G[N - 1]), std::abs(F[N - 1]));
  if (tail > 1e-5 * peak)
    throw GridTooSmallError(fmt::format(
        "solve_bound_state({}): |G| at r_max = {:.3e} is {:.1e} of its peak; "
        "increase r_max", spec.label(), grid.r_max(), tail / peak));

  int nodes = 0;
  for (std::size_t i = 0; i + 1 < N; ++i)
    if (G[i] * G[i + 1] < 0.0)
      ++nodes;

  return RadialOrbital{spec, grid, std::move(G), std::move(F), 1.0 + W, W,
                       nodes, c, m};
}

//==============================================================================
std::array<double, 2> orbital_amplitudes(const RadialOrbital &orb, double r) {
  const auto &g = orb.grid;
  if (r <= g.r_min()) {
    const double f = std::pow(r / g.r_min(), orb.spec.s());
    return {orb.G.front() * f, orb.F.front() * f};
  }
  if (r >= g.r_max()) {
    const CoulombRadial sys{orb.spec.kappa, orb.spec.alpha, orb.binding};
    const double f = std::exp(-sys.decay_rate() * (r - g.r_max()));
    return {orb.G.back() * f, orb.F.back() * f};
  }
  const auto i = g.index_below(r);
  const CoulombRadial sys{orb.spec.kappa, orb.spec.alpha, orb.binding};
  double G = orb.G[i], F = orb.F[i];
  const double h = std::log(r) - g.x(i);
  if (h != 0.0)
    sys.step(g.r(i), h, G, F);
  return {G, F};
}

namespace {
ComplexSpinor4 spinor_from_amplitudes(int kappa, int twom, double G, double F,
                                      double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  const auto up = Angular::spinor_harmonic(kappa, twom, x, y, z);
  const auto lo = Angular::spinor_harmonic(-kappa, twom, x, y, z);
  // int 2 phi^dagger phi = int (G^2 + F^2) dr = 1
  const double c = 1.0 / (std::sqrt(2.0) * r);
  ComplexSpinor4 phi;
  phi << c * G * up(0), c * G * up(1), cd{0.0, c * F} * lo(0),
      cd{0.0, c * F} * lo(1);
  return phi;
}
} // namespace

ComplexSpinor4 orbital_spinor(const RadialOrbital &orb, int twom, double x,
                              double y, double z) {
  if (std::abs(twom) > Angular::twoj_k(orb.spec.kappa) || twom % 2 == 0)
    throw DomainError(fmt::format("orbital_spinor: 2m = {} invalid for {}", twom,
                                  orb.spec.label()));
  const auto [G, F] = orbital_amplitudes(orb, std::sqrt(x * x + y * y + z * z));
  return spinor_from_amplitudes(orb.spec.kappa, twom, G, F, x, y, z);
}

Field4<RealSpinor8> sample_orbital(const RadialOrbital &orb, int twom,
                                   const Grid4 &grid, double amplitude) {
  return sample(grid, [&](const std::array<double, 4> &x) -> RealSpinor8 {
    const ComplexSpinor4 phi = std::polar(amplitude, -orb.energy * x[0]) *
                               orbital_spinor(orb, twom, x[1], x[2], x[3]);
    return realify(phi);
  });
}

RadialScalarField orbital_density(const RadialOrbital &orb) {
  const double e = electron_charge(orb.spec.alpha);
  std::vector<double> rho(orb.grid.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = orb.grid.r(i);
    rho[i] = e * (orb.G[i] * orb.G[i] + orb.F[i] * orb.F[i]) /
             (4.0 * PhysConst::pi * r * r);
  }
  return RadialScalarField(orb.grid, std::move(rho));
}

double expectation_inverse_r(const RadialOrbital &orb) {
  std::vector<double> f(orb.grid.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = (orb.G[i] * orb.G[i] + orb.F[i] * orb.F[i]) / orb.grid.r(i);
  return Radial::integrate(orb.grid, f);
}

//==============================================================================
const SphereRule &sphere_rule() {
  static const SphereRule rule = [] {
    // Golub-Welsch for Gauss-Legendre in cos(theta)
    constexpr int n_theta = 10, n_phi = 8;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n_theta, n_theta);
    for (int k = 1; k < n_theta; ++k) {
      const double b = k / std::sqrt(4.0 * k * k - 1.0);
      J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    SphereRule s;
    for (int i = 0; i < n_theta; ++i) {
      const double ct = es.eigenvalues()(i);
      const double w = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int j = 0; j < n_phi; ++j) {
        const double ph = 2.0 * PhysConst::pi * (j + 0.5) / n_phi;
        s.directions.push_back({st * std::cos(ph), st * std::sin(ph), ct});
        s.weights.push_back(w * 2.0 * PhysConst::pi / n_phi);
      }
    }
    return s;
  }();
  return rule;
}

double energy_functional_integral(const RadialOrbital &orb,
                                  const AlgebraSet &alg, double amplitude) {
  constexpr double kappa = 1.0, K = 1.0;
  const auto &sph = sphere_rule();
  const RealMatrix8 eta0N = alg.eta[0] * alg.n_matrix;
  std::vector<double> shell(orb.grid.size());
  for (std::size_t i = 0; i < shell.size(); ++i) {
    const double r = orb.grid.r(i);
    double s = 0.0;
    for (std::size_t d = 0; d < sph.directions.size(); ++d) {
      const auto &u = sph.directions[d];
      const RealSpinor8 Phi =
          amplitude * realify(spinor_from_amplitudes(orb.spec.kappa, 1, orb.G[i],
                                                     orb.F[i], r * u[0], r * u[1],
                                                     r * u[2]));
      const RealSpinor8 dPhi = orb.energy * (alg.n_matrix * Phi); // d^0 Phi
      s += sph.weights[d] * (adjoint_bilinear(alg, dPhi, eta0N, Phi) -
                             adjoint_bilinear(alg, Phi, eta0N, dPhi));
    }
    shell[i] = K * kappa * s * r * r;
  }
  return Radial::integrate(orb.grid, shell);
}

double energy_functional(const RadialOrbital &orb, const AlgebraSet &alg) {
  std::vector<double> dens(orb.grid.size());
  for (std::size_t i = 0; i < dens.size(); ++i)
    dens[i] = orb.G[i] * orb.G[i] + orb.F[i] * orb.F[i];
  const double norm = Radial::integrate(orb.grid, dens);
  if (std::abs(norm - 1.0) > 1e-10)
    throw InputError(fmt::format(
        "energy_functional: orbital norm {:.12f} != 1", norm));
  return energy_functional_integral(orb, alg, 1.0);
}

} // namespace rdf
