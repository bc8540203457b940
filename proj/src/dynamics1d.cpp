#include "rdf/dynamics1d.hpp"
#include "rdf/constants.hpp"
#include "rdf/errors.hpp"
#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace rdf {

namespace {
using cd = std::complex<double>;
constexpr double pi = PhysConst::pi;
constexpr cd I{0.0, 1.0};

const AlgebraSet &algebra() {
  static const AlgebraSet alg = build_algebra();
  return alg;
}

//! alpha_k = gamma^0 gamma^k
const std::array<ComplexMatrix4, 3> &alphas() {
  static const std::array<ComplexMatrix4, 3> a = [] {
    const auto &g = algebra().gamma;
    return std::array<ComplexMatrix4, 3>{g[0] * g[1], g[0] * g[2], g[0] * g[3]};
  }();
  return a;
}

Eigen::FFT<double> &fft() {
  static Eigen::FFT<double> f;
  return f;
}

void require_cfl(const SpinorLattice1D &s, const char *what) {
  if (s.dt > s.dz)
    throw CflError(fmt::format("{}: dt = {} exceeds dz = {} (CFL bound dt <= dz)",
                               what, s.dt, s.dz));
}

void require_length(std::size_t got, std::size_t n, const char *what) {
  if (got != n)
    throw ShapeMismatchError(
        fmt::format("{}: profile has {} nodes, lattice has {}", what, got, n));
}

void normalize_charge(SpinorLattice1D &s, double kappa) {
  const double q = 2.0 * kappa * kappa * norm(s);
  if (!(q > 0.0))
    throw InputError("cannot charge-normalize a vanishing spinor field");
  const double c = 1.0 / std::sqrt(q);
  for (auto &v : s.phi)
    v *= c;
}

//! Images p with |d + pL| < tau, counting |d + pL| == tau as one half
double image_count(double tau, double d, double L) {
  if (tau <= 0.0)
    return 0.0;
  double count = 0.0;
  const long p0 = long(std::floor((-tau - d) / L)) - 1;
  const long p1 = long(std::ceil((tau - d) / L)) + 1;
  for (long p = p0; p <= p1; ++p) {
    const double x = std::abs(d + double(p) * L);
    if (x < tau)
      count += 1.0;
    else if (x == tau)
      count += 0.5;
  }
  return count;
}

std::vector<FourVector> green_sum(const SourceHistory &h, std::size_t n,
                                  bool retarded) {
  if (h.size() < 4 || n < 1 || n + 2 > h.size())
    throw InputError(fmt::format(
        "source history too short for ret/adv reconstruction at record {} of {}",
        n, h.size()));
  const std::size_t N = h.j.front().size();
  const double L = double(N) * h.dz;
  const std::size_t m0 = retarded ? 0 : n;
  const std::size_t m1 = retarded ? n : h.size() - 1;
  std::vector<FourVector> out(N, FourVector::Zero());
  std::vector<double> kernel(N);
  for (std::size_t m = m0; m <= m1; ++m) {
    const double w = (m == m0 || m == m1 ? 0.5 : 1.0) * h.dt * h.dz * 2.0 * pi;
    const double tau = double(retarded ? n - m : m - n) * h.dt;
    if (tau <= 0.0)
      continue;
    for (std::size_t s = 0; s < N; ++s)
      kernel[s] = image_count(tau, double(s) * h.dz, L);
    const auto &j = h.j[m];
    for (std::size_t i = 0; i < N; ++i) {
      FourVector acc = FourVector::Zero();
      for (std::size_t jj = 0; jj < N; ++jj)
        acc += kernel[(i + N - jj) % N] * j[jj];
      out[i] += w * acc;
    }
  }
  return out;
}

} // namespace

//==============================================================================
SpinorLattice1D::SpinorLattice1D(std::size_t n_, double dz_, double dt_)
    : n(n_), dz(dz_), dt(dt_), phi(n_, ComplexSpinor4::Zero()) {
  if (n < 4 || (n & (n - 1)) != 0)
    throw InputError(fmt::format("SpinorLattice1D: n = {} is not a power of two >= 4", n));
  if (!(dz > 0.0) || !(dt > 0.0))
    throw InputError("SpinorLattice1D: dz and dt must be positive");
}

double SpinorLattice1D::wavenumber(std::size_t m) const {
  const double j = m < n / 2 ? double(m) : double(m) - double(n);
  return 2.0 * pi * j / length();
}

ComplexMatrix4 free_hamiltonian(double k, double kappa) {
  return k * alphas()[2] + kappa * algebra().gamma[0];
}

ComplexSpinor4 positive_energy_spinor(double k, int spin, double kappa) {
  const ComplexMatrix4 H = free_hamiltonian(k, kappa);
  const double w = std::sqrt(k * k + kappa * kappa);
  const ComplexMatrix4 P = 0.5 * (ComplexMatrix4::Identity() + H / w);
  const ComplexSpinor4 u = P.col(spin ? 1 : 0);
  return u / u.norm();
}

SpinorLattice1D plane_wave_lattice(std::size_t n, double dz, double dt,
                                   std::size_t mode, int spin, double kappa) {
  SpinorLattice1D s(n, dz, dt);
  const double k = s.wavenumber(mode);
  const auto u = positive_energy_spinor(k, spin, kappa);
  for (std::size_t i = 0; i < n; ++i)
    s.phi[i] = std::polar(1.0, k * s.z(i)) * u;
  normalize_charge(s, kappa);
  return s;
}

SpinorLattice1D gaussian_packet(std::size_t n, double dz, double dt, double z0,
                                double width, double k0, double kappa) {
  SpinorLattice1D s(n, dz, dt);
  std::vector<ComplexSpinor4> modes(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double k = s.wavenumber(m);
    const double g = std::exp(-0.5 * (k - k0) * (k - k0) * width * width);
    modes[m] = g * std::polar(1.0, -k * z0) * positive_energy_spinor(k, 0, kappa);
  }
  from_modes(s, modes);
  normalize_charge(s, kappa);
  return s;
}

//==============================================================================
double norm(const SpinorLattice1D &s) {
  double q = 0.0;
  for (const auto &v : s.phi)
    q += v.squaredNorm();
  return q * s.dz;
}

double total_charge(const SpinorLattice1D &s, double e, double kappa) {
  return 2.0 * e * kappa * kappa * norm(s);
}

std::vector<FourVector> current(const SpinorLattice1D &s, double e,
                                double kappa) {
  const auto &al = alphas();
  const double c = 2.0 * e * kappa * kappa;
  std::vector<FourVector> j(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    const auto &v = s.phi[i];
    j[i] = c * FourVector(v.squaredNorm(), v.dot(al[0] * v).real(),
                          v.dot(al[1] * v).real(), v.dot(al[2] * v).real());
  }
  return j;
}

std::vector<ComplexSpinor4> to_modes(const SpinorLattice1D &s) {
  std::vector<ComplexSpinor4> out(s.n);
  std::vector<cd> in(s.n), tmp;
  for (int c = 0; c < 4; ++c) {
    for (std::size_t i = 0; i < s.n; ++i)
      in[i] = s.phi[i](c);
    fft().fwd(tmp, in);
    for (std::size_t m = 0; m < s.n; ++m)
      out[m](c) = tmp[m];
  }
  return out;
}

void from_modes(SpinorLattice1D &s, const std::vector<ComplexSpinor4> &modes) {
  require_length(modes.size(), s.n, "from_modes");
  std::vector<cd> in(s.n), tmp;
  for (int c = 0; c < 4; ++c) {
    for (std::size_t m = 0; m < s.n; ++m)
      in[m] = modes[m](c);
    fft().inv(tmp, in);
    for (std::size_t i = 0; i < s.n; ++i)
      s.phi[i](c) = tmp[i];
  }
}

//==============================================================================
void free_step(SpinorLattice1D &s, double h, double kappa) {
  auto modes = to_modes(s);
  for (std::size_t m = 0; m < s.n; ++m) {
    const double k = s.wavenumber(m);
    const double w = std::sqrt(k * k + kappa * kappa);
    // exp(-i H h) = cos(w h) - i sin(w h) H / w
    const ComplexMatrix4 U = std::cos(w * h) * ComplexMatrix4::Identity() -
                             (I * (std::sin(w * h) / w)) * free_hamiltonian(k, kappa);
    modes[m] = U * modes[m];
  }
  from_modes(s, modes);
}

void potential_step(SpinorLattice1D &s, const std::vector<FourVector> &A,
                    double e, double h) {
  require_length(A.size(), s.n, "potential_step");
  const auto &al = alphas();
  for (std::size_t i = 0; i < s.n; ++i) {
    const Eigen::Vector3d a = A[i].tail<3>();
    const double amag = a.norm();
    const cd phase = std::polar(1.0, -e * A[i](0) * h);
    if (amag == 0.0) {
      s.phi[i] *= phase;
      continue;
    }
    // exp(i h e alpha.A) = cos(e|A|h) + i sin(e|A|h) alpha.A/|A|
    const ComplexMatrix4 aA = (a(0) * al[0] + a(1) * al[1] + a(2) * al[2]) / amag;
    const ComplexMatrix4 U = std::cos(e * amag * h) * ComplexMatrix4::Identity() +
                             (I * std::sin(e * amag * h)) * aA;
    s.phi[i] = phase * (U * s.phi[i]);
  }
}

void strang_step(SpinorLattice1D &s, const std::vector<FourVector> &A, double e,
                 double h, double kappa) {
  free_step(s, 0.5 * h, kappa);
  potential_step(s, A, e, h);
  free_step(s, 0.5 * h, kappa);
}

SpinorLattice1D evolve_free(SpinorLattice1D s, std::size_t steps, double kappa) {
  if (steps == 0)
    return s;
  // the free propagator is exact for any step, so compose mode by mode
  std::vector<ComplexSpinor4> modes = to_modes(s);
  std::vector<ComplexMatrix4> U(s.n);
  for (std::size_t m = 0; m < s.n; ++m) {
    const double k = s.wavenumber(m);
    const double w = std::sqrt(k * k + kappa * kappa);
    U[m] = std::cos(w * s.dt) * ComplexMatrix4::Identity() -
           (I * (std::sin(w * s.dt) / w)) * free_hamiltonian(k, kappa);
  }
  for (std::size_t step = 0; step < steps; ++step)
    for (std::size_t m = 0; m < s.n; ++m)
      modes[m] = U[m] * modes[m];
  from_modes(s, modes);
  s.t += double(steps) * s.dt;
  return s;
}

SpinorLattice1D evolve_external(SpinorLattice1D s, const WaveLattice1D &A_ext,
                                std::size_t steps, double e, double kappa) {
  require_cfl(s, "evolve_external");
  require_length(A_ext.A.size(), s.n, "evolve_external");
  for (std::size_t step = 0; step < steps; ++step) {
    strang_step(s, A_ext.A, e, s.dt, kappa);
    s.t += s.dt;
  }
  return s;
}

//==============================================================================
std::vector<double> laplacian(const std::vector<double> &f, double dz) {
  const std::size_t n = f.size();
  std::vector<double> out(n);
  const double c = 1.0 / (dz * dz);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = c * (f[(i + 1) % n] - 2.0 * f[i] + f[(i + n - 1) % n]);
  return out;
}

namespace {
std::vector<FourVector> wave_force(const std::vector<FourVector> &A,
                                   const std::vector<FourVector> &j, double dz) {
  const std::size_t n = A.size();
  std::vector<FourVector> f(n);
  const double c = 1.0 / (dz * dz);
  for (std::size_t i = 0; i < n; ++i)
    f[i] = c * (A[(i + 1) % n] - 2.0 * A[i] + A[(i + n - 1) % n]) + 4.0 * pi * j[i];
  return f;
}
} // namespace

std::vector<double> damping_layer(const SpinorLattice1D &s, double width,
                                  double strength) {
  if (width < 0.0 || strength < 0.0)
    throw InputError("damping_layer: width and strength must be non-negative");
  std::vector<double> g(s.n, 0.0);
  for (std::size_t i = 0; i < s.n; ++i) {
    const double d = std::min(s.z(i), s.length() - s.z(i));
    if (d < width) {
      const double c = std::cos(0.5 * pi * d / width);
      g[i] = strength * c * c;
    }
  }
  return g;
}

std::vector<FourVector> external_source(const SpinorLattice1D &s,
                                        const CoupledOptions &opt) {
  std::vector<FourVector> j =
      opt.j_ext.empty() ? std::vector<FourVector>(s.n, FourVector::Zero()) : opt.j_ext;
  require_length(j.size(), s.n, "external_source");
  if (opt.neutralize) {
    const double rho = total_charge(s, opt.e, opt.kappa) / s.length();
    for (auto &v : j)
      v(0) -= rho;
  }
  return j;
}

CoupledRun evolve_coupled(SpinorLattice1D s, WaveLattice1D w, std::size_t steps,
                          const CoupledOptions &opt) {
  require_cfl(s, "evolve_coupled");
  const std::size_t n = s.n;
  require_length(w.A.size(), n, "evolve_coupled (A)");
  require_length(w.dA.size(), n, "evolve_coupled (dA)");
  if (!opt.A_ext.empty())
    require_length(opt.A_ext.size(), n, "evolve_coupled (A_ext)");
  if (!opt.j_ext.empty())
    require_length(opt.j_ext.size(), n, "evolve_coupled (j_ext)");
  if (!opt.damping.empty())
    require_length(opt.damping.size(), n, "evolve_coupled (damping)");
  const double h = s.dt;
  auto gamma = [&](std::size_t i) { return opt.damping.empty() ? 0.0 : opt.damping[i]; };
  const auto j_ext = external_source(s, opt);
  auto source = [&]() {
    auto j = current(s, opt.e, opt.kappa);
    for (std::size_t i = 0; i < n; ++i)
      j[i] += j_ext[i];
    return j;
  };

  CoupledRun run;
  run.history.t0 = s.t;
  run.history.dt = h;
  run.history.dz = s.dz;
  auto j = source();
  if (opt.record) {
    run.history.j.push_back(j);
    run.history.A.push_back(w.A);
  }
  std::vector<FourVector> Afelt(n);
  for (std::size_t step = 0; step < steps; ++step) {
    auto f = wave_force(w.A, j, s.dz);
    for (std::size_t i = 0; i < n; ++i) {
      w.dA[i] += 0.5 * h * (f[i] - gamma(i) * w.dA[i]);
      w.A[i] += 0.5 * h * w.dA[i];
      Afelt[i] = opt.A_ext.empty() ? w.A[i] : FourVector(w.A[i] + opt.A_ext[i]);
    }
    strang_step(s, Afelt, opt.e, h, opt.kappa);
    s.t += h;
    for (std::size_t i = 0; i < n; ++i)
      w.A[i] += 0.5 * h * w.dA[i];
    j = source();
    f = wave_force(w.A, j, s.dz);
    for (std::size_t i = 0; i < n; ++i)
      w.dA[i] = (w.dA[i] + 0.5 * h * f[i]) / (1.0 + 0.5 * h * gamma(i));
    if (opt.record) {
      run.history.j.push_back(j);
      run.history.A.push_back(w.A);
    }
  }
  run.spinor = std::move(s);
  run.wave = std::move(w);
  return run;
}

double dirac_energy(const SpinorLattice1D &s, const std::vector<FourVector> &A,
                    double e, double kappa) {
  require_length(A.size(), s.n, "dirac_energy");
  const auto modes = to_modes(s);
  double kin = 0.0;
  for (std::size_t m = 0; m < s.n; ++m)
    kin += modes[m].dot(free_hamiltonian(s.wavenumber(m), kappa) * modes[m]).real();
  kin *= s.dz / double(s.n); // Parseval for the unnormalized forward FFT
  const auto &al = alphas();
  double pot = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) {
    const auto &v = s.phi[i];
    const ComplexMatrix4 aA = A[i](1) * al[0] + A[i](2) * al[1] + A[i](3) * al[2];
    pot += e * (A[i](0) * v.squaredNorm() - v.dot(aA * v).real());
  }
  pot *= s.dz;
  return 2.0 * kappa * kappa * (kin + pot);
}

double field_energy(const WaveLattice1D &w, double dz) {
  const std::size_t n = w.A.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const FourVector D = (w.A[(i + 1) % n] - w.A[i]) / dz;
    for (int a = 0; a < 4; ++a)
      s -= metric[a] * (w.dA[i](a) * w.dA[i](a) + D(a) * D(a));
  }
  return s * dz / (8.0 * pi);
}

EnergyBreakdown coupled_energy(const SpinorLattice1D &s, const WaveLattice1D &w,
                               const CoupledOptions &opt) {
  std::vector<FourVector> A = w.A;
  if (!opt.A_ext.empty()) {
    require_length(opt.A_ext.size(), s.n, "coupled_energy");
    for (std::size_t i = 0; i < s.n; ++i)
      A[i] += opt.A_ext[i];
  }
  EnergyBreakdown b;
  b.dirac = dirac_energy(s, A, opt.e, opt.kappa);
  b.field = field_energy(w, s.dz);
  const auto j_ext = external_source(s, opt);
  b.source = 0.0;
  for (std::size_t i = 0; i < s.n; ++i)
    b.source += j_ext[i].dot(lower(w.A[i]));
  b.source *= s.dz;
  b.total = b.dirac + b.field + b.source;
  return b;
}

double lorenz_residual(const WaveLattice1D &w, double dz) {
  const std::size_t n = w.A.size();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d3 = (w.A[(i + 1) % n](3) - w.A[(i + n - 1) % n](3)) / (2.0 * dz);
    m = std::max(m, std::abs(w.dA[i](0) + d3));
  }
  return m;
}

//==============================================================================
std::vector<FourVector> retarded_potential(const SourceHistory &h,
                                           std::size_t index) {
  return green_sum(h, index, true);
}

std::vector<FourVector> advanced_potential(const SourceHistory &h,
                                           std::size_t index) {
  return green_sum(h, index, false);
}

//==============================================================================
std::vector<DispersionPoint>
measure_dispersion(const std::vector<SpinorLattice1D> &snapshots, double kappa,
                   double rel_threshold) {
  if (snapshots.size() < 3)
    throw InputError("measure_dispersion: need at least three snapshots");
  const auto &s0 = snapshots.front();
  const std::size_t n = s0.n;
  std::vector<std::vector<ComplexSpinor4>> modes;
  std::vector<double> t;
  for (const auto &s : snapshots) {
    if (s.n != n)
      throw ShapeMismatchError("measure_dispersion: snapshots of different size");
    modes.push_back(to_modes(s));
    t.push_back(s.t);
  }
  const double t_step = t[1] - t[0];
  for (std::size_t q = 2; q < t.size(); ++q)
    if (std::abs((t[q] - t[q - 1]) - t_step) > 1e-9 * std::abs(t_step))
      throw InputError("measure_dispersion: snapshots not equally spaced");

  // reference direction: positive-energy projection of the first snapshot
  std::vector<ComplexSpinor4> ref(n);
  double peak = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double k = s0.wavenumber(m);
    const double w = std::sqrt(k * k + kappa * kappa);
    ref[m] = 0.5 * (modes[0][m] + free_hamiltonian(k, kappa) * modes[0][m] / w);
    peak = std::max(peak, ref[m].norm());
  }
  std::vector<DispersionPoint> out;
  for (std::size_t m = 0; m < n; ++m) {
    if (!(ref[m].norm() > rel_threshold * peak))
      continue;
    const ComplexSpinor4 u = ref[m] / ref[m].norm();
    std::vector<double> phase(t.size());
    double prev = 0.0;
    for (std::size_t q = 0; q < t.size(); ++q) {
      const double p = std::arg(u.dot(modes[q][m]));
      if (q == 0) {
        phase[q] = p;
      } else {
        double d = std::remainder(p - prev, 2.0 * pi);
        if (std::abs(d) > 0.5 * pi)
          throw InputError(fmt::format(
              "measure_dispersion: mode {} turns by {:.3f} rad between snapshots", m, d));
        phase[q] = phase[q - 1] + d;
      }
      prev = p;
    }
    // least-squares slope of phase(t)
    double tm = 0.0, pm = 0.0;
    for (std::size_t q = 0; q < t.size(); ++q) {
      tm += t[q];
      pm += phase[q];
    }
    tm /= double(t.size());
    pm /= double(t.size());
    double num = 0.0, den = 0.0;
    for (std::size_t q = 0; q < t.size(); ++q) {
      num += (t[q] - tm) * (phase[q] - pm);
      den += (t[q] - tm) * (t[q] - tm);
    }
    const double k = s0.wavenumber(m);
    out.push_back({m, k, -num / den, std::sqrt(k * k + kappa * kappa)});
  }
  return out;
}

} // namespace rdf
