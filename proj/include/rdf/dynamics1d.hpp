#pragma once
#include "rdf/algebra.hpp"
#include <cstddef>
#include <vector>

/*
1+1 dimensional toy: all four spinor components and all four potential
components retained, fields depend on (t, z) only, periodic in z.

  i d_t phi = H[A] phi,   H[A] = alpha_z p + kappa beta + e A^0 - e alpha.A,
  d_t^2 A - d_z^2 A = 4 pi j - gamma(z) d_t A,   j^a = 2 e kappa^2 phi^dag gamma^0 gamma^a phi,

in units kappa = K = 1 unless stated. The spinor is charge normalized,
int 2 kappa^2 phi^dag phi dz = 1, so that the total charge is e.

Free propagation is exact per Fourier mode; the potential acts through its
closed-form local exponential; Strang splitting combines the two. The wave
equation uses a three-point Laplacian with a velocity-Verlet (leapfrog)
update, stable for dt <= dz.
*/
namespace rdf {

struct SpinorLattice1D {
  std::size_t n = 0;
  double dz = 0.0;
  double dt = 0.0;
  double t = 0.0;
  std::vector<ComplexSpinor4> phi;

  SpinorLattice1D() = default;
  //! Throws InputError unless n is a power of two >= 4 and dz, dt > 0.
  SpinorLattice1D(std::size_t n, double dz, double dt);

  double length() const { return double(n) * dz; }
  double z(std::size_t i) const { return double(i) * dz; }
  //! Wavenumber of FFT bin m (bins >= n/2 are negative)
  double wavenumber(std::size_t m) const;
};

struct WaveLattice1D {
  std::vector<FourVector> A;  // A^a(z)
  std::vector<FourVector> dA; // d_t A^a(z)

  WaveLattice1D() = default;
  explicit WaveLattice1D(std::size_t n)
      : A(n, FourVector::Zero()), dA(n, FourVector::Zero()) {}
};

//! H(k) = alpha_z k + kappa beta
ComplexMatrix4 free_hamiltonian(double k, double kappa = 1.0);
//! Unit positive-energy eigenvector of H(k), spin up along z (spin = 0) or down
ComplexSpinor4 positive_energy_spinor(double k, int spin = 0, double kappa = 1.0);

//! u exp(i k z) on every node, scaled to unit charge normalization
SpinorLattice1D plane_wave_lattice(std::size_t n, double dz, double dt,
                                   std::size_t mode, int spin = 0,
                                   double kappa = 1.0);
//! Positive-energy Gaussian packet: u_+(k) exp(-(k-k0)^2 w^2 / 2) per mode,
//! centred at z0, charge normalized.
SpinorLattice1D gaussian_packet(std::size_t n, double dz, double dt, double z0,
                                double width, double k0, double kappa = 1.0);

//==============================================================================
double norm(const SpinorLattice1D &s); // int phi^dag phi dz
//! int j^0 dz
double total_charge(const SpinorLattice1D &s, double e, double kappa = 1.0);
std::vector<FourVector> current(const SpinorLattice1D &s, double e,
                                double kappa = 1.0);

//! Forward FFT of each spinor component (bin m <-> wavenumber(m))
std::vector<ComplexSpinor4> to_modes(const SpinorLattice1D &s);
void from_modes(SpinorLattice1D &s, const std::vector<ComplexSpinor4> &modes);

//==============================================================================
//! One exact free step of length h (no boundary or CFL condition).
void free_step(SpinorLattice1D &s, double h, double kappa = 1.0);
//! exp(-i h (e A^0 - e alpha.A)) applied node by node
void potential_step(SpinorLattice1D &s, const std::vector<FourVector> &A,
                    double e, double h);
//! free(h/2) potential(h) free(h/2)
void strang_step(SpinorLattice1D &s, const std::vector<FourVector> &A, double e,
                 double h, double kappa = 1.0);

SpinorLattice1D evolve_free(SpinorLattice1D s, std::size_t steps,
                            double kappa = 1.0);

//! Static external potential. Throws CflError if dt > dz, ShapeMismatchError
//! if the profile has the wrong length.
SpinorLattice1D evolve_external(SpinorLattice1D s, const WaveLattice1D &A_ext,
                                std::size_t steps, double e, double kappa = 1.0);

//==============================================================================
struct CoupledOptions {
  double e = -0.08542454313193604; // -sqrt(alpha)
  double kappa = 1.0;
  std::vector<FourVector> A_ext;   // static potential felt by the spinor
  std::vector<FourVector> j_ext;   // static external source of the wave field
  std::vector<double> damping;     // gamma(z) >= 0; empty = none
  //! Uniform static background cancelling the spinor's net charge; on a
  //! periodic line the k = 0 mode of A^0 otherwise grows like t^2.
  bool neutralize = true;
  bool record = false;             // keep j and A at every step
};

//! Absorbing layer gamma(z) = strength cos^2(pi d / 2 width) for d < width,
//! d the distance to the seam z = 0 ~ L of the periodic line; zero elsewhere.
std::vector<double> damping_layer(const SpinorLattice1D &s, double width,
                                  double strength);

//! j_ext plus the neutralizing background (if enabled) for spinor s
std::vector<FourVector> external_source(const SpinorLattice1D &s,
                                        const CoupledOptions &opt);

//! j and A at t_m = t_0 + m dt, m = 0..steps
struct SourceHistory {
  double t0 = 0.0;
  double dt = 0.0;
  double dz = 0.0;
  std::vector<std::vector<FourVector>> j;
  std::vector<std::vector<FourVector>> A;
  std::size_t size() const { return j.size(); }
};

struct CoupledRun {
  SpinorLattice1D spinor;
  WaveLattice1D wave;
  SourceHistory history;
};

//! One velocity-Verlet step of the wave field per spinor step:
//! kick(dt/2) drift(dt/2) strang(dt) drift(dt/2) kick(dt/2).
//! The spinor feels A + A_ext at the half step. Throws CflError if dt > dz.
CoupledRun evolve_coupled(SpinorLattice1D s, WaveLattice1D w, std::size_t steps,
                          const CoupledOptions &opt);

//! Three-point periodic Laplacian of one component
std::vector<double> laplacian(const std::vector<double> &f, double dz);

//! int 2 phi^dag H[A] phi dz (kinetic part spectral)
double dirac_energy(const SpinorLattice1D &s, const std::vector<FourVector> &A,
                    double e, double kappa = 1.0);
//! (1/8pi) int [sum_k (dA^k)^2 + (D A^k)^2 - (dA^0)^2 - (D A^0)^2] dz with
//! forward differences D, matching the three-point Laplacian
double field_energy(const WaveLattice1D &w, double dz);
struct EnergyBreakdown {
  double dirac;  // dirac_energy with A + A_ext
  double field;  // field_energy
  double source; // int j_ext_a A^a dz (external source coupling)
  double total;
};
//! The constant of motion of evolve_coupled without damping
EnergyBreakdown coupled_energy(const SpinorLattice1D &s, const WaveLattice1D &w,
                               const CoupledOptions &opt);

//! max |d_t A^0 + d_z A^3|
double lorenz_residual(const WaveLattice1D &w, double dz);

//==============================================================================
//! 1-D periodic Green-function reconstruction from the recorded source
//! (A = 0 before the first and after the last record):
//!   A_ret(t, z) = 2 pi int_{t0}^{t} dt' int dz' j(t', z') N(t - t', z - z'),
//!   A_adv(t, z) = 2 pi int_{t}^{t_end} ... N(t' - t, z - z'),
//! N(tau, d) = number of periodic images with |d + mL| < tau. Trapezoid in t.
//! Throws InputError if index leaves fewer than two samples on either side.
std::vector<FourVector> retarded_potential(const SourceHistory &h,
                                           std::size_t index);
std::vector<FourVector> advanced_potential(const SourceHistory &h,
                                           std::size_t index);

//==============================================================================
struct DispersionPoint {
  std::size_t mode;
  double k;
  double omega;    // measured
  double expected; // sqrt(k^2 + kappa^2)
};

//! Phase regression of the positive-energy projection of every mode holding
//! more than rel_threshold of the peak amplitude. Snapshots must be equally
//! spaced in time. Throws InputError if fewer than three snapshots or if a
//! mode turns by more than pi/2 between snapshots.
std::vector<DispersionPoint>
measure_dispersion(const std::vector<SpinorLattice1D> &snapshots,
                   double kappa = 1.0, double rel_threshold = 1e-6);

} // namespace rdf
