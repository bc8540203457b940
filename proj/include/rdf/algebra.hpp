#pragma once
#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

/*
Real (8-component) representation of the Dirac algebra.

The complex 4x4 Dirac matrices gamma^a are carried into real 8x8 matrices by
the realification map R, which sends X + iY to the matrix built from 2x2
blocks X_jk I + Y_jk J, with J = ((0,-1),(1,0)). Spinors are interleaved
(Re phi_1, Im phi_1, ..., Re phi_4, Im phi_4). Then

  eta^a = R(gamma^a),   N = R(-i),

so that [D - kappa(1+a)N] Phi = 0 is, component for component, the complex
equation [i d_a gamma^a - kappa(1 + a~)] phi = 0 multiplied by -i.

The block form N_a (+) N_b is kept alongside; it is orthogonally similar to N
(see representation_equivalence).
*/
namespace rdf {

using ComplexMatrix4 = Eigen::Matrix4cd;
using RealMatrix8 = Eigen::Matrix<double, 8, 8>;
using ComplexSpinor4 = Eigen::Vector4cd;
using RealSpinor8 = Eigen::Matrix<double, 8, 1>;

//! Contravariant four-vector (A^0, A^1, A^2, A^3)
using FourVector = Eigen::Vector4d;
//! Rank-2 tensor with both indices up, T^{ab}
using Tensor4 = Eigen::Matrix4d;

//! Metric signature diag(+1, -1, -1, -1)
inline constexpr std::array<double, 4> metric{1.0, -1.0, -1.0, -1.0};

inline FourVector lower(const FourVector &v) {
  return FourVector{v(0), -v(1), -v(2), -v(3)};
}

//==============================================================================
struct AlgebraSet {
  //! Dirac representation: gamma^0 = diag(1,1,-1,-1), gamma^k offdiag(sigma_k, -sigma_k)
  std::array<ComplexMatrix4, 4> gamma;
  //! eta^a = R(gamma^a)
  std::array<RealMatrix8, 4> eta;
  //! N = R(-i)
  RealMatrix8 n_matrix;
  //! N assembled from the 4x4 blocks N_a, N_b
  RealMatrix8 n_block_form;
  Eigen::Matrix4d n_a;
  Eigen::Matrix4d n_b;
};

//! Builds the algebra and verifies every defining identity exactly.
//! Throws std::logic_error if any identity fails (a programming error).
AlgebraSet build_algebra();

//! Realification map R on complex 4x4 matrices.
RealMatrix8 realify(const ComplexMatrix4 &m);
RealSpinor8 realify(const ComplexSpinor4 &phi);
ComplexSpinor4 complexify(const RealSpinor8 &Phi);

//! N_b * conj(phi_a): the lower spinor tied to phi_a.
ComplexSpinor4 companion_spinor(const ComplexSpinor4 &phi_a);

//! Phi1^T eta^0 M Phi2 (adjoint Phi~ := Phi^T eta^0)
double adjoint_bilinear(const AlgebraSet &alg, const RealSpinor8 &Phi1,
                        const RealMatrix8 &M, const RealSpinor8 &Phi2);

//! Phi~ eta^a Phi for all four a, i.e. the real form of phibar gamma^a phi.
FourVector vector_bilinear(const AlgebraSet &alg, const RealSpinor8 &Phi);

//! a = (e/K) A_b eta^b, with A given contravariantly
RealMatrix8 slashed(const AlgebraSet &alg, const FourVector &A);
//! a~ = (e/K) A_b gamma^b, complex counterpart
ComplexMatrix4 slashed_complex(const AlgebraSet &alg, const FourVector &A);

//==============================================================================
struct OrthogonalEquivalence {
  RealMatrix8 U;           // U N U^T = n_block_form
  double similarity_residual; // max |U N U^T - n_block_form|
  double orthogonality_residual; // max |U U^T - I|
  double determinant;
};

//! Orthogonal U with U N U^T equal to the block-form N, built by pairing
//! the canonical 2-d invariant planes {v, Mv} of both complex structures.
//! Throws std::logic_error if the construction does not close.
OrthogonalEquivalence representation_equivalence(const AlgebraSet &alg);

//==============================================================================
struct IdentityCheck {
  std::string name;
  double max_deviation;
  double tolerance; // 0 means exact equality required
  bool passed() const { return max_deviation <= tolerance; }
};

//! Runs every algebra identity: exact integer identities (tolerance 0),
//! random-spinor dictionary checks with a fixed seed (tolerance 1e-12).
std::vector<IdentityCheck> check_algebra(const AlgebraSet &alg,
                                         std::uint64_t seed = 20240601,
                                         int samples = 1000);

} // namespace rdf
