#include "rdf/algebra.hpp"
#include <fmt/format.h>
#include <random>
#include <stdexcept>

namespace rdf {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

std::array<Eigen::Matrix2cd, 3> pauli() {
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  return {s1, s2, s3};
}

template <class M>
double max_abs(const M &m) {
  return m.cwiseAbs().maxCoeff();
}

//! Orthonormal basis (v1, Mv1, v2, Mv2, ...) adapted to a complex structure
//! M (M^T = -M, M^2 = -I); in it M is block-diagonal with blocks J.
RealMatrix8 adapted_basis(const RealMatrix8 &M) {
  RealMatrix8 P = RealMatrix8::Zero();
  int filled = 0;
  for (int j = 0; j < 8 && filled < 8; ++j) {
    RealSpinor8 v = RealSpinor8::Unit(j);
    for (int c = 0; c < filled; ++c)
      v -= P.col(c).dot(v) * P.col(c);
    const double norm = v.norm();
    if (norm < 0.5)
      continue;
    v /= norm;
    RealSpinor8 w = M * v;
    for (int c = 0; c < filled; ++c)
      w -= P.col(c).dot(w) * P.col(c);
    w /= w.norm();
    P.col(filled++) = v;
    P.col(filled++) = w;
  }
  if (filled != 8)
    throw std::logic_error("adapted_basis: matrix is not a complex structure");
  return P;
}

} // namespace

//==============================================================================
RealMatrix8 realify(const ComplexMatrix4 &m) {
  RealMatrix8 r;
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const double x = m(j, k).real();
      const double y = m(j, k).imag();
      r(2 * j, 2 * k) = x;
      r(2 * j, 2 * k + 1) = -y;
      r(2 * j + 1, 2 * k) = y;
      r(2 * j + 1, 2 * k + 1) = x;
    }
  }
  return r;
}

RealSpinor8 realify(const ComplexSpinor4 &phi) {
  RealSpinor8 r;
  for (int j = 0; j < 4; ++j) {
    r(2 * j) = phi(j).real();
    r(2 * j + 1) = phi(j).imag();
  }
  return r;
}

ComplexSpinor4 complexify(const RealSpinor8 &Phi) {
  ComplexSpinor4 c;
  for (int j = 0; j < 4; ++j)
    c(j) = cd{Phi(2 * j), Phi(2 * j + 1)};
  return c;
}

//==============================================================================
AlgebraSet build_algebra() {
  AlgebraSet alg;
  const auto s = pauli();
  alg.gamma[0] = ComplexMatrix4::Zero();
  alg.gamma[0].diagonal() << 1, 1, -1, -1;
  for (int k = 0; k < 3; ++k) {
    alg.gamma[k + 1] = ComplexMatrix4::Zero();
    alg.gamma[k + 1].block<2, 2>(0, 2) = s[k];
    alg.gamma[k + 1].block<2, 2>(2, 0) = -s[k];
  }
  for (int a = 0; a < 4; ++a)
    alg.eta[a] = realify(alg.gamma[a]);
  alg.n_matrix = realify(ComplexMatrix4(-I * ComplexMatrix4::Identity()));

  alg.n_a << 0, -1, 0, 0, //
      1, 0, 0, 0,         //
      0, 0, 0, -1,        //
      0, 0, 1, 0;
  alg.n_b << 0, -1, 0, 0, //
      1, 0, 0, 0,         //
      0, 0, 0, 1,         //
      0, 0, -1, 0;
  alg.n_block_form = RealMatrix8::Zero();
  alg.n_block_form.block<4, 4>(0, 0) = alg.n_a;
  alg.n_block_form.block<4, 4>(4, 4) = alg.n_b;

  for (const auto &c : check_algebra(alg, 1, 16)) {
    if (!c.passed())
      throw std::logic_error(fmt::format("build_algebra: identity {} fails ({:.3e})",
                                         c.name, c.max_deviation));
  }
  return alg;
}

ComplexSpinor4 companion_spinor(const ComplexSpinor4 &phi_a) {
  static const AlgebraSet alg = build_algebra();
  return alg.n_b.cast<cd>() * phi_a.conjugate();
}

double adjoint_bilinear(const AlgebraSet &alg, const RealSpinor8 &Phi1,
                        const RealMatrix8 &M, const RealSpinor8 &Phi2) {
  return Phi1.dot(alg.eta[0] * (M * Phi2));
}

FourVector vector_bilinear(const AlgebraSet &alg, const RealSpinor8 &Phi) {
  FourVector v;
  const RealSpinor8 adj = alg.eta[0].transpose() * Phi;
  for (int a = 0; a < 4; ++a)
    v(a) = adj.dot(alg.eta[a] * Phi);
  return v;
}

RealMatrix8 slashed(const AlgebraSet &alg, const FourVector &A) {
  const FourVector Al = lower(A);
  RealMatrix8 m = RealMatrix8::Zero();
  for (int a = 0; a < 4; ++a)
    m += Al(a) * alg.eta[a];
  return m;
}

ComplexMatrix4 slashed_complex(const AlgebraSet &alg, const FourVector &A) {
  const FourVector Al = lower(A);
  ComplexMatrix4 m = ComplexMatrix4::Zero();
  for (int a = 0; a < 4; ++a)
    m += Al(a) * alg.gamma[a];
  return m;
}

//==============================================================================
OrthogonalEquivalence representation_equivalence(const AlgebraSet &alg) {
  const RealMatrix8 Pn = adapted_basis(alg.n_matrix);
  const RealMatrix8 Pb = adapted_basis(alg.n_block_form);
  OrthogonalEquivalence eq;
  eq.U = Pb * Pn.transpose();
  eq.similarity_residual =
      max_abs(eq.U * alg.n_matrix * eq.U.transpose() - alg.n_block_form);
  eq.orthogonality_residual =
      max_abs(eq.U * eq.U.transpose() - RealMatrix8::Identity());
  eq.determinant = eq.U.determinant();
  if (eq.similarity_residual > 1e-12 || eq.orthogonality_residual > 1e-12)
    throw std::logic_error("representation_equivalence: no orthogonal conjugation found");
  return eq;
}

//==============================================================================
std::vector<IdentityCheck> check_algebra(const AlgebraSet &alg,
                                         std::uint64_t seed, int samples) {
  std::vector<IdentityCheck> out;
  const auto &N = alg.n_matrix;
  const RealMatrix8 I8 = RealMatrix8::Identity();

  double dg = 0.0, de = 0.0, dcomm = 0.0, dadj = 0.0, dconj = 0.0;
  const ComplexMatrix4 nb = alg.n_b.cast<cd>();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double g = (a == b) ? 2.0 * metric[a] : 0.0;
      dg = std::max(dg, max_abs(alg.gamma[a] * alg.gamma[b] +
                                alg.gamma[b] * alg.gamma[a] -
                                g * ComplexMatrix4::Identity()));
      de = std::max(de, max_abs(alg.eta[a] * alg.eta[b] +
                                alg.eta[b] * alg.eta[a] - g * I8));
    }
    dcomm = std::max(dcomm, max_abs(N * alg.eta[a] - alg.eta[a] * N));
    // eta^a^T = eta^0 eta^a eta^0  (real form of gamma^0 gamma^a^dagger gamma^0 = gamma^a)
    dadj = std::max(dadj, max_abs(alg.eta[a].transpose() -
                                  alg.eta[0] * alg.eta[a] * alg.eta[0]));
    // N_b gamma^a* = gamma^a N_b carries solutions of one sign of kappa to the other
    dconj = std::max(dconj, max_abs(nb * alg.gamma[a].conjugate() -
                                    alg.gamma[a] * nb));
  }
  out.push_back({"gamma_clifford", dg, 0.0});
  out.push_back({"eta_clifford", de, 0.0});
  out.push_back({"N_squared_plus_identity", max_abs(N * N + I8), 0.0});
  out.push_back({"N_antisymmetric", max_abs(N.transpose() + N), 0.0});
  out.push_back({"N_commutes_eta", dcomm, 0.0});
  out.push_back({"eta_adjoint_structure", dadj, 0.0});
  out.push_back({"n_block_form_squared_plus_identity",
                 max_abs(alg.n_block_form * alg.n_block_form + I8), 0.0});
  out.push_back({"n_block_form_antisymmetric",
                 max_abs(alg.n_block_form.transpose() + alg.n_block_form), 0.0});
  out.push_back({"N_b_conjugation_covariance", dconj, 0.0});
  out.push_back({"N_b_times_conj_N_b_plus_identity",
                 max_abs(alg.n_b * alg.n_b + Eigen::Matrix4d::Identity()), 0.0});

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_spinor = [&] {
    ComplexSpinor4 phi;
    for (int j = 0; j < 4; ++j)
      phi(j) = cd{u(rng), u(rng)};
    return phi;
  };

  const RealMatrix8 Ri = realify(ComplexMatrix4(I * ComplexMatrix4::Identity()));
  double d_equiv = 0.0, d_round = 0.0, d_N = 0.0, d_bil = 0.0, d_comp = 0.0;
  for (int k = 0; k < samples; ++k) {
    const ComplexSpinor4 phi = random_spinor();
    const RealSpinor8 Phi = realify(phi);
    d_equiv = std::max(d_equiv, max_abs(realify(ComplexSpinor4(I * phi)) - Ri * Phi));
    d_round = std::max(d_round, max_abs(complexify(Phi) - phi));
    d_N = std::max(d_N, max_abs(complexify(N * Phi) - (-I) * phi));
    const FourVector bil = vector_bilinear(alg, Phi);
    for (int a = 0; a < 4; ++a) {
      const cd ref = phi.dot(alg.gamma[0] * alg.gamma[a] * phi); // phi^dagger gamma^0 gamma^a phi
      d_bil = std::max(d_bil, std::abs(bil(a) - ref.real()));
    }
    const ComplexSpinor4 twice = nb * (nb * phi.conjugate()).conjugate();
    d_comp = std::max(d_comp, max_abs(twice + phi));
  }
  out.push_back({"realify_i_equivariance", d_equiv, 1e-12});
  out.push_back({"complexify_round_trip", d_round, 1e-12});
  out.push_back({"complexify_N_is_minus_i", d_N, 1e-12});
  out.push_back({"bilinear_dictionary", d_bil, 1e-12});
  out.push_back({"companion_twice_is_minus_identity", d_comp, 1e-12});

  try {
    const auto eq = representation_equivalence(alg);
    out.push_back({"block_form_similarity", eq.similarity_residual, 1e-12});
    out.push_back({"equivalence_orthogonality", eq.orthogonality_residual, 1e-12});
    out.push_back({"equivalence_abs_det_minus_one",
                   std::abs(std::abs(eq.determinant) - 1.0), 1e-12});
  } catch (const std::logic_error &) {
    out.push_back({"block_form_similarity", 1.0, 1e-12});
  }
  return out;
}

} // namespace rdf
