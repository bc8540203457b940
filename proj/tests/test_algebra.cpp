#include "oracles.hpp"
#include "rdf/algebra.hpp"
#include <catch_amalgamated.hpp>

using namespace rdf;

namespace {
const AlgebraSet &alg() {
  static const AlgebraSet a = build_algebra();
  return a;
}
double max_abs(const Eigen::MatrixXd &m) { return m.cwiseAbs().maxCoeff(); }
RealMatrix8 I8() { return RealMatrix8::Identity(); }
} // namespace

TEST_CASE("algebra: gamma matrices are the Dirac representation", "[algebra]") {
  const auto g = oracle::gammas();
  for (int a = 0; a < 4; ++a)
    REQUIRE((alg().gamma[a] - g[a]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("algebra: printed blocks of N", "[algebra]") {
  REQUIRE(alg().n_a.row(0) == Eigen::RowVector4d(0, -1, 0, 0));
  Eigen::Matrix2d lr;
  lr << 0, 1, -1, 0;
  REQUIRE(alg().n_b.block<2, 2>(2, 2) == lr);
}

TEST_CASE("algebra: Clifford relation and N identities, exact", "[algebra]") {
  const auto &A = alg();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const RealMatrix8 ac = A.eta[a] * A.eta[b] + A.eta[b] * A.eta[a];
      const RealMatrix8 expect = (a == b ? 2.0 * metric[a] : 0.0) * I8();
      REQUIRE(max_abs(ac - expect) == 0.0);
    }
  // explicit cases, products by hand
  REQUIRE(max_abs(A.eta[1] * A.eta[2] + A.eta[2] * A.eta[1]) == 0.0);
  REQUIRE(max_abs(A.eta[0] * A.eta[0] - I8()) == 0.0);
  REQUIRE(max_abs(A.n_matrix * A.n_matrix + I8()) == 0.0);
  REQUIRE(max_abs(A.n_matrix.transpose() + A.n_matrix) == 0.0);
  for (int a = 0; a < 4; ++a)
    REQUIRE(max_abs(A.n_matrix * A.eta[a] - A.eta[a] * A.n_matrix) == 0.0);
  // entries are small integers
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 64; ++i)
      REQUIRE(A.eta[a].data()[i] == std::round(A.eta[a].data()[i]));
}

TEST_CASE("algebra: realify basis cases", "[algebra]") {
  RealSpinor8 e0 = RealSpinor8::Zero(), e1 = RealSpinor8::Zero();
  e0(0) = 1.0;
  e1(1) = 1.0;
  REQUIRE(realify(ComplexSpinor4(1, 0, 0, 0)) == e0);
  REQUIRE(realify(ComplexSpinor4(oracle::cd(0, 1), 0, 0, 0)) == e1);
  REQUIRE(complexify(RealSpinor8::Zero()) == ComplexSpinor4::Zero());
}

TEST_CASE("algebra: realify equivariance and round trip", "[algebra]") {
  std::mt19937_64 rng(7);
  const RealMatrix8 Ri = realify(ComplexMatrix4(oracle::cd(0, 1) * ComplexMatrix4::Identity()));
  const RealMatrix8 M = realify(oracle::gammas()[2]);
  for (int s = 0; s < 100; ++s) {
    const auto phi = oracle::random_spinor(rng);
    REQUIRE((realify(ComplexSpinor4(oracle::cd(0, 1) * phi)) - Ri * realify(phi))
                .cwiseAbs()
                .maxCoeff() == 0.0);
    REQUIRE((complexify(realify(phi)) - phi).cwiseAbs().maxCoeff() == 0.0);
    // R(M) acts on realified spinors as M on complex ones
    REQUIRE((M * realify(phi) - realify(ComplexSpinor4(oracle::gammas()[2] * phi)))
                .cwiseAbs()
                .maxCoeff() < 1e-14);
  }
}

TEST_CASE("algebra: companion spinor", "[algebra]") {
  REQUIRE(companion_spinor(ComplexSpinor4(1, 0, 0, 0)) == ComplexSpinor4(0, 1, 0, 0));
  REQUIRE(companion_spinor(ComplexSpinor4::Zero()) == ComplexSpinor4::Zero());
  std::mt19937_64 rng(11);
  for (int s = 0; s < 100; ++s) {
    const auto phi = oracle::random_spinor(rng);
    REQUIRE((companion_spinor(companion_spinor(phi)) + phi).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("algebra: bilinear dictionary against the complex side", "[algebra]") {
  const auto &A = alg();
  REQUIRE(adjoint_bilinear(A, realify(ComplexSpinor4(1, 0, 0, 0)), A.eta[0],
                           realify(ComplexSpinor4(1, 0, 0, 0))) == 1.0);
  REQUIRE(adjoint_bilinear(A, realify(ComplexSpinor4(1, 0, 0, 0)), A.eta[3],
                           realify(ComplexSpinor4(1, 0, 0, 0))) == 0.0);
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const auto phi = oracle::random_spinor(rng);
    const auto v = vector_bilinear(A, realify(phi));
    for (int a = 0; a < 4; ++a)
      worst = std::max(worst, std::abs(v(a) - oracle::complex_bilinear(phi, a)));
  }
  REQUIRE(worst <= 1e-12);
}

TEST_CASE("algebra: orthogonal equivalence with the printed N", "[algebra]") {
  const auto eq = representation_equivalence(alg());
  REQUIRE(max_abs(eq.U * eq.U.transpose() - I8()) <= 1e-12);
  REQUIRE(max_abs(eq.U * alg().n_matrix * eq.U.transpose() - alg().n_block_form) <= 1e-12);
  REQUIRE(std::abs(std::abs(eq.determinant) - 1.0) <= 1e-12);
}

TEST_CASE("algebra: check_algebra passes and detects a fault", "[algebra]") {
  for (const auto &c : check_algebra(alg()))
    CHECK(c.passed());
  auto broken = alg();
  broken.eta[2](3, 4) += 1.0;
  bool any_failed = false;
  for (const auto &c : check_algebra(broken))
    any_failed = any_failed || !c.passed();
  REQUIRE(any_failed);
}
