#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "infodyn/errors.hpp"
#include "infodyn/random.hpp"
#include "infodyn/recognition.hpp"
#include "oracles.hpp"

using namespace infodyn;

namespace {

DensityOperator basis_state(std::size_t k, std::size_t n) {
  RealVector p = RealVector::Zero(static_cast<Eigen::Index>(n));
  p(static_cast<Eigen::Index>(k)) = 1.0;
  return DensityOperator::diagonal(p);
}

}  // namespace

TEST_CASE("signal bases") {
  for (std::size_t n : {2u, 3u, 5u, 8u}) {
    const auto f = SignalBasis::fourier(n);
    CHECK(f.gram_error() <= 1e-12);
    CHECK(f.uniform_modulus());
    CHECK(std::abs(f.vector(1)(1) - std::polar(1.0 / std::sqrt(double(n)), 2.0 * std::numbers::pi / double(n))) <
          1e-15);
    CHECK_FALSE(SignalBasis::standard(n).uniform_modulus());
  }
  Rng rng(30);
  const auto c = SignalBasis::custom(random_unitary(4, rng));
  CHECK(c.kind() == SignalBasis::Kind::custom);
  CHECK_THROWS_AS((void)SignalBasis::custom(Matrix::Ones(2, 2)), InvalidArgument);
  CHECK_THROWS_AS((void)SignalBasis::fourier(0), InvalidArgument);
}

TEST_CASE("Bell system xi vectors") {
  for (std::size_t n : {2u, 3u, 5u, 8u}) {
    const BellSystem bell(SignalBasis::fourier(n));
    const Matrix& xi = bell.xi_matrix();
    CHECK(max_abs_entry(Matrix(xi.adjoint() * xi - identity(n * n))) <= 1e-12);
    Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(n * n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum += bell.projection(i, j);
    CHECK(max_abs_entry(Matrix(sum - identity(n * n))) <= 1e-12);

    // xi_{k,l} = (B_k (x) U_l) J 1, assembled literally.
    const Matrix jmat = diag_embedding(n);
    const Vector one = Vector::Ones(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        const Matrix op = tensor(mult_operator(bell.basis().vector(k)), shift_unitary(l, n));
        CHECK(max_abs_entry(Matrix(op * jmat * one - bell.xi(k, l))) <= 1e-14);
      }
    }
  }
}

TEST_CASE("G operators") {
  Rng rng(31);
  const std::size_t n = 3;
  const BellSystem bell(SignalBasis::fourier(n));
  const Matrix jmat = diag_embedding(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix bi_star = mult_operator(bell.basis().vector(i)).adjoint();
      const Matrix literal = jmat.adjoint() * tensor(Matrix(shift_unitary(j, n) * bi_star), identity(n));
      CHECK(max_abs_entry(Matrix(literal - bell.g_operator(i, j))) <= 1e-14);
      const Vector phi = ginibre(n * n, 1, rng).col(0);
      CHECK(std::abs((literal * phi).squaredNorm() - bell.g_norm_squared(i, j, phi)) <= 1e-12);
    }
  }
}

TEST_CASE("entangled memory state") {
  Rng rng(32);
  const Vector h = random_unit_vector(3, rng);
  const auto e = entangle(DensityOperator::pure(h));
  CHECK(e.is_pure());
  CHECK(max_abs_entry(Matrix(e.matrix() - projector(diag_embedding(3) * h))) < 1e-14);
  const auto half = entangle(DensityOperator::maximally_mixed(2));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK(max_abs_entry(Matrix(half.matrix() - expected)) < 1e-15);
}

TEST_CASE("outcome probabilities") {
  const BellSystem two(SignalBasis::fourier(2));
  const auto half = DensityOperator::maximally_mixed(2);
  for (double p : outcome_probabilities(half, half, two)) CHECK(std::abs(p - 0.25) < 1e-14);

  Rng rng(33);
  for (std::size_t n : {2u, 3u, 4u}) {
    const BellSystem bell(SignalBasis::fourier(n));
    for (int trial = 0; trial < 5; ++trial) {
      const auto rho = random_density(n, rng);
      const auto gamma = random_density(n, rng);
      const auto ps = outcome_probabilities(rho, gamma, bell);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double brute = oracle::sandwich(i, j, rho.matrix(), gamma.matrix(), bell).trace().real();
          CHECK(std::abs(ps[i * n + j] - brute) < 1e-13);
          CHECK(std::abs(outcome_probability(i, j, rho, gamma, bell) - brute) < 1e-13);
          total += ps[i * n + j];
        }
      }
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("sandwich factorizes through G for any orthonormal representation") {
  Rng rng(34);
  const std::size_t n = 3;
  const BellSystem bell(SignalBasis::fourier(n));
  for (int trial = 0; trial < 4; ++trial) {
    const auto g = random_pure(n, rng);
    const auto h = random_pure(n, rng);
    const auto rho = random_density(n, rng);
    const auto gamma = random_density(n, rng);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Matrix gij = bell.g_operator(i, j);
        // Pure states: one term.
        Eigen::Index gk = 0;
        Eigen::Index hl = 0;
        g.eigenvalues().maxCoeff(&gk);
        h.eigenvalues().maxCoeff(&hl);
        const Vector v = gij * tensor(Vector(g.eigenvectors().col(gk)), Vector(h.eigenvectors().col(hl)));
        const Matrix lhs = oracle::sandwich(i, j, g.matrix(), h.matrix(), bell);
        CHECK(max_abs_entry(Matrix(lhs - tensor(bell.projection(i, j), projector(v)))) < 1e-13);
        CHECK(std::abs(outcome_probability(i, j, g, h, bell) - v.squaredNorm()) < 1e-13);
        // Mixed states through their eigen-representations.
        Matrix x = Matrix::Zero(3, 3);
        for (Eigen::Index k = 0; k < 3; ++k)
          for (Eigen::Index l = 0; l < 3; ++l)
            x += rho.eigenvalues()(k) * gamma.eigenvalues()(l) *
                 projector(gij * tensor(Vector(rho.eigenvectors().col(k)), Vector(gamma.eigenvectors().col(l))));
        const Matrix mixed = oracle::sandwich(i, j, rho.matrix(), gamma.matrix(), bell);
        CHECK(max_abs_entry(Matrix(mixed - tensor(bell.projection(i, j), x))) < 1e-13);
      }
    }
  }
}

TEST_CASE("three forms of the recognition channel") {
  Rng rng(35);
  for (std::size_t n : {2u, 3u, 5u}) {
    const BellSystem bell(SignalBasis::fourier(n));
    for (int trial = 0; trial < 3; ++trial) {
      const auto rho = random_density(n, rng);
      const auto gamma = random_density(n, rng);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const Matrix direct = lambda_direct(i, j, rho, gamma, bell).matrix();
          CHECK(max_abs_entry(Matrix(direct - oracle::lambda_brute(i, j, rho.matrix(), gamma.matrix(), bell))) <=
                1e-12);
          CHECK(max_abs_entry(Matrix(direct - lambda_spectral(i, j, rho, gamma, bell).matrix())) <= 1e-10);
          CHECK(max_abs_entry(Matrix(direct - lambda_composed(i, j, rho, gamma, bell).matrix())) <= 1e-10);
        }
      }
    }
  }
  const BellSystem bell(SignalBasis::fourier(3));
  const auto g = random_pure(3, rng);
  const auto h = random_pure(3, rng);
  CHECK(lambda_spectral(1, 2, g, h, bell).is_pure());
}

TEST_CASE("two-point examples") {
  const BellSystem bell(SignalBasis::fourier(2));
  const auto e0 = basis_state(0, 2);
  const auto half = DensityOperator::maximally_mixed(2);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto stay = lambda_direct(i, 0, e0, half, bell);
    const auto move = lambda_direct(i, 1, e0, half, bell);
    CHECK(max_abs_entry(Matrix(stay.matrix() - e0.matrix())) < 1e-14);
    CHECK(max_abs_entry(Matrix(move.matrix() - basis_state(1, 2).matrix())) < 1e-14);
    CHECK(max_abs_entry(Matrix(lambda_composed(i, 0, e0, half, bell).matrix() - e0.matrix())) < 1e-14);
  }
}

TEST_CASE("zero-probability outcomes and domain violations") {
  // Standard basis: b_i vanishes off i, so |conj b_1><conj b_1| kills a state
  // supported on e_0.
  const BellSystem bell(SignalBasis::standard(2));
  const auto e0 = basis_state(0, 2);
  const auto half = DensityOperator::maximally_mixed(2);
  CHECK(outcome_probability(1, 0, e0, half, bell) == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)lambda_composed(1, 0, e0, half, bell), OutsideDomain);
  CHECK_THROWS_AS((void)lambda_direct(1, 0, e0, half, bell), ZeroProbabilityOutcome);
  CHECK_THROWS_AS((void)lambda_spectral(1, 0, e0, half, bell), ZeroProbabilityOutcome);

  // Memory with a zero diagonal entry where the shifted state lands.
  const BellSystem f(SignalBasis::fourier(2));
  const auto e1 = basis_state(1, 2);
  try {
    (void)lambda_composed(0, 1, e0, e0, f);
    FAIL("expected OutsideDomain");
  } catch (const OutsideDomain& err) {
    CHECK(std::string(err.what()).find("gamma") != std::string::npos);
  }
  CHECK_NOTHROW((void)lambda_composed(0, 1, e0, e1, f));
  CHECK_THROWS_AS((void)lambda_direct(0, 0, e0, half, BellSystem(SignalBasis::fourier(3))), DimensionMismatch);
}

TEST_CASE("recognition sequences") {
  const BellSystem bell(SignalBasis::fourier(2));
  const auto half = DensityOperator::maximally_mixed(2);
  const auto empty = recognize_sequence(half, {}, bell, RecognitionPolicy::sample(), 1);
  CHECK(empty.history.empty());
  CHECK_FALSE(empty.processing.has_value());
  CHECK(max_abs_entry(Matrix(empty.memory.matrix() - half.matrix())) == 0.0);

  const std::vector<DensityOperator> signals(12, basis_state(0, 2));
  const auto a = recognize_sequence(half, signals, bell, RecognitionPolicy::sample(), 7);
  const auto b = recognize_sequence(half, signals, bell, RecognitionPolicy::sample(), 7);
  REQUIRE(a.history.size() == 12);
  for (std::size_t t = 0; t < 12; ++t) {
    CHECK(a.history[t].t == t);
    CHECK(a.history[t].i == b.history[t].i);
    CHECK(a.history[t].j == b.history[t].j);
    CHECK(a.history[t].probability == b.history[t].probability);
    CHECK(max_abs_entry(Matrix(a.history[t].gamma.matrix() - b.history[t].gamma.matrix())) == 0.0);
    CHECK(a.history[t].entropy_of_gamma <= 1e-12);
    CHECK(a.history[t].gamma.is_pure());
  }
  CHECK(a.memory.is_pure());

  const auto kept = recognize_sequence(half, signals, bell, RecognitionPolicy::fixed(0, 0));
  CHECK(max_abs_entry(Matrix(kept.memory.matrix() - basis_state(0, 2).matrix())) < 1e-14);
  CHECK(kept.history.back().entropy_of_gamma == doctest::Approx(0.0));

  // Memory e_0 cannot store the shifted signal e_1.
  CHECK_THROWS_AS((void)recognize_sequence(basis_state(0, 2), std::vector<DensityOperator>(2, basis_state(0, 2)),
                                           bell, RecognitionPolicy::fixed(0, 1)),
                  ZeroProbabilityOutcome);

  const auto best = recognize_sequence(half, signals, bell, RecognitionPolicy::argmax());
  CHECK(best.history.front().probability == doctest::Approx(0.25));
}
