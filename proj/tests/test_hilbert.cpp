#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "infodyn/density.hpp"
#include "infodyn/errors.hpp"
#include "infodyn/hilbert.hpp"
#include "infodyn/random.hpp"
#include "oracles.hpp"

using namespace infodyn;

namespace {

Vector vec(std::initializer_list<cplx> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (auto x : xs) v(k++) = x;
  return v;
}

}  // namespace

TEST_CASE("index group arithmetic") {
  IndexGroup g(5);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(g.add(k, 0) == k);
    for (std::size_t l = 0; l < 5; ++l) CHECK(g.sub(g.add(k, l), l) == k);
  }
  CHECK(g.add(3, 4) == 2);
  CHECK_THROWS_AS(IndexGroup(0), InvalidArgument);
}

TEST_CASE("inner product under counting measure") {
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(inner_product(vec({1, 0}), vec({0, 1}))) == 0.0);
  CHECK(std::abs(inner_product(vec({r, r}), vec({r, r})) - 1.0) < 1e-15);
  const cplx z = inner_product(vec({cplx{0, 1}, 0}), vec({1, 0}));
  CHECK(z.real() == 0.0);
  CHECK(z.imag() == -1.0);
  CHECK_THROWS_AS((void)inner_product(vec({1, 0}), vec({1, 0, 0})), DimensionMismatch);
}

TEST_CASE("multiplication operators") {
  CHECK(max_abs_entry(mult_operator(Vector::Ones(4)) - identity(4)) == 0.0);

  const Vector g = vec({2, 0});
  const Vector f = vec({1, 1});
  CHECK(max_abs_entry(Matrix(mult_operator(g) * f) - Matrix(vec({2, 0}))) == 0.0);
  CHECK(max_abs_entry(Matrix(mult_operator(f) * g - mult_operator(g) * f)) == 0.0);

  Rng rng(3);
  const Vector h = random_unit_vector(5, rng);
  CHECK(max_abs_entry(mult_operator(h).adjoint() - mult_operator(h.conjugate())) == 0.0);

  // Unitary exactly when every |g(k)| = 1.
  Vector phases(4);
  for (Eigen::Index k = 0; k < 4; ++k) phases(k) = std::polar(1.0, 0.7 * static_cast<double>(k));
  CHECK(is_unitary(mult_operator(phases)));
  Vector bad = phases;
  bad(2) *= 1.01;
  CHECK_FALSE(is_unitary(mult_operator(bad)));
  CHECK_FALSE(is_unitary(mult_operator(vec({1, 0}))));
}

TEST_CASE("shift unitaries") {
  CHECK(max_abs_entry(shift_unitary(0, 3) - identity(3)) == 0.0);
  const Vector f = vec({1, 2, 3});
  CHECK(max_abs_entry(Matrix(shift_unitary(1, 3) * f) - Matrix(vec({2, 3, 1}))) == 0.0);
  for (std::size_t n = 1; n <= 8; ++n) {
    IndexGroup g(n);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(max_abs_entry(shift_unitary(k, n) * shift_unitary(k, n).adjoint() - identity(n)) < 1e-15);
      for (std::size_t l = 0; l < n; ++l) {
        CHECK(max_abs_entry(shift_unitary(k, n) * shift_unitary(l, n) - shift_unitary(g.add(k, l), n)) == 0.0);
      }
    }
  }
  CHECK_THROWS_AS((void)shift_unitary(3, 3), InvalidArgument);
}

TEST_CASE("diagonal embedding is an isometry") {
  const Matrix j2 = diag_embedding(2);
  const Vector f = vec({cplx{1, 2}, cplx{-3, 0.5}});
  const Vector jf = j2 * f;
  CHECK(jf(0) == f(0));  // (0,0)
  CHECK(jf(1) == cplx{});
  CHECK(jf(2) == cplx{});
  CHECK(jf(3) == f(1));  // (1,1)

  Rng rng(11);
  for (std::size_t n = 1; n <= 8; ++n) {
    const Matrix j = diag_embedding(n);
    CHECK(max_abs_entry(j.adjoint() * j - identity(n)) <= 1e-14);
    const Matrix p = j * j.adjoint();
    CHECK(max_abs_entry(p * p - p) == 0.0);
    const Vector g = ginibre(n, 1, rng).col(0);
    CHECK(std::abs((j * g).norm() - g.norm()) < 1e-13);
    CHECK(max_abs_entry(Matrix(j.adjoint() * (j * g) - g)) < 1e-15);
  }
}

TEST_CASE("tensor products") {
  CHECK(max_abs_entry(tensor(identity(2), identity(3)) - identity(6)) == 0.0);
  Rng rng(5);
  const Matrix a = ginibre(2, 2, rng);
  const Matrix b = ginibre(3, 3, rng);
  CHECK(max_abs_entry(tensor(a, b).adjoint() - tensor(Matrix(a.adjoint()), Matrix(b.adjoint()))) < 1e-15);
  CHECK(std::abs(tensor(a, b).trace() - a.trace() * b.trace()) < 1e-12);
  const Vector f = ginibre(2, 1, rng).col(0);
  const Vector g = ginibre(3, 1, rng).col(0);
  CHECK(max_abs_entry(Matrix(tensor(a, b) * tensor(f, g) - tensor(Vector(a * f), Vector(b * g)))) < 1e-13);
}

TEST_CASE("partial traces") {
  Rng rng(7);
  const auto rho = random_density(2, rng);
  const auto gamma = random_density(3, rng);
  const auto sigma = random_density(2, rng);
  const std::vector<std::size_t> two{2, 3};
  const std::vector<std::size_t> first{0};
  CHECK(max_abs_entry(partial_trace(tensor(rho.matrix(), gamma.matrix()), two, first) - gamma.matrix()) < 1e-15);

  const Matrix triple = tensor(tensor(rho.matrix(), gamma.matrix()), sigma.matrix());
  const std::vector<std::size_t> three{2, 3, 2};
  const std::vector<std::size_t> first_two{0, 1};
  CHECK(max_abs_entry(partial_trace(triple, three, first_two) - sigma.matrix()) < 1e-15);

  // Tracing {0} then {0} of the remainder equals tracing {0, 1}; also {2} then {0}.
  const Matrix x = ginibre(12, 12, rng);
  const Matrix staged = partial_trace(partial_trace(x, three, first), std::vector<std::size_t>{3, 2}, first);
  CHECK(max_abs_entry(staged - partial_trace(x, three, first_two)) < 1e-12);
  const std::vector<std::size_t> last{2};
  const std::vector<std::size_t> outer_two{0, 2};
  const Matrix staged2 = partial_trace(partial_trace(x, three, last), std::vector<std::size_t>{2, 3}, first);
  CHECK(max_abs_entry(staged2 - partial_trace(x, three, outer_two)) < 1e-12);
  CHECK(std::abs(partial_trace(x, three, first_two).trace() - x.trace()) < 1e-12);

  CHECK_THROWS_AS((void)partial_trace(x, two, first), DimensionMismatch);
  const std::vector<std::size_t> bad{5};
  CHECK_THROWS_AS((void)partial_trace(x, three, bad), DimensionMismatch);
}

TEST_CASE("density operator validation") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.75;
  m(1, 1) = 0.25;
  const DensityOperator rho(m);
  CHECK(rho.eigenvalues()(0) == doctest::Approx(0.75));
  CHECK_FALSE(rho.spectrum().degenerate);

  Matrix neg = m;
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityOperator{neg}, InvalidArgument);

  Matrix tiny = Matrix::Zero(2, 2);
  tiny(0, 0) = 1.0 + 5e-11;
  tiny(1, 1) = -5e-11;
  const DensityOperator clamped(tiny);
  CHECK(clamped.eigenvalues()(1) == 0.0);
  CHECK(std::abs(clamped.matrix().trace().real() - 1.0) < 1e-15);

  Matrix nonherm = m;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityOperator{nonherm}, InvalidArgument);
  CHECK_THROWS_AS(DensityOperator{Matrix(m * 2.0)}, InvalidArgument);
}

TEST_CASE("spectral decomposition") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.75;
  m(1, 1) = 0.25;
  const auto d = spectral_decompose(DensityOperator(m));
  CHECK(d.weights(0) == doctest::Approx(0.75));
  CHECK(d.weights(1) == doctest::Approx(0.25));
  CHECK(std::abs(d.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(d.vectors(1, 1)) == doctest::Approx(1.0));
  CHECK_FALSE(d.degenerate);

  const auto half = spectral_decompose(DensityOperator::maximally_mixed(2));
  CHECK(half.degenerate);
  REQUIRE(half.degenerate_blocks.size() == 1);
  CHECK(half.degenerate_blocks[0] == std::pair<std::size_t, std::size_t>{0, 2});

  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density(5, rng);
    const auto dec = spectral_decompose(rho);
    CHECK(max_abs_entry(dec.reconstruct() - rho.matrix()) <= 1e-10);
    for (Eigen::Index k = 1; k < dec.weights.size(); ++k) CHECK(dec.weights(k - 1) >= dec.weights(k));
    const Matrix u = random_unitary(5, rng);
    const DensityOperator rotated(u * rho.matrix() * u.adjoint());
    CHECK(max_abs_entry(Matrix((rotated.eigenvalues() - rho.eigenvalues()).cast<cplx>())) < 1e-12);
  }
}

TEST_CASE("von Neumann entropy") {
  Rng rng(23);
  CHECK(von_neumann_entropy(random_pure(4, rng)) == doctest::Approx(0.0).epsilon(1e-12));
  for (std::size_t n = 1; n <= 8; ++n) {
    CHECK(std::abs(von_neumann_entropy(DensityOperator::maximally_mixed(n)) - std::log(static_cast<double>(n))) <
          1e-14);
  }
  RealVector p(2);
  p << 0.25, 0.75;
  const double expected = oracle::entropy_long({0.25L, 0.75L});
  CHECK(std::abs(expected - 0.5623351446188083) < 1e-15);
  CHECK(std::abs(von_neumann_entropy(DensityOperator::diagonal(p)) - expected) < 1e-14);

  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    const auto rho = random_density(n, rng);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= 0.0);
    CHECK(s <= std::log(static_cast<double>(n)) + 1e-12);
    const Matrix u = random_unitary(n, rng);
    CHECK(std::abs(von_neumann_entropy(DensityOperator(u * rho.matrix() * u.adjoint())) - s) <= 1e-10);
    const auto sigma = random_density(3, rng);
    const DensityOperator joint(tensor(rho.matrix(), sigma.matrix()));
    CHECK(std::abs(von_neumann_entropy(joint) - s - von_neumann_entropy(sigma)) <= 1e-10);
  }
}

TEST_CASE("relative entropy") {
  Rng rng(29);
  const auto rho = random_density(3, rng);
  CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));

  RealVector one(2), half(2);
  one << 1.0, 0.0;
  half << 0.5, 0.5;
  CHECK(std::abs(relative_entropy(DensityOperator::diagonal(one), DensityOperator::diagonal(half)) -
                 std::numbers::ln2) < 1e-15);
  CHECK(relative_entropy(DensityOperator::diagonal(half), DensityOperator::diagonal(one)) == kInfinity);

  // Klein inequality.
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    worst = std::min(worst, relative_entropy(random_density(n, rng), random_density(n, rng)));
  }
  CHECK(worst >= 0.0);
  CHECK_THROWS_AS((void)relative_entropy(random_density(2, rng), random_density(3, rng)), DimensionMismatch);
}

TEST_CASE("log base conversion") {
  CHECK(in_base(std::numbers::ln2, LogBase::two) == doctest::Approx(1.0));
  CHECK(in_base(0.5, LogBase::natural) == 0.5);
}
