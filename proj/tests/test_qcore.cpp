#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlgames/errors.hpp"
#include "nlgames/qcore.hpp"
#include "test_support.hpp"

using namespace nlgames;

namespace {

ComplexMatrix outer(const Ket& v) {
  std::vector<Complex> e(v.dim() * v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) e[i * v.dim() + j] = v[i] * std::conj(v[j]);
  return ComplexMatrix(v.dim(), v.dim(), std::move(e));
}

}  // namespace

TEST_CASE("tensor of identities and diagonal Paulis") {
  CHECK(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);
  const double d[] = {1, -1, -1, 1};
  CHECK(tensor(pauli::z(), pauli::z()).max_abs_diff(ComplexMatrix::diagonal(d)) == 0.0);
}

TEST_CASE("X (x) X flips |00> to |11>") {
  const auto xx = tensor(pauli::x(), pauli::x());
  const auto out = matvec(xx, Ket::basis(4, 0).amplitudes());
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(out[i] - Complex(i == 3 ? 1.0 : 0.0)) == 0.0);
}

TEST_CASE("tensor is associative and bilinear") {
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_matrix(2, 2), b = testing::random_matrix(2, 3), c = testing::random_matrix(3, 2);
    CHECK(tensor(tensor(a, b), c).max_abs_diff(tensor(a, tensor(b, c))) <= 1e-12);
    const auto b2 = testing::random_matrix(2, 3);
    const Complex alpha(testing::gaussian(), testing::gaussian());
    CHECK(tensor(a, b + alpha * b2).max_abs_diff(tensor(a, b) + alpha * tensor(a, b2)) <= 1e-12);
  }
}

TEST_CASE("expectation values") {
  CHECK(expectation(pauli::z(), Ket::basis(2, 0)) == doctest::Approx(1.0));
  const Ket plus({1.0, 1.0});
  CHECK(std::abs(expectation(pauli::z(), plus)) <= 1e-15);

  std::vector<Complex> g(8);
  g[0] = g[7] = 1.0;
  const Ket ghz(g);
  CHECK(expectation(tensor(pauli::x(), tensor(pauli::x(), pauli::x())), ghz) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(expectation(pauli::z(), Ket::basis(4, 0)), InvalidArgument);
  const ComplexMatrix non_herm(2, 2, {0.0, 1.0, 0.0, 0.0});
  CHECK_THROWS_AS(expectation(non_herm, plus), InvalidArgument);
}

TEST_CASE("expectation lies within the spectrum") {
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::size_t{2} << (trial % 3);
    const auto h = testing::random_hermitian(n);
    const auto eig = hermitian_eigen(h);
    const double e = expectation(h, testing::random_ket(n));
    CHECK(e >= eig.eigenvalues.front() - 1e-12);
    CHECK(e <= eig.eigenvalues.back() + 1e-12);
  }
}

TEST_CASE("hermitian_eigen on Pauli examples") {
  auto eig = hermitian_eigen(pauli::z());
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0));

  eig = hermitian_eigen(Complex(1.0 / std::numbers::sqrt2) * (pauli::x() + pauli::z()));
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

  // (1/2)(I + Z)/2 + (1/2)(I + X)/2
  const auto zeta_op = Complex(0.5) * outcome_projector(pauli::z(), 0) + Complex(0.5) * outcome_projector(pauli::x(), 0);
  eig = hermitian_eigen(zeta_op);
  CHECK(std::abs(eig.eigenvalues[1] - (0.5 + 0.5 / std::numbers::sqrt2)) <= 1e-12);

  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})), InvalidArgument);
}

TEST_CASE("hermitian_eigen reconstructs random Hermitian matrices") {
  double worst_recon = 0.0, worst_residual = 0.0, worst_ortho = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::size_t{2} << (trial % 3);
    const auto h = testing::random_hermitian(n);
    const auto eig = hermitian_eigen(h);
    REQUIRE(eig.eigenvalues.size() == n);
    for (std::size_t k = 1; k < n; ++k) CHECK(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);

    ComplexMatrix recon(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& v = eig.eigenvectors[k];
      recon = recon + Complex(eig.eigenvalues[k]) * outer(v);
      const auto hv = matvec(h, v.amplitudes());
      for (std::size_t i = 0; i < n; ++i) worst_residual = std::max(worst_residual, std::abs(hv[i] - eig.eigenvalues[k] * v[i]));
      for (std::size_t l = 0; l < n; ++l)
        worst_ortho = std::max(worst_ortho, std::abs(inner(v, eig.eigenvectors[l]) - Complex(k == l ? 1.0 : 0.0)));
    }
    worst_recon = std::max(worst_recon, recon.max_abs_diff(h));
  }
  CHECK(worst_recon <= 1e-10);
  CHECK(worst_residual <= 1e-10);
  CHECK(worst_ortho <= 1e-10);
}

TEST_CASE("hermitian_eigen handles degenerate spectra") {
  // Identity and a projector with a 3-fold degenerate zero eigenvalue.
  auto eig = hermitian_eigen(ComplexMatrix::identity(4));
  for (double l : eig.eigenvalues) CHECK(l == doctest::Approx(1.0));
  const auto v = testing::random_ket(4);
  eig = hermitian_eigen(outer(v));
  CHECK(std::abs(eig.eigenvalues.back() - 1.0) <= 1e-12);
  CHECK(std::abs(std::abs(inner(eig.eigenvectors.back(), v)) - 1.0) <= 1e-12);
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(eig.eigenvalues[k]) <= 1e-12);
}

TEST_CASE("bloch_observable axes") {
  CHECK(bloch_observable(0, 0).max_abs_diff(pauli::z()) <= 1e-15);
  CHECK(bloch_observable(std::numbers::pi / 2, 0).max_abs_diff(pauli::x()) <= 1e-15);
  CHECK(bloch_observable(std::numbers::pi / 2, std::numbers::pi / 2).max_abs_diff(pauli::y()) <= 1e-15);
  for (int trial = 0; trial < 100; ++trial) {
    const auto o = bloch_observable(testing::uniform(-10, 10), testing::uniform(-10, 10));
    CHECK(o.is_hermitian(1e-15));
    CHECK(std::abs(o(0, 0) + o(1, 1)) <= 1e-15);
    const auto eig = hermitian_eigen(o);
    CHECK(std::abs(eig.eigenvalues[0] + 1.0) <= 1e-12);
    CHECK(std::abs(eig.eigenvalues[1] - 1.0) <= 1e-12);
  }
}

TEST_CASE("outcome projectors") {
  CHECK(outcome_projector(pauli::z(), 0).max_abs_diff(outer(Ket::basis(2, 0))) <= 1e-15);
  CHECK(outcome_projector(pauli::z(), 1).max_abs_diff(outer(Ket::basis(2, 1))) <= 1e-15);
  CHECK(outcome_projector(pauli::x(), 0).max_abs_diff(ComplexMatrix(2, 2, {0.5, 0.5, 0.5, 0.5})) <= 1e-15);

  for (int trial = 0; trial < 200; ++trial) {
    const auto o = bloch_observable(testing::uniform(0, 7), testing::uniform(0, 7));
    const auto p0 = outcome_projector(o, 0), p1 = outcome_projector(o, 1);
    CHECK((p0 + p1).max_abs_diff(ComplexMatrix::identity(2)) <= 1e-15);
    CHECK((p0 * p0).max_abs_diff(p0) <= 1e-10);
  }
  CHECK_THROWS_AS(outcome_projector(Complex(2.0) * pauli::z(), 0), InvalidArgument);
  CHECK_THROWS_AS(outcome_projector(pauli::z(), 2), InvalidArgument);
}

TEST_CASE("apply_local matches the explicit tensor product") {
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = testing::random_ket(8);
    const auto a = testing::random_matrix(2, 2), b = testing::random_matrix(2, 2), c = testing::random_matrix(2, 2);
    const auto full = matvec(tensor(a, tensor(b, c)), psi.amplitudes());
    std::vector<Complex> x(psi.amplitudes().begin(), psi.amplitudes().end()), y(8);
    apply_local(a, 0, 3, x, y);
    apply_local(b, 1, 3, y, x);
    apply_local(c, 2, 3, x, y);
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(full[i] - y[i]) <= 1e-12);
  }
}

TEST_CASE("constructors reject bad input") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), InvalidArgument);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(std::nan(""), 0.0)}), InvalidArgument);
  CHECK_THROWS_AS(Ket(std::vector<Complex>{0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(Ket(std::vector<Complex>{Complex(INFINITY, 0.0)}), InvalidArgument);
  const Ket k({3.0, Complex(0.0, 4.0)});
  CHECK(std::abs(k.norm() - 1.0) <= 1e-12);
}
