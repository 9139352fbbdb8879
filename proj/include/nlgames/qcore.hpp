#pragma once

// Dense complex linear algebra for the small Hilbert spaces that show up in
// two- and three-qubit games (dimension <= 8). Everything here is a value
// type; no operation mutates its inputs.

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace nlgames {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  // Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Row-major entries; throws InvalidArgument on size mismatch or non-finite
  // entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  bool is_hermitian(double tol) const;
  // max |M_ij - other_ij|; shapes must match.
  double max_abs_diff(const ComplexMatrix& other) const;
  double frobenius_norm() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

// A unit vector. The constructor normalizes, so every Ket in circulation has
// norm 1 within 1e-12.
class Ket {
 public:
  explicit Ket(std::vector<Complex> amplitudes);

  static Ket basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  double norm() const;

 private:
  std::vector<Complex> amplitudes_;
};

Complex inner(const Ket& bra, const Ket& ket);
// O|psi> as a raw amplitude vector (not renormalized).
std::vector<Complex> matvec(const ComplexMatrix& op, std::span<const Complex> psi);

// Kronecker product: (A (x) B)[i*rb + k, j*cb + l] = A[i,j] * B[k,l].
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
Ket tensor(const Ket& a, const Ket& b);

// <psi|O|psi> for Hermitian O. Throws on shape mismatch or non-Hermitian O.
double expectation(const ComplexMatrix& op, const Ket& psi);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  std::vector<Ket> eigenvectors;    // eigenvectors[k] pairs with eigenvalues[k]
};

// Cyclic Jacobi on the 2n x 2n real symmetric embedding [[Re, -Im], [Im, Re]].
EigenDecomposition hermitian_eigen(const ComplexMatrix& h);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

// sin(theta)cos(phi) X + sin(theta)sin(phi) Y + cos(theta) Z.
ComplexMatrix bloch_observable(double theta, double phi);

// (I + (-1)^outcome obs) / 2. Requires obs Hermitian with obs^2 = I.
ComplexMatrix outcome_projector(const ComplexMatrix& obs, int outcome);

// Applies a 2x2 operator to qubit `qubit` of an n-qubit amplitude vector.
// Qubit 0 is the most significant tensor factor, matching tensor(A, tensor(B, C)).
void apply_local(const ComplexMatrix& op2, std::size_t qubit, std::size_t n_qubits,
                 std::span<const Complex> in, std::span<Complex> out);

}  // namespace nlgames
