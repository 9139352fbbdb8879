#include "nlgames/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nlgames/constants.hpp"
#include "nlgames/errors.hpp"

namespace nlgames {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument(std::string(what) + ": shape mismatch");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw InvalidArgument("ComplexMatrix: entry count does not match rows*cols");
  }
  if (!std::all_of(entries_.begin(), entries_.end(), finite)) {
    throw InvalidArgument("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m.entries_[i * values.size() + i] = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.entries_[j * rows_ + i] = std::conj((*this)(i, j));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  require_same_shape(*this, other, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t k = 0; k < entries_.size(); ++k)
    worst = std::max(worst, std::abs(entries_[k] - other.entries_[k]));
  return worst;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator+");
  ComplexMatrix m(a.rows_, a.cols_);
  for (std::size_t k = 0; k < m.entries_.size(); ++k) m.entries_[k] = a.entries_[k] + b.entries_[k];
  return m;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator-");
  ComplexMatrix m(a.rows_, a.cols_);
  for (std::size_t k = 0; k < m.entries_.size(); ++k) m.entries_[k] = a.entries_[k] - b.entries_[k];
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("operator*: inner dimensions differ");
  ComplexMatrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) m.entries_[i * b.cols_ + j] += aik * b(k, j);
    }
  return m;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  ComplexMatrix r(m.rows_, m.cols_);
  for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] = s * m.entries_[k];
  return r;
}

Ket::Ket(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw InvalidArgument("Ket: empty amplitude vector");
  if (!std::all_of(amplitudes_.begin(), amplitudes_.end(), finite)) {
    throw InvalidArgument("Ket: non-finite amplitude");
  }
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("Ket: zero vector cannot be normalized");
  for (auto& a : amplitudes_) a /= n;
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InvalidArgument("Ket::basis: index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return Ket(std::move(amps));
}

double Ket::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

Complex inner(const Ket& bra, const Ket& ket) {
  if (bra.dim() != ket.dim()) throw InvalidArgument("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < bra.dim(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

std::vector<Complex> matvec(const ComplexMatrix& op, std::span<const Complex> psi) {
  if (op.cols() != psi.size()) throw InvalidArgument("matvec: dimension mismatch");
  std::vector<Complex> out(op.rows());
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t j = 0; j < op.cols(); ++j) out[i] += op(i, j) * psi[j];
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  std::vector<Complex> e(a.rows() * rb * a.cols() * cb);
  const std::size_t cols = a.cols() * cb;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) e[(i * rb + k) * cols + (j * cb + l)] = a(i, j) * b(k, l);
  return ComplexMatrix(a.rows() * rb, cols, std::move(e));
}

Ket tensor(const Ket& a, const Ket& b) {
  std::vector<Complex> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) amps[i * b.dim() + k] = a[i] * b[k];
  return Ket(std::move(amps));
}

double expectation(const ComplexMatrix& op, const Ket& psi) {
  if (!op.is_square() || op.rows() != psi.dim()) {
    throw InvalidArgument("expectation: operator and ket dimensions differ");
  }
  if (!op.is_hermitian(tol::kStructural)) throw InvalidArgument("expectation: operator is not Hermitian");
  const auto o_psi = matvec(op, psi.amplitudes());
  Complex s = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) s += std::conj(psi[i]) * o_psi[i];
  if (std::abs(s.imag()) > tol::kStructural * std::max(1.0, op.frobenius_norm())) {
    throw InvariantViolation("expectation: imaginary residual on a Hermitian operator");
  }
  return s.real();
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& h) {
  if (!h.is_hermitian(tol::kStructural)) throw InvalidArgument("hermitian_eigen: input is not Hermitian");
  const std::size_t n = h.rows();
  const std::size_t m = 2 * n;

  // S = [[Re H, -Im H], [Im H, Re H]], symmetric whenever H is Hermitian.
  std::vector<double> s(m * m), v(m * m, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = h(i, j);
      s[i * m + j] = z.real();
      s[i * m + (j + n)] = -z.imag();
      s[(i + n) * m + j] = z.imag();
      s[(i + n) * m + (j + n)] = z.real();
    }
  for (std::size_t i = 0; i < m; ++i) v[i * m + i] = 1.0;

  const double scale = std::max(1.0, h.frobenius_norm());
  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j) acc += s[i * m + j] * s[i * m + j];
    return std::sqrt(acc);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() >= tol::kJacobi * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = s[p * m + q];
        if (apq == 0.0) continue;
        const double theta = (s[q * m + q] - s[p * m + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double skp = s[k * m + p], skq = s[k * m + q];
          s[k * m + p] = c * skp - sn * skq;
          s[k * m + q] = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double spk = s[p * m + k], sqk = s[q * m + k];
          s[p * m + k] = c * spk - sn * sqk;
          s[q * m + k] = sn * spk + c * sqk;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double vkp = v[k * m + p], vkq = v[k * m + q];
          v[k * m + p] = c * vkp - sn * vkq;
          v[k * m + q] = sn * vkp + c * vkq;
        }
      }
  }
  if (off_norm() >= tol::kJacobi * scale) {
    throw InvariantViolation("hermitian_eigen: Jacobi iteration did not converge");
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s[a * m + a] < s[b * m + b]; });

  // Every eigenvalue of H appears twice in S, and each real eigenvector (x; y)
  // of S maps to the complex eigenvector x + iy of H. Within each cluster of
  // equal eigenvalues, keep a complex-orthonormal subset by pivoted
  // Gram-Schmidt.
  std::vector<std::vector<Complex>> picked;
  auto as_complex = [&](std::size_t col) {
    std::vector<Complex> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = Complex(v[i * m + col], v[(i + n) * m + col]);
    return z;
  };
  auto residual = [&](std::vector<Complex> z) {
    for (const auto& u : picked) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(u[i]) * z[i];
      for (std::size_t i = 0; i < n; ++i) z[i] -= proj * u[i];
    }
    return z;
  };
  auto znorm = [](const std::vector<Complex>& z) {
    double acc = 0.0;
    for (const auto& c : z) acc += std::norm(c);
    return std::sqrt(acc);
  };

  const double cluster_tol = 1e-10 * scale;
  for (std::size_t start = 0; start < m && picked.size() < n;) {
    std::size_t end = start + 1;
    while (end < m && s[order[end] * m + order[end]] - s[order[end - 1] * m + order[end - 1]] <= cluster_tol) ++end;
    const std::size_t want = std::min((end - start + 1) / 2, n - picked.size());
    std::vector<std::size_t> pool(order.begin() + static_cast<std::ptrdiff_t>(start),
                                  order.begin() + static_cast<std::ptrdiff_t>(end));
    for (std::size_t k = 0; k < want; ++k) {
      std::size_t best = 0;
      double best_norm = -1.0;
      std::vector<Complex> best_vec;
      for (std::size_t idx = 0; idx < pool.size(); ++idx) {
        auto r = residual(as_complex(pool[idx]));
        const double nr = znorm(r);
        if (nr > best_norm) {
          best_norm = nr;
          best = idx;
          best_vec = std::move(r);
        }
      }
      for (auto& c : best_vec) c /= best_norm;
      picked.push_back(std::move(best_vec));
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    }
    start = end;
  }

  EigenDecomposition out;
  std::vector<std::pair<double, std::size_t>> rayleigh;
  for (std::size_t k = 0; k < picked.size(); ++k) {
    const auto hv = matvec(h, picked[k]);
    Complex r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += std::conj(picked[k][i]) * hv[i];
    rayleigh.emplace_back(r.real(), k);
  }
  std::stable_sort(rayleigh.begin(), rayleigh.end());
  for (const auto& [lambda, k] : rayleigh) {
    out.eigenvalues.push_back(lambda);
    out.eigenvectors.emplace_back(picked[k]);
  }
  return out;
}

namespace pauli {
ComplexMatrix x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix y() { return ComplexMatrix(2, 2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
ComplexMatrix z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }
}  // namespace pauli

ComplexMatrix bloch_observable(double theta, double phi) {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  return ComplexMatrix(2, 2, {nz, Complex(nx, -ny), Complex(nx, ny), -nz});
}

ComplexMatrix outcome_projector(const ComplexMatrix& obs, int outcome) {
  if (outcome != 0 && outcome != 1) throw InvalidArgument("outcome_projector: outcome must be 0 or 1");
  if (!obs.is_hermitian(tol::kStructural)) throw InvalidArgument("outcome_projector: observable is not Hermitian");
  const auto id = ComplexMatrix::identity(obs.rows());
  if ((obs * obs).max_abs_diff(id) > tol::kStructural) {
    throw InvalidArgument("outcome_projector: observable does not square to identity");
  }
  const double sign = outcome == 0 ? 0.5 : -0.5;
  std::vector<Complex> e(obs.rows() * obs.cols());
  for (std::size_t i = 0; i < obs.rows(); ++i)
    for (std::size_t j = 0; j < obs.cols(); ++j) e[i * obs.cols() + j] = (i == j ? 0.5 : 0.0) + sign * obs(i, j);
  return ComplexMatrix(obs.rows(), obs.cols(), std::move(e));
}

void apply_local(const ComplexMatrix& op2, std::size_t qubit, std::size_t n_qubits,
                 std::span<const Complex> in, std::span<Complex> out) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (op2.rows() != 2 || op2.cols() != 2 || qubit >= n_qubits || in.size() != dim || out.size() != dim) {
    throw InvalidArgument("apply_local: shape mismatch");
  }
  const std::size_t bit = std::size_t{1} << (n_qubits - 1 - qubit);
  const Complex o00 = op2(0, 0), o01 = op2(0, 1), o10 = op2(1, 0), o11 = op2(1, 1);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const Complex a0 = in[i], a1 = in[i | bit];
    out[i] = o00 * a0 + o01 * a1;
    out[i | bit] = o10 * a0 + o11 * a1;
  }
}

}  // namespace nlgames
