#include "spinopt/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spinopt/error.hpp"

namespace spinopt {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b, std::string_view where) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(where) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTolerance = 1e-14;

}  // namespace

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

Matrix::Matrix(std::size_t dim, std::initializer_list<Complex> row_major)
    : Matrix(dim, std::span<const Complex>(row_major.begin(), row_major.size())) {}

Matrix::Matrix(std::size_t dim, std::span<const Complex> row_major)
    : dim_(dim), data_(row_major.begin(), row_major.end()) {
  if (data_.size() != dim * dim) {
    throw DimensionError("Matrix: expected " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

Matrix Matrix::adjoint() const {
  Matrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Matrix Matrix::conjugate() const {
  Matrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex Matrix::trace() const noexcept {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double Matrix::max_abs() const noexcept {
  double worst = 0.0;
  for (const auto& z : data_) worst = std::max(worst, std::abs(z));
  return worst;
}

double Matrix::frobenius_norm() const noexcept {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

bool Matrix::is_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex scale) noexcept {
  for (auto& z : data_) z *= scale;
  return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

void require_operator_dim(const Matrix& m, std::string_view where) {
  if (m.dim() < 2 || m.dim() > 4) {
    throw DimensionError(std::string(where) + ": operator dimension must be 2, 3 or 4 (got " +
                         std::to_string(m.dim()) + ")");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  Matrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

Matrix bracket(const Matrix& a, const Matrix& b, Bracket kind) {
  require_same_dim(a, b, "bracket");
  Matrix ab = a * b;
  Matrix ba = b * a;
  return kind == Bracket::commutator ? ab - ba : ab + ba;
}

Complex trace_inner(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "trace_inner");
  Complex sum = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) sum += std::conj(a(k, i)) * b(k, i);
  return sum;
}

HermitianEigen hermitian_eigen(const Matrix& h) {
  const std::size_t n = h.dim();
  Matrix a = h;
  Matrix v = Matrix::identity(n);
  const double scale = std::max(1.0, h.frobenius_norm());

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) < kJacobiTolerance * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase-align a_pq to a real positive value, then apply the real
        // symmetric Jacobi rotation on the (p, q) plane.
        const Complex phase = std::conj(apq) / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // G = identity except on rows/cols p, q.
        // Columns p, q of A*G and rows p, q of G^dagger*A are all that change.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s * phase * akq;
          a(k, q) = s * akp + c * phase * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s * std::conj(phase) * aqk;
          a(q, k) = s * apk + c * std::conj(phase) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s * phase * vkq;
          v(k, q) = s * vkp + c * phase * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigen out{std::vector<double>(n), Matrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    out.values[col] = a(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row) out.vectors(row, col) = v(row, order[col]);
  }
  return out;
}

bool is_involutory(const Matrix& h) {
  const Matrix sq = h * h;
  const double e2 = sq.trace().real() / static_cast<double>(h.dim());
  return max_abs_diff(sq, Matrix::identity(h.dim()) * e2) <= kInvolutoryTolerance;
}

Matrix expm_unitary(const Matrix& h, double tau, ExpmPath path) {
  require_operator_dim(h, "expm_unitary");
  const double herm_dev = max_abs_diff(h, h.adjoint());
  if (herm_dev > kHermitianTolerance) {
    throw DomainError("expm_unitary: input is not Hermitian (deviation " + std::to_string(herm_dev) + ")");
  }
  const std::size_t n = h.dim();

  const bool use_closed_form =
      path == ExpmPath::involutory || (path == ExpmPath::automatic && is_involutory(h));
  if (use_closed_form) {
    if (path == ExpmPath::involutory && !is_involutory(h)) {
      throw DomainError("expm_unitary: H^2 is not proportional to the identity");
    }
    const double energy = std::sqrt(std::max(0.0, (h * h).trace().real() / static_cast<double>(n)));
    if (energy == 0.0) return Matrix::identity(n);
    return Matrix::identity(n) * std::cos(energy * tau) - h * (kI * (std::sin(energy * tau) / energy));
  }

  const HermitianEigen eig = hermitian_eigen(h);
  Matrix phases(n);
  for (std::size_t k = 0; k < n; ++k) phases(k, k) = std::exp(-kI * (eig.values[k] * tau));
  return eig.vectors * phases * eig.vectors.adjoint();
}

Predicates predicates(const Matrix& a, double tol) {
  Predicates out;
  out.hermitian_deviation = max_abs_diff(a, a.adjoint());
  out.unitary_deviation = max_abs_diff(a.adjoint() * a, Matrix::identity(a.dim()));
  out.trace_deviation = std::abs(a.trace());
  out.hermitian = out.hermitian_deviation <= tol;
  out.unitary = out.unitary_deviation <= tol;
  out.traceless = out.trace_deviation <= tol;
  out.max_deviation = std::max({out.hermitian_deviation, out.unitary_deviation, out.trace_deviation});
  return out;
}

Matrix pauli(int index) {
  switch (index) {
    case 0: return Matrix(2, {1.0, 0.0, 0.0, 1.0});
    case 1: return Matrix(2, {0.0, 1.0, 1.0, 0.0});
    case 2: return Matrix(2, {0.0, -kI, kI, 0.0});
    case 3: return Matrix(2, {1.0, 0.0, 0.0, -1.0});
    default: throw DomainError("pauli: index must be 0..3");
  }
}

}  // namespace spinopt
