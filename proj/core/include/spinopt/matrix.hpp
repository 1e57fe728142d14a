#pragma once

// Dense complex matrices for the small operator spaces used throughout the
// library (2x2, 3x3, 4x4). Kronecker products may transiently produce larger
// matrices; entry points that need an operator dimension call
// require_operator_dim().

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace spinopt {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

class Matrix {
 public:
  Matrix() = default;

  /// Zero matrix of the given dimension.
  explicit Matrix(std::size_t dim);

  /// Row-major entries; the count must be dim*dim.
  Matrix(std::size_t dim, std::initializer_list<Complex> row_major);
  Matrix(std::size_t dim, std::span<const Complex> row_major);

  static Matrix identity(std::size_t dim);
  static Matrix diagonal(std::span<const Complex> diag);
  static Matrix diagonal(std::initializer_list<Complex> diag);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return data_; }

  Matrix adjoint() const;
  Matrix conjugate() const;
  Matrix transpose() const;
  Complex trace() const noexcept;

  /// Largest entry modulus.
  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;
  bool is_finite() const noexcept;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex scale) noexcept;

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator-(Matrix m) { return m *= -1.0; }
  friend Matrix operator*(Matrix m, Complex scale) noexcept { return m *= scale; }
  friend Matrix operator*(Complex scale, Matrix m) noexcept { return m *= scale; }
  friend Matrix operator*(Matrix m, double scale) noexcept { return m *= scale; }
  friend Matrix operator*(double scale, Matrix m) noexcept { return m *= scale; }
  friend Matrix operator/(Matrix m, double scale) noexcept { return m *= 1.0 / scale; }
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// max_ij |a_ij - b_ij|; throws DimensionError on shape mismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Throws DimensionError unless 2 <= dim <= 4.
void require_operator_dim(const Matrix& m, std::string_view where);

/// A (x) B; block (i,j) of the result is A(i,j) * B.
Matrix kron(const Matrix& a, const Matrix& b);

enum class Bracket { commutator, anticommutator };

/// AB - BA or AB + BA.
Matrix bracket(const Matrix& a, const Matrix& b, Bracket kind = Bracket::commutator);

/// Tr(A^dagger B).
Complex trace_inner(const Matrix& a, const Matrix& b);

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Eigenvalues ascending; eigenvectors are the columns of
/// `vectors`.
struct HermitianEigen {
  std::vector<double> values;
  Matrix vectors;
};

HermitianEigen hermitian_eigen(const Matrix& h);

enum class ExpmPath {
  automatic,   // involutory closed form when H^2 = E^2 1, else eigendecomposition
  involutory,  // closed form only; throws DomainError if H^2 is not scalar
  eigen,
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kInvolutoryTolerance = 1e-10;

/// exp(-i H tau) for Hermitian H.
Matrix expm_unitary(const Matrix& h, double tau, ExpmPath path = ExpmPath::automatic);

/// True when H^2 equals (Tr(H^2)/dim) 1 entrywise within kInvolutoryTolerance.
bool is_involutory(const Matrix& h);

inline constexpr double kDefaultPredicateTolerance = 1e-12;

struct Predicates {
  bool hermitian = false;
  bool unitary = false;
  bool traceless = false;
  double hermitian_deviation = 0.0;  // max |A - A^dagger|
  double unitary_deviation = 0.0;    // max |A^dagger A - 1|
  double trace_deviation = 0.0;      // |Tr A|
  double max_deviation = 0.0;
};

Predicates predicates(const Matrix& a, double tol = kDefaultPredicateTolerance);

Matrix pauli(int index);  // 0 -> identity, 1..3 -> sigma_x, sigma_y, sigma_z

}  // namespace spinopt
