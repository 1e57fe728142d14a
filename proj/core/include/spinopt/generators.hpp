#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinopt/matrix.hpp"

namespace spinopt {

using Vec3 = std::array<double, 3>;

enum class GroupId { su2, su3, su4 };

std::string_view to_string(GroupId group) noexcept;

/// Parses "su2" / "su3" / "su4"; throws DomainError otherwise.
GroupId parse_group(std::string_view text);

/// Matrix dimension N of su(N).
std::size_t group_dimension(GroupId group) noexcept;

struct Generator {
  std::string label;
  Matrix matrix;
};

/// Ordered, labeled, trace-orthogonal Hermitian trace-free basis of su(N).
///
/// Elements are kept unnormalized (Pauli products have Tr(g^2) = 4, Pauli and
/// Gell-Mann matrices Tr(g^2) = 2); projection divides by norm(k).
///
/// Labels: su2 "sx", "sy", "sz"; su3 "l1".."l8"; su4 "sIJ" for
/// sigma_I (x) sigma_J with sigma_0 = 1, in lexicographic (I, J) order with
/// "s00" excluded.
class GeneratorBasis {
 public:
  GeneratorBasis(GroupId group, std::vector<Generator> elements);

  GroupId group() const noexcept { return group_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return group_dimension(group_); }

  const std::vector<Generator>& elements() const noexcept { return elements_; }
  const Matrix& operator[](std::size_t k) const { return elements_.at(k).matrix; }
  const std::string& label(std::size_t k) const { return elements_.at(k).label; }
  double norm(std::size_t k) const { return norms_.at(k); }
  std::span<const double> norm_constants() const noexcept { return norms_; }

  std::optional<std::size_t> find(std::string_view label) const noexcept;

  /// Index of `label`; throws DomainError if absent.
  std::size_t index_of(std::string_view label) const;

 private:
  GroupId group_;
  std::vector<Generator> elements_;
  std::vector<double> norms_;
};

GeneratorBasis build_basis(GroupId group);

/// Label of sigma_i (x) sigma_j in the su4 basis.
std::string su4_label(int i, int j);

struct Projection {
  std::vector<double> coefficients;
  /// Tr(A); nonzero means an identity component was discarded.
  Complex dropped_trace;

  bool dropped_identity(double tol = 1e-12) const noexcept { return std::abs(dropped_trace) > tol; }
};

/// c_k = Tr(g_k A) / Tr(g_k^2) for Hermitian A.
Projection project_coefficients(const Matrix& a, const GeneratorBasis& basis);

/// sum_k c_k g_k.
Matrix reconstruct(std::span<const double> coefficients, const GeneratorBasis& basis);

/// sigma . v
Matrix sigma_dot(const Vec3& v);

enum class DiracConvention {
  sigma_y,  // alpha_j = sigma_y (x) sigma_j: reproduces the displayed block form
  sigma_x,  // alpha_j = sigma_x (x) sigma_j
};

struct DiracOperators {
  std::array<Matrix, 3> alpha;
  Matrix beta;
};

/// beta = sigma_z (x) 1 and the alpha triple for the chosen convention.
DiracOperators dirac_operators(DiracConvention convention = DiracConvention::sigma_y);

/// m beta + sum_j p_j alpha_j.
Matrix assemble_dirac(const DiracOperators& ops, double mass, const Vec3& momentum);

/// The block matrix [[m 1, -i p.sigma], [i p.sigma, -m 1]], built directly
/// from its blocks.
Matrix dirac_block_matrix(double mass, const Vec3& momentum);

struct AlgebraRelation {
  std::string name;
  double deviation;
};

struct AlgebraReport {
  std::vector<AlgebraRelation> relations;  // 16 entries

  double max_deviation() const noexcept;
};

/// beta^2 = 1, alpha_j^2 = 1, {alpha_j, alpha_k} = 2 delta_jk (all nine
/// ordered pairs) and {beta, alpha_k} = 0.
AlgebraReport verify_algebra(const DiracOperators& ops);

/// max |assemble_dirac(ops, m, p) - dirac_block_matrix(m, p)|.
double block_form_deviation(const DiracOperators& ops, double mass, const Vec3& momentum);

}  // namespace spinopt
