#include "spinopt/generators.hpp"

#include <algorithm>
#include <cmath>

#include "spinopt/error.hpp"

namespace spinopt {

std::string_view to_string(GroupId group) noexcept {
  switch (group) {
    case GroupId::su2: return "su2";
    case GroupId::su3: return "su3";
    case GroupId::su4: return "su4";
  }
  return "unknown";
}

GroupId parse_group(std::string_view text) {
  if (text == "su2") return GroupId::su2;
  if (text == "su3") return GroupId::su3;
  if (text == "su4") return GroupId::su4;
  throw DomainError("unknown group '" + std::string(text) + "' (expected su2, su3 or su4)");
}

std::size_t group_dimension(GroupId group) noexcept {
  switch (group) {
    case GroupId::su2: return 2;
    case GroupId::su3: return 3;
    case GroupId::su4: return 4;
  }
  return 0;
}

GeneratorBasis::GeneratorBasis(GroupId group, std::vector<Generator> elements)
    : group_(group), elements_(std::move(elements)) {
  norms_.reserve(elements_.size());
  for (const auto& g : elements_) {
    if (g.matrix.dim() != dim()) throw DimensionError("GeneratorBasis: element '" + g.label + "' has wrong dimension");
    norms_.push_back((g.matrix * g.matrix).trace().real());
  }
}

std::optional<std::size_t> GeneratorBasis::find(std::string_view label) const noexcept {
  for (std::size_t k = 0; k < elements_.size(); ++k)
    if (elements_[k].label == label) return k;
  return std::nullopt;
}

std::size_t GeneratorBasis::index_of(std::string_view label) const {
  if (auto k = find(label)) return *k;
  throw DomainError("label '" + std::string(label) + "' is not in the " + std::string(to_string(group_)) + " basis");
}

std::string su4_label(int i, int j) {
  return "s" + std::to_string(i) + std::to_string(j);
}

namespace {

std::vector<Generator> gell_mann() {
  const double r3 = 1.0 / std::sqrt(3.0);
  std::vector<Generator> out;
  out.push_back({"l1", Matrix(3, {0, 1, 0, 1, 0, 0, 0, 0, 0})});
  out.push_back({"l2", Matrix(3, {0, -kI, 0, kI, 0, 0, 0, 0, 0})});
  out.push_back({"l3", Matrix(3, {1, 0, 0, 0, -1, 0, 0, 0, 0})});
  out.push_back({"l4", Matrix(3, {0, 0, 1, 0, 0, 0, 1, 0, 0})});
  out.push_back({"l5", Matrix(3, {0, 0, -kI, 0, 0, 0, kI, 0, 0})});
  out.push_back({"l6", Matrix(3, {0, 0, 0, 0, 0, 1, 0, 1, 0})});
  out.push_back({"l7", Matrix(3, {0, 0, 0, 0, 0, -kI, 0, kI, 0})});
  out.push_back({"l8", Matrix(3, {r3, 0, 0, 0, r3, 0, 0, 0, -2.0 * r3})});
  return out;
}

}  // namespace

GeneratorBasis build_basis(GroupId group) {
  std::vector<Generator> elements;
  switch (group) {
    case GroupId::su2:
      elements = {{"sx", pauli(1)}, {"sy", pauli(2)}, {"sz", pauli(3)}};
      break;
    case GroupId::su3:
      elements = gell_mann();
      break;
    case GroupId::su4:
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          if (i != 0 || j != 0) elements.push_back({su4_label(i, j), kron(pauli(i), pauli(j))});
      break;
  }
  return GeneratorBasis(group, std::move(elements));
}

Projection project_coefficients(const Matrix& a, const GeneratorBasis& basis) {
  if (a.dim() != basis.dim()) {
    throw DimensionError("project_coefficients: matrix dimension " + std::to_string(a.dim()) +
                         " does not match " + std::string(to_string(basis.group())));
  }
  Projection out;
  out.coefficients.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    // Generators are Hermitian, so Tr(g_k A) = Tr(g_k^dagger A).
    out.coefficients.push_back(trace_inner(basis[k], a).real() / basis.norm(k));
  }
  out.dropped_trace = a.trace();
  return out;
}

Matrix reconstruct(std::span<const double> coefficients, const GeneratorBasis& basis) {
  if (coefficients.size() != basis.size()) {
    throw DimensionError("reconstruct: expected " + std::to_string(basis.size()) + " coefficients, got " +
                         std::to_string(coefficients.size()));
  }
  Matrix out(basis.dim());
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (coefficients[k] != 0.0) out += basis[k] * coefficients[k];
  return out;
}

Matrix sigma_dot(const Vec3& v) {
  return pauli(1) * v[0] + pauli(2) * v[1] + pauli(3) * v[2];
}

DiracOperators dirac_operators(DiracConvention convention) {
  const Matrix lead = convention == DiracConvention::sigma_y ? pauli(2) : pauli(1);
  return DiracOperators{
      {kron(lead, pauli(1)), kron(lead, pauli(2)), kron(lead, pauli(3))},
      kron(pauli(3), pauli(0)),
  };
}

Matrix assemble_dirac(const DiracOperators& ops, double mass, const Vec3& momentum) {
  Matrix h = ops.beta * mass;
  for (std::size_t j = 0; j < 3; ++j) h += ops.alpha[j] * momentum[j];
  return h;
}

Matrix dirac_block_matrix(double mass, const Vec3& momentum) {
  const Matrix ps = sigma_dot(momentum);
  Matrix h(4);
  for (std::size_t i = 0; i < 2; ++i) {
    h(i, i) = mass;
    h(i + 2, i + 2) = -mass;
    for (std::size_t j = 0; j < 2; ++j) {
      h(i, j + 2) = -kI * ps(i, j);
      h(i + 2, j) = kI * ps(i, j);
    }
  }
  return h;
}

AlgebraReport verify_algebra(const DiracOperators& ops) {
  const Matrix one = Matrix::identity(4);
  const Matrix zero(4);
  static constexpr const char* kAxis[] = {"x", "y", "z"};
  AlgebraReport report;

  report.relations.push_back({"beta^2=1", max_abs_diff(ops.beta * ops.beta, one)});
  for (int j = 0; j < 3; ++j) {
    report.relations.push_back({std::string("alpha_") + kAxis[j] + "^2=1",
                                max_abs_diff(ops.alpha[j] * ops.alpha[j], one)});
  }
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const Matrix expected = j == k ? one * 2.0 : zero;
      report.relations.push_back({std::string("{alpha_") + kAxis[j] + ",alpha_" + kAxis[k] + "}",
                                  max_abs_diff(bracket(ops.alpha[j], ops.alpha[k], Bracket::anticommutator), expected)});
    }
  }
  for (int k = 0; k < 3; ++k) {
    report.relations.push_back({std::string("{beta,alpha_") + kAxis[k] + "}=0",
                                max_abs_diff(bracket(ops.beta, ops.alpha[k], Bracket::anticommutator), zero)});
  }
  return report;
}

double AlgebraReport::max_deviation() const noexcept {
  double worst = 0.0;
  for (const auto& r : relations) worst = std::max(worst, r.deviation);
  return worst;
}

double block_form_deviation(const DiracOperators& ops, double mass, const Vec3& momentum) {
  return max_abs_diff(assemble_dirac(ops, mass, momentum), dirac_block_matrix(mass, momentum));
}

}  // namespace spinopt
