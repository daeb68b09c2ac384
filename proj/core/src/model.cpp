#include "gmbif/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gmbif {

namespace {

void require_positive(double x, const char* name) {
  if (!std::isfinite(x) || !(x > 0.0))
    throw InvalidInput(std::string(name) + " must be positive");
}

void require_interior(const State& s) {
  if (!std::isfinite(s.u) || !std::isfinite(s.v))
    throw DomainError("non-finite state");
  if (!(s.v > 0.0)) throw DomainError("field undefined for v <= 0");
}

} // namespace

Params Params::make(double c, double beta, double b, double d) {
  Params p{c, beta, b, d};
  validate(p);
  return p;
}

void validate(const Params& p) {
  require_positive(p.c, "c");
  require_positive(p.beta, "beta");
  require_positive(p.b, "b");
  require_positive(p.d, "d");
  if (!std::isfinite(p.discriminant()))
    throw InvalidInput("parameters overflow the discriminant");
}

std::string_view to_string(EquilibriumLabel l) noexcept {
  switch (l) {
  case EquilibriumLabel::E0: return "E0";
  case EquilibriumLabel::E1: return "E1";
  case EquilibriumLabel::E2: return "E2";
  case EquilibriumLabel::E3: return "E3";
  }
  return "?";
}

JacobianMatrix JacobianMatrix::from_entries(double a, double b, double c, double d) noexcept {
  JacobianMatrix j;
  j.entries = {{{a, b}, {c, d}}};
  j.trace = a + d;
  j.determinant = a * d - b * c;
  return j;
}

double JacobianMatrix::max_norm() const noexcept {
  double m = 0.0;
  for (const auto& row : entries)
    for (double x : row) m = std::max(m, std::abs(x));
  return m;
}

double default_discriminant_tol(const Params& p) noexcept {
  const double s = p.d * p.d * p.beta * p.beta;
  return 1e-9 * std::max(1.0, s);
}

Vec2 eval_field(const Params& p, const State& s) {
  require_interior(s);
  const double u = s.u, v = s.v;
  return {p.c * (p.beta * u * u / v - u), p.b + u * u - p.d * v};
}

std::vector<Equilibrium> equilibria(const Params& p, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("tol must be positive");
  const double delta = p.discriminant();
  std::vector<Equilibrium> out;
  out.push_back({{0.0, p.b / p.d}, EquilibriumLabel::E0, delta});
  if (std::abs(delta) <= tol) {
    const double u = 0.5 * p.d * p.beta;
    out.push_back({{u, p.beta * u}, EquilibriumLabel::E1, delta});
  } else if (delta > tol) {
    const double r = std::sqrt(delta);
    const double s = p.d * p.beta;
    // larger root directly, smaller one through u2 u3 = b to avoid cancellation
    const double u2 = 0.5 * (s + r);
    const double u3 = p.b / u2;
    out.push_back({{u2, p.beta * u2}, EquilibriumLabel::E2, delta});
    out.push_back({{u3, p.beta * u3}, EquilibriumLabel::E3, delta});
  }
  return out;
}

std::vector<Equilibrium> equilibria(const Params& p) {
  return equilibria(p, default_discriminant_tol(p));
}

std::size_t positive_equilibrium_count(const Params& p, double tol) {
  return equilibria(p, tol).size() - 1;
}

JacobianMatrix jacobian(const Params& p, const State& s) {
  require_interior(s);
  const double u = s.u, v = s.v;
  const double r = u / v;
  return JacobianMatrix::from_entries(p.c * (2.0 * p.beta * r - 1.0), -p.c * p.beta * r * r,
                                      2.0 * u, -p.d);
}

double dulac_divergence(const Params& p, const State& s) {
  require_interior(s);
  if (!(s.u > 0.0)) throw DomainError("Dulac function needs u > 0");
  return (p.c - p.d) / (s.u * s.u);
}

double first_integral(const Params& p, const State& s) {
  require_interior(s);
  if (!(s.u > 0.0)) throw DomainError("first integral needs u > 0");
  return p.c * p.beta * std::log(s.v) - p.c * s.v / s.u + p.b / s.u - s.u;
}

} // namespace gmbif
