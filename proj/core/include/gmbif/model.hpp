#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "gmbif/errors.hpp"

namespace gmbif {

using Vec2 = std::array<double, 2>;

// u' = c (beta u^2 / v - u),  v' = b + u^2 - d v
struct Params {
  double c = 0.0;
  double beta = 0.0;
  double b = 0.0;
  double d = 0.0;

  // Throws InvalidInput naming the first offending field.
  static Params make(double c, double beta, double b, double d);

  double discriminant() const noexcept { return d * d * beta * beta - 4.0 * b; }
  double b_sn() const noexcept { return 0.25 * d * d * beta * beta; }
};

void validate(const Params& p);

struct State {
  double u = 0.0;
  double v = 0.0;
};

enum class EquilibriumLabel { E0, E1, E2, E3 };

std::string_view to_string(EquilibriumLabel l) noexcept;

struct Equilibrium {
  State point;
  EquilibriumLabel label = EquilibriumLabel::E0;
  double discriminant = 0.0;
};

struct JacobianMatrix {
  std::array<std::array<double, 2>, 2> entries{};
  double trace = 0.0;
  double determinant = 0.0;

  static JacobianMatrix from_entries(double a, double b, double c, double d) noexcept;
  double max_norm() const noexcept;
};

// Band used to decide Delta == 0: 1e-9 * max(1, d^2 beta^2).
double default_discriminant_tol(const Params& p) noexcept;

Vec2 eval_field(const Params& p, const State& s);

// E0 always, E1 iff |Delta| <= tol, E2/E3 iff Delta > tol; sorted by label.
std::vector<Equilibrium> equilibria(const Params& p, double tol);
std::vector<Equilibrium> equilibria(const Params& p);

std::size_t positive_equilibrium_count(const Params& p, double tol);

JacobianMatrix jacobian(const Params& p, const State& s);

// div(F / u^2) = (c - d) / u^2; sign-definite off d = c.
double dulac_divergence(const Params& p, const State& s);

// First integral on d = c (integrating factor 1/u^2); requires u > 0.
double first_integral(const Params& p, const State& s);

} // namespace gmbif
