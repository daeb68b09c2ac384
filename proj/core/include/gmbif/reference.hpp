#pragma once

#include <string>
#include <vector>

#include "gmbif/normal_form.hpp"

namespace gmbif {

// Reference closed forms for the cusp chain at d = c, b = c^2 beta^2 / 4.
struct ReferenceCoefficient {
  std::string stage;  // "expansion", "quadratic", "lienard", "reduced"
  std::string name;   // e.g. "d31"
  int component = 0;  // 0: x-equation, 1: y-equation
  int i = 0;
  int j = 0;
  double value = 0.0;
};

std::vector<ReferenceCoefficient> reference_cusp_coefficients(double c, double beta);

struct CoefficientCheck {
  ReferenceCoefficient reference;
  double computed = 0.0;
  double rel_error = 0.0; // against max(|reference|, 1e-300)
};

std::vector<CoefficientCheck> compare_reference(const NormalFormReport& rep, double c, double beta);

// Unfolding-stage closed forms for the constant terms at stage 4.3.
double reference_a00(const Params& base, double eps1);
double reference_b00(const Params& base, double eps2, double eps3);

} // namespace gmbif
