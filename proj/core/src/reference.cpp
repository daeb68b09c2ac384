#include "gmbif/reference.hpp"

#include <algorithm>
#include <cmath>

namespace gmbif {

std::vector<ReferenceCoefficient> reference_cusp_coefficients(double c, double beta) {
  const double d = c, B = beta;
  const auto p = [](int k, double x) { return std::pow(x, k); };
  std::vector<ReferenceCoefficient> out;
  auto add = [&](const char* stage, const char* name, int comp, int i, int j, double v) {
    out.push_back({stage, name, comp, i, j, v});
  };

  add("expansion", "a10", 0, 1, 0, c);
  add("expansion", "a01", 0, 0, 1, -c / B);
  add("expansion", "a20", 0, 2, 0, 2 * c / (d * B));
  add("expansion", "a11", 0, 1, 1, -4 * c / (d * p(2, B)));
  add("expansion", "a02", 0, 0, 2, 2 * c / (d * p(3, B)));
  add("expansion", "a21", 0, 2, 1, -4 * c / (p(2, d) * p(3, B)));
  add("expansion", "a12", 0, 1, 2, 8 * c / (p(2, d) * p(4, B)));
  add("expansion", "a03", 0, 0, 3, -4 * c / (p(2, d) * p(5, B)));
  add("expansion", "a22", 0, 2, 2, 8 * c / (p(3, d) * p(5, B)));
  add("expansion", "a13", 0, 1, 3, -16 * c / (p(3, d) * p(6, B)));
  add("expansion", "a04", 0, 0, 4, 8 * c / (p(3, d) * p(7, B)));
  add("expansion", "b10", 1, 1, 0, d * B);
  add("expansion", "b01", 1, 0, 1, -d);
  add("expansion", "b20", 1, 2, 0, 1.0);

  add("quadratic", "c01", 0, 0, 1, 1.0);
  add("quadratic", "c20", 0, 2, 0, 1.0);
  add("quadratic", "c11", 0, 1, 1, 2 / (c * B));
  add("quadratic", "c21", 0, 2, 1, 4 / (p(2, c) * B));
  add("quadratic", "c12", 0, 1, 2, 4 / (p(3, c) * p(2, B)));
  add("quadratic", "c03", 0, 0, 3, -4 / (p(4, c) * p(2, B)));
  add("quadratic", "c40", 0, 4, 0, 2 / (p(2, c) * B));
  add("quadratic", "c22", 0, 2, 2, 4 / (p(4, c) * p(2, B)));
  add("quadratic", "c13", 0, 1, 3, 8 / (p(5, c) * p(3, B)));
  add("quadratic", "c04", 0, 0, 4, -8 / (p(6, c) * p(3, B)));
  add("quadratic", "d20", 1, 2, 0, -c / B);
  add("quadratic", "d11", 1, 1, 1, -2.0);
  add("quadratic", "d30", 1, 3, 0, -2 + 2 / p(2, B));
  add("quadratic", "d21", 1, 2, 1, -4 / (c * p(2, B)) + 2 / (c * B));
  add("quadratic", "d12", 1, 1, 2, -8 / (p(2, c) * B));
  add("quadratic", "d03", 1, 0, 3, -4 / (p(3, c) * p(2, B)));
  add("quadratic", "d40", 1, 4, 0, -6 / (c * B) - 4 / (c * p(3, B)));
  add("quadratic", "d31", 1, 3, 1, 4 / (p(2, c) * p(2, B)) + 16 / (p(2, c) * p(3, B)) - 16 / (p(2, c) * B));
  add("quadratic", "d22", 1, 2, 2, 12 / (p(3, c) * p(2, B)) - 16 / (p(3, c) * p(3, B)));
  add("quadratic", "d13", 1, 1, 3, 8 / (p(4, c) * p(3, B)) - 24 / (p(4, c) * p(2, B)));
  add("quadratic", "d04", 1, 0, 4, -16 / (p(5, c) * p(3, B)));

  add("lienard", "e20", 1, 2, 0, -c / B);
  add("lienard", "e02", 1, 0, 2, 2 / (c * B));
  add("lienard", "e21", 1, 2, 1, -4 / (c * p(2, B)));
  add("lienard", "e12", 1, 1, 2, -4 / (p(2, c) * p(2, B)) - 8 / (p(2, c) * B));
  add("lienard", "e03", 1, 0, 3, -4 / (p(3, c) * p(2, B)));
  add("lienard", "e40", 1, 4, 0, 4 / (c * p(3, B)));
  add("lienard", "e31", 1, 3, 1, 8 / (p(2, c) * p(2, B)) + 16 / (p(3, c) * p(3, B)) + 16 / (p(2, c) * p(3, B)));
  add("lienard", "e22", 1, 2, 2, -8 / (p(3, c) * p(3, B)) + 40 / (p(3, c) * p(2, B)) - 16 / (p(4, c) * p(4, B)));
  add("lienard", "e13", 1, 1, 3, -24 / (p(4, c) * p(2, B)) + 24 / (p(4, c) * p(3, B)));
  add("lienard", "e04", 1, 0, 4, -16 / (p(5, c) * p(3, B)));

  add("reduced", "f20", 1, 2, 0, -c / B);
  add("reduced", "f40", 1, 4, 0, 11 / (3 * c * p(3, B)) - 4 / (3 * c * p(2, B)));
  add("reduced", "f31", 1, 3, 1, -4 / (p(2, c) * p(3, B)) + 16 / (p(3, c) * p(3, B)) + 8 / (p(2, c) * p(2, B)));
  return out;
}

std::vector<CoefficientCheck> compare_reference(const NormalFormReport& rep, double c, double beta) {
  std::vector<CoefficientCheck> out;
  for (auto& pc : reference_cusp_coefficients(c, beta)) {
    const PlanarJetField& f = rep.stage(pc.stage).field;
    const double v = f[pc.component].coeff(pc.i, pc.j);
    const double rel = std::abs(v - pc.value) / std::max(std::abs(pc.value), 1e-300);
    out.push_back({std::move(pc), v, rel});
  }
  return out;
}

double reference_a00(const Params& base, double eps1) { return base.c * base.c * eps1 / 2.0; }

double reference_b00(const Params& base, double eps2, double eps3) {
  const double c = base.c, B = base.beta;
  return base.b + eps2 - 0.25 * c * c * B * B - 0.5 * c * B * B * eps3;
}

} // namespace gmbif
