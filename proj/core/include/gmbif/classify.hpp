#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gmbif/model.hpp"

namespace gmbif {

enum class Kind {
  StableNode,
  UnstableNode,
  Saddle,
  SaddleNodeStableSector,
  SaddleNodeUnstableSector,
  CuspCodim3,
  CuspDegenerate, // nilpotent cusp whose invariant E vanishes
  Source,
  Sink,
  CenterOrFineFocus
};

std::string_view to_string(Kind k) noexcept;

struct Evidence {
  double trace = 0.0;
  double determinant = 0.0;
  double discriminant = 0.0;
  double jacobian_norm = 0.0;
  bool trace_degenerate = false;
  bool det_degenerate = false;
  std::optional<double> cusp_coefficient; // E, only for the nilpotent case
};

struct Classification {
  EquilibriumLabel label = EquilibriumLabel::E0;
  Kind kind = Kind::StableNode;
  Evidence evidence;
  std::string note;
};

struct ClassifyOptions {
  double degeneracy = 1e-8; // relative to the Jacobian max-norm (squared for det)
  double cusp_tol = 1e-6;   // |E| above this certifies a codimension-3 cusp
  int jet_order = 5;
};

// Throws InvalidInput when `eq` is not an equilibrium of `p`.
Classification classify_equilibrium(const Params& p, const Equilibrium& eq, double tol = 1e-8);
Classification classify_equilibrium(const Params& p, const Equilibrium& eq,
                                    const ClassifyOptions& opt);

std::vector<Classification> classify_all(const Params& p, const ClassifyOptions& opt = {});

struct SectorOrientation {
  int sign_d_minus_c = 0;
  double nonzero_eigenvalue = 0.0; // c - d
  bool stable_sector = false;      // from the eigenvalue sign
  // Quadratic coefficient of the reduced equation in the reference
  // closed form: -3 / (beta^2 (d - c)^2).
  double reference_reduced_coefficient = 0.0;
  // Center-manifold coefficient a in x' = a x^2, from W.D2F(V,V) / (2 W.V).
  double center_manifold_coefficient = 0.0;
  // The reference rule pairs d - c < 0 with a stable sector.
  bool reference_rule_stable = false;
  bool reference_rule_agrees = false;
};

// Requires |Delta| <= disc_tol; throws InvalidInput on d = c (cusp route).
SectorOrientation sector_orientation(const Params& p, double degeneracy = 1e-8);

} // namespace gmbif
