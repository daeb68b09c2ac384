#pragma once

#include <cstddef>
#include <vector>

#include "gmbif/model.hpp"

namespace gmbif {

inline constexpr int kDefaultJetOrder = 5;
inline constexpr int kMaxJetOrder = 12;

// Truncated series sum c_ij x^i y^j, i + j <= order.
// Degree n block starts at n(n+1)/2, entry j of the block is x^(n-j) y^j.
class Jet2 {
public:
  Jet2() : Jet2(kDefaultJetOrder) {}
  explicit Jet2(int order);

  static Jet2 constant(int order, double c);
  static Jet2 x(int order);
  static Jet2 y(int order);
  static Jet2 monomial(int order, int i, int j, double c = 1.0);

  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return c_.size(); }

  static std::size_t index(int i, int j) noexcept {
    const int n = i + j;
    return static_cast<std::size_t>(n * (n + 1) / 2 + j);
  }
  static std::size_t storage_size(int order) noexcept {
    return static_cast<std::size_t>((order + 1) * (order + 2) / 2);
  }

  // Out-of-range (i, j) reads as zero; writes are rejected.
  double coeff(int i, int j) const noexcept;
  void set(int i, int j, double v);
  double& at(int i, int j);

  const std::vector<double>& data() const noexcept { return c_; }
  double constant_term() const noexcept { return c_[0]; }

  Jet2 truncated(int order) const;
  Jet2 with_order(int order) const; // pads or truncates
  Jet2 homogeneous_part(int degree) const;

  double eval(double x, double y) const noexcept;
  double max_abs() const noexcept;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(double s) noexcept;

private:
  int order_;
  std::vector<double> c_;
};

Jet2 operator+(Jet2 a, const Jet2& b);
Jet2 operator-(Jet2 a, const Jet2& b);
Jet2 operator-(Jet2 a);
Jet2 operator*(Jet2 a, double s);
Jet2 operator*(double s, Jet2 a);
Jet2 operator*(const Jet2& a, const Jet2& b);

Jet2 add(const Jet2& a, const Jet2& b);
Jet2 scale(const Jet2& a, double s);
Jet2 mul(const Jet2& a, const Jet2& b);
Jet2 reciprocal(const Jet2& a);
Jet2 power(const Jet2& a, int n);
Jet2 dx(const Jet2& a);
Jet2 dy(const Jet2& a);

// f(gx, gy) by nested Horner evaluation; gx, gy may have constant terms.
Jet2 compose(const Jet2& f, const Jet2& gx, const Jet2& gy);

struct PlanarJetField {
  Jet2 fx;
  Jet2 fy;

  PlanarJetField() = default;
  PlanarJetField(Jet2 a, Jet2 b);

  int order() const noexcept { return fx.order(); }
  const Jet2& operator[](int k) const noexcept { return k == 0 ? fx : fy; }
  double max_abs() const noexcept;
};

// Old coordinates as series in the new ones: (x, y) = (X(x', y'), Y(x', y')).
struct JetMap {
  Jet2 x;
  Jet2 y;

  static JetMap identity(int order);
  static JetMap linear(int order, double a, double b, double c, double d);

  int order() const noexcept { return x.order(); }
  bool fixes_origin(double tol = 0.0) const noexcept;
};

// outer(inner(z)).
JetMap compose(const JetMap& outer, const JetMap& inner);

// Series reversion of an origin-fixing map with invertible linear part.
JetMap invert(const JetMap& m);

// New field DT^{-1} F(T) for old = T(new).
PlanarJetField substitute(const PlanarJetField& f, const JetMap& t);

// Same change given as new = S(old).
PlanarJetField push_forward(const PlanarJetField& f, const JetMap& s);

// Constant shift old = new + (sx, sy); keeps constant terms.
PlanarJetField translate(const PlanarJetField& f, double sx, double sy);

// Multiplies both components by factor, i.e. new time with dt_new = dt_old / factor.
PlanarJetField time_rescale(const PlanarJetField& f, const Jet2& factor);

// (x, y) -> (x, x') with x' the full first component; yields x' = y exactly.
PlanarJetField lienard(const PlanarJetField& f);

// Taylor series of the model about `center` (constant terms kept).
PlanarJetField expand_gm_field(const Params& p, const State& center, int order);

// u^2 / v about (u0, v0), used in the expansion and exposed for tests.
Jet2 expand_square_over(double u0, double v0, int order);

} // namespace gmbif
