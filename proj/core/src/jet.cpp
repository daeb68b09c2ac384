#include "gmbif/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gmbif {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder)
    throw InvalidInput("jet order must lie in [0, " + std::to_string(kMaxJetOrder) + "]");
}

void same_order(const Jet2& a, const Jet2& b) {
  if (a.order() != b.order())
    throw InvalidInput("jet order mismatch: " + std::to_string(a.order()) + " vs " +
                       std::to_string(b.order()));
}

} // namespace

Jet2::Jet2(int order) : order_(order) {
  check_order(order);
  c_.assign(storage_size(order), 0.0);
}

Jet2 Jet2::constant(int order, double c) {
  Jet2 j(order);
  j.c_[0] = c;
  return j;
}

Jet2 Jet2::x(int order) { return monomial(order, 1, 0); }
Jet2 Jet2::y(int order) { return monomial(order, 0, 1); }

Jet2 Jet2::monomial(int order, int i, int j, double c) {
  Jet2 m(order);
  if (i + j <= order) m.at(i, j) = c;
  return m;
}

double Jet2::coeff(int i, int j) const noexcept {
  if (i < 0 || j < 0 || i + j > order_) return 0.0;
  return c_[index(i, j)];
}

void Jet2::set(int i, int j, double v) { at(i, j) = v; }

double& Jet2::at(int i, int j) {
  if (i < 0 || j < 0 || i + j > order_)
    throw InvalidInput("monomial beyond jet order");
  return c_[index(i, j)];
}

Jet2 Jet2::truncated(int order) const {
  if (order > order_) throw InvalidInput("cannot truncate to a higher order");
  return with_order(order);
}

Jet2 Jet2::with_order(int order) const {
  Jet2 r(order);
  const std::size_t n = std::min(r.c_.size(), c_.size());
  std::copy_n(c_.begin(), n, r.c_.begin());
  return r;
}

Jet2 Jet2::homogeneous_part(int degree) const {
  Jet2 r(order_);
  if (degree < 0 || degree > order_) return r;
  for (int j = 0; j <= degree; ++j) r.at(degree - j, j) = coeff(degree - j, j);
  return r;
}

double Jet2::eval(double x, double y) const noexcept {
  double acc = 0.0;
  for (int i = order_; i >= 0; --i) {
    double row = 0.0;
    for (int j = order_ - i; j >= 0; --j) row = row * y + c_[index(i, j)];
    acc = acc * x + row;
  }
  return acc;
}

double Jet2::max_abs() const noexcept {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  same_order(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  same_order(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet2& Jet2::operator*=(double s) noexcept {
  for (double& v : c_) v *= s;
  return *this;
}

Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
Jet2 operator-(Jet2 a) { return a *= -1.0; }
Jet2 operator*(Jet2 a, double s) { return a *= s; }
Jet2 operator*(double s, Jet2 a) { return a *= s; }
Jet2 operator*(const Jet2& a, const Jet2& b) { return mul(a, b); }

Jet2 add(const Jet2& a, const Jet2& b) { return a + b; }
Jet2 scale(const Jet2& a, double s) { return a * s; }

Jet2 mul(const Jet2& a, const Jet2& b) {
  same_order(a, b);
  const int n = a.order();
  Jet2 r(n);
  for (int da = 0; da <= n; ++da) {
    for (int ja = 0; ja <= da; ++ja) {
      const double ca = a.coeff(da - ja, ja);
      if (ca == 0.0) continue;
      for (int db = 0; db + da <= n; ++db) {
        for (int jb = 0; jb <= db; ++jb) {
          const double cb = b.coeff(db - jb, jb);
          if (cb == 0.0) continue;
          r.at(da - ja + db - jb, ja + jb) += ca * cb;
        }
      }
    }
  }
  return r;
}

Jet2 reciprocal(const Jet2& a) {
  const double a0 = a.constant_term();
  if (a0 == 0.0) throw InvalidInput("reciprocal of a jet with zero constant term");
  const int n = a.order();
  // 1/(a0 (1 + r)) = (1/a0) sum (-r)^k, r nilpotent
  Jet2 r = a * (1.0 / a0);
  r.at(0, 0) = 0.0;
  r *= -1.0;
  Jet2 acc = Jet2::constant(n, 1.0);
  for (int k = 0; k < n; ++k) {
    acc = mul(acc, r);
    acc.at(0, 0) += 1.0;
  }
  return acc * (1.0 / a0);
}

Jet2 power(const Jet2& a, int n) {
  if (n < 0) return power(reciprocal(a), -n);
  Jet2 r = Jet2::constant(a.order(), 1.0);
  Jet2 base = a;
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return r;
}

Jet2 dx(const Jet2& a) {
  const int n = a.order();
  Jet2 r(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) r.at(i - 1, j) = i * a.coeff(i, j);
  return r;
}

Jet2 dy(const Jet2& a) {
  const int n = a.order();
  Jet2 r(n);
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i + j <= n; ++i) r.at(i, j - 1) = j * a.coeff(i, j);
  return r;
}

Jet2 compose(const Jet2& f, const Jet2& gx, const Jet2& gy) {
  same_order(gx, gy);
  const int n = gx.order();
  const int m = f.order();
  Jet2 acc(n);
  for (int i = m; i >= 0; --i) {
    Jet2 row(n);
    for (int j = m - i; j >= 0; --j) {
      row = mul(row, gy);
      row.at(0, 0) += f.coeff(i, j);
    }
    acc = mul(acc, gx) + row;
  }
  return acc;
}

PlanarJetField::PlanarJetField(Jet2 a, Jet2 b) : fx(std::move(a)), fy(std::move(b)) {
  same_order(fx, fy);
}

double PlanarJetField::max_abs() const noexcept { return std::max(fx.max_abs(), fy.max_abs()); }

JetMap JetMap::identity(int order) { return {Jet2::x(order), Jet2::y(order)}; }

JetMap JetMap::linear(int order, double a, double b, double c, double d) {
  JetMap m{Jet2(order), Jet2(order)};
  m.x.at(1, 0) = a;
  m.x.at(0, 1) = b;
  m.y.at(1, 0) = c;
  m.y.at(0, 1) = d;
  return m;
}

bool JetMap::fixes_origin(double tol) const noexcept {
  return std::abs(x.constant_term()) <= tol && std::abs(y.constant_term()) <= tol;
}

JetMap compose(const JetMap& outer, const JetMap& inner) {
  return {compose(outer.x, inner.x, inner.y), compose(outer.y, inner.x, inner.y)};
}

JetMap invert(const JetMap& m) {
  same_order(m.x, m.y);
  if (!m.fixes_origin()) throw InvalidInput("inverse requested for a map that moves the origin");
  const int n = m.order();
  const double a = m.x.coeff(1, 0), b = m.x.coeff(0, 1);
  const double c = m.y.coeff(1, 0), d = m.y.coeff(0, 1);
  const double det = a * d - b * c;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(std::abs(det) > 1e-14 * scale * scale))
    throw InvalidInput("map has a singular linear part");
  const double ia = d / det, ib = -b / det, ic = -c / det, id = a / det;

  JetMap nl{m.x, m.y};
  nl.x.at(1, 0) = 0.0;
  nl.x.at(0, 1) = 0.0;
  nl.y.at(1, 0) = 0.0;
  nl.y.at(0, 1) = 0.0;

  // S = L^{-1}(w - N(S)); each pass fixes one more degree
  const Jet2 wx = Jet2::x(n), wy = Jet2::y(n);
  JetMap s = JetMap::linear(n, ia, ib, ic, id);
  for (int k = 1; k < n; ++k) {
    const Jet2 rx = wx - compose(nl.x, s.x, s.y);
    const Jet2 ry = wy - compose(nl.y, s.x, s.y);
    s = {rx * ia + ry * ib, rx * ic + ry * id};
  }
  return s;
}

PlanarJetField substitute(const PlanarJetField& f, const JetMap& t) {
  same_order(f.fx, t.x);
  same_order(t.x, t.y);
  if (!t.fixes_origin()) throw InvalidInput("transform must fix the origin");
  const Jet2 xx = dx(t.x), xy = dy(t.x), yx = dx(t.y), yy = dy(t.y);
  const Jet2 det = xx * yy - xy * yx;
  if (std::abs(det.constant_term()) <= 1e-14)
    throw InvalidInput("transform has a singular linear part");
  const Jet2 inv_det = reciprocal(det);
  const Jet2 gx = compose(f.fx, t.x, t.y);
  const Jet2 gy = compose(f.fy, t.x, t.y);
  return {(yy * gx - xy * gy) * inv_det, (xx * gy - yx * gx) * inv_det};
}

PlanarJetField push_forward(const PlanarJetField& f, const JetMap& s) {
  return substitute(f, invert(s));
}

PlanarJetField translate(const PlanarJetField& f, double sx, double sy) {
  const int n = f.order();
  Jet2 tx = Jet2::x(n), ty = Jet2::y(n);
  tx.at(0, 0) = sx;
  ty.at(0, 0) = sy;
  return {compose(f.fx, tx, ty), compose(f.fy, tx, ty)};
}

PlanarJetField time_rescale(const PlanarJetField& f, const Jet2& factor) {
  if (factor.constant_term() == 0.0)
    throw InvalidInput("time factor with zero constant term");
  return {f.fx * factor, f.fy * factor};
}

PlanarJetField lienard(const PlanarJetField& f) {
  const int n = f.order();
  const double c00 = f.fx.constant_term();
  Jet2 ynew = f.fx;
  ynew.at(0, 0) = 0.0;
  const PlanarJetField g = push_forward(f, {Jet2::x(n), ynew});
  return translate(g, 0.0, -c00);
}

Jet2 expand_square_over(double u0, double v0, int order) {
  if (!(v0 > 0.0)) throw DomainError("expansion centre needs v > 0");
  Jet2 u = Jet2::x(order), v = Jet2::y(order);
  u.at(0, 0) = u0;
  v.at(0, 0) = v0;
  return mul(mul(u, u), reciprocal(v));
}

PlanarJetField expand_gm_field(const Params& p, const State& center, int order) {
  if (!(center.v > 0.0)) throw DomainError("expansion centre needs v > 0");
  Jet2 u = Jet2::x(order), v = Jet2::y(order);
  u.at(0, 0) = center.u;
  v.at(0, 0) = center.v;
  const Jet2 q = expand_square_over(center.u, center.v, order);
  Jet2 fx = (q * p.beta - u) * p.c;
  Jet2 fy = mul(u, u) - v * p.d;
  fy.at(0, 0) += p.b;
  return {fx, fy};
}

} // namespace gmbif
