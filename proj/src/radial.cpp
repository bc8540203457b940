#include "rdf/radial.hpp"
#include "rdf/errors.hpp"
#include <algorithm>
#include <cmath>
#include <string>

namespace rdf {

RadialGrid::RadialGrid(double r_min, double r_max, std::size_t count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || count < 8)
    throw InputError("RadialGrid: need 0 < r_min < r_max and count >= 8");
  m_x0 = std::log(r_min);
  m_dx = (std::log(r_max) - m_x0) / double(count - 1);
  m_r.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    m_r[i] = std::exp(m_x0 + m_dx * double(i));
  m_r.front() = r_min;
  m_r.back() = r_max;
}

std::size_t RadialGrid::index_below(double r) const {
  if (r <= m_r.front())
    return 0;
  const auto i = std::size_t(std::floor((std::log(r) - m_x0) / m_dx));
  return std::min(i, size() - 2);
}

RadialScalarField::RadialScalarField(RadialGrid g, std::vector<double> values)
    : grid(std::move(g)), f(std::move(values)) {
  if (f.size() != grid.size())
    throw ShapeMismatchError("RadialScalarField: sample count " +
                             std::to_string(f.size()) + " != grid size " +
                             std::to_string(grid.size()));
  for (double v : f)
    if (!std::isfinite(v))
      throw InputError("RadialScalarField: non-finite sample");
}

double RadialScalarField::at(double r) const {
  const auto i = grid.index_below(r);
  const double t = (std::log(r) - grid.x(i)) / grid.dx();
  const double a = f[i], b = f[i + 1];
  if (a != 0.0 && b != 0.0 && (a > 0) == (b > 0))
    return a * std::pow(b / a, t);
  return (1.0 - t) * a + t * b;
}

//==============================================================================
namespace Radial {

namespace {
std::vector<double> times_r(const RadialGrid &g, const std::vector<double> &f) {
  if (f.size() != g.size())
    throw ShapeMismatchError("radial quadrature: sample count does not match grid");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    out[i] = f[i] * g.r(i);
  return out;
}

//! int_{x_i}^{x_{i+1}} of the cubic through four neighbouring nodes
double interval(const std::vector<double> &y, std::size_t i, double h) {
  const std::size_t n = y.size();
  if (i == 0)
    return h / 24.0 * (9 * y[0] + 19 * y[1] - 5 * y[2] + y[3]);
  if (i == n - 2)
    return h / 24.0 * (y[n - 4] - 5 * y[n - 3] + 19 * y[n - 2] + 9 * y[n - 1]);
  return h / 24.0 * (-y[i - 1] + 13 * y[i] + 13 * y[i + 1] - y[i + 2]);
}
} // namespace

double head_integral(const RadialGrid &g, const std::vector<double> &f) {
  const double f0 = f[0], f1 = f[1];
  if (f0 == 0.0 || f1 == 0.0 || (f0 > 0) != (f1 > 0))
    return 0.0;
  const double p = std::log(f1 / f0) / g.dx();
  if (!(p > -1.0))
    return 0.0;
  return f0 * g.r(0) / (p + 1.0);
}

double tail_integral(const RadialGrid &g, const std::vector<double> &f,
                     Tail tail) {
  const std::size_t n = f.size();
  const double fa = f[n - 2], fb = f[n - 1];
  if (fa == 0.0 || fb == 0.0 || (fa > 0) != (fb > 0))
    return 0.0;
  if (tail == Tail::power_law) {
    const double p = std::log(fa / fb) / g.dx(); // f ~ r^-p
    if (!(p > 1.0))
      return 0.0;
    return fb * g.r(n - 1) / (p - 1.0);
  }
  const double mu = std::log(fa / fb) / (g.r(n - 1) - g.r(n - 2));
  if (!(mu > 0.0))
    return 0.0;
  return fb / mu;
}

double integrate(const RadialGrid &g, const std::vector<double> &f, Tail tail) {
  const auto y = times_r(g, f);
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    s += y[i];
  return s * g.dx() + head_integral(g, f) + tail_integral(g, f, tail);
}

std::vector<double> cumulative_from_zero(const RadialGrid &g,
                                         const std::vector<double> &f) {
  const auto y = times_r(g, f);
  std::vector<double> q(y.size());
  q[0] = head_integral(g, f);
  for (std::size_t i = 0; i + 1 < y.size(); ++i)
    q[i + 1] = q[i] + interval(y, i, g.dx());
  return q;
}

std::vector<double> cumulative_to_infinity(const RadialGrid &g,
                                           const std::vector<double> &f) {
  const auto y = times_r(g, f);
  std::vector<double> o(y.size());
  o.back() = tail_integral(g, f);
  for (std::size_t i = y.size() - 1; i > 0; --i)
    o[i - 1] = o[i] + interval(y, i - 1, g.dx());
  return o;
}

std::vector<double> derivative(const RadialGrid &g, const std::vector<double> &f) {
  const std::size_t n = f.size();
  if (n != g.size() || n < 5)
    throw ShapeMismatchError("Radial::derivative: need matching samples, n >= 5");
  const double c = 1.0 / (12.0 * g.dx());
  std::vector<double> d(n);
  d[0] = c * (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]);
  d[1] = c * (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = c * (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]);
  d[n - 2] = -c * (-3 * f[n - 1] - 10 * f[n - 2] + 18 * f[n - 3] - 6 * f[n - 4] +
                   f[n - 5]);
  d[n - 1] = -c * (-25 * f[n - 1] + 48 * f[n - 2] - 36 * f[n - 3] +
                   16 * f[n - 4] - 3 * f[n - 5]);
  for (std::size_t i = 0; i < n; ++i)
    d[i] /= g.r(i);
  return d;
}

} // namespace Radial
} // namespace rdf
