#pragma once
#include <cstddef>
#include <vector>

//! Logarithmic radial grids and the quadrature/differencing rules used on
//! them. Integrals are taken in x = ln r, where the grid is uniform.
namespace rdf {

class RadialGrid {
public:
  //! count nodes, r_i = r_min (r_max/r_min)^{i/(count-1)}
  RadialGrid(double r_min, double r_max, std::size_t count);

  std::size_t size() const { return m_r.size(); }
  double r(std::size_t i) const { return m_r[i]; }
  const std::vector<double> &r() const { return m_r; }
  double x(std::size_t i) const { return m_x0 + m_dx * double(i); }
  double dx() const { return m_dx; }
  double r_min() const { return m_r.front(); }
  double r_max() const { return m_r.back(); }

  //! Largest i with r_i <= r (clamped to [0, size-2])
  std::size_t index_below(double r) const;

private:
  double m_x0;
  double m_dx;
  std::vector<double> m_r;
};

//! Scalar function sampled on a radial grid. Between nodes ln|f| is linear
//! in ln r (power-law interpolation) when both samples share a sign, and f is
//! linear in ln r otherwise.
struct RadialScalarField {
  RadialGrid grid;
  std::vector<double> f;

  RadialScalarField(RadialGrid g, std::vector<double> values);
  double at(double r) const;
};

namespace Radial {

//! Model for the integrand beyond r_max
enum class Tail { exponential, power_law };

//! int_0^inf f dr: trapezoid in ln r, plus a power-law fit below r_min and
//! a fit of the chosen form beyond r_max (both skipped if the fit is invalid).
double integrate(const RadialGrid &g, const std::vector<double> &f,
                 Tail tail = Tail::exponential);

//! Q_i = int_0^{r_i} f dr (4-point rule per interval, power-law head)
std::vector<double> cumulative_from_zero(const RadialGrid &g,
                                         const std::vector<double> &f);

//! O_i = int_{r_i}^inf f dr (4-point rule per interval, exponential tail)
std::vector<double> cumulative_to_infinity(const RadialGrid &g,
                                           const std::vector<double> &f);

//! df/dr with centred order-4 differences in ln r (one-sided at the ends)
std::vector<double> derivative(const RadialGrid &g, const std::vector<double> &f);

double head_integral(const RadialGrid &g, const std::vector<double> &f);
double tail_integral(const RadialGrid &g, const std::vector<double> &f,
                     Tail tail = Tail::exponential);

} // namespace Radial
} // namespace rdf
