#pragma once
#include "rdf/errors.hpp"
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

//! Regular (t, x, y, z) lattices and centred finite-difference stencils.
//! Axes of extent 1 are "frozen": the field does not depend on that
//! coordinate and its derivative there is zero (unless a rule is supplied
//! for the time axis, e.g. a stationary phase).
namespace rdf {

using Index4 = std::array<std::size_t, 4>;

struct Grid4 {
  Index4 shape{1, 1, 1, 1};
  std::array<double, 4> origin{0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> spacing{1.0, 1.0, 1.0, 1.0};

  std::size_t size() const {
    return shape[0] * shape[1] * shape[2] * shape[3];
  }
  std::size_t flat(const Index4 &i) const {
    return ((i[0] * shape[1] + i[1]) * shape[2] + i[2]) * shape[3] + i[3];
  }
  Index4 unflat(std::size_t k) const {
    Index4 i{};
    for (int a = 3; a >= 0; --a) {
      i[a] = k % shape[a];
      k /= shape[a];
    }
    return i;
  }
  std::array<double, 4> coords(const Index4 &i) const {
    return {origin[0] + spacing[0] * double(i[0]),
            origin[1] + spacing[1] * double(i[1]),
            origin[2] + spacing[2] * double(i[2]),
            origin[3] + spacing[3] * double(i[3])};
  }
  bool same_as(const Grid4 &o) const {
    for (int a = 0; a < 4; ++a) {
      if (shape[a] != o.shape[a])
        return false;
      if (std::abs(origin[a] - o.origin[a]) > 1e-12 * (1.0 + std::abs(origin[a])))
        return false;
      if (std::abs(spacing[a] - o.spacing[a]) > 1e-12 * std::abs(spacing[a]))
        return false;
    }
    return true;
  }
};

template <class T>
struct Field4 {
  Grid4 grid;
  std::vector<T> data;

  Field4() = default;
  Field4(const Grid4 &g, const T &fill) : grid(g), data(g.size(), fill) {}

  T &operator()(const Index4 &i) { return data[grid.flat(i)]; }
  const T &operator()(const Index4 &i) const { return data[grid.flat(i)]; }
};

//! Sample f(t, x, y, z) on every node of g.
template <class F>
auto sample(const Grid4 &g, F &&f) {
  using T = std::decay_t<decltype(f(std::array<double, 4>{}))>;
  Field4<T> out;
  out.grid = g;
  out.data.reserve(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    out.data.push_back(f(g.coords(g.unflat(k))));
  return out;
}

template <class T, class F>
auto map(const Field4<T> &in, F &&f) {
  using U = std::decay_t<decltype(f(in.data.front()))>;
  Field4<U> out;
  out.grid = in.grid;
  out.data.reserve(in.data.size());
  for (const auto &v : in.data)
    out.data.push_back(f(v));
  return out;
}

template <class T, class U>
void require_same_grid(const Field4<T> &a, const Field4<U> &b,
                       const std::string &what) {
  if (!a.grid.same_as(b.grid))
    throw ShapeMismatchError(what + ": fields are sampled on different grids");
}

//==============================================================================
//! First derivative along one axis and its value.
//! d[a] holds d/dx^a (lower index), x^0 = t.
template <class T>
struct Jet {
  T value;
  std::array<T, 4> d;
};

//! Half-width of the centred first-derivative stencil of the given order.
inline int stencil_half_width(int order) {
  if (order == 2)
    return 1;
  if (order == 4)
    return 2;
  throw InputError("finite-difference order must be 2 or 4, got " +
                   std::to_string(order));
}

template <class T>
T central_difference(const Field4<T> &f, const Index4 &at, int axis,
                     int order) {
  const double h = f.grid.spacing[axis];
  auto shifted = [&](int s) -> const T & {
    Index4 j = at;
    j[axis] = std::size_t(std::ptrdiff_t(at[axis]) + s);
    return f(j);
  };
  if (order == 2)
    return T((shifted(1) - shifted(-1)) * (0.5 / h));
  return T((shifted(-2) - shifted(2)) * (1.0 / (12.0 * h)) +
           (shifted(1) - shifted(-1)) * (2.0 / (3.0 * h)));
}

//! Margins cut off each axis by a stencil of the given order.
inline Index4 stencil_margins(const Grid4 &g, int order) {
  const auto w = std::size_t(stencil_half_width(order));
  Index4 m{0, 0, 0, 0};
  for (int a = 0; a < 4; ++a) {
    if (g.shape[a] == 1)
      continue;
    if (g.shape[a] < 2 * w + 1)
      throw InputError("grid too coarse for a order-" + std::to_string(order) +
                       " stencil along axis " + std::to_string(a));
    m[a] = w;
  }
  return m;
}

inline Grid4 shrink(const Grid4 &g, const Index4 &margin) {
  Grid4 s = g;
  for (int a = 0; a < 4; ++a) {
    s.shape[a] = g.shape[a] - 2 * margin[a];
    s.origin[a] = g.origin[a] + double(margin[a]) * g.spacing[a];
  }
  return s;
}

//! Restrict f to the interior left after removing margin nodes on each side.
template <class T>
Field4<T> crop(const Field4<T> &f, const Index4 &margin) {
  Field4<T> out;
  out.grid = shrink(f.grid, margin);
  out.data.reserve(out.grid.size());
  for (std::size_t k = 0; k < out.grid.size(); ++k) {
    auto i = out.grid.unflat(k);
    for (int a = 0; a < 4; ++a)
      i[a] += margin[a];
    out.data.push_back(f(i));
  }
  return out;
}

//! Jets (value + all four first derivatives) on the interior of f.
//! time_rule, if given, supplies d_t from the value (used only when the
//! time axis is frozen, e.g. d_t Phi = E N Phi for stationary states).
template <class T>
Field4<Jet<T>> differentiate(const Field4<T> &f, int order,
                             const std::function<T(const T &)> &time_rule = {}) {
  const auto margin = stencil_margins(f.grid, order);
  Field4<Jet<T>> out;
  out.grid = shrink(f.grid, margin);
  out.data.reserve(out.grid.size());
  const T zero = T(f.data.front() * 0.0);
  for (std::size_t k = 0; k < out.grid.size(); ++k) {
    auto i = out.grid.unflat(k);
    for (int a = 0; a < 4; ++a)
      i[a] += margin[a];
    Jet<T> jet{f(i), {zero, zero, zero, zero}};
    for (int a = 0; a < 4; ++a) {
      if (f.grid.shape[a] > 1)
        jet.d[a] = central_difference(f, i, a, order);
      else if (a == 0 && time_rule)
        jet.d[0] = time_rule(jet.value);
    }
    out.data.push_back(jet);
  }
  return out;
}

} // namespace rdf
