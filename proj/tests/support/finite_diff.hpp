#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "mbuw/distribution.hpp"

// Fourth-order central stencils for the first, second and third derivative.
// Mixed partials are built by applying the 1-D stencils along each axis in
// turn, so nothing here relies on the analytic derivative code.
namespace fd {

using Fn2 = std::function<double(double, double)>;

inline double d1(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double d2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

inline double d3(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 3 * h) + 8 * f(x + 2 * h) - 13 * f(x + h) + 13 * f(x - h) - 8 * f(x - 2 * h) + f(x - 3 * h)) /
         (8 * h * h * h);
}

// All nine partials of ln f(y; alpha, beta) in the order
// a, b, aa, ab, bb, aaa, aab, abb, bbb.
inline std::array<double, 9> log_pdf_partials(double y, double a, double b) {
  const Fn2 lf = [y](double aa, double bb) { return mbuw::log_pdf(y, mbuw::Params(aa, bb)); };
  const double ha1 = 1e-3 * a;
  const double hb1 = 1e-3 * b;
  // Third orders need wider steps to keep rounding below truncation error;
  // beta steps go wider still because beta enters only through beta * ln alpha,
  // which is small whenever alpha is near one.
  const double ha = 4 * ha1, hb = 8 * hb1;
  auto along_a = [&](double bb) { return [&, bb](double aa) { return lf(aa, bb); }; };
  auto along_b = [&](double aa) { return [&, aa](double bb) { return lf(aa, bb); }; };
  std::array<double, 9> out{};
  out[0] = d1(along_a(b), a, ha1);
  out[1] = d1(along_b(a), b, hb1);
  out[2] = d2(along_a(b), a, ha1);
  out[3] = d1([&](double bb) { return d1(along_a(bb), a, ha1); }, b, hb1);
  out[4] = d2(along_b(a), b, hb1);
  out[5] = d3(along_a(b), a, ha);
  out[6] = d1([&](double bb) { return d2(along_a(bb), a, ha); }, b, hb);
  out[7] = d1([&](double aa) { return d2(along_b(aa), b, hb); }, a, ha);
  out[8] = d3(along_b(a), b, hb);
  return out;
}

}  // namespace fd
