#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace optoweak {

template <class T>
struct QuadratureResult {
  T value{};
  std::size_t intervals = 0;
  bool converged = true;
};

// Adaptive Simpson with Richardson correction. The interval is first split
// into `initial_panels` equal panels so that oscillatory integrands whose
// zeros happen to coincide with the coarse nodes are not mistaken for zero.
// Subdivision stops at `max_intervals` accepted intervals.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, double abs_tol = 1e-10, std::size_t max_intervals = 1'000'000,
                      std::size_t initial_panels = 64) {
  using T = decltype(f(a));
  struct Panel {
    double a, b;
    T fa, fm, fb, whole;
    double tol;
  };
  auto simpson = [](double lo, double hi, const T& flo, const T& fmid, const T& fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };

  QuadratureResult<T> result;
  if (a == b) return result;

  std::vector<Panel> stack;
  const double width = (b - a) / static_cast<double>(initial_panels);
  for (std::size_t k = initial_panels; k-- > 0;) {
    const double lo = a + width * static_cast<double>(k);
    const double hi = (k + 1 == initial_panels) ? b : lo + width;
    const double mid = 0.5 * (lo + hi);
    const T flo = f(lo), fmid = f(mid), fhi = f(hi);
    stack.push_back({lo, hi, flo, fmid, fhi, simpson(lo, hi, flo, fmid, fhi),
                     abs_tol / static_cast<double>(initial_panels)});
  }

  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const T flm = f(lm), frm = f(rm);
    const T left = simpson(p.a, m, p.fa, flm, p.fm);
    const T right = simpson(m, p.b, p.fm, frm, p.fb);
    const T delta = left + right - p.whole;
    const bool exhausted = result.intervals + stack.size() + 2 > max_intervals;
    if (std::abs(delta) <= 15.0 * p.tol || exhausted || m == p.a || m == p.b) {
      if (exhausted && std::abs(delta) > 15.0 * p.tol) result.converged = false;
      result.value += left + right + delta / 15.0;
      ++result.intervals;
      continue;
    }
    stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol});
    stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol});
  }
  return result;
}

}  // namespace optoweak
