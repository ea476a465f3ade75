#ifndef RANKONE_COMMON_HPP
#define RANKONE_COMMON_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace rankone {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Run f(i) for i in [0, count). Spreads work over a few threads; each index
/// writes only to its own slot, so results are deterministic.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || count < 4) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  unsigned nthreads = std::min<std::size_t>(hw, count);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([=, &f]() {
      for (std::size_t i = t; i < count; i += nthreads) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

/// True if z is within tol of a non-positive integer (a Gamma pole).
inline bool is_gamma_pole(cplx z, double tol = 1e-9) {
  if (std::abs(z.imag()) > tol) return false;
  double r = z.real();
  return r < 0.5 && std::abs(r - std::round(r)) <= tol;
}

/// True if x is within tol of an integer.
inline bool near_integer(cplx x, double tol = 1e-9) {
  return std::abs(x.imag()) <= tol && std::abs(x.real() - std::round(x.real())) <= tol;
}

}  // namespace rankone

#endif
