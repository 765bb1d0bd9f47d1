#include "qdesign/kernels.hpp"

#include <cmath>
#include <vector>

#include "qdesign/errors.hpp"

namespace qdesign::kernels {

namespace {

void check_sizes(std::size_t n, std::size_t nw) {
  if (n != nw) throw DimensionError("kernel: member and weight counts differ");
}

inline double trace_product(const Matrix& a, const Matrix& b) {
  return (a.array() * b.array().conjugate()).sum().real();
}

inline double ipow(double x, int t) {
  double r = 1.0;
  for (int k = 0; k < t; ++k) r *= x;
  return r;
}

// Symmetric pair sum: row i holds w_i (f(i,i) w_i + 2 sum_{j>i} w_j f(i,j)).
template <class PairFn>
double symmetric_pair_sum_parallel(std::size_t n, std::span<const double> w, PairFn f) {
  std::vector<double> rows(n, 0.0);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t ii = 0; ii < sn; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double off = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) off += w[j] * f(i, j);
    rows[i] = w[i] * (w[i] * f(i, i) + 2.0 * off);
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total;
}

template <class PairFn>
double full_pair_sum_serial(std::size_t n, std::span<const double> w, PairFn f) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += w[i] * w[j] * f(i, j);
  return total;
}

}  // namespace

double trace_overlap_power_sum_serial(std::span<const Matrix> rhos,
                                      std::span<const double> w, int t) {
  check_sizes(rhos.size(), w.size());
  return full_pair_sum_serial(rhos.size(), w, [&](std::size_t i, std::size_t j) {
    return ipow(trace_product(rhos[i], rhos[j]), t);
  });
}

double trace_overlap_power_sum_parallel(std::span<const Matrix> rhos,
                                        std::span<const double> w, int t) {
  check_sizes(rhos.size(), w.size());
  return symmetric_pair_sum_parallel(rhos.size(), w, [&](std::size_t i, std::size_t j) {
    return ipow(trace_product(rhos[i], rhos[j]), t);
  });
}

double state_overlap_power_sum_serial(std::span<const Vector> psis,
                                      std::span<const double> w, int t) {
  check_sizes(psis.size(), w.size());
  return full_pair_sum_serial(psis.size(), w, [&](std::size_t i, std::size_t j) {
    return ipow(std::norm(psis[i].dot(psis[j])), t);
  });
}

double state_overlap_power_sum_parallel(std::span<const Vector> psis,
                                        std::span<const double> w, int t) {
  check_sizes(psis.size(), w.size());
  return symmetric_pair_sum_parallel(psis.size(), w, [&](std::size_t i, std::size_t j) {
    return ipow(std::norm(psis[i].dot(psis[j])), t);
  });
}

double unitary_trace_power_sum_serial(std::span<const Matrix> us,
                                      std::span<const double> w, int t) {
  check_sizes(us.size(), w.size());
  return full_pair_sum_serial(us.size(), w, [&](std::size_t i, std::size_t j) {
    return ipow(std::norm((us[i].adjoint() * us[j]).trace()), t);
  });
}

double unitary_trace_power_sum_parallel(std::span<const Matrix> us,
                                        std::span<const double> w, int t) {
  check_sizes(us.size(), w.size());
  // Tr(U_i^dag U_j) = sum_kl conj(U_i)_kl (U_j)_kl
  return symmetric_pair_sum_parallel(us.size(), w, [&](std::size_t i, std::size_t j) {
    return ipow(std::norm((us[i].array().conjugate() * us[j].array()).sum()), t);
  });
}

double ordered_sum(std::size_t n, const std::function<double(std::size_t)>& term,
                   Execution exec) {
  if (exec == Execution::serial) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += term(i);
    return total;
  }
  std::vector<double> parts(n, 0.0);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < sn; ++i)
    parts[static_cast<std::size_t>(i)] = term(static_cast<std::size_t>(i));
  double total = 0.0;
  for (double p : parts) total += p;
  return total;
}

double trace_overlap_power_sum(std::span<const Matrix> rhos, std::span<const double> w,
                               int t, Execution exec) {
  return exec == Execution::serial ? trace_overlap_power_sum_serial(rhos, w, t)
                                   : trace_overlap_power_sum_parallel(rhos, w, t);
}

double state_overlap_power_sum(std::span<const Vector> psis, std::span<const double> w,
                               int t, Execution exec) {
  return exec == Execution::serial ? state_overlap_power_sum_serial(psis, w, t)
                                   : state_overlap_power_sum_parallel(psis, w, t);
}

double unitary_trace_power_sum(std::span<const Matrix> us, std::span<const double> w,
                               int t, Execution exec) {
  return exec == Execution::serial ? unitary_trace_power_sum_serial(us, w, t)
                                   : unitary_trace_power_sum_parallel(us, w, t);
}

}  // namespace qdesign::kernels
