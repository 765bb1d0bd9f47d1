#pragma once

// Data-parallel inner loops of the design verifiers. Each kernel has a plain
// serial reference (full double loop, kept for testing and benchmarks) and an
// OpenMP version that exploits the symmetry of the pair function and reduces
// per-row partial sums in index order, so its result does not depend on the
// number of threads.

#include <cstddef>
#include <functional>
#include <span>

#include "qdesign/qstate.hpp"

namespace qdesign {

enum class Execution { serial, parallel };

namespace kernels {

/// sum_ij w_i w_j Tr(rho_i rho_j)^t over Hermitian matrices.
double trace_overlap_power_sum_serial(std::span<const Matrix> rhos,
                                      std::span<const double> w, int t);
double trace_overlap_power_sum_parallel(std::span<const Matrix> rhos,
                                        std::span<const double> w, int t);

/// sum_ij w_i w_j |<psi_i|psi_j>|^{2t}.
double state_overlap_power_sum_serial(std::span<const Vector> psis,
                                      std::span<const double> w, int t);
double state_overlap_power_sum_parallel(std::span<const Vector> psis,
                                        std::span<const double> w, int t);

/// sum_ij w_i w_j |Tr(U_i^dag U_j)|^{2t}.
double unitary_trace_power_sum_serial(std::span<const Matrix> us,
                                      std::span<const double> w, int t);
double unitary_trace_power_sum_parallel(std::span<const Matrix> us,
                                        std::span<const double> w, int t);

/// sum_i term(i), evaluated in parallel with an index-ordered reduction.
double ordered_sum(std::size_t n, const std::function<double(std::size_t)>& term,
                   Execution exec);

double trace_overlap_power_sum(std::span<const Matrix> rhos, std::span<const double> w,
                               int t, Execution exec);
double state_overlap_power_sum(std::span<const Vector> psis, std::span<const double> w,
                               int t, Execution exec);
double unitary_trace_power_sum(std::span<const Matrix> us, std::span<const double> w,
                               int t, Execution exec);

}  // namespace kernels
}  // namespace qdesign
