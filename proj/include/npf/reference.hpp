#pragma once

// Brute-force counterparts of the fast paths, kept deliberately naive. Used by
// the test suites and the prox-selftest command; nothing in the solver calls
// them.

#include "npf/grid.hpp"
#include "npf/kernel.hpp"
#include "npf/potential.hpp"

namespace npf::reference {

/// Double sum over the collocation coordinates, O(N^2).
SpectralField direct_dft(const Field& u);
/// Inverse double sum; returns the complex values before discarding imaginary parts.
std::vector<std::complex<double>> direct_idft(const SpectralField& s);

/// Plain bisection for u + eta psi'(u) = z with a fixed iteration count.
/// Logarithmic roots are bracketed in [-kLogGuard, kLogGuard].
double bisect_prox(double z, double eta, const PotentialSpec& spec, int iterations = 128);

/// 1/4 sum_i sum_j (U_i - U_j)^2 gamma(x_i - x_j) h^2d + h^d sum_i F(U_i).
double double_sum_energy(const Field& u, const DiscreteKernel& kernel, const PotentialSpec& spec);

}  // namespace npf::reference
