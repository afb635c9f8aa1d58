#pragma once

#include "lab/eigenbasis.hpp"

#include <array>
#include <string>

namespace lab {

enum class KernelMethod { SpectralSeries, ClosedForm };
std::string kernel_method_name(KernelMethod m);

struct KernelValue {
  cplx value = 0.0;
  KernelMethod method = KernelMethod::SpectralSeries;
  int terms = 0;            // l range actually summed
  double tail_bound = 0.0;  // geometric tail estimate; 0 for closed forms
};

// Abel ladder used on Re z = 0
struct AbelLadder {
  std::array<double, 3> eps{1e-2, 5e-3, 2.5e-3};
  double cutoff = 37.0;  // terms kept while e^{-2 l eps} > e^{-cutoff}
};

SpectralField apply_semigroup(const SpectralField& field, cplx z);
SpectralField propagate(const SpectralField& field, double t);

// c_{k,a}^{-1} sum_idx e^{-z eig} Phi(x) Phi(y). Re z = 0 needs abel = true.
KernelValue kernel_spectral(const GeometryConfig& cfg, const WeightedPoint& x,
                            const WeightedPoint& y, cplx z, int L_max, bool abel = false,
                            const AbelLadder& ladder = {});
// Damped series at a single epsilon (no extrapolation); z is taken on Re z = 0.
cplx kernel_spectral_damped(const GeometryConfig& cfg, const WeightedPoint& x,
                            const WeightedPoint& y, double mu, double eps, int L);

// h_a(r, s; z; zeta)
cplx h_kernel(const GeometryConfig& cfg, double r, double s, cplx z, double zeta);
KernelValue kernel_closed_form(const GeometryConfig& cfg, const WeightedPoint& x,
                               const WeightedPoint& y, cplx z, int zeta_order = 96);

// log sinh z continued from the positive real axis through Re z >= 0
cplx log_sinh(cplx z);
double kernel_bound(const GeometryConfig& cfg, double mu);  // |sin mu|^{-beta/a}

// Lambda(x,y;z+i pi) = kernel_shift_phase * Lambda(sigma x, y; z)
cplx kernel_shift_phase(const GeometryConfig& cfg);
WeightedPoint sigma_reflect(const GeometryConfig& cfg, const WeightedPoint& x);

// sqrt(sum_{l <= L} e^{-2 Re z eig})
double hilbert_schmidt_norm(const GeometryConfig& cfg, cplx z, int L_max);
double operator_norm_bound(const GeometryConfig& cfg, cplx z);  // e^{-beta Re z / a}

}  // namespace lab
