#pragma once

// Discrete operators on sampled fields: pseudodifferential application,
// the bracket-lift multiplier, the Gauss-Weierstrass semigroup, Fourier
// operators with Nystrom matrices and their duals, wavelet-domain
// operator matrices with a decay diagnostic, and deterministic
// probe-based operator-norm estimates.

#include <string>
#include <vector>

#include "specop/besov.hpp"
#include "specop/grid.hpp"
#include "specop/spectral.hpp"
#include "specop/symbol.hpp"
#include "specop/wavelet.hpp"

namespace specop {

// unitary: the transforms carry (2pi)^{-n/2}, so the constant symbol
// gives the identity.  literal: prefactor-free kernel sums, matching the
// closed-form integrals the cross-check oracles evaluate.
enum class Normalization { unitary, literal };

struct HeatParams {
    double t = 1.0;
    double alpha = 1.0;  // exponent in e^{-t |xi|^{2 alpha}}; 1 is classical
};

// Dense Nystrom discretization of a Fourier operator: entry (j, m) is
// weight * e^{-i x_j . xi_m} tau(x_j, xi_m), quadrature over the
// frequency lattice.
struct OperatorMatrix {
    DenseMatrix entries;
    Grid grid;
    double weight = 0.0;  // per-column factor c * dxi^n
    Normalization normalization = Normalization::unitary;
    std::string symbol_name;
};

// (T_tau f)(x_j) = c sum_m e^{+i x_j.xi_m} tau(x_j, xi_m) fhat(xi_m) dxi^n
// with c = (2pi)^{-n/2} in unitary mode and 1 in literal mode.  Fast
// multiplier path for x-independent symbols, dense double sum otherwise.
// Requires a space-side field.
SampledField apply_pseudo(const Symbol& sym, const SampledField& f,
                          Normalization norm = Normalization::unitary);

// (<xi>^{-rho} fhat)^inverse; rho = 0 is the identity up to transform
// round-trip.  Requires a space-side field.
SampledField apply_lift(const SampledField& f, double rho);

// (e^{-t |xi|^{2 alpha}} fhat)^inverse.  Requires a space-side field and
// t > 0, alpha > 0.
SampledField heat_semigroup(const SampledField& f, const HeatParams& hp);

// (F_tau f)(x_j) = c sum_m e^{-i x_j.xi_m} tau(x_j, xi_m) f_m dxi^n: the
// input samples are read at the frequency nodes and integrated against
// the conjugate kernel.  Equals the matrix-vector product with
// assemble_fourier_matrix.
SampledField apply_fourier_op(const Symbol& sym, const SampledField& f,
                              Normalization norm = Normalization::unitary);

// The dense matrix of apply_fourier_op.  Guarded at N^n <= 4096 so the
// N^{2n} entries stay addressable.
OperatorMatrix assemble_fourier_matrix(const Symbol& sym, const Grid& grid,
                                       Normalization norm = Normalization::unitary);

// Dual Fourier operator for x-independent symbols: a frequency-side
// field tau(xi) fhat(xi).  On a self-dual grid its matrix is the plain
// transpose of the assemble_fourier_matrix output.
SampledField dual_fourier_apply(const Symbol& sym, const SampledField& f);

// tau(x, xi) -> tau(x, -xi): the reflection that folds the sign
// convention gap between the e^{+i x xi} pseudodifferential kernel and
// the e^{-i x xi} Fourier-operator kernel into the symbol.
Symbol reflect_frequency(const Symbol& sym);

// Wavelet-domain operator matrix over the interior basis functions of
// levels 0..Jmax: A[r, c] = 2^{j_r n} (T_tau psi_c, psi_r) by grid
// quadrature, bare (L-infinity normalized) wavelets on both sides.
struct WaveletOperatorMatrix {
    std::vector<WaveletKey> index;  // shared row and column labels
    DenseMatrix a;
    Grid grid;
    int Jmax = 0;
    std::string symbol_name;
};

// Jmax <= 4 (the index set grows like 2^{jn}) and 2^Jmax h <= 1 so the
// deepest wavelets are resolved by the quadrature lattice.
WaveletOperatorMatrix wavelet_operator_matrix(const Symbol& sym,
                                              const WaveletSystem& sys, int Jmax,
                                              const Grid& grid);

// Largest |A| and population per (level gap, binned lattice distance
// |2^{-j}m - 2^{-j'}m'|); bin width is the finest lattice step 2^{-Jmax}.
struct DecayBin {
    int level_gap = 0;
    int bin = 0;
    double distance = 0.0;  // left edge of the bin
    double max_abs = 0.0;
    int count = 0;
};

std::vector<DecayBin> operator_decay_bins(const WaveletOperatorMatrix& wm);

// Lower-bound estimate of the operator norm on one grid: the best ratio
// norm(T f) / norm(f) seen over the probe family and the power-iteration
// refinements started from its maximizer.
struct NormEstimate {
    Grid grid;
    double estimate = 0.0;
    std::string best_probe;
};

// The probe family (version below) is deterministic per grid: centered
// and offset Gaussians, modulated Gaussians at fixed lattice
// frequencies, and interior wavelets; `probes` caps how many are tried.
// Norms are besov_norm at sp over the grid's own dyadic partition.
inline constexpr int norm_probe_family_version = 1;

std::vector<NormEstimate> operator_norm_probe(const Symbol& sym, const SpaceParams& sp,
                                              const std::vector<Grid>& ladder,
                                              int probes);

}  // namespace specop
