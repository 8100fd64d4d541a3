#pragma once

// Compactly supported Daubechies wavelets: hard-coded minimal-phase
// filters, cascade refinement to a dyadic sample lattice, tensor-product
// basis functions on grids, and analysis / synthesis of sampled fields.

#include "specop/besov.hpp"
#include "specop/grid.hpp"

namespace specop {

// Father (psi_F) and mother (psi_M) samples on the dyadic lattice
// {k 2^{-depth}} over the common support [0, 2u-1].
struct WaveletSystem {
    int u = 0;      // vanishing-moment count, 1..10
    int depth = 0;  // sample spacing 2^{-depth}
    std::vector<double> h;          // 2u low-pass taps
    std::vector<double> samples_F;  // (2u-1) 2^depth + 1 values
    std::vector<double> samples_M;

    double spacing() const;
    double support_len() const { return 2.0 * u - 1.0; }
};

// Filter taps from the fixed minimal-phase table, father by cascade
// iteration (exact integer values from the refinement eigenproblem, then
// dyadic subdivision), mother from the quadrature-mirror relation.
// Requires 1 <= u <= 10 and depth >= 6.
WaveletSystem daubechies_system(int u, int depth = 8);

// psi_F or psi_M at an arbitrary point by linear interpolation of the
// lattice samples; zero outside [0, 2u-1].
double wavelet_value(const WaveletSystem& sys, Gender g, double t);

// Tensor product prod_l psi_{G_l}(2^j x_l - m_l) sampled on the grid;
// with normalized = true the L2-normalizing factor 2^{jn/2} is applied.
// Requires G admissible for j and the support to meet the grid box.
SampledField wavelet_function(const WaveletSystem& sys, int j, const GenderTuple& G,
                              const std::array<int, 2>& m, const Grid& grid,
                              bool normalized = false);

// lambda^{j,G}_m = 2^{jn} (f, psi^j_{G,m}) by grid quadrature for every
// basis function meeting the box, j <= Jmax (must be resolvable by the
// grid spacing).  Straddling supports are computed and flagged.
CoeffSet analyze(const SampledField& f, const WaveletSystem& sys, int Jmax);

// sum of lambda^{j,G}_m psi^j_{G,m} on the grid nodes.
SampledField synthesize(const CoeffSet& c, const WaveletSystem& sys, const Grid& grid);

}  // namespace specop
