#pragma once

// Uniform symmetric grids on [-R, R)^n, the matched frequency lattice,
// the unitary discrete Fourier transform, and smooth dyadic
// (Littlewood-Paley) frequency partitions.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace specop {

using cplx = std::complex<double>;

enum class Side { space, frequency };
enum class Direction { forward, inverse };

// Spatial nodes x_j = -R + j*h with h = 2R/N; frequency nodes xi_m = m*dxi
// with dxi = pi/R and m in [-N/2, N/2).  h * dxi * N == 2*pi, so the two
// lattices are DFT-matched.  Storage is one complex value per node,
// row-major over axes for n = 2, coordinates increasing with index on
// both sides (stored index i on the frequency side means m = i - N/2).
struct Grid {
    int n = 1;
    int N = 0;
    double R = 0.0;

    double h() const { return 2.0 * R / N; }
    double dxi() const;
    double xi_max() const { return 0.5 * N * dxi(); }
    std::size_t size() const;

    double x(int i) const { return -R + i * h(); }
    double xi(int i) const { return (i - N / 2) * dxi(); }

    // Cell volume of one node on the given side (h^n or dxi^n).
    double cell(Side side) const;

    bool operator==(const Grid&) const = default;
};

// n in {1,2}; N a power of two >= 8; R > 0.  Throws std::invalid_argument.
Grid make_grid(int n, int N, double R);

// R = sqrt(pi*N/2), the unique half-extent with h == dxi: space and
// frequency nodes then coincide as point sets, which is what makes the
// discrete composition and transpose identities of the operator module
// exact rather than merely spectrally accurate.
Grid make_self_dual_grid(int n, int N);

struct SampledField {
    Grid grid;
    Side side = Side::space;
    std::vector<cplx> values;
};

// Field filled from a callable f(x) (n=1) or f(x1,x2) (n=2) at the nodes of
// the requested side.
SampledField sample(const Grid& g, Side side, const std::function<cplx(double)>& f);
SampledField sample2(const Grid& g, Side side,
                     const std::function<cplx(double, double)>& f);

// Unitary DFT between the matched lattices:
//   forward:  (2pi)^{-n/2} sum_j f(x_j) e^{-i x_j.xi_m} h^n
//   inverse:  (2pi)^{-n/2} sum_m f(xi_m) e^{+i x_j.xi_m} dxi^n
// computed by FFT with phase corrections; exact isometry up to rounding.
// Requires f.side == space (forward) / frequency (inverse).
SampledField transform(const SampledField& f, Direction dir);

// Riemann quasi-norm (sum |f|^p cell)^{1/p} with the cell volume of the
// field's own side; max |f| for p = infinity.  Requires p > 0.
double lebesgue_norm(const SampledField& f, double p);

// Index reflection xi -> -xi (or x -> -x): out[i] = in[(N - i) mod N] per
// axis.  The -N/2 node wraps to itself.
SampledField reflect(const SampledField& f);

// Smooth dyadic bump: phi_0 = 1 on |xi| <= 1, 0 on |xi| >= 3/2, built from
// theta(t) = g(t)/(g(t)+g(1-t)), g(t) = exp(-1/t) for t > 0 else 0.
// lp_phi(j, xi) = phi_0(2^-j xi) - phi_0(2^-j+1 xi) for j >= 1.  Exact
// closed forms, valid for any j >= 0 independent of any grid.
double lp_phi0(double r);
double lp_phi(int j, double abs_xi);

struct LPPartition {
    Grid grid;
    int J = 0;                              // blocks 0..J
    std::vector<std::vector<double>> blocks; // phi_j sampled on frequency nodes
};

// J = largest j with 3*2^{j-1} <= xi_max; throws if J < 1.
LPPartition lp_partition(const Grid& g);

// (phi_j f_hat)^inverse as a space-side field; f must be space-side.
SampledField lp_block(const SampledField& f, const LPPartition& part, int j);

}  // namespace specop
