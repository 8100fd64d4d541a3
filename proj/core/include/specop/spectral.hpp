#pragma once

// Dense complex eigenvalues and singular values, the multiplicative Weyl
// cross-check, log-log decay fitting, and closed-form predicted decay
// rates for the operator families this project studies.

#include <string>
#include <vector>

#include "specop/grid.hpp"

namespace specop {

// Row-major dense complex matrix; the common coin between operator
// assembly and the solvers below.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> a;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c) {}

    cplx& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const cplx& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }
};

// All eigenvalues of a square matrix: balancing, Householder Hessenberg
// reduction, then single-shift QR with Wilkinson shifts, an exceptional
// shift every 30 stalled sweeps, and subdiagonal deflation at
// 1e-14 * (|d_i| + |d_{i+1}|).  Sorted by nonincreasing modulus, ties by
// ascending phase.  Throws std::runtime_error naming the stuck block if a
// block refuses to converge.
std::vector<cplx> eigenvalues(const DenseMatrix& m);

// Nonincreasing singular values via one-sided Jacobi orthogonalization.
// Accurate relative to each value even under heavy column scaling, which
// the Weyl check below needs.
std::vector<double> singular_values(const DenseMatrix& m);

struct WeylReport {
    std::vector<bool> ok;    // prefix product check at each k
    bool all_ok = true;
    double worst_margin = 0.0;  // min over k of log prod s - log prod |lambda|
};

// Prefix products prod_{j<=k}|lambda_j| <= (1+tol) * prod_{j<=k} s_j,
// evaluated in log space.  Inputs must be the sorted outputs above.
WeylReport weyl_check(const std::vector<double>& eigen_moduli,
                      const std::vector<double>& singular_values,
                      double tol = 1e-8);

enum class FitModel { pure_power, log_corrected };

struct DecayFit {
    FitModel model = FitModel::pure_power;
    double beta = 0.0;       // decay exponent
    double gamma = 0.0;      // log-power, log_corrected only
    double intercept = 0.0;  // log of the constant
    double residual = 0.0;   // rms misfit in log space
    int k_lo = 0, k_hi = 0;
};

// Least squares on log v_k over the inclusive window k in [k_lo, k_hi]
// (values[0] is k = 1):
//   pure_power:     log v_k = intercept - beta * log k
//   log_corrected:  log v_k = intercept - beta * log(k/log k) + gamma * log log k
// Throws std::invalid_argument for bad windows or nonpositive values
// (log_corrected additionally needs k_lo >= 2).
DecayFit fit_decay(const std::vector<double>& values, int k_lo, int k_hi,
                   FitModel model);

// Decay-rate statements the experiments test against, keyed by the result
// they instantiate.  prop43* bound entropy numbers of the transform
// between two smoothness levels; thm45* bound eigenvalue moduli of
// order -sigma Fourier operators; thm48* bound eigenvalue moduli of the
// Fourier heat operator with an explicit t prefactor.
enum class RateSource { prop43i, prop43ii, thm45i, thm45ii, thm48i, thm48ii };
enum class RateRegime { polynomial, log_critical };

struct RateParams {
    double s = 0.0;      // thm45*, thm48*
    double sigma = 0.0;  // thm45*
    double s1 = 0.0;     // prop43*
    double s2 = 0.0;     // prop43*
    double t = 0.0;      // thm48*
};

// The bound, reduced to shape: value_k <= C * t^{t_exponent} * shape(k),
//   polynomial:    shape(k) = k^{-beta}
//   log_critical:  shape(k) = (k/log k)^{-beta} * (log k)^{log_power}
struct RateBound {
    RateSource source = RateSource::thm45i;
    int n = 1;
    double p = 2.0;
    RateParams params;
    double d = 0.0;  // pivot exponent 2n(1/p - 1/2)
    RateRegime regime = RateRegime::polynomial;
    double beta = 0.0;
    double log_power = 0.0;
    double t_exponent = 0.0;
};

// Pivot exponent d^n_p = 2n(1/p - 1/2).
double pivot_exponent(int n, double p);

// Evaluates the chosen statement's hypotheses and fills the bound.
// Throws std::invalid_argument naming the violated inequality.
RateBound predicted_rate(RateSource source, int n, double p, const RateParams& params);

// shape(k) above with unit constant (and unit t); k >= 2 for log_critical.
double rate_shape(const RateBound& rb, int k);

std::string rate_source_name(RateSource s);
RateSource rate_source_from(const std::string& name);

}  // namespace specop
