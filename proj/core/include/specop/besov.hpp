#pragma once

// Besov / Triebel-Lizorkin quasi-norms of sampled fields via dyadic
// frequency blocks, the matching discrete sequence-space quasi-norms on
// wavelet coefficients, and the moment-order admissibility thresholds.

#include <array>
#include <compare>
#include <map>
#include <set>

#include "specop/grid.hpp"

namespace specop {

enum class Family { B, F };

struct SpaceParams {
    Family family = Family::B;
    double s = 0.0;  // smoothness
    double p = 2.0;  // integrability, 0 < p <= inf
    double q = 2.0;  // fine index, 0 < q <= inf
};

// One component of a wavelet gender tuple: father (scaling) or mother.
enum class Gender : unsigned char { F, M };

// n-tuple over {F, M}; bit l set means component l is M.  Level j >= 1
// admits only tuples with at least one M; level 0 admits all 2^n.
struct GenderTuple {
    int n = 1;
    unsigned bits = 0;

    Gender at(int l) const { return (bits >> l) & 1u ? Gender::M : Gender::F; }
    bool any_m() const { return bits != 0; }
    auto operator<=>(const GenderTuple&) const = default;
};

std::vector<GenderTuple> gender_tuples(int n, int j);
bool gender_admissible(const GenderTuple& g, int j);

struct WaveletKey {
    int j = 0;
    GenderTuple G;
    std::array<int, 2> m{0, 0};  // second component unused at n = 1
    auto operator<=>(const WaveletKey&) const = default;
};

// Coefficients lambda^{j,G}_m of a wavelet expansion, levels 0..Jmax.
// Entries whose wavelet support pokes out of the box are still computed
// but listed in `straddling`.
struct CoeffSet {
    int n = 1;
    int u = 0;     // moment order of the generating system
    int Jmax = 0;  // deepest level
    std::map<WaveletKey, cplx> entries;
    std::set<WaveletKey> straddling;
};

// Half-open cube 2^{-j}m + 2^{-j}(0,1)^n.
struct DyadicCube {
    int j = 0;
    std::array<int, 2> m{0, 0};

    double side() const;
    bool contains(double x) const;            // n = 1
    bool contains(double x1, double x2) const;  // n = 2
};

struct AdmissibilityReport {
    double sigma_p = 0.0;    // n(max(1/p, 1) - 1)
    double sigma_pq = 0.0;   // n(max(1/p, 1/q, 1) - 1)
    int u_min_B = 1;         // least u with u > max(s, sigma_p - s)
    int u_min_F = 1;         // least u with u > max(s, sigma_pq - s)
};

// Frequency-block quasi-norm of a space-side field, truncated at the
// partition's top block J (the grid Nyquist cut; the partition carries J
// for reporting).  B: l_q over j of 2^{js} L_p block norms.  F: L_p norm
// of the pointwise l_q aggregate; requires p < inf.  Usual sup
// modifications at p or q = inf.
double besov_norm(const SampledField& f, const SpaceParams& sp,
                  const LPPartition& partition);

enum class SeqKind { b, f };

// Discrete sequence quasi-norm of a coefficient set.  b: the
// 2^{j(s - n/p)} weighted l_q(l_p) sum.  f: cube-indicator aggregate
// evaluated on the given grid's spatial nodes (cubes below the grid
// spacing are rejected); requires p < inf.
double seq_norm(const CoeffSet& c, const SpaceParams& sp, SeqKind kind,
                const Grid& grid);

// sigma_p, sigma_pq, and the least admissible moment orders for the B and
// F scales at these parameters.
AdmissibilityReport smoothness_thresholds(int n, const SpaceParams& sp);

}  // namespace specop
