#include "specop/wavelet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace specop {

namespace {

// Minimal-phase low-pass taps, 2u per row, u = 1..10.  Computed once by
// spectral factorization of the half-band polynomial and frozen here so
// the library carries no polynomial root finder.
const std::vector<std::vector<double>>& filter_table() {
    static const std::vector<std::vector<double>> taps = {
        {7.07106781186547462e-01, 7.07106781186547462e-01},
        {-1.29409522551260397e-01, 2.24143868042013444e-01, 8.36516303737807942e-01, 4.82962913144534156e-01},
        {3.52262918857095403e-02, -8.54412738820266859e-02, -1.35011020010254612e-01, 4.59877502118491377e-01, 8.06891509311092658e-01, 3.32670552950082743e-01},
        {-1.05974017850689068e-02, 3.28830116668848704e-02, 3.08413818355610415e-02, -1.87034811719093252e-01, -2.79837694168594657e-02, 6.30880767929859476e-01, 7.14846570552915339e-01, 2.30377813308896173e-01},
        {3.33572528547377081e-03, -1.25807519990819554e-02, -6.24149021279831514e-03, 7.75714938400455939e-02, -3.22448695846380140e-02, -2.42294887066381887e-01, 1.38428145901319799e-01, 7.24308528437772603e-01, 6.03829269797190316e-01, 1.60102397974193233e-01},
        {-1.07730108531074774e-03, 4.77725751095547848e-03, 5.53842201148905177e-04, -3.15820393174898184e-02, 2.75228655303228799e-02, 9.75016055873197257e-02, -1.29766867567270683e-01, -2.26264693965437080e-01, 3.15250351709191912e-01, 7.51133908021091812e-01, 4.94623890398459554e-01, 1.11540743350113089e-01},
        {3.53713799979880970e-04, -1.80164070407454213e-03, 4.29577972961333243e-04, 1.25509985561137998e-02, -1.65745416307468592e-02, -3.80299369349917302e-02, 8.06126091511581988e-02, 7.13092192667917901e-02, -2.24036184993894188e-01, -1.43906003928566423e-01, 4.69782287405134946e-01, 7.29132090846231429e-01, 3.96539319481967412e-01, 7.78520540850300563e-02},
        {-1.17476784147149107e-04, 6.75449406578398285e-04, -3.91740373603578101e-04, -4.87035299348145302e-03, 8.74609404791072513e-03, 1.39810279171255197e-02, -4.40882539313570618e-02, -1.73693010013014834e-02, 1.28747426620760941e-01, 4.72484573653633288e-04, -2.84015542961484124e-01, -1.58291052567244746e-02, 5.85354683653613983e-01, 6.75630736297502810e-01, 3.12871590914790387e-01, 5.44158422432580724e-02},
        {3.93473203332344673e-05, -2.51963189050563032e-04, 2.30385763739117329e-04, 1.84764688308114368e-03, -4.28150368307600362e-03, -4.72320475733835950e-03, 2.23616621245866162e-02, 2.50947113733603056e-04, -6.76328290620177297e-02, 3.07256814806207354e-02, 1.48540749338286843e-01, -9.68407832234601529e-02, -2.93273783279091760e-01, 1.33197385824027958e-01, 6.57288078050316416e-01, 6.04823123690747089e-01, 2.43834674613519625e-01, 3.80779473641372768e-02},
        {-1.32642029121026887e-05, 9.35886704434689973e-05, -1.16466855409349276e-04, -6.85856694956936712e-04, 1.99240529609610211e-03, 1.39535174622338275e-03, -1.07331754848512088e-02, 3.60655356952578393e-03, 3.32126740604968065e-02, -2.94575368258960663e-02, -7.13941471662306176e-02, 9.30573646071341659e-02, 1.27369340334861414e-01, -1.95946274378575980e-01, -2.49846424326988836e-01, 2.81172343658432689e-01, 6.88459039452015586e-01, 5.27201188933286935e-01, 1.88176800079415923e-01, 2.66700579009839789e-02},
    };
    return taps;
}

// Father values at the integers 0..2u-1.  The refinement relation
// phi(i) = sqrt(2) sum_k h_k phi(2i - k) closes on the interior integers,
// where phi is the unit-eigenvalue eigenvector of A(i,j) = sqrt(2) h_{2i-j};
// the next eigenvalue is 1/2, so plain power iteration converges at
// machine precision in well under a hundred sweeps.  Normalization is the
// partition of unity sum_i phi(i) = 1.
std::vector<double> integer_values(const std::vector<double>& h) {
    const int taps = static_cast<int>(h.size());
    if (taps == 2) return {1.0, 0.0};

    const int dim = taps - 2;  // interior integers 1..2u-2
    const double s2 = std::sqrt(2.0);
    std::vector<double> a(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 1; i <= dim; ++i)
        for (int j = 1; j <= dim; ++j) {
            const int k = 2 * i - j;
            if (k >= 0 && k < taps) a[(i - 1) * dim + (j - 1)] = s2 * h[k];
        }

    std::vector<double> v(dim, 1.0 / dim), w(dim);
    for (int iter = 0; iter < 120; ++iter) {
        double sum = 0.0;
        for (int i = 0; i < dim; ++i) {
            double acc = 0.0;
            for (int j = 0; j < dim; ++j) acc += a[i * dim + j] * v[j];
            w[i] = acc;
            sum += acc;
        }
        for (int i = 0; i < dim; ++i) v[i] = w[i] / sum;
    }

    std::vector<double> phi(taps, 0.0);
    for (int i = 0; i < dim; ++i) phi[i + 1] = v[i];
    return phi;
}

// One dyadic subdivision: values at spacing 2^-lev from values at
// 2^-(lev-1) via phi(t) = sqrt(2) sum_k h_k phi(2t - k).  At node
// t = m 2^-lev the argument 2t - k sits on the coarse lattice at index
// m - k 2^(lev-1), exactly.
std::vector<double> refine(const std::vector<double>& h, const std::vector<double>& old,
                           int lev) {
    const int taps = static_cast<int>(h.size());
    const int n_old = static_cast<int>(old.size());
    const int n_new = (n_old - 1) * 2 + 1;
    const int stride = 1 << (lev - 1);
    const double s2 = std::sqrt(2.0);

    std::vector<double> out(n_new, 0.0);
    for (int m = 0; m < n_new; ++m) {
        double acc = 0.0;
        for (int k = 0; k < taps; ++k) {
            const int q = m - k * stride;
            if (q >= 0 && q < n_old) acc += h[k] * old[q];
        }
        out[m] = s2 * acc;
    }
    return out;
}

// Mother from the father through the mirror filter g_k = (-1)^k h_{2u-1-k}:
// psi(t) = sqrt(2) sum_k g_k phi(2t - k) on the same lattice.
std::vector<double> mother_samples(const std::vector<double>& h,
                                   const std::vector<double>& phi, int depth) {
    const int taps = static_cast<int>(h.size());
    const int n = static_cast<int>(phi.size());
    std::vector<double> g(taps);
    for (int k = 0; k < taps; ++k)
        g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[taps - 1 - k];

    const double s2 = std::sqrt(2.0);
    std::vector<double> psi(n, 0.0);
    for (int m = 0; m < n; ++m) {
        double acc = 0.0;
        for (int k = 0; k < taps; ++k) {
            const long long q = 2LL * m - (static_cast<long long>(k) << depth);
            if (q >= 0 && q < n) acc += g[k] * phi[static_cast<std::size_t>(q)];
        }
        psi[m] = s2 * acc;
    }
    return psi;
}

// Grid-index window of one axis factor psi_G(2^j x - m) together with its
// node values; empty when the support misses every node.
struct AxisWindow {
    int lo = 0;
    std::vector<double> v;
};

AxisWindow axis_window(const WaveletSystem& sys, Gender g, int j, int m,
                       const Grid& grid) {
    const double scale = std::ldexp(1.0, j);
    const double x_lo = m / scale;
    const double x_hi = (m + sys.support_len()) / scale;
    const double h = grid.h();

    int i_lo = static_cast<int>(std::ceil((x_lo + grid.R) / h));
    int i_hi = static_cast<int>(std::floor((x_hi + grid.R) / h));
    if (i_lo < 0) i_lo = 0;
    if (i_hi > grid.N - 1) i_hi = grid.N - 1;

    AxisWindow w;
    w.lo = i_lo;
    if (i_hi < i_lo) return w;
    w.v.resize(i_hi - i_lo + 1);
    for (int i = i_lo; i <= i_hi; ++i)
        w.v[i - i_lo] = wavelet_value(sys, g, scale * grid.x(i) - m);
    return w;
}

// Index range of translates whose support meets the open box (-R, R):
// m < R 2^j and m > -R 2^j - (2u - 1).
void translate_range(const WaveletSystem& sys, int j, double R, int* m_lo, int* m_hi) {
    const double scale = std::ldexp(1.0, j);
    const double S = sys.support_len();
    *m_lo = static_cast<int>(std::floor(-R * scale - S)) + 1;
    *m_hi = static_cast<int>(std::ceil(R * scale)) - 1;
}

bool axis_interior(const WaveletSystem& sys, int j, int m, double R) {
    const double scale = std::ldexp(1.0, j);
    return m / scale >= -R && (m + sys.support_len()) / scale <= R;
}

}  // namespace

double WaveletSystem::spacing() const { return std::ldexp(1.0, -depth); }

WaveletSystem daubechies_system(int u, int depth) {
    if (u < 1 || u > 10)
        throw std::invalid_argument("daubechies_system: u must be in 1..10, got " +
                                    std::to_string(u));
    if (depth < 6)
        throw std::invalid_argument("daubechies_system: depth must be >= 6, got " +
                                    std::to_string(depth));

    WaveletSystem sys;
    sys.u = u;
    sys.depth = depth;
    sys.h = filter_table()[u - 1];

    std::vector<double> phi = integer_values(sys.h);
    for (int lev = 1; lev <= depth; ++lev) phi = refine(sys.h, phi, lev);
    sys.samples_M = mother_samples(sys.h, phi, depth);
    sys.samples_F = std::move(phi);
    return sys;
}

double wavelet_value(const WaveletSystem& sys, Gender g, double t) {
    const double S = sys.support_len();
    if (t <= 0.0 || t >= S) return 0.0;
    const std::vector<double>& s = g == Gender::F ? sys.samples_F : sys.samples_M;
    const double x = t * std::ldexp(1.0, sys.depth);
    const int i = static_cast<int>(x);
    const double frac = x - i;
    if (i + 1 >= static_cast<int>(s.size())) return s.back();
    return s[i] * (1.0 - frac) + s[i + 1] * frac;
}

SampledField wavelet_function(const WaveletSystem& sys, int j, const GenderTuple& G,
                              const std::array<int, 2>& m, const Grid& grid,
                              bool normalized) {
    if (G.n != grid.n)
        throw std::invalid_argument("wavelet_function: gender tuple dimension mismatch");
    if (j < 0) throw std::invalid_argument("wavelet_function: level must be >= 0");
    if (!gender_admissible(G, j))
        throw std::invalid_argument(
            "wavelet_function: all-father tuple admitted only at level 0");

    const double scale = std::ldexp(1.0, j);
    const double S = sys.support_len();
    for (int l = 0; l < grid.n; ++l) {
        const double x_lo = m[l] / scale;
        const double x_hi = (m[l] + S) / scale;
        if (x_lo >= grid.R || x_hi <= -grid.R)
            throw std::invalid_argument("wavelet_function: support misses the grid box");
    }

    SampledField out;
    out.grid = grid;
    out.side = Side::space;
    out.values.assign(grid.size(), cplx(0.0));

    const double amp = normalized ? std::exp2(0.5 * j * grid.n) : 1.0;
    const AxisWindow w0 = axis_window(sys, G.at(0), j, m[0], grid);
    if (grid.n == 1) {
        for (std::size_t a = 0; a < w0.v.size(); ++a)
            out.values[w0.lo + a] = amp * w0.v[a];
        return out;
    }

    const AxisWindow w1 = axis_window(sys, G.at(1), j, m[1], grid);
    for (std::size_t a = 0; a < w0.v.size(); ++a) {
        const double fa = amp * w0.v[a];
        cplx* row = out.values.data() + static_cast<std::size_t>(w0.lo + a) * grid.N;
        for (std::size_t b = 0; b < w1.v.size(); ++b) row[w1.lo + b] = fa * w1.v[b];
    }
    return out;
}

CoeffSet analyze(const SampledField& f, const WaveletSystem& sys, int Jmax) {
    const Grid& grid = f.grid;
    if (f.side != Side::space)
        throw std::invalid_argument("analyze: field must be space-side");
    if (Jmax < 0) throw std::invalid_argument("analyze: Jmax must be >= 0");
    if (std::ldexp(1.0, Jmax) * grid.h() > 1.0)
        throw std::invalid_argument(
            "analyze: level " + std::to_string(Jmax) +
            " is finer than the grid spacing");

    CoeffSet c;
    c.n = grid.n;
    c.u = sys.u;
    c.Jmax = Jmax;

    const double hn = grid.cell(Side::space);
    for (int j = 0; j <= Jmax; ++j) {
        int m_lo = 0, m_hi = 0;
        translate_range(sys, j, grid.R, &m_lo, &m_hi);

        // Axis windows are gender- and m-dependent but axis-independent
        // (the box is symmetric), so build each gender's table once.
        std::vector<std::vector<AxisWindow>> win(2);
        std::vector<std::vector<bool>> interior(2);
        for (int gi = 0; gi < 2; ++gi) {
            const Gender g = gi == 0 ? Gender::F : Gender::M;
            win[gi].reserve(m_hi - m_lo + 1);
            for (int m = m_lo; m <= m_hi; ++m)
                win[gi].push_back(axis_window(sys, g, j, m, grid));
        }
        std::vector<bool> inside(m_hi - m_lo + 1);
        for (int m = m_lo; m <= m_hi; ++m)
            inside[m - m_lo] = axis_interior(sys, j, m, grid.R);

        const double lam_scale = std::exp2(static_cast<double>(j) * grid.n) * hn;
        for (const GenderTuple& G : gender_tuples(grid.n, j)) {
            const auto& w0 = win[G.at(0) == Gender::M ? 1 : 0];
            if (grid.n == 1) {
                for (int m = m_lo; m <= m_hi; ++m) {
                    const AxisWindow& w = w0[m - m_lo];
                    cplx acc(0.0);
                    for (std::size_t a = 0; a < w.v.size(); ++a)
                        acc += f.values[w.lo + a] * w.v[a];
                    WaveletKey key{j, G, {m, 0}};
                    c.entries[key] = lam_scale * acc;
                    if (!inside[m - m_lo]) c.straddling.insert(key);
                }
                continue;
            }

            const auto& w1 = win[G.at(1) == Gender::M ? 1 : 0];
            for (int m0 = m_lo; m0 <= m_hi; ++m0) {
                const AxisWindow& wa = w0[m0 - m_lo];
                for (int m1 = m_lo; m1 <= m_hi; ++m1) {
                    const AxisWindow& wb = w1[m1 - m_lo];
                    cplx acc(0.0);
                    for (std::size_t a = 0; a < wa.v.size(); ++a) {
                        const cplx* row =
                            f.values.data() + static_cast<std::size_t>(wa.lo + a) * grid.N;
                        cplx s(0.0);
                        for (std::size_t b = 0; b < wb.v.size(); ++b)
                            s += row[wb.lo + b] * wb.v[b];
                        acc += s * wa.v[a];
                    }
                    WaveletKey key{j, G, {m0, m1}};
                    c.entries[key] = lam_scale * acc;
                    if (!inside[m0 - m_lo] || !inside[m1 - m_lo])
                        c.straddling.insert(key);
                }
            }
        }
    }
    return c;
}

SampledField synthesize(const CoeffSet& c, const WaveletSystem& sys, const Grid& grid) {
    if (c.n != grid.n)
        throw std::invalid_argument("synthesize: coefficient dimension mismatch");

    SampledField out;
    out.grid = grid;
    out.side = Side::space;
    out.values.assign(grid.size(), cplx(0.0));

    for (const auto& [key, lam] : c.entries) {
        if (lam == cplx(0.0)) continue;
        const AxisWindow w0 = axis_window(sys, key.G.at(0), key.j, key.m[0], grid);
        if (grid.n == 1) {
            for (std::size_t a = 0; a < w0.v.size(); ++a)
                out.values[w0.lo + a] += lam * w0.v[a];
            continue;
        }
        const AxisWindow w1 = axis_window(sys, key.G.at(1), key.j, key.m[1], grid);
        for (std::size_t a = 0; a < w0.v.size(); ++a) {
            cplx* row = out.values.data() + static_cast<std::size_t>(w0.lo + a) * grid.N;
            for (std::size_t b = 0; b < w1.v.size(); ++b)
                row[w1.lo + b] += lam * (w0.v[a] * w1.v[b]);
        }
    }
    return out;
}

}  // namespace specop
