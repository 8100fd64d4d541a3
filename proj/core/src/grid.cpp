#include "specop/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace specop {

namespace {

constexpr double kPi = std::numbers::pi;

bool power_of_two(int N) { return N > 0 && (N & (N - 1)) == 0; }

void check_field(const SampledField& f) {
    if (f.values.size() != f.grid.size())
        throw std::invalid_argument("field length does not match grid");
}

}  // namespace

double Grid::dxi() const { return kPi / R; }

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int a = 0; a < n; ++a) s *= static_cast<std::size_t>(N);
    return s;
}

double Grid::cell(Side side) const {
    double w = (side == Side::space) ? h() : dxi();
    return (n == 2) ? w * w : w;
}

Grid make_grid(int n, int N, double R) {
    if (n != 1 && n != 2) throw std::invalid_argument("dimension must be 1 or 2");
    if (!power_of_two(N) || N < 8)
        throw std::invalid_argument("N must be a power of two >= 8");
    if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
    return Grid{n, N, R};
}

Grid make_self_dual_grid(int n, int N) {
    if (!power_of_two(N) || N < 8)
        throw std::invalid_argument("N must be a power of two >= 8");
    return make_grid(n, N, std::sqrt(kPi * N / 2.0));
}

SampledField sample(const Grid& g, Side side, const std::function<cplx(double)>& f) {
    if (g.n != 1) throw std::invalid_argument("sample: 1-d grid required");
    SampledField out{g, side, std::vector<cplx>(g.size())};
    for (int i = 0; i < g.N; ++i)
        out.values[i] = f(side == Side::space ? g.x(i) : g.xi(i));
    return out;
}

SampledField sample2(const Grid& g, Side side,
                     const std::function<cplx(double, double)>& f) {
    if (g.n != 2) throw std::invalid_argument("sample2: 2-d grid required");
    SampledField out{g, side, std::vector<cplx>(g.size())};
    for (int i1 = 0; i1 < g.N; ++i1) {
        double c1 = side == Side::space ? g.x(i1) : g.xi(i1);
        for (int i2 = 0; i2 < g.N; ++i2) {
            double c2 = side == Side::space ? g.x(i2) : g.xi(i2);
            out.values[static_cast<std::size_t>(i1) * g.N + i2] = f(c1, c2);
        }
    }
    return out;
}

namespace {

// FFTW planning is not thread-safe; execution on private buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    fftw_complex* p = nullptr;
    explicit FftwBuffer(std::size_t n) {
        p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        if (!p) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(p); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

void run_fft(int n, int N, int sign, fftw_complex* in, fftw_complex* out) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = (n == 1) ? fftw_plan_dft_1d(N, in, out, sign, FFTW_ESTIMATE)
                        : fftw_plan_dft_2d(N, N, in, out, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace

SampledField transform(const SampledField& f, Direction dir) {
    check_field(f);
    const Grid& g = f.grid;
    if (dir == Direction::forward && f.side != Side::space)
        throw std::invalid_argument("forward transform needs a space-side field");
    if (dir == Direction::inverse && f.side != Side::frequency)
        throw std::invalid_argument("inverse transform needs a frequency-side field");

    const int N = g.N;
    const std::size_t total = g.size();
    FftwBuffer in(total), out(total);

    // The stored frequency index i means m = i - N/2; the DFT bin is
    // k = m mod N = (i + N/2) mod N.  Since R*dxi = pi exactly, the node
    // offset x_0 = -R contributes the phase e^{+-i pi m} = (-1)^i per axis
    // (N/2 is even for N >= 8).
    auto bin_of = [N](int i) { return (i + N / 2) % N; };
    auto sign_of = [](int i) { return (i & 1) ? -1.0 : 1.0; };

    if (dir == Direction::forward) {
        for (std::size_t j = 0; j < total; ++j) {
            in.p[j][0] = f.values[j].real();
            in.p[j][1] = f.values[j].imag();
        }
        run_fft(g.n, N, FFTW_FORWARD, in.p, out.p);
        SampledField res{g, Side::frequency, std::vector<cplx>(total)};
        const double scale = std::pow(2.0 * kPi, -0.5 * g.n) * g.cell(Side::space);
        if (g.n == 1) {
            for (int i = 0; i < N; ++i) {
                int k = bin_of(i);
                res.values[i] = scale * sign_of(i) * cplx(out.p[k][0], out.p[k][1]);
            }
        } else {
            for (int i1 = 0; i1 < N; ++i1)
                for (int i2 = 0; i2 < N; ++i2) {
                    std::size_t k = static_cast<std::size_t>(bin_of(i1)) * N + bin_of(i2);
                    res.values[static_cast<std::size_t>(i1) * N + i2] =
                        scale * sign_of(i1) * sign_of(i2) * cplx(out.p[k][0], out.p[k][1]);
                }
        }
        return res;
    }

    // inverse: load bins with the phase applied, then an unnormalized
    // backward DFT lands directly on x_j order.
    if (g.n == 1) {
        for (int i = 0; i < N; ++i) {
            int k = bin_of(i);
            cplx v = sign_of(i) * f.values[i];
            in.p[k][0] = v.real();
            in.p[k][1] = v.imag();
        }
    } else {
        for (int i1 = 0; i1 < N; ++i1)
            for (int i2 = 0; i2 < N; ++i2) {
                std::size_t k = static_cast<std::size_t>(bin_of(i1)) * N + bin_of(i2);
                cplx v = sign_of(i1) * sign_of(i2) *
                         f.values[static_cast<std::size_t>(i1) * N + i2];
                in.p[k][0] = v.real();
                in.p[k][1] = v.imag();
            }
    }
    run_fft(g.n, N, FFTW_BACKWARD, in.p, out.p);
    SampledField res{g, Side::space, std::vector<cplx>(total)};
    const double scale = std::pow(2.0 * kPi, -0.5 * g.n) * g.cell(Side::frequency);
    for (std::size_t j = 0; j < total; ++j)
        res.values[j] = scale * cplx(out.p[j][0], out.p[j][1]);
    return res;
}

double lebesgue_norm(const SampledField& f, double p) {
    check_field(f);
    if (!(p > 0.0)) throw std::invalid_argument("lebesgue_norm: p must be positive");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const cplx& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (const cplx& v : f.values) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.grid.cell(f.side), 1.0 / p);
}

SampledField reflect(const SampledField& f) {
    check_field(f);
    const int N = f.grid.N;
    SampledField res{f.grid, f.side, std::vector<cplx>(f.values.size())};
    auto flip = [N](int i) { return (N - i) % N; };
    if (f.grid.n == 1) {
        for (int i = 0; i < N; ++i) res.values[i] = f.values[flip(i)];
    } else {
        for (int i1 = 0; i1 < N; ++i1)
            for (int i2 = 0; i2 < N; ++i2)
                res.values[static_cast<std::size_t>(i1) * N + i2] =
                    f.values[static_cast<std::size_t>(flip(i1)) * N + flip(i2)];
    }
    return res;
}

namespace {

// g(t) = exp(-1/t) extended by 0; theta = g(t)/(g(t)+g(1-t)) rises smoothly
// from 0 to 1 on [0,1] and saturates exactly outside.
double bump_theta(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double a = std::exp(-1.0 / t);
    double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

}  // namespace

double lp_phi0(double r) { return bump_theta((1.5 - r) / 0.5); }

double lp_phi(int j, double abs_xi) {
    if (j < 0) throw std::invalid_argument("lp_phi: j >= 0 required");
    if (j == 0) return lp_phi0(abs_xi);
    double s = std::ldexp(1.0, -j);  // 2^-j
    return lp_phi0(abs_xi * s) - lp_phi0(abs_xi * 2.0 * s);
}

LPPartition lp_partition(const Grid& g) {
    const double Xi = g.xi_max();
    int J = 0;
    while (3.0 * std::ldexp(1.0, J) <= Xi) ++J;  // 3*2^{(J+1)-1} <= Xi
    if (J < 1) throw std::invalid_argument("grid too small for a dyadic partition");

    LPPartition part{g, J, {}};
    part.blocks.resize(J + 1);
    const int N = g.N;
    for (int j = 0; j <= J; ++j) {
        auto& blk = part.blocks[j];
        blk.resize(g.size());
        if (g.n == 1) {
            for (int i = 0; i < N; ++i) blk[i] = lp_phi(j, std::abs(g.xi(i)));
        } else {
            for (int i1 = 0; i1 < N; ++i1)
                for (int i2 = 0; i2 < N; ++i2)
                    blk[static_cast<std::size_t>(i1) * N + i2] =
                        lp_phi(j, std::hypot(g.xi(i1), g.xi(i2)));
        }
    }
    return part;
}

SampledField lp_block(const SampledField& f, const LPPartition& part, int j) {
    check_field(f);
    if (f.side != Side::space)
        throw std::invalid_argument("lp_block: space-side field required");
    if (!(f.grid == part.grid))
        throw std::invalid_argument("lp_block: grid mismatch");
    if (j < 0 || j > part.J) throw std::out_of_range("lp_block: block index");
    SampledField hat = transform(f, Direction::forward);
    const auto& blk = part.blocks[j];
    for (std::size_t i = 0; i < hat.values.size(); ++i) hat.values[i] *= blk[i];
    return transform(hat, Direction::inverse);
}

}  // namespace specop
