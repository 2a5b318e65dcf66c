#include "dlss/spectral.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace dlss {

namespace {

// The FFTW planner is not thread-safe; executing a plan on its own buffers is
// fine as long as each thread owns its plans, hence the thread_local cache.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Workspace {
    std::size_t n = 0;
    double* real = nullptr;
    fftw_complex* cplx = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Workspace(std::size_t n_) : n(n_) {
        real = fftw_alloc_real(n);
        cplx = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard<std::mutex> lock(planner_mutex());
        // FFTW_ESTIMATE keeps plan selection deterministic run to run.
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, cplx, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), cplx, real, FFTW_ESTIMATE);
    }

    ~Workspace() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(cplx);
    }

    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
};

Workspace& workspace_for(std::size_t n) {
    thread_local std::map<std::size_t, Workspace> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.try_emplace(n, n).first;
    return it->second;
}

// Multiplies the half spectrum held in ws.cplx by (i*kappa)^p / N in place.
void apply_derivative_multiplier(Workspace& ws, const Grid& grid, int p) {
    const std::size_t n = ws.n;
    const std::size_t half = n / 2;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m <= half; ++m) {
        const double kappa = grid.angular_wavenumber(m);
        double re = ws.cplx[m][0] * inv_n;
        double im = ws.cplx[m][1] * inv_n;
        double out_re = 0.0, out_im = 0.0;
        switch (p) {
            case 1: out_re = -kappa * im; out_im = kappa * re; break;
            case 2: out_re = -kappa * kappa * re; out_im = -kappa * kappa * im; break;
            case 3: {
                const double k3 = kappa * kappa * kappa;
                out_re = k3 * im;
                out_im = -k3 * re;
                break;
            }
            case 4: {
                const double k4 = kappa * kappa * kappa * kappa;
                out_re = k4 * re;
                out_im = k4 * im;
                break;
            }
            default: throw ConfigError("derivative order must be in [1, 4]");
        }
        if ((p % 2 == 1) && m == half) { out_re = 0.0; out_im = 0.0; }
        ws.cplx[m][0] = out_re;
        ws.cplx[m][1] = out_im;
    }
}

void check_input(const SampledFunction& f) {
    if (!f.grid) throw InternalError("spectral operation on grid-less samples");
    if (!all_finite(f.values)) throw InternalError("spectral operation on non-finite samples");
}

} // namespace

std::vector<std::complex<double>> spectrum(const SampledFunction& f) {
    check_input(f);
    const std::size_t n = f.size();
    Workspace& ws = workspace_for(n);
    std::memcpy(ws.real, f.values.data(), n * sizeof(double));
    fftw_execute(ws.fwd);
    std::vector<std::complex<double>> out(n / 2 + 1);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m < out.size(); ++m)
        out[m] = std::complex<double>(ws.cplx[m][0] * inv_n, ws.cplx[m][1] * inv_n);
    return out;
}

SampledFunction from_spectrum(const GridPtr& grid, const std::vector<std::complex<double>>& half_spectrum) {
    const std::size_t n = grid->size();
    if (half_spectrum.size() != n / 2 + 1)
        throw InternalError("half spectrum size mismatch");
    Workspace& ws = workspace_for(n);
    for (std::size_t m = 0; m < half_spectrum.size(); ++m) {
        ws.cplx[m][0] = half_spectrum[m].real();
        ws.cplx[m][1] = half_spectrum[m].imag();
    }
    fftw_execute(ws.bwd);
    std::vector<double> out(n);
    std::memcpy(out.data(), ws.real, n * sizeof(double));
    return SampledFunction(grid, std::move(out));
}

SampledFunction spectral_derivative(const SampledFunction& f, int p) {
    if (p < 1 || p > 4) throw ConfigError("derivative order must be in [1, 4]");
    check_input(f);
    const std::size_t n = f.size();
    Workspace& ws = workspace_for(n);
    std::memcpy(ws.real, f.values.data(), n * sizeof(double));
    fftw_execute(ws.fwd);
    apply_derivative_multiplier(ws, *f.grid, p);
    fftw_execute(ws.bwd);
    std::vector<double> out(n);
    std::memcpy(out.data(), ws.real, n * sizeof(double));
    return SampledFunction(f.grid, std::move(out));
}

void spectral_derivatives_234(const SampledFunction& f, std::vector<double>& d2, std::vector<double>& d3,
                              std::vector<double>& d4) {
    check_input(f);
    const std::size_t n = f.size();
    const Grid& grid = *f.grid;
    Workspace& ws = workspace_for(n);
    std::memcpy(ws.real, f.values.data(), n * sizeof(double));
    fftw_execute(ws.fwd);

    const std::size_t half = n / 2;
    std::vector<std::complex<double>> base(half + 1);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m <= half; ++m)
        base[m] = std::complex<double>(ws.cplx[m][0] * inv_n, ws.cplx[m][1] * inv_n);

    auto run_order = [&](int p, std::vector<double>& out) {
        for (std::size_t m = 0; m <= half; ++m) {
            const double kappa = grid.angular_wavenumber(m);
            std::complex<double> c;
            if (p == 2) {
                c = -kappa * kappa * base[m];
            } else if (p == 3) {
                c = (m == half) ? std::complex<double>(0.0)
                                : std::complex<double>(0.0, -kappa * kappa * kappa) * base[m];
            } else {
                c = kappa * kappa * kappa * kappa * base[m];
            }
            ws.cplx[m][0] = c.real();
            ws.cplx[m][1] = c.imag();
        }
        fftw_execute(ws.bwd);
        out.resize(n);
        std::memcpy(out.data(), ws.real, n * sizeof(double));
    };

    run_order(2, d2);
    run_order(3, d3);
    run_order(4, d4);
}

void spectral_derivative_1(const SampledFunction& f, std::vector<double>& d1) {
    SampledFunction g = spectral_derivative(f, 1);
    d1 = std::move(g.values);
}

} // namespace dlss
