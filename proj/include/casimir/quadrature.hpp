#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "casimir/errors.hpp"

namespace casimir {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-15;
    double panel_width = std::numbers::pi / 2.0;  // e^{2ika} with a = 1: quarter period
    double tail_threshold = 1e-10;
    long max_panels = 200000;
    double k_min = 1e-8;
    long max_terms = 10000000;  // Matsubara l_max
    int max_subdivisions = 400;  // per panel
    int threads = 1;
    // a panel need not be resolved beyond rel_tol * panel_floor * |accumulated|
    double panel_floor = 1e-3;
    // Gaussian-regulated summation for integrands that do not decay
    double reg_eta0 = 0.2;
    int reg_levels = 5;
};

void validate(const QuadratureSpec& spec);

struct QuadResult {
    double value = 0.0;
    double err = 0.0;
    long panels = 0;
    bool regularized = false;
};

template <std::size_t N>
struct QuadResultN {
    std::array<double, N> value{};
    std::array<double, N> err{};
    // one entry per termination channel: error of that linear combination
    std::vector<double> channel_err;
    long panels = 0;
    bool regularized = false;
};

// Termination channels: linear combinations of components that must each be
// below tail_threshold relative to their accumulated value.
template <std::size_t N>
using Channels = std::vector<std::array<double, N>>;

template <std::size_t N>
Channels<N> each_component()
{
    Channels<N> ch;
    for (std::size_t i = 0; i < N; ++i) {
        std::array<double, N> c{};
        c[i] = 1.0;
        ch.push_back(c);
    }
    return ch;
}

namespace detail {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
struct Segment {
    double lo, hi;
    Vec<N> k, g, absk;  // Kronrod, Gauss, Kronrod of |f|
};

// 61-point Kronrod with the embedded 30-point Gauss rule (Gauss nodes at odd indices)
template <std::size_t N, class F>
Segment<N> kronrod(const F& f, double lo, double hi)
{
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    static const auto& xk = gauss_kronrod<double, 61>::abscissa();
    static const auto& wk = gauss_kronrod<double, 61>::weights();
    static const auto& wg = gauss<double, 30>::weights();

    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    Segment<N> s{lo, hi, {}, {}, {}};
    auto eval = [&](double x) {
        Vec<N> v = f(x);
        for (std::size_t i = 0; i < N; ++i)
            if (!std::isfinite(v[i]))
                throw NaNIntegrand(fmt::format("integrand is not finite at k = {:.17g}", x), x);
        return v;
    };
    const Vec<N> f0 = eval(c);
    for (std::size_t i = 0; i < N; ++i) {
        s.k[i] = wk[0] * f0[i];
        s.absk[i] = wk[0] * std::abs(f0[i]);
    }
    for (std::size_t j = 1; j < xk.size(); ++j) {
        const Vec<N> fa = eval(c - h * xk[j]);
        const Vec<N> fb = eval(c + h * xk[j]);
        for (std::size_t i = 0; i < N; ++i) {
            s.k[i] += wk[j] * (fa[i] + fb[i]);
            s.absk[i] += wk[j] * (std::abs(fa[i]) + std::abs(fb[i]));
            if (j % 2 == 1) s.g[i] += wg[j / 2] * (fa[i] + fb[i]);
        }
    }
    for (std::size_t i = 0; i < N; ++i) {
        s.k[i] *= h;
        s.g[i] *= h;
        s.absk[i] *= h;
    }
    return s;
}

template <std::size_t N>
struct Piece {
    Vec<N> value{};
    Vec<N> err{};
    Vec<N> absval{};
    std::vector<double> chan_err;
};

template <std::size_t N>
double channel_seg_err(const Segment<N>& s, const std::array<double, N>& ch)
{
    double e = 0.0;
    for (std::size_t i = 0; i < N; ++i) e += ch[i] * (s.k[i] - s.g[i]);
    return std::abs(e);
}

// adaptive bisection on [lo, hi]; the worst segment is split first.
// floor[i] is an absolute accuracy below which component i need not be pushed.
template <std::size_t N, class F>
Piece<N> adaptive(const F& f, double lo, double hi, const QuadratureSpec& spec, const Vec<N>& floor,
                  const Channels<N>& channels)
{
    auto seg_err = [](const Segment<N>& s, std::size_t i) { return std::abs(s.k[i] - s.g[i]); };
    auto excess = [&](const Segment<N>& s, const Vec<N>& tol_total, double width) {
        double worst = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double allowed = tol_total[i] * (s.hi - s.lo) / width;
            worst = std::max(worst, seg_err(s, i) / std::max(allowed, std::numeric_limits<double>::min()));
        }
        return worst;
    };

    std::vector<Segment<N>> segs{kronrod<N>(f, lo, hi)};
    const double width = hi - lo;
    for (int iter = 0; iter < spec.max_subdivisions; ++iter) {
        Vec<N> absval{}, err{};
        for (const auto& s : segs)
            for (std::size_t i = 0; i < N; ++i) {
                absval[i] += s.absk[i];
                err[i] += seg_err(s, i);
            }
        Vec<N> tol{};
        bool done = true;
        for (std::size_t i = 0; i < N; ++i) {
            tol[i] = std::max({spec.abs_tol * width, spec.rel_tol * absval[i], floor[i] * width});
            if (err[i] > tol[i]) done = false;
        }
        if (done) break;
        // split the segment with the largest relative excess
        std::size_t worst = 0;
        double wv = -1.0;
        for (std::size_t j = 0; j < segs.size(); ++j) {
            const double e = excess(segs[j], tol, width);
            if (e > wv) {
                wv = e;
                worst = j;
            }
        }
        const Segment<N> s = segs[worst];
        const double mid = 0.5 * (s.lo + s.hi);
        if (!(mid > s.lo && mid < s.hi)) break;  // cannot split further
        segs[worst] = kronrod<N>(f, s.lo, mid);
        segs.push_back(kronrod<N>(f, mid, s.hi));
    }
    // fixed summation order: by left endpoint
    std::sort(segs.begin(), segs.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    Piece<N> p;
    p.chan_err.assign(channels.size(), 0.0);
    for (const auto& s : segs) {
        for (std::size_t i = 0; i < N; ++i) {
            p.value[i] += s.k[i];
            p.err[i] += seg_err(s, i);
            p.absval[i] += s.absk[i];
        }
        for (std::size_t c = 0; c < channels.size(); ++c) p.chan_err[c] += channel_seg_err(s, channels[c]);
    }
    return p;
}

template <std::size_t N, class F>
Piece<N> panel(const F& f, double lo, double hi, const std::vector<double>& breaks, const QuadratureSpec& spec,
               const Vec<N>& floor, const Channels<N>& channels)
{
    std::vector<double> edges{lo};
    for (double b : breaks)
        if (b > lo && b < hi) edges.push_back(b);
    edges.push_back(hi);
    Piece<N> total;
    total.chan_err.assign(channels.size(), 0.0);
    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
        const Piece<N> p = adaptive<N>(f, edges[j], edges[j + 1], spec, floor, channels);
        for (std::size_t i = 0; i < N; ++i) {
            total.value[i] += p.value[i];
            total.err[i] += p.err[i];
            total.absval[i] += p.absval[i];
        }
        for (std::size_t c = 0; c < channels.size(); ++c) total.chan_err[c] += p.chan_err[c];
    }
    return total;
}

// evaluates panels [first, first+count) concurrently; each slot is written by one worker
template <std::size_t N, class F, class Bounds>
std::vector<Piece<N>> panel_batch(const F& f, long first, long count, const Bounds& bounds,
                                  const std::vector<double>& breaks, const QuadratureSpec& spec, const Vec<N>& floor,
                                  const Channels<N>& channels)
{
    std::vector<Piece<N>> out(static_cast<std::size_t>(count));
    auto work = [&](long j) {
        const auto [lo, hi] = bounds(first + j);
        out[static_cast<std::size_t>(j)] = panel<N>(f, lo, hi, breaks, spec, floor, channels);
    };
    const int nthreads = std::max(1, std::min<int>(spec.threads, static_cast<int>(count)));
    if (nthreads == 1) {
        for (long j = 0; j < count; ++j) work(j);
        return out;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nthreads));
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (long j = t; j < count; j += nthreads) work(j);
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

// tail of a sequence of contributions from the envelope of the last terms:
// max of a geometric and a power-law extrapolation
double tail_estimate(const std::vector<double>& mags);

// panels per batch; fixed so that the per-batch accuracy floor does not depend on the thread count
inline constexpr long panel_batch_size = 32;

}  // namespace detail

// Panels of width spec.panel_width on (0, inf). k below spec.k_min is clamped
// to k_min (the finite endpoint limit).
template <std::size_t N, class F>
QuadResultN<N> integrate_semiinfinite_n(const F& f, const QuadratureSpec& spec,
                                        std::vector<double> breaks = {},
                                        const Channels<N>& channels = each_component<N>())
{
    validate(spec);
    std::sort(breaks.begin(), breaks.end());
    const double last_break = breaks.empty() ? 0.0 : breaks.back();
    const double w = spec.panel_width;
    auto g = [&](double k) { return f(std::max(k, spec.k_min)); };
    auto bounds = [w](long j) { return std::pair<double, double>{w * static_cast<double>(j), w * static_cast<double>(j + 1)}; };

    QuadResultN<N> res;
    res.channel_err.assign(channels.size(), 0.0);
    std::vector<std::vector<double>> mags(N), chan_mags(channels.size());
    int quiet = 0;
    const long batch = detail::panel_batch_size;
    long j = 0;
    bool finished = false;
    while (!finished) {
        if (j >= spec.max_panels)
            throw NonConvergence(fmt::format(
                "integral did not converge after {} panels (k up to {:.6g})", spec.max_panels, w * static_cast<double>(j)));
        const long count = std::min(batch, spec.max_panels - j);
        detail::Vec<N> floor{};
        for (std::size_t i = 0; i < N; ++i)
            floor[i] = spec.rel_tol * spec.panel_floor * std::abs(res.value[i]) / spec.panel_width;
        const auto pieces = detail::panel_batch<N>(g, j, count, bounds, breaks, spec, floor, channels);
        for (long b = 0; b < count && !finished; ++b, ++j) {
            const auto& p = pieces[static_cast<std::size_t>(b)];
            for (std::size_t i = 0; i < N; ++i) {
                res.value[i] += p.value[i];
                res.err[i] += p.err[i];
                mags[i].push_back(std::abs(p.value[i]));
            }
            bool small = true;
            for (std::size_t ci = 0; ci < channels.size(); ++ci) {
                const auto& ch = channels[ci];
                double c = 0.0, acc = 0.0;
                for (std::size_t i = 0; i < N; ++i) {
                    c += ch[i] * p.value[i];
                    acc += ch[i] * res.value[i];
                }
                res.channel_err[ci] += p.chan_err[ci];
                chan_mags[ci].push_back(std::abs(c));
                if (std::abs(c) > spec.tail_threshold * std::abs(acc)) small = false;
            }
            const bool past_features = bounds(j).first >= last_break;
            quiet = (small && past_features) ? quiet + 1 : 0;
            if (quiet >= 3) finished = true;
        }
    }
    res.panels = j;
    for (std::size_t i = 0; i < N; ++i) res.err[i] += detail::tail_estimate(mags[i]);
    for (std::size_t c = 0; c < channels.size(); ++c) res.channel_err[c] += detail::tail_estimate(chan_mags[c]);
    return res;
}

// finite interval split into panels of spec.panel_width
template <std::size_t N, class F>
QuadResultN<N> integrate_interval_n(const F& f, double lo, double hi, const QuadratureSpec& spec,
                                    std::vector<double> breaks = {},
                                    const Channels<N>& channels = each_component<N>())
{
    validate(spec);
    QuadResultN<N> res;
    res.channel_err.assign(channels.size(), 0.0);
    if (!(hi > lo)) return res;
    std::sort(breaks.begin(), breaks.end());
    const long count = std::max(1L, static_cast<long>(std::ceil((hi - lo) / spec.panel_width)));
    const double w = (hi - lo) / static_cast<double>(count);
    auto bounds = [lo, hi, w, count](long j) {
        return std::pair<double, double>{lo + w * static_cast<double>(j), j + 1 == count ? hi : lo + w * static_cast<double>(j + 1)};
    };
    // spectral intervals starting at 0 get the k_min clamp; anything else is integrated as given
    const bool spectral = lo >= 0.0;
    auto g = [&](double k) { return f(spectral ? std::max(k, spec.k_min) : k); };
    const long batch = detail::panel_batch_size;
    const detail::Vec<N> floor{};
    for (long j = 0; j < count; j += batch) {
        const long n = std::min(batch, count - j);
        const auto pieces = detail::panel_batch<N>(g, j, n, bounds, breaks, spec, floor, channels);
        for (const auto& p : pieces) {
            for (std::size_t i = 0; i < N; ++i) {
                res.value[i] += p.value[i];
                res.err[i] += p.err[i];
            }
            for (std::size_t c = 0; c < channels.size(); ++c) res.channel_err[c] += p.chan_err[c];
        }
    }
    res.panels = count;
    return res;
}

// Value of a non-decaying oscillatory integral, defined as the eta -> 0 limit of
// the integral with e^{-(eta k)^2}; the expansion is even in eta, so Richardson
// extrapolation in eta^2 over eta0, eta0/2, ... is used.
template <std::size_t N, class F>
QuadResultN<N> integrate_regularized_n(const F& f, const QuadratureSpec& spec, std::vector<double> breaks = {},
                                       const Channels<N>& channels = each_component<N>())
{
    validate(spec);
    const int L = spec.reg_levels;
    std::vector<std::vector<std::array<double, N>>> T(static_cast<std::size_t>(L));
    std::array<double, N> qerr{};
    std::vector<double> cqerr(channels.size(), 0.0);
    long panels = 0;
    for (int lev = 0; lev < L; ++lev) {
        const double eta = spec.reg_eta0 / std::ldexp(1.0, lev);
        auto damped = [&](double k) {
            auto v = f(k);
            const double damp = std::exp(-(eta * k) * (eta * k));
            for (auto& x : v) x *= damp;
            return v;
        };
        const auto r = integrate_semiinfinite_n<N>(damped, spec, breaks, channels);
        panels += r.panels;
        auto& row = T[static_cast<std::size_t>(lev)];
        row.push_back(r.value);
        for (std::size_t i = 0; i < N; ++i) qerr[i] = std::max(qerr[i], r.err[i]);
        for (std::size_t c = 0; c < channels.size(); ++c) cqerr[c] = std::max(cqerr[c], r.channel_err[c]);
        for (int m = 1; m <= lev; ++m) {
            const auto& prev = T[static_cast<std::size_t>(lev - 1)][static_cast<std::size_t>(m - 1)];
            const auto& cur = row[static_cast<std::size_t>(m - 1)];
            std::array<double, N> next{};
            const double fac = std::ldexp(1.0, 2 * m) - 1.0;
            for (std::size_t i = 0; i < N; ++i) next[i] = cur[i] + (cur[i] - prev[i]) / fac;
            row.push_back(next);
        }
    }
    QuadResultN<N> res;
    res.regularized = true;
    res.panels = panels;
    const auto& best = T.back().back();
    for (std::size_t i = 0; i < N; ++i) {
        res.value[i] = best[i];
        double extrap = 0.0;
        if (L >= 2) extrap = std::abs(best[i] - T[static_cast<std::size_t>(L - 2)].back()[i]);
        // Richardson weights amplify quadrature noise by at most ~2 per level
        res.err[i] = extrap + qerr[i] * static_cast<double>(1 << std::min(L, 20));
    }
    // channel errors: extrapolation step of the combination plus amplified quadrature error
    res.channel_err.assign(channels.size(), 0.0);
    for (std::size_t c = 0; c < channels.size(); ++c) {
        double best_c = 0.0, prev_c = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            best_c += channels[c][i] * best[i];
            if (L >= 2) prev_c += channels[c][i] * T[static_cast<std::size_t>(L - 2)].back()[i];
        }
        res.channel_err[c] = (L >= 2 ? std::abs(best_c - prev_c) : 0.0) + cqerr[c] * static_cast<double>(1 << std::min(L, 20));
    }
    return res;
}

// scalar conveniences
QuadResult integrate_semiinfinite(const std::function<double(double)>& f, const QuadratureSpec& spec,
                                  std::vector<double> breaks = {});
QuadResult integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureSpec& spec, std::vector<double> breaks = {});
QuadResult integrate_regularized(const std::function<double(double)>& f, const QuadratureSpec& spec,
                                 std::vector<double> breaks = {});

// sum_{l>=1} g(xi_l), xi_l = 2 pi l / beta
QuadResult matsubara_sum(const std::function<double(double)>& g, double beta, const QuadratureSpec& spec);

}  // namespace casimir
