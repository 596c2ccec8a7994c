#include "casimir/quadrature.hpp"

namespace casimir {

void validate(const QuadratureSpec& spec)
{
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
        throw DomainError("quadrature: tolerances must be > 0");
    if (!(spec.panel_width > 0.0)) throw DomainError("quadrature: panel_width must be > 0");
    if (!(spec.tail_threshold > 0.0)) throw DomainError("quadrature: tail_threshold must be > 0");
    if (spec.max_panels < 1 || spec.max_terms < 1) throw DomainError("quadrature: limits must be >= 1");
    if (!(spec.k_min > 0.0)) throw DomainError("quadrature: k_min must be > 0");
    if (spec.reg_levels < 1 || !(spec.reg_eta0 > 0.0)) throw DomainError("quadrature: bad regulator ladder");
    if (spec.threads < 1) throw DomainError("quadrature: threads must be >= 1");
    if (!(spec.panel_floor >= 0.0)) throw DomainError("quadrature: panel_floor must be >= 0");
}

namespace detail {

double tail_estimate(const std::vector<double>& mags)
{
    const std::size_t n = mags.size();
    if (n < 4) return n ? mags.back() : 0.0;
    // envelopes over the last two quarters of the sequence
    const std::size_t q = std::max<std::size_t>(1, n / 4);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = n - 2 * q; i < n - q; ++i) m1 = std::max(m1, mags[i]);
    for (std::size_t i = n - q; i < n; ++i) m2 = std::max(m2, mags[i]);
    if (m2 == 0.0) return 0.0;
    if (m1 <= m2) return m2 * static_cast<double>(n);  // no visible decay: pessimistic
    const double j1 = static_cast<double>(n) - 1.5 * static_cast<double>(q);
    const double j2 = static_cast<double>(n) - 0.5 * static_cast<double>(q);
    const double r = std::pow(m2 / m1, 1.0 / static_cast<double>(q));
    const double geo = m2 * r / (1.0 - r);
    const double p = std::log(m1 / m2) / std::log(j2 / j1);
    const double pw = p > 1.0 ? m2 * j2 / (p - 1.0) : m2 * static_cast<double>(n);
    return std::max(geo, pw);
}

}  // namespace detail

namespace {

auto wrap(const std::function<double(double)>& f)
{
    return [&f](double k) { return std::array<double, 1>{f(k)}; };
}

QuadResult first(const QuadResultN<1>& r) { return QuadResult{r.value[0], r.err[0], r.panels, r.regularized}; }

}  // namespace

QuadResult integrate_semiinfinite(const std::function<double(double)>& f, const QuadratureSpec& spec,
                                  std::vector<double> breaks)
{
    return first(integrate_semiinfinite_n<1>(wrap(f), spec, std::move(breaks)));
}

QuadResult integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureSpec& spec, std::vector<double> breaks)
{
    return first(integrate_interval_n<1>(wrap(f), lo, hi, spec, std::move(breaks)));
}

QuadResult integrate_regularized(const std::function<double(double)>& f, const QuadratureSpec& spec,
                                 std::vector<double> breaks)
{
    return first(integrate_regularized_n<1>(wrap(f), spec, std::move(breaks)));
}

QuadResult matsubara_sum(const std::function<double(double)>& g, double beta, const QuadratureSpec& spec)
{
    validate(spec);
    if (!(beta > 0.0)) throw DomainError("matsubara_sum: beta must be > 0");
    const double step = 2.0 * std::numbers::pi / beta;
    QuadResult res;
    std::vector<double> mags;
    double rounding = 0.0;
    int quiet = 0;
    for (long l = 1;; ++l) {
        if (l > spec.max_terms)
            throw NonConvergence(fmt::format("Matsubara sum did not converge within {} terms", spec.max_terms));
        const double xi = step * static_cast<double>(l);
        const double t = g(xi);
        if (!std::isfinite(t))
            throw NaNIntegrand(fmt::format("Matsubara summand is not finite at xi = {:.17g}", xi), xi);
        res.value += t;
        rounding += std::abs(res.value) * std::numeric_limits<double>::epsilon();
        mags.push_back(std::abs(t));
        quiet = std::abs(t) <= spec.tail_threshold * std::abs(res.value) ? quiet + 1 : 0;
        if (quiet >= 3) {
            res.panels = l;
            break;
        }
    }
    res.err = detail::tail_estimate(mags) + rounding;
    return res;
}

}  // namespace casimir
