#include "casimir/commands.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "casimir/errors.hpp"
#include "casimir/stress.hpp"

namespace casimir {

namespace {

const double NaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return fmt::format("{:.17g}", v); }

const char* model_name(Model m) { return m == Model::static_nd ? "static_nd" : "drude_lorentz"; }

std::string material_cols(const Material& m)
{
    return fmt::format("{},{},{},{}", model_name(m.model), num(m.omega0), num(m.omegaPl), num(m.gamma0));
}

const char* material_header(const char* side)
{
    return side[0] == 'l' ? "left_model,left_omega0,left_omegaPl,left_gamma0"
                          : "right_model,right_omega0,right_omegaPl,right_gamma0";
}

std::string stamp(bool reproducible)
{
    if (reproducible) return {};
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    return fmt::format("# generated {:%Y-%m-%dT%H:%M:%SZ}\n", now);
}

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ";") + x;
    return s;
}

// short tag for a numerical failure, used in flag columns
std::string failure_tag()
{
    try {
        throw;
    } catch (const NonConvergence&) {
        return "nonconvergence";
    } catch (const NaNIntegrand&) {
        return "nan_integrand";
    } catch (const SingularEvaluation&) {
        return "singular";
    } catch (const DomainError&) {
        return "domain_error";
    } catch (const std::exception&) {
        return "error";
    }
}

QuadratureSpec spec_of(const RunConfig& cfg, std::optional<int> threads = std::nullopt)
{
    QuadratureSpec s = cfg.quad;
    if (threads) s.threads = *threads;
    return s;
}

void write_out(const std::optional<std::string>& path, const std::string& text, std::ostream& out)
{
    if (!path) {
        out << text;
        return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw ConfigError(fmt::format("cannot write '{}'", *path));
    f << text;
}

LimitRow limit_row(const char* name, double gap, double width, double parameter)
{
    LimitRow r;
    r.limit = name;
    r.gap = gap;
    r.width = width;
    r.parameter = parameter;
    return r;
}

double rel_dev(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

Material static_limit(const Material& m) { return make_material(m.omega0, m.omegaPl, 0.0, Model::static_nd); }

CavityConfig static_limit(const CavityConfig& cfg)
{
    return CavityConfig{cfg.gap, cfg.width, static_limit(cfg.left), static_limit(cfg.right)};
}

// ---------------------------------------------------------------- force

ForceBreakdown run_force(const RunConfig& cfg)
{
    const FieldState& state = require_state(cfg);
    const double bL = require_beta_left(cfg);
    const double bR = require_beta_right(cfg);
    const QuadratureSpec spec = spec_of(cfg);
    if (const auto* d = std::get_if<SqueezedDelta>(&state)) {
        ForceBreakdown fb;
        fb.cfg = cfg.cavity;
        fb.state = state;
        fb.betaL = bL;
        fb.betaR = bR;
        fb.f_ic = force_delta_squeezed(cfg.cavity, d->omega_center, spec);
        const QuadResult b = force_bath(cfg.cavity, bL, bR, spec);
        fb.f_b = b.value;
        fb.err_b = b.err;
        fb.err_total = b.err;
        fb.f_total = fb.f_ic + fb.f_b;
        fb.panels = b.panels;
        fb.flags.push_back("delta_state");
        if (b.regularized) fb.flags.push_back("regularized");
        return fb;
    }
    return force_total(cfg.cavity, state, bL, bR, spec);
}

std::string force_csv(const ForceBreakdown& fb, bool reproducible)
{
    std::string s = stamp(reproducible);
    s += fmt::format("schema_version,gap,width,{},{},state,beta_left,beta_right,f_ic,f_b,f_total,err_ic,err_b,err_total,"
                     "attractive,flags\n",
                     material_header("left"), material_header("right"));
    // positive F pushes the left plate towards the gap
    s += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_schema_version, num(fb.cfg.gap),
                     num(fb.cfg.width), material_cols(fb.cfg.left), material_cols(fb.cfg.right), describe(fb.state),
                     num(fb.betaL), num(fb.betaR), num(fb.f_ic), num(fb.f_b), num(fb.f_total), num(fb.err_ic),
                     num(fb.err_b), num(fb.err_total), fb.f_total > 0.0 ? "true" : "false", join(fb.flags));
    return s;
}

int cmd_force(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out)
{
    RunConfig c = cfg;
    if (opt.threads) c.quad.threads = *opt.threads;
    const ForceBreakdown fb = run_force(c);
    write_out(opt.out, force_csv(fb, opt.reproducible), out);
    if (opt.out)
        out << fmt::format("f_ic = {:.12g} (+-{:.2g})  f_b = {:.12g} (+-{:.2g})  f_total = {:.12g} (+-{:.2g})\n", fb.f_ic,
                           fb.err_ic, fb.f_b, fb.err_b, fb.f_total, fb.err_total);
    return exit_ok;
}

// ---------------------------------------------------------------- sweep-sigma

SweepTable run_sweep_sigma(const RunConfig& cfg, int threads)
{
    const auto* th = std::get_if<Thermal>(&require_state(cfg));
    if (!th) throw ConfigError(fmt::format("{}: sweep-sigma needs [state] type = thermal (the reference state)", cfg.source));
    if (cfg.sigma.empty()) throw ConfigError(fmt::format("{}: missing required key 'sigma' in section [sweep]", cfg.source));
    if (cfg.omega_center.empty())
        throw ConfigError(fmt::format("{}: missing required key 'omega_center' in section [sweep]", cfg.source));
    SweepTable t;
    t.beta_field = th->beta;
    t.beta_left = require_beta_left(cfg);
    t.beta_right = require_beta_right(cfg);
    QuadratureSpec spec = spec_of(cfg, 1);
    spec.threads = std::max(1, threads);

    bool base_ok = true;
    try {
        t.base = sweep_base(cfg.cavity, t.beta_field, t.beta_left, t.beta_right, spec);
    } catch (...) {
        base_ok = false;
        t.base_flags = "base_" + failure_tag();
    }
    const SweepBase& b = t.base;
    const double f_ic_th = b.f_vac + b.f_th_excess;
    const double f_tot_th = f_ic_th + b.f_b;

    // cells are independent; each worker owns a strided subset, assembly is by index
    struct Cell {
        std::size_t block, row;
    };
    std::vector<Cell> cells;
    t.rows.assign(cfg.omega_center.size(), std::vector<SweepRow>(cfg.sigma.size()));
    for (std::size_t i = 0; i < cfg.omega_center.size(); ++i)
        for (std::size_t j = 0; j < cfg.sigma.size(); ++j) cells.push_back({i, j});

    QuadratureSpec cell_spec = spec;
    cell_spec.threads = 1;
    auto work = [&](const Cell& c) {
        SweepRow& r = t.rows[c.block][c.row];
        r.omega_center = cfg.omega_center[c.block];
        r.sigma = cfg.sigma[c.row];
        r.squeeze = cfg.squeeze_scale / r.sigma;
        r.f_ic_thermal = base_ok ? f_ic_th : NaN;
        r.f_total_thermal = base_ok ? f_tot_th : NaN;
        std::vector<std::string> flags;
        if (!base_ok) flags.push_back(t.base_flags);
        const double excess = std::cosh(2.0 * r.squeeze) - 1.0;
        double band = NaN, band_err = NaN;
        if (!std::isfinite(excess)) {
            flags.push_back("weight_overflow");
        } else {
            try {
                const QuadResult q = band_integral(cfg.cavity, r.omega_center, r.sigma, cell_spec);
                band = q.value;
                band_err = q.err;
            } catch (...) {
                flags.push_back("band_" + failure_tag());
            }
        }
        if (std::isfinite(band) && base_ok) {
            r.f_ic_squeezed = b.f_vac + excess * band;
            r.f_total_squeezed = r.f_ic_squeezed + b.f_b;
            r.err_ic_squeezed = b.err_vac + excess * band_err;
            r.err_total_squeezed = b.err_vac_b + excess * band_err;
            r.ratio_ic = f_ic_th / r.f_ic_squeezed;
            r.ratio_total = f_tot_th / r.f_total_squeezed;
        } else {
            r.f_ic_squeezed = r.f_total_squeezed = r.err_ic_squeezed = r.err_total_squeezed = NaN;
            r.ratio_ic = r.ratio_total = NaN;
        }
        r.flags = join(flags);
    };

    const int n = std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));
    if (n == 1) {
        for (const auto& c : cells) work(c);
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < n; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = static_cast<std::size_t>(w); i < cells.size(); i += static_cast<std::size_t>(n))
                    work(cells[i]);
            });
    }
    return t;
}

std::string sweep_file_name(double omega_center) { return fmt::format("sweep_sigma_omega0_{:g}.csv", omega_center); }

std::string sweep_csv(const RunConfig& cfg, const SweepTable& t, std::size_t block, bool reproducible)
{
    std::string s = stamp(reproducible);
    s += fmt::format("schema_version,gap,width,{},{},beta_field,beta_left,beta_right,scale,omega_center,sigma,squeeze,"
                     "f_ic_thermal,f_ic_squeezed,ratio_ic,f_total_thermal,f_total_squeezed,ratio_total,err_ic_squeezed,"
                     "err_total_squeezed,flags\n",
                     material_header("left"), material_header("right"));
    const std::string echo = fmt::format("{},{},{},{},{},{},{},{},{}", csv_schema_version, num(cfg.cavity.gap),
                                         num(cfg.cavity.width), material_cols(cfg.cavity.left),
                                         material_cols(cfg.cavity.right), num(t.beta_field), num(t.beta_left),
                                         num(t.beta_right), num(cfg.squeeze_scale));
    for (const SweepRow& r : t.rows.at(block))
        s += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", echo, num(r.omega_center), num(r.sigma),
                         num(r.squeeze), num(r.f_ic_thermal), num(r.f_ic_squeezed), num(r.ratio_ic),
                         num(r.f_total_thermal), num(r.f_total_squeezed), num(r.ratio_total), num(r.err_ic_squeezed),
                         num(r.err_total_squeezed), r.flags);
    return s;
}

int cmd_sweep_sigma(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out)
{
    const SweepTable t = run_sweep_sigma(cfg, opt.threads.value_or(cfg.quad.threads));
    const std::filesystem::path dir = opt.out.value_or(".");
    std::filesystem::create_directories(dir);
    std::size_t failed = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto path = dir / sweep_file_name(cfg.omega_center[i]);
        write_out(path.string(), sweep_csv(cfg, t, i, opt.reproducible), out);
        for (const auto& r : t.rows[i]) failed += !std::isfinite(r.ratio_total);
        out << path.string() << "\n";
    }
    if (failed) out << fmt::format("warning: {} cell(s) failed; see the flags column\n", failed);
    return exit_ok;
}

// ---------------------------------------------------------------- limits

std::vector<LimitRow> run_limits(const RunConfig& cfg)
{
    const QuadratureSpec spec = spec_of(cfg);
    std::vector<LimitRow> rows;
    auto attempt = [&](LimitRow r, auto&& body) {
        try {
            body(r);
        } catch (...) {
            r.value = r.err = r.reference = r.rel_dev = NaN;
            r.flags = failure_tag();
        }
        rows.push_back(r);
    };
    FieldState ic_state = Vacuum{};
    if (cfg.state && !std::holds_alternative<SqueezedDelta>(*cfg.state)) ic_state = *cfg.state;

    for (double a : cfg.gaps)
        for (double d : cfg.widths) {
            CavityConfig base = cfg.cavity;
            base.gap = a;
            base.width = d;
            const CavityConfig st = static_limit(base);
            attempt(limit_row("dissipationless", a, d, 0.0), [&](LimitRow& r) {
                const QuadResult v = force_dissipationless(st, ic_state, spec);
                const QuadResult ref = force_ic(st, ic_state, spec);
                r.value = v.value;
                r.err = v.err;
                r.reference = ref.value;
                r.rel_dev = rel_dev(v.value, ref.value);
                r.flags = "reference=force_ic";
            });
            attempt(limit_row("constant_squeezing", a, d, cfg.xi), [&](LimitRow& r) {
                const QuadResult v = force_dissipationless(st, SqueezedConst{cfg.xi}, spec);
                const QuadResult vac = force_dissipationless(st, Vacuum{}, spec);
                r.value = v.value;
                r.err = v.err;
                r.reference = std::cosh(2.0 * std::abs(cfg.xi)) * vac.value;
                r.rel_dev = rel_dev(r.value, r.reference);
                r.flags = "reference=cosh(2xi)*vacuum";
            });
            for (double w : cfg.omega_center)
                attempt(limit_row("delta_squeezing", a, d, w), [&](LimitRow& r) {
                    r.value = force_delta_squeezed(base, w, spec);
                    r.reference = r.rel_dev = NaN;
                });
        }
    // equilibrium: half-space sum against the Matsubara sum
    double beta = 10.0;
    if (cfg.state)
        if (const auto* th = std::get_if<Thermal>(&*cfg.state)) beta = th->beta;
    for (double a : cfg.gaps)
        attempt(limit_row("lifshitz", a, NaN, beta), [&](LimitRow& r) {
            const HalfspaceForces h = halfspace_forces(cfg.cavity.left, cfg.cavity.right, a, beta, beta, beta, spec);
            const QuadResult m = lifshitz_matsubara(cfg.cavity.left, cfg.cavity.right, a, beta, spec);
            r.value = h.total;
            r.err = h.err_total;
            r.reference = m.value;
            r.rel_dev = rel_dev(h.total, m.value);
            r.flags = "reference=matsubara";
        });
    return rows;
}

int cmd_limits(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out)
{
    RunConfig c = cfg;
    if (opt.threads) c.quad.threads = *opt.threads;
    const auto rows = run_limits(c);
    std::string s = stamp(opt.reproducible);
    s += fmt::format("schema_version,limit,gap,width,{},{},parameter,value,err,reference,rel_dev,flags\n",
                     material_header("left"), material_header("right"));
    for (const auto& r : rows)
        s += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_schema_version, r.limit, num(r.gap), num(r.width),
                         material_cols(c.cavity.left), material_cols(c.cavity.right), num(r.parameter), num(r.value),
                         num(r.err), num(r.reference), num(r.rel_dev), r.flags);
    write_out(opt.out, s, out);
    return exit_ok;
}

// ---------------------------------------------------------------- verify

std::vector<CheckResult> run_verify(const RunConfig& cfg)
{
    const QuadratureSpec spec = spec_of(cfg);
    std::vector<CheckResult> out;
    auto check = [&](const std::string& name, double tol, auto&& measure) {
        CheckResult c{name, NaN, tol, false};
        try {
            c.measured = measure();
            c.pass = c.measured <= tol;
        } catch (...) {
            c.name += "[" + failure_tag() + "]";
        }
        out.push_back(c);
    };
    const CavityConfig st = static_limit(cfg.cavity);
    const double bL = cfg.beta_left.value_or(10.0);
    const double bR = cfg.beta_right.value_or(5.0);
    FieldState th = Thermal{bL};
    if (cfg.state && std::holds_alternative<Thermal>(*cfg.state)) th = *cfg.state;

    check("unitarity_dissipationless", 1e-10, [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double w = std::pow(10.0, -2.0 + 4.0 * i / 199.0);
            for (const Material& m : {st.left, st.right}) {
                const auto [r, t] = slab_coefficients(m, st.width, w);
                worst = std::max(worst, std::abs(std::norm(r) + std::norm(t) - 1.0));
            }
            const ScatteringSet c = cavity_coefficients(st, w, false);
            worst = std::max(worst, std::abs(std::norm(c.Rgt) + std::norm(c.T) - 1.0));
        }
        return worst;
    });
    check("bath_zero_dissipationless", 0.0, [&] { return std::abs(force_bath(st, bL, bR, spec).value); });

    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(-1.0, 1.7);
    std::vector<double> grid;
    for (int i = 0; i < 20; ++i) grid.push_back(std::pow(10.0, u(rng)));
    PressureCheck oracle{}, oracle_st{};
    bool have = false, have_st = false;
    auto get = [&]() -> const PressureCheck& {
        if (!have) oracle = pressure_difference(cfg.cavity, bL, bR, th, grid), have = true;
        return oracle;
    };
    auto get_st = [&]() -> const PressureCheck& {
        if (!have_st) oracle_st = pressure_difference(st, bL, bR, th, grid), have_st = true;
        return oracle_st;
    };
    check("stress_oracle_ic", 1e-8, [&] { return get().ic_max_dev; });
    check("stress_oracle_bath", 1e-8, [&] { return get().bath_max_dev; });
    check("stress_oracle_ic_dissipationless", 1e-8, [&] { return get_st().ic_max_dev; });
    check("stress_oracle_bath_dissipationless", 0.0, [&] { return get_st().bath_max_dev; });

    check("dissipationless_dual_path", 1e-9, [&] {
        return rel_dev(force_ic(st, Vacuum{}, spec).value, force_dissipationless(st, Vacuum{}, spec).value);
    });
    check("lifshitz_equilibrium", 1e-6, [&] {
        const double b = bL;
        const HalfspaceForces h = halfspace_forces(cfg.cavity.left, cfg.cavity.right, cfg.cavity.gap, b, b, b, spec);
        return rel_dev(h.total, lifshitz_matsubara(cfg.cavity.left, cfg.cavity.right, cfg.cavity.gap, b, spec).value);
    });
    // closed-form quadrature cases: true error over reported estimate (pass if <= 1)
    check("quadrature_honesty", 1.0, [&] {
        double worst = 0.0;
        auto ratio = [](double got, double exact, double err) {
            const double e = std::abs(got - exact);
            return e == 0.0 ? 0.0 : e / err;
        };
        QuadratureSpec q;
        const QuadResult a = integrate_semiinfinite([](double k) { return std::exp(-k); }, q);
        worst = std::max(worst, ratio(a.value, 1.0, a.err));
        const QuadResult b = integrate_semiinfinite([](double k) { return k * std::exp(-k) * std::cos(2.0 * k); }, q);
        worst = std::max(worst, ratio(b.value, -0.12, b.err));
        const QuadResult c = matsubara_sum([](double xi) { return std::exp(-xi); }, 2.0 * std::numbers::pi, q);
        worst = std::max(worst, ratio(c.value, 1.0 / (std::exp(1.0) - 1.0), c.err));
        return worst;
    });
    return out;
}

int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& out)
{
    RunConfig c = cfg;
    if (opt.threads) c.quad.threads = *opt.threads;
    const auto checks = run_verify(c);
    std::string s = stamp(opt.reproducible);
    s += "schema_version,check,measured,tolerance,pass\n";
    bool ok = true;
    for (const auto& r : checks) {
        s += fmt::format("{},{},{},{},{}\n", csv_schema_version, r.name, num(r.measured), num(r.tolerance),
                         r.pass ? "true" : "false");
        ok = ok && r.pass;
    }
    write_out(opt.out, s, out);
    if (opt.out)
        for (const auto& r : checks)
            out << fmt::format("{:<36} {:>12.3g}  (tol {:.0e})  {}\n", r.name, r.measured, r.tolerance, r.pass ? "ok" : "FAIL");
    return ok ? exit_ok : exit_verify;
}

}  // namespace casimir
