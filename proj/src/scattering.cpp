#include "casimir/scattering.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr cplx I{0.0, 1.0};
const double NaN = std::numeric_limits<double>::quiet_NaN();
const cplx missing{NaN, NaN};

bool is_missing(cplx z) { return std::isnan(z.real()); }

cplx phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

ScatteringSet conj_set(ScatteringSet s)
{
    for (cplx* z : {&s.nL, &s.nR, &s.rnL, &s.rnR, &s.rL, &s.tL, &s.rR, &s.tR, &s.den, &s.Rgt, &s.Rlt, &s.T,
                    &s.Cgt, &s.Dgt, &s.Clt, &s.Dlt, &s.Agt, &s.Bgt, &s.Egt, &s.Fgt})
        *z = std::conj(*z);
    s.at = -s.at;
    return s;
}

}  // namespace

void validate(const CavityConfig& cfg)
{
    if (!(cfg.gap > 0.0) || !std::isfinite(cfg.gap))
        throw DomainError(fmt::format("cavity: gap must be > 0 (got {})", cfg.gap));
    if (!(cfg.width > 0.0) || !std::isfinite(cfg.width))
        throw DomainError(fmt::format("cavity: width must be > 0 (got {})", cfg.width));
    validate(cfg.left);
    validate(cfg.right);
}

CavityConfig mirrored(const CavityConfig& cfg) { return CavityConfig{cfg.gap, cfg.width, cfg.right, cfg.left}; }

Region region_of(const CavityConfig& cfg, double x)
{
    const double h = 0.5 * cfg.gap;
    const double X = h + cfg.width;
    if (x <= -X) return Region::exterior_left;
    if (x < -h) return Region::slab_left;
    if (x <= h) return Region::gap;
    if (x < X) return Region::slab_right;
    return Region::exterior_right;
}

const char* region_name(Region r)
{
    switch (r) {
    case Region::exterior_left: return "exterior_left";
    case Region::slab_left: return "slab_left";
    case Region::gap: return "gap";
    case Region::slab_right: return "slab_right";
    case Region::exterior_right: return "exterior_right";
    }
    return "?";
}

SlabResponse slab_response(const Material& mat, double d, double omega)
{
    if (omega < 0.0) {
        SlabResponse s = slab_response(mat, d, -omega);
        return {std::conj(s.n), std::conj(s.rn), std::conj(s.q), std::conj(s.r), std::conj(s.t)};
    }
    SlabResponse s;
    s.n = refractive_index(mat, omega);
    s.rn = surface_reflection(s.n);
    s.q = std::exp(I * omega * s.n * d);
    const cplx q2 = s.q * s.q;
    const cplx den = 1.0 - s.rn * s.rn * q2;
    s.r = s.rn * (1.0 - q2) / den;
    s.t = 4.0 * s.n / ((s.n + 1.0) * (s.n + 1.0)) * s.q / den;
    return s;
}

std::pair<cplx, cplx> slab_coefficients(const Material& mat, double d, double omega)
{
    const SlabResponse s = slab_response(mat, d, omega);
    return {s.r, s.t};
}

double slab_transmission_scaled(const Material& mat, double d, double omega)
{
    const SlabResponse s = slab_response(mat, d, omega);
    const cplx n = s.n;
    return std::norm(4.0 * n / ((n + 1.0) * (n + 1.0))) / std::norm(1.0 - s.rn * s.rn * s.q * s.q);
}

ScatteringSet cavity_coefficients(const CavityConfig& cfg, double omega, bool slab_amplitudes)
{
    if (omega < 0.0) return conj_set(cavity_coefficients(cfg, -omega, slab_amplitudes));
    const double a = cfg.gap;
    const double d = cfg.width;
    const SlabResponse L = slab_response(cfg.left, d, omega);
    const SlabResponse R = slab_response(cfg.right, d, omega);

    ScatteringSet c;
    c.at = omega;
    c.gap = a;
    c.width = d;
    c.nL = L.n;
    c.nR = R.n;
    c.rnL = L.rn;
    c.rnR = R.rn;
    c.rL = L.r;
    c.tL = L.t;
    c.rR = R.r;
    c.tR = R.t;
    const cplx e2a = phase(2.0 * omega * a);
    c.den = 1.0 - c.rL * c.rR * e2a;
    if (std::abs(c.den) < 1e-14)
        throw SingularEvaluation(fmt::format("cavity resonance: |1 - rL rR e^(2i w a)| < 1e-14 at omega = {}", omega));

    // e^{s d} factors are pure phases on the real axis
    const cplx emd = phase(-omega * d);
    c.T = c.tL * c.tR * emd * emd / c.den;
    c.Cgt = c.tL * emd / c.den;
    c.Dgt = c.rR * c.tL * phase(omega * (a - d)) / c.den;
    c.Clt = c.tR * emd / c.den;
    c.Dlt = c.rL * c.tR * phase(omega * (a - d)) / c.den;
    const cplx ph = phase(-omega * (a + 2.0 * d));
    c.Rgt = (c.rL + c.rR * c.tL * c.tL * e2a / c.den) * ph;
    c.Rlt = (c.rR + c.rL * c.tR * c.tR * e2a / c.den) * ph;

    if (!slab_amplitudes) {
        c.Agt = c.Bgt = c.Egt = c.Fgt = missing;
        return c;
    }
    const cplx s{0.0, -omega};
    const double X = 0.5 * a + d;
    const cplx nL = c.nL, nR = c.nR;
    const cplx Rr = c.Rgt * std::exp(-s * (a + 2.0 * d));
    c.Agt = (nL + 1.0) / (2.0 * nL) * std::exp(s * (1.0 - nL) * X) * (1.0 - c.rnL * Rr);
    c.Bgt = (nL + 1.0) / (2.0 * nL) * std::exp(s * (1.0 + nL) * X) * (Rr - c.rnL);
    c.Egt = (nR + 1.0) / (2.0 * nR) * std::exp(s * (nR - 1.0) * X) * c.T;
    c.Fgt = (nR - 1.0) / (2.0 * nR) * std::exp(-s * (nR + 1.0) * X) * c.T;
    return c;
}

FieldValue slab_field(cplx n, double d, double omega, cplx a, cplx b, double u)
{
    const cplx rn = surface_reflection(n);
    const cplx q = std::exp(I * omega * n * d);
    const cplx kappa = (2.0 / (1.0 + n)) / (1.0 - rn * rn * q * q);
    const cplx P = a - b * rn * q;
    const cplx Q = b - a * rn * q;
    const cplx e1 = std::exp(I * omega * n * u);
    const cplx e2 = std::exp(I * omega * n * (d - u));
    return {kappa * (P * e1 + Q * e2), I * omega * n * kappa * (P * e1 - Q * e2)};
}

double slab_field_intensity(cplx n, double d, double omega, cplx a, cplx b)
{
    const cplx rn = surface_reflection(n);
    const cplx q = std::exp(I * omega * n * d);
    const double k2 = std::norm(2.0 / (1.0 + n)) / std::norm(1.0 - rn * rn * q * q);
    const cplx P = a - b * rn * q;
    const cplx Q = b - a * rn * q;
    const double att = omega * n.imag();
    const double ph = omega * n.real();
    const double I1 = att == 0.0 ? d : -std::expm1(-2.0 * att * d) / (2.0 * att);
    const cplx I2 = ph == 0.0 ? cplx(d) : phase(ph * d) * (std::sin(ph * d) / ph);
    const cplx J = std::exp(-I * omega * std::conj(n) * d) * I2;
    return k2 * ((std::norm(P) + std::norm(Q)) * I1 + 2.0 * std::real(P * std::conj(Q) * J));
}

ModeFunction make_mode(const CavityConfig& cfg, const ScatteringSet& sc, ModeKind kind, ModeNorm norm)
{
    ModeFunction m;
    m.kind = kind;
    m.norm = norm;
    m.cfg = cfg;
    m.conjugated = sc.at < 0.0;
    m.coefficients = m.conjugated ? conj_set(sc) : sc;
    const ScatteringSet& c = m.coefficients;
    const double w = c.at;
    const double a = cfg.gap;
    const double X = 0.5 * a + cfg.width;
    m.omega = w;
    const cplx h = phase(0.5 * w * a);
    for (cplx* z : {&m.lo_p, &m.lo_m, &m.gap_p, &m.gap_m, &m.ro_p, &m.ro_m, &m.left_in, &m.left_back,
                    &m.right_in, &m.right_back})
        *z = missing;

    const bool greater = kind == ModeKind::phi_greater;
    switch (norm) {
    case ModeNorm::incident:
        if (greater) {
            m.lo_p = 1.0;
            m.lo_m = c.Rgt;
            m.gap_p = c.Cgt;
            m.gap_m = c.Dgt;
            m.ro_p = c.T;
            m.ro_m = 0.0;
            m.left_in = phase(-w * X);
            m.left_back = c.Dgt * h;
            m.right_in = c.Cgt * h;
            m.right_back = 0.0;
        } else {
            m.lo_p = 0.0;
            m.lo_m = c.T;
            m.gap_p = c.Dlt;
            m.gap_m = c.Clt;
            m.ro_p = c.Rlt;
            m.ro_m = 1.0;
            m.left_in = 0.0;
            m.left_back = c.Clt * h;
            m.right_in = c.Dlt * h;
            m.right_back = phase(-w * X);
        }
        break;
    case ModeNorm::gap:
        if (greater) {
            m.gap_p = 1.0;
            m.gap_m = c.rR * phase(w * a);
            m.right_in = h;
            m.right_back = 0.0;
            m.ro_p = c.tR * phase(-w * cfg.width);
            m.ro_m = 0.0;
        } else {
            m.gap_m = 1.0;
            m.gap_p = c.rL * phase(w * a);
            m.left_back = h;
            m.left_in = 0.0;
            m.lo_m = c.tL * phase(-w * cfg.width);
            m.lo_p = 0.0;
        }
        break;
    case ModeNorm::exterior:
        if (greater) {
            m.ro_p = 1.0;
            m.ro_m = 0.0;
        } else {
            m.lo_m = 1.0;
            m.lo_p = 0.0;
        }
        break;
    }
    return m;
}

ModeFunction make_mode(const CavityConfig& cfg, ModeKind kind, double omega, ModeNorm norm)
{
    return make_mode(cfg, cavity_coefficients(cfg, omega), kind, norm);
}

FieldValue mode_eval_with_derivative(const ModeFunction& m, double x)
{
    const Region r = region_of(m.cfg, x);
    const double w = m.omega;
    const double h = 0.5 * m.cfg.gap;
    const double d = m.cfg.width;
    auto vac = [&](cplx p, cplx q) -> FieldValue {
        if (is_missing(p) || is_missing(q))
            throw RegionUnsupported(fmt::format("mode normalization not defined in region {}", region_name(r)));
        const cplx ep = phase(w * x), em = phase(-w * x);
        return {p * ep + q * em, I * w * (p * ep - q * em)};
    };
    auto slab = [&](cplx n, cplx in, cplx back, double u) -> FieldValue {
        if (is_missing(in) || is_missing(back))
            throw RegionUnsupported(fmt::format("mode normalization not defined in region {}", region_name(r)));
        return slab_field(n, d, w, in, back, u);
    };
    FieldValue f;
    switch (r) {
    case Region::exterior_left: f = vac(m.lo_p, m.lo_m); break;
    case Region::slab_left: f = slab(m.coefficients.nL, m.left_in, m.left_back, x + h + d); break;
    case Region::gap: f = vac(m.gap_p, m.gap_m); break;
    case Region::slab_right: f = slab(m.coefficients.nR, m.right_in, m.right_back, x - h); break;
    case Region::exterior_right: f = vac(m.ro_p, m.ro_m); break;
    }
    if (m.conjugated) {
        f.value = std::conj(f.value);
        f.dx = std::conj(f.dx);
    }
    return f;
}

cplx mode_eval(const ModeFunction& mode, double x) { return mode_eval_with_derivative(mode, x).value; }

double mode_intensity_integral(const ModeFunction& m, Region slab)
{
    cplx in, back, n;
    if (slab == Region::slab_left) {
        in = m.left_in;
        back = m.left_back;
        n = m.coefficients.nL;
    } else if (slab == Region::slab_right) {
        in = m.right_in;
        back = m.right_back;
        n = m.coefficients.nR;
    } else {
        throw RegionUnsupported("mode_intensity_integral: region is not a slab");
    }
    if (is_missing(in) || is_missing(back))
        throw RegionUnsupported(fmt::format("mode normalization not defined in region {}", region_name(slab)));
    return slab_field_intensity(n, m.cfg.width, m.omega, in, back);
}

FieldValue green_function_with_derivative(const CavityConfig& cfg, double x, double xp, double omega)
{
    if (omega == 0.0) throw DomainError("green_function: omega = 0 is a pole of the transform");
    if (omega < 0.0) {
        const FieldValue g = green_function_with_derivative(cfg, x, xp, -omega);
        return {std::conj(g.value), std::conj(g.dx)};
    }
    const Region r = region_of(cfg, x);
    if (r == Region::slab_left || r == Region::slab_right)
        throw RegionUnsupported(fmt::format("green_function: x = {} lies inside a slab", x));
    const ScatteringSet sc = cavity_coefficients(cfg, omega, false);
    const cplx two_s{0.0, -2.0 * omega};

    // G = phi<(x_<) phi>(x_>) / W, with the normalization chosen per region so
    // that no factor 1/T appears
    ModeFunction lo, hi;
    cplx W;
    if (r == Region::exterior_left) {
        lo = make_mode(cfg, sc, ModeKind::phi_less, ModeNorm::exterior);
        hi = make_mode(cfg, sc, ModeKind::phi_greater, ModeNorm::incident);
        W = -two_s;
    } else if (r == Region::gap) {
        lo = make_mode(cfg, sc, ModeKind::phi_less, ModeNorm::gap);
        hi = make_mode(cfg, sc, ModeKind::phi_greater, ModeNorm::gap);
        W = -two_s * sc.den;
    } else {
        lo = make_mode(cfg, sc, ModeKind::phi_less, ModeNorm::incident);
        hi = make_mode(cfg, sc, ModeKind::phi_greater, ModeNorm::exterior);
        W = -two_s;
    }
    if (xp < x) {
        const cplx a = mode_eval(lo, xp);
        const FieldValue b = mode_eval_with_derivative(hi, x);
        return {a * b.value / W, a * b.dx / W};
    }
    const FieldValue a = mode_eval_with_derivative(lo, x);
    const cplx b = mode_eval(hi, xp);
    return {a.value * b / W, a.dx * b / W};
}

cplx green_function(const CavityConfig& cfg, double x, double xp, double omega)
{
    return green_function_with_derivative(cfg, x, xp, omega).value;
}

}  // namespace casimir
