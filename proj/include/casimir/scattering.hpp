#pragma once

#include <complex>
#include <utility>

#include "casimir/material.hpp"

namespace casimir {

// Slabs occupy [-d-a/2, -a/2] and [a/2, d+a/2].
struct CavityConfig {
    double gap = 1.0;
    double width = 1.0;
    Material left;
    Material right;
};

void validate(const CavityConfig& cfg);
CavityConfig mirrored(const CavityConfig& cfg);

enum class Region { exterior_left, slab_left, gap, slab_right, exterior_right };

// Interfaces resolve to the gap side (x = +-a/2) or the exterior side (x = +-(d+a/2)).
Region region_of(const CavityConfig& cfg, double x);
const char* region_name(Region r);

// Single slab at real frequency omega, s = -i omega.
struct SlabResponse {
    cplx n;
    cplx rn;
    cplx q;  // e^{i omega n d}, |q| <= 1
    cplx r;
    cplx t;
};

SlabResponse slab_response(const Material& mat, double d, double omega);
std::pair<cplx, cplx> slab_coefficients(const Material& mat, double d, double omega);
// |t|^2 e^{2 omega Im(n) d} without forming either factor
double slab_transmission_scaled(const Material& mat, double d, double omega);

struct ScatteringSet {
    double at = 0.0;  // real frequency; s = -i at
    double gap = 0.0, width = 0.0;
    cplx nL, nR, rnL, rnR;
    cplx rL, tL, rR, tR;
    cplx den;  // 1 - rL rR e^{2 i omega a}
    cplx Rgt, Rlt, T;
    cplx Cgt, Dgt, Clt, Dlt;
    // in-slab amplitudes of the > mode; these follow the closed forms literally
    // and under/overflow once omega Im(n) d is a few hundred
    cplx Agt, Bgt, Egt, Fgt;
};

// slab_amplitudes = false leaves Agt..Fgt as NaN (saves four complex exponentials)
ScatteringSet cavity_coefficients(const CavityConfig& cfg, double omega, bool slab_amplitudes = true);

enum class ModeKind { phi_less, phi_greater };

// Normalization of a mode:
//   incident  - unit incoming wave from the far side (the table definition)
//   gap       - divided by its C coefficient; available on the gap and the far slab/exterior
//   exterior  - divided by T; available only on the exterior the mode emerges into
enum class ModeNorm { incident, gap, exterior };

// Per-region representation. Vacuum regions: p e^{i omega x} + m e^{-i omega x}.
// Slabs: incoming amplitudes at the two faces, field built from the bounded
// single-slab response (no e^{+omega Im(n) d} factors).
struct ModeFunction {
    ModeKind kind = ModeKind::phi_greater;
    ModeNorm norm = ModeNorm::incident;
    CavityConfig cfg;
    double omega = 0.0;  // |omega|; negative frequencies are stored as a conjugation flag
    bool conjugated = false;
    ScatteringSet coefficients;
    cplx lo_p, lo_m, gap_p, gap_m, ro_p, ro_m;
    cplx left_in, left_back;    // left slab: entering at its left face, entering at its right face
    cplx right_in, right_back;  // right slab, same convention
};

ModeFunction make_mode(const CavityConfig& cfg, ModeKind kind, double omega, ModeNorm norm = ModeNorm::incident);
ModeFunction make_mode(const CavityConfig& cfg, const ScatteringSet& sc, ModeKind kind, ModeNorm norm);

struct FieldValue {
    cplx value;
    cplx dx;
};

cplx mode_eval(const ModeFunction& mode, double x);
FieldValue mode_eval_with_derivative(const ModeFunction& mode, double x);

// int over the slab of |mode|^2, closed form
double mode_intensity_integral(const ModeFunction& mode, Region slab);

// Field in one slab of width d from amplitudes a (entering at u = 0) and b (entering at u = d):
// value and derivative at u, and int_0^d |field|^2.
FieldValue slab_field(cplx n, double d, double omega, cplx a, cplx b, double u);
double slab_field_intensity(cplx n, double d, double omega, cplx a, cplx b);

// Retarded Green function transform at s = -i omega; x must be in an exterior or the gap.
cplx green_function(const CavityConfig& cfg, double x, double xp, double omega);
FieldValue green_function_with_derivative(const CavityConfig& cfg, double x, double xp, double omega);

}  // namespace casimir
