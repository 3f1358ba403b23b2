#pragma once

#include <vector>

#include "chiralwg/floquet.hpp"
#include "chiralwg/params.hpp"

namespace chiralwg::markov {

// One solution of omega_l(k) + n*omega_d = omega_q.
struct ResonanceRoot {
    int band = 0;     // 1-based band index l
    int order = 0;    // Floquet order n
    double k = 0.0;   // root wavenumber [rad/m]
    double weight = 0.0;  // |u_ln(k_ln)|^2
    double vg = 0.0;      // band slope at the root [m/s]
    bool edge = false;    // near zone edge or |vg| ~ 0; excluded from rates
};

struct FindOptions {
    double rel_tol = 1e-10;      // |omega - target| < rel_tol * omega_q
    double min_weight = 1e-12;   // drop numerically-zero channels
    double edge_vg_factor = 1e-4;  // |vg| < factor*v0 flags edge
    int edge_grid_steps = 2;       // distance to +-kd/2 flagging edge
    int max_bisect = 80;
};

std::vector<ResonanceRoot> find_resonances(const floquet::BandStructure& bs, double omega_q,
                                           const FindOptions& opt = {});

struct ChiralReport {
    double gamma_R = 0.0;
    double gamma_L = 0.0;
    double gamma_0 = 0.0;
    double beta_plus = 0.0;
    double beta_minus = 0.0;
    std::vector<ResonanceRoot> roots;
};

// Directional decay rates. A non-edge root contributes
//   gamma0 * |u_ln|^2 * (v0/|vg|)
// to the side selected by sign(vg); the inverse group velocity is the 1D
// density of states at the root. Throws DegenerateChirality when
// gamma_R + gamma_L < 1e-6 * gamma0 (gap regime, beta undefined).
ChiralReport decay_rates(const std::vector<ResonanceRoot>& roots, double gamma0, double v0);

// Transmon coupling parameters entering g0.
struct QubitCircuit {
    double cjq_over_csigma = 0.1;  // coupling/total capacitance ratio
    double ej_over_ec = 50.0;      // transmon regime requires >= 20
};

// g0 for quantization length L; g0^2 scales as 1/L.
double g0_from_circuit(const QubitCircuit& circ, const DerivedDensities& dens, double omega_q,
                       double L);

// gamma0 = g0^2 L / v0; independent of L.
double gamma0_from_circuit(const QubitCircuit& circ, const DerivedDensities& dens,
                           double omega_q, double L = 1.0);

}  // namespace chiralwg::markov
