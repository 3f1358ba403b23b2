#include "chiralwg/markov.hpp"

#include <algorithm>
#include <cmath>

#include "chiralwg/constants.hpp"
#include "chiralwg/errors.hpp"

namespace chiralwg::markov {

namespace {

// Bisection on the stitched band between two grid points; band identity is
// tracked through the eigenvector overlap with the bracketing solution.
ResonanceRoot refine_root(const floquet::BandStructure& bs, int band, int order,
                          const floquet::GridCrossing& hit, double target, double omega_q,
                          const FindOptions& opt) {
    const int nf = bs.spec.n_floquet;
    double k_lo = bs.k_grid[hit.idx];
    double k_hi = bs.k_grid[hit.idx + 1];
    double f_lo = bs.omega(band, hit.idx) - target;
    Eigen::VectorXcd u_ref = bs.u[hit.idx].col(band);

    double k_mid = 0.5 * (k_lo + k_hi);
    floquet::BranchPoint pt{bs.omega(band, hit.idx), u_ref};
    for (int it = 0; it < opt.max_bisect; ++it) {
        k_mid = 0.5 * (k_lo + k_hi);
        pt = floquet::branch_at(bs.spec, k_mid, u_ref, bs.tol_im);
        const double f_mid = pt.omega - target;
        if (std::abs(f_mid) < opt.rel_tol * omega_q) break;
        if (f_lo * f_mid <= 0.0) {
            k_hi = k_mid;
        } else {
            k_lo = k_mid;
            f_lo = f_mid;
        }
        u_ref = pt.u;
    }

    ResonanceRoot root;
    root.band = band + 1;
    root.order = order;
    root.k = k_mid;
    root.weight = std::norm(pt.u[nf + order]);

    // vg from the grid (linear interpolation across the bracketing cell).
    const double frac = (k_mid - bs.k_grid[hit.idx]) / bs.grid_step();
    root.vg = (1.0 - frac) * bs.vg(band, hit.idx) + frac * bs.vg(band, hit.idx + 1);

    const double kd = bs.spec.kd;
    const double edge_dist = static_cast<double>(opt.edge_grid_steps) * bs.grid_step();
    root.edge = (std::abs(root.vg) < opt.edge_vg_factor * bs.dens.v0) ||
                (0.5 * kd - std::abs(root.k) < edge_dist);
    return root;
}

}  // namespace

std::vector<ResonanceRoot> find_resonances(const floquet::BandStructure& bs, double omega_q,
                                           const FindOptions& opt) {
    if (!bs.all_stable()) {
        throw NumericalError("find_resonances: band structure carries unstable k-points");
    }
    const int nb = bs.n_bands();
    const int nf = bs.spec.n_floquet;
    const double omega_d = bs.dens.omega_d;

    std::vector<ResonanceRoot> roots;
    for (int band = 0; band < nb; ++band) {
        const double band_min = bs.omega.row(band).minCoeff();
        const double band_max = bs.omega.row(band).maxCoeff();
        for (int n = -nf; n <= nf; ++n) {
            const double target = omega_q - n * omega_d;
            if (target < band_min || target > band_max) continue;
            for (const floquet::GridCrossing& hit : scan_band_value(bs, band, target)) {
                ResonanceRoot root = refine_root(bs, band, n, hit, target, omega_q, opt);
                if (root.weight < opt.min_weight) continue;
                const bool dup = std::any_of(roots.begin(), roots.end(), [&](const auto& r) {
                    return r.band == root.band && r.order == root.order &&
                           std::abs(r.k - root.k) < 1e-9 * bs.spec.kd;
                });
                if (!dup) roots.push_back(root);
            }
        }
    }
    return roots;
}

ChiralReport decay_rates(const std::vector<ResonanceRoot>& roots, double gamma0, double v0) {
    if (!(gamma0 > 0.0)) throw SpecError("decay_rates: gamma0 must be > 0");
    ChiralReport rep;
    rep.gamma_0 = gamma0;
    rep.roots = roots;
    for (const ResonanceRoot& r : roots) {
        if (r.edge) continue;
        const double contrib = gamma0 * r.weight * (v0 / std::abs(r.vg));
        if (r.vg > 0.0) {
            rep.gamma_R += contrib;
        } else {
            rep.gamma_L += contrib;
        }
    }
    const double total = rep.gamma_R + rep.gamma_L;
    if (total < 1e-6 * gamma0) {
        throw DegenerateChirality("decay_rates: gamma_R + gamma_L < 1e-6 gamma0 "
                                  "(gap regime, chiral factor undefined)");
    }
    rep.beta_plus = rep.gamma_R / total;
    rep.beta_minus = 1.0 - rep.beta_plus;
    return rep;
}

double g0_from_circuit(const QubitCircuit& circ, const DerivedDensities& dens, double omega_q,
                       double L) {
    if (!(circ.cjq_over_csigma > 0.0 && circ.cjq_over_csigma < 1.0)) {
        throw SpecError("qubit coupling: cjq_over_csigma must be in (0,1)");
    }
    if (!(circ.ej_over_ec >= 20.0)) {
        throw SpecError("qubit coupling: ej_over_ec < 20 violates the transmon regime");
    }
    if (!(omega_q > 0.0)) throw SpecError("qubit omega_q must be > 0");
    if (!(L > 0.0)) throw SpecError("quantization length must be > 0");
    const double ct = L * dens.cg;
    const double g0 = std::sqrt(2.0) * constants::e_charge * circ.cjq_over_csigma /
                      constants::hbar * std::pow(circ.ej_over_ec / 4.0, 0.25) *
                      std::sqrt(constants::hbar * omega_q / (2.0 * ct));
    return g0;
}

double gamma0_from_circuit(const QubitCircuit& circ, const DerivedDensities& dens,
                           double omega_q, double L) {
    const double g0 = g0_from_circuit(circ, dens, omega_q, L);
    return g0 * g0 * L / dens.v0;
}

}  // namespace chiralwg::markov
