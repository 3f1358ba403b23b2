#include "chiralwg/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chiralwg/constants.hpp"
#include "chiralwg/errors.hpp"

namespace chiralwg::floquet {

namespace {

// Deterministic phase: rotate so the largest-magnitude component is real >= 0.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best) {
            best = a;
            imax = i;
        }
    }
    if (best <= 0.0) return;
    const std::complex<double> ph = std::conj(v[imax]) / best;
    v *= ph;
}

struct RawSolution {
    Eigen::VectorXd omega;
    Eigen::MatrixXcd u;
    double max_imag;
};

// Companion linearization [[0, I], [-M2^-1 M0, -M2^-1 M1]]; retains the
// n_harm eigenvalues of largest real part (the positive-frequency branches),
// sorted ascending, eigenvectors unit-normalized on the top block.
RawSolution solve_qep(const WaveguideSpec& spec, double k) {
    const QepMatrices qep = assemble_qep(spec, k);
    const int n = static_cast<int>(qep.m2.rows());

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    comp.topRightCorner(n, n).setIdentity();
    // M2 is diagonal with strictly negative entries.
    Eigen::VectorXd inv_m2 = qep.m2.diagonal().cwiseInverse();
    comp.bottomLeftCorner(n, n) = (-inv_m2).asDiagonal() * qep.m0;
    comp.bottomRightCorner(n, n) = (-inv_m2.cwiseProduct(qep.m1.diagonal())).asDiagonal();

    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, true);
    if (es.info() != Eigen::Success) {
        throw NumericalError("floquet eigensolver failed to converge at k = " + std::to_string(k));
    }

    const Eigen::VectorXcd evals = es.eigenvalues();
    std::vector<int> order(2 * n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return evals[a].real() > evals[b].real(); });

    RawSolution out;
    out.omega.resize(n);
    out.u.resize(n, n);
    out.max_imag = 0.0;
    // Top n by real part, then ascending.
    std::vector<int> keep(order.begin(), order.begin() + n);
    std::sort(keep.begin(), keep.end(),
              [&](int a, int b) { return evals[a].real() < evals[b].real(); });
    for (int l = 0; l < n; ++l) {
        const int j = keep[l];
        out.omega[l] = evals[j].real();
        out.max_imag = std::max(out.max_imag, std::abs(evals[j].imag()));
        Eigen::VectorXcd vec = es.eigenvectors().col(j).head(n);
        const double nrm = vec.norm();
        if (nrm > 0.0) vec /= nrm;
        fix_phase(vec);
        out.u.col(l) = vec;
    }
    return out;
}

}  // namespace

QepMatrices assemble_qep(const WaveguideSpec& spec, double k) {
    const int nf = spec.n_floquet;
    const int n = 2 * nf + 1;
    const double cg = spec.Cg / spec.d0;
    const double cj = spec.CJ / spec.d0;
    const double lj = spec.L0 / spec.d0;
    const double omega_d = spec.vd * spec.kd;
    const double d0sq = spec.d0 * spec.d0;

    QepMatrices qep;
    qep.m2 = Eigen::MatrixXd::Zero(n, n);
    qep.m1 = Eigen::MatrixXd::Zero(n, n);
    qep.m0 = Eigen::MatrixXd::Zero(n, n);

    auto q = [&](int order) { return k + order * spec.kd; };

    for (int j = 0; j < n; ++j) {
        const int order = j - nf;
        const double qn = q(order);
        const double cap = cj * d0sq * qn * qn + cg;  // effective capacitance of harmonic n
        qep.m2(j, j) = -cap;
        qep.m1(j, j) = -2.0 * order * omega_d * cap;
        qep.m0(j, j) = -(order * omega_d) * (order * omega_d) * cap +
                       spec.alpha0 / lj * qn * qn;
        // Brillouin coupling to the n+-1 harmonics.
        if (j + 1 < n) qep.m0(j, j + 1) = spec.delta_alpha / (2.0 * lj) * qn * q(order + 1);
        if (j - 1 >= 0) qep.m0(j, j - 1) = spec.delta_alpha / (2.0 * lj) * qn * q(order - 1);
    }
    return qep;
}

BandSolution solve_band(const WaveguideSpec& spec, double k, double tol_im) {
    RawSolution raw = solve_qep(spec, k);
    BandSolution out;
    out.omega = std::move(raw.omega);
    out.u = std::move(raw.u);
    out.max_imag = raw.max_imag;
    out.stable = raw.max_imag <= tol_im;
    return out;
}

BranchPoint branch_at(const WaveguideSpec& spec, double k, const Eigen::VectorXcd& u_ref,
                      double tol_im) {
    BandSolution sol = solve_band(spec, k, tol_im);
    int best = 0;
    double best_ov = -1.0;
    for (int l = 0; l < sol.omega.size(); ++l) {
        const double ov = std::abs(u_ref.dot(sol.u.col(l)));
        if (ov > best_ov) {
            best_ov = ov;
            best = l;
        }
    }
    return {sol.omega[best], sol.u.col(best)};
}

bool BandStructure::all_stable() const {
    for (unsigned char s : stable_k) {
        if (!s) return false;
    }
    return true;
}

BandStructure band_structure(const WaveguideSpec& spec, int n_k, double tol_im_factor) {
    spec.validate();
    if (n_k < 64) throw SpecError("band_structure: n_k must be >= 64");

    BandStructure bs;
    bs.spec = spec;
    bs.dens = derive_densities(spec);
    bs.tol_im = tol_im_factor * std::abs(bs.dens.omega_d);

    const int nb = 2 * spec.n_floquet + 1;
    const double dk = spec.kd / n_k;
    bs.k_grid.resize(n_k);
    for (int i = 0; i < n_k; ++i) bs.k_grid[i] = -0.5 * spec.kd + (i + 1) * dk;

    bs.omega.resize(nb, n_k);
    bs.vg.resize(nb, n_k);
    bs.u.resize(n_k);
    bs.stable_k.assign(n_k, 1);

    Eigen::MatrixXcd prev_u;
    for (int i = 0; i < n_k; ++i) {
        BandSolution sol = solve_band(spec, bs.k_grid[i], bs.tol_im);
        bs.stable_k[i] = sol.stable ? 1 : 0;

        if (i > 0) {
            // Assign branches by maximal eigenvector overlap with the
            // previous k-point, so avoided crossings keep their identity.
            Eigen::MatrixXd ov(nb, nb);
            for (int l = 0; l < nb; ++l)
                for (int m = 0; m < nb; ++m)
                    ov(l, m) = std::abs(prev_u.col(l).dot(sol.u.col(m)));
            std::vector<int> assign(nb, -1);
            std::vector<bool> used_row(nb, false), used_col(nb, false);
            for (int pick = 0; pick < nb; ++pick) {
                int bl = -1, bm = -1;
                double best = -1.0;
                for (int l = 0; l < nb; ++l) {
                    if (used_row[l]) continue;
                    for (int m = 0; m < nb; ++m) {
                        if (used_col[m]) continue;
                        if (ov(l, m) > best) {
                            best = ov(l, m);
                            bl = l;
                            bm = m;
                        }
                    }
                }
                assign[bl] = bm;
                used_row[bl] = true;
                used_col[bm] = true;
            }
            // Keep the ascending invariant: fall back to sorted order if the
            // overlap assignment would reorder two well-separated bands.
            bool monotone = true;
            for (int l = 0; l + 1 < nb; ++l) {
                if (sol.omega[assign[l]] > sol.omega[assign[l + 1]] + bs.tol_im) {
                    monotone = false;
                    break;
                }
            }
            if (!monotone) std::iota(assign.begin(), assign.end(), 0);

            Eigen::MatrixXcd uk(nb, nb);
            for (int l = 0; l < nb; ++l) {
                bs.omega(l, i) = sol.omega[assign[l]];
                uk.col(l) = sol.u.col(assign[l]);
            }
            bs.u[i] = std::move(uk);
        } else {
            bs.omega.col(i) = sol.omega;
            bs.u[i] = sol.u;
        }
        prev_u = bs.u[i];
    }

    // Group velocities: central differences, one-sided at the zone edges.
    for (int l = 0; l < nb; ++l) {
        for (int i = 0; i < n_k; ++i) {
            if (i == 0) {
                bs.vg(l, i) = (bs.omega(l, 1) - bs.omega(l, 0)) / dk;
            } else if (i == n_k - 1) {
                bs.vg(l, i) = (bs.omega(l, i) - bs.omega(l, i - 1)) / dk;
            } else {
                bs.vg(l, i) = (bs.omega(l, i + 1) - bs.omega(l, i - 1)) / (2.0 * dk);
            }
        }
    }
    return bs;
}

std::vector<GridCrossing> scan_band_value(const BandStructure& bs, int band, double target) {
    std::vector<GridCrossing> hits;
    const int n_k = bs.n_k();
    for (int i = 0; i + 1 < n_k; ++i) {
        const double a = bs.omega(band, i) - target;
        const double b = bs.omega(band, i + 1) - target;
        if (a == 0.0) {
            hits.push_back({i, 0.0});
        } else if (a * b < 0.0) {
            hits.push_back({i, a / (a - b)});
        }
    }
    if (n_k >= 2 && bs.omega(band, n_k - 1) == target) hits.push_back({n_k - 2, 1.0});
    return hits;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Bidirectional: return "Bidirectional";
        case Regime::RightChiral: return "RightChiral";
        case Regime::LeftChiral: return "LeftChiral";
        case Regime::Gap: return "Gap";
    }
    return "?";
}

GapReport classify_regimes(const BandStructure& bs, const ClassifyOptions& opt) {
    const int nb = bs.n_bands();
    const int nf = bs.spec.n_floquet;
    const double omega_d = bs.dens.omega_d;

    double lo = opt.omega_lo, hi = opt.omega_hi;
    if (lo <= 0.0 || hi <= lo) {
        // Default: bracket the zone-edge region where the modulation acts.
        const double edge = bs.dens.v0 * bs.spec.kd / 2.0;
        lo = 0.55 * edge;
        hi = 1.25 * edge + 2.0 * std::abs(omega_d);
    }
    const int n_scan = std::max(opt.n_scan, 16);
    const double dw = (hi - lo) / n_scan;

    auto label_at = [&](double w) {
        double right = 0.0, left = 0.0;
        double dom_w = 0.0, dom_vg = 0.0;
        for (int l = 0; l < nb; ++l) {
            for (int n = -nf; n <= nf; ++n) {
                const double target = w - n * omega_d;
                for (const GridCrossing& c : scan_band_value(bs, l, target)) {
                    const double weight = (1.0 - c.frac) * bs.weight(l, n, c.idx) +
                                          c.frac * bs.weight(l, n, c.idx + 1);
                    const double vg = (1.0 - c.frac) * bs.vg(l, c.idx) +
                                      c.frac * bs.vg(l, c.idx + 1);
                    (vg > 0.0 ? right : left) += weight;
                    if (weight > dom_w) {
                        dom_w = weight;
                        dom_vg = vg;
                    }
                }
            }
        }
        if (dom_w < opt.weight_threshold) return Regime::Gap;
        if (dom_vg > 0.0 && left < opt.weight_threshold) return Regime::RightChiral;
        if (dom_vg < 0.0 && right < opt.weight_threshold) return Regime::LeftChiral;
        return Regime::Bidirectional;
    };

    GapReport report;
    Regime current = label_at(lo + 0.5 * dw);
    double win_lo = lo;
    for (int i = 1; i < n_scan; ++i) {
        const Regime r = label_at(lo + (i + 0.5) * dw);
        if (r != current) {
            report.windows.push_back({win_lo, lo + i * dw, current});
            win_lo = lo + i * dw;
            current = r;
        }
    }
    report.windows.push_back({win_lo, hi, current});

    for (const RegimeWindow& w : report.windows) {
        if (w.label != Regime::Gap) continue;
        // Locate the band extremum bounding the gap from below.
        double best_k = 0.0, best_gap = -1.0;
        for (int l = 0; l < nb; ++l) {
            for (int i = 0; i < bs.n_k(); ++i) {
                const double om = bs.omega(l, i);
                if (om <= w.omega_lo && (w.omega_lo - om) < (best_gap < 0 ? 1e300 : best_gap)) {
                    best_gap = w.omega_lo - om;
                    best_k = bs.k_grid[i];
                }
            }
        }
        report.gaps.push_back({w.omega_lo, w.omega_hi, best_k});
    }
    return report;
}

}  // namespace chiralwg::floquet
