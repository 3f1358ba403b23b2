#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "chiralwg/params.hpp"

namespace chiralwg::floquet {

// Quadratic eigenvalue problem  [w^2 M2 + w M1 + M0] u = 0  for the
// Bloch-Floquet harmonics of the travelling-wave-modulated line. All three
// matrices are real; M2 and M1 are diagonal, M0 is symmetric tridiagonal.
// Harmonic index n runs -n_floquet..n_floquet (row j <-> n = j - n_floquet).
struct QepMatrices {
    Eigen::MatrixXd m2;
    Eigen::MatrixXd m1;
    Eigen::MatrixXd m0;
};

QepMatrices assemble_qep(const WaveguideSpec& spec, double k);

// The 2n_floquet+1 positive-frequency branches at one k, ascending.
// Column l of `u` holds the harmonic coefficients of branch l, unit 2-norm.
struct BandSolution {
    Eigen::VectorXd omega;
    Eigen::MatrixXcd u;
    double max_imag = 0.0;
    bool stable = true;
};

BandSolution solve_band(const WaveguideSpec& spec, double k, double tol_im);

// Solve at arbitrary k and return the branch whose eigenvector has maximal
// overlap |<u_ref, u>|; used for root refinement between grid points.
struct BranchPoint {
    double omega;
    Eigen::VectorXcd u;
};
BranchPoint branch_at(const WaveguideSpec& spec, double k, const Eigen::VectorXcd& u_ref,
                      double tol_im);

struct BandStructure {
    WaveguideSpec spec;
    DerivedDensities dens;
    double tol_im = 0.0;
    Eigen::VectorXd k_grid;               // n_k points spanning (-kd/2, kd/2]
    Eigen::MatrixXd omega;                // n_bands x n_k quasi-energies
    Eigen::MatrixXd vg;                   // d omega_l / dk, central differences
    std::vector<Eigen::MatrixXcd> u;      // per k: harmonics x bands
    std::vector<unsigned char> stable_k;  // per-k stability flag

    int n_bands() const { return static_cast<int>(omega.rows()); }
    int n_orders() const { return n_bands(); }
    int n_k() const { return static_cast<int>(k_grid.size()); }
    // |u_ln(k)|^2 with band l and order n (n in -n_floquet..n_floquet), 0-based l.
    double weight(int l, int n, int ik) const {
        return std::norm(u[ik](n + spec.n_floquet, l));
    }
    bool all_stable() const;
    double grid_step() const { return k_grid[1] - k_grid[0]; }
};

// Uniform grid over (-kd/2, kd/2]; bands stitched for continuity by
// eigenvector overlap, stored ascending. tol_im_factor scales |omega_d|.
BandStructure band_structure(const WaveguideSpec& spec, int n_k, double tol_im_factor = 1e-6);

enum class Regime { Bidirectional, RightChiral, LeftChiral, Gap };
const char* regime_name(Regime r);

struct RegimeWindow {
    double omega_lo;
    double omega_hi;
    Regime label;
};

struct GapWindow {
    double omega_lo;
    double omega_hi;
    double k_center;
};

struct GapReport {
    std::vector<RegimeWindow> windows;
    std::vector<GapWindow> gaps;
};

struct ClassifyOptions {
    double weight_threshold = 0.05;
    double omega_lo = 0.0;  // scan window; 0,0 selects a band-derived default
    double omega_hi = 0.0;
    int n_scan = 2048;
};

GapReport classify_regimes(const BandStructure& bs, const ClassifyOptions& opt = {});

// Grid-level crossings of band l with a target quasi-energy. Each hit is the
// left index of a bracketing interval; frac is the linear-interp position.
struct GridCrossing {
    int idx;
    double frac;
};
std::vector<GridCrossing> scan_band_value(const BandStructure& bs, int band, double target);

}  // namespace chiralwg::floquet
