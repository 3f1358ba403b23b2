#pragma once

#include <utility>

namespace chiralwg {

// Circuit parameters of the modulated SQUID-chain waveguide, SI units.
// The modulation drive is a travelling wave cos(omega_d*t - kd*x) with
// omega_d = vd*kd; vd may be negative to reverse the drive direction.
struct WaveguideSpec {
    double d0 = 1e-6;           // cell pitch [m]
    double Cg = 0.2e-15;        // ground capacitance per cell [F]
    double CJ = 100e-15;        // junction shunt capacitance per cell [F]
    double L0 = 0.2e-9;         // junction inductance per cell [H]
    double alpha0 = 0.3;        // static inverse-inductance factor, (0,1]
    double delta_alpha = 0.045; // modulation amplitude of alpha (signed)
    double kd = 0.0;            // drive wavenumber [rad/m]
    double vd = 0.0;            // drive phase velocity [m/s], sign = direction
    int n_floquet = 2;          // harmonic truncation order (>=1)

    // Throws SpecError if any invariant fails. The vd stability bound is
    // |vd| < v0_effective.
    void validate() const;
};

// Per-unit-length densities and derived drive/propagation quantities.
struct DerivedDensities {
    double cg = 0.0;        // Cg/d0 [F/m]
    double cj = 0.0;        // CJ/d0 [F/m]
    double lj = 0.0;        // L0/d0 [H/m]
    double v0 = 0.0;        // sqrt(alpha0/(lj*cg)), effective speed [m/s]
    double v0_bare = 0.0;   // 1/sqrt(lj*cg), speed without the alpha0 factor
    double omega_d = 0.0;   // vd*kd [rad/s], signed
    double lambda_d = 0.0;  // 2*pi/kd [m]
};

DerivedDensities derive_densities(const WaveguideSpec& spec);

// Flux-bias working point: alpha0 = cos(pi*M*I0/phi0),
// delta_alpha = -sin(pi*M*I0/phi0) * pi*M*dI/phi0.
// Rejects cos(...) <= 0 (diverging junction inductance).
std::pair<double, double> derive_alpha(double M, double I0, double dI);

// Dimensionless size of the cj-induced dispersion correction,
// cj*d0^2*k_max^2/cg; the continuum model needs this << 1.
double cj_dispersion_ratio(const WaveguideSpec& spec, double k_max);

// Largest |k + n*kd| reachable on the band grid at truncation n_floquet.
double max_harmonic_wavenumber(const WaveguideSpec& spec);

}  // namespace chiralwg
