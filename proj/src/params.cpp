#include "chiralwg/params.hpp"

#include <cmath>
#include <string>

#include "chiralwg/constants.hpp"
#include "chiralwg/errors.hpp"

namespace chiralwg {

void WaveguideSpec::validate() const {
    if (!(d0 > 0.0)) throw SpecError("waveguide.d0 must be > 0");
    if (!(Cg > 0.0)) throw SpecError("waveguide.Cg must be > 0");
    if (!(CJ >= 0.0)) throw SpecError("waveguide.CJ must be >= 0");
    if (!(L0 > 0.0)) throw SpecError("waveguide.L0 must be > 0");
    if (!(alpha0 > 0.0 && alpha0 <= 1.0)) throw SpecError("waveguide.alpha0 must be in (0,1]");
    if (!(std::abs(delta_alpha) < alpha0)) {
        throw SpecError("waveguide.delta_alpha: |delta_alpha| must be < alpha0 "
                        "(inductance must stay positive)");
    }
    if (!(kd > 0.0)) throw SpecError("waveguide.kd must be > 0");
    if (!(vd != 0.0)) throw SpecError("waveguide.vd must be nonzero");
    if (n_floquet < 1) throw SpecError("waveguide.n_floquet must be >= 1");
    const double v0 = std::sqrt(alpha0 * d0 * d0 / (L0 * Cg));
    if (!(std::abs(vd) < v0)) {
        throw SpecError("waveguide.vd: |vd| = " + std::to_string(std::abs(vd)) +
                        " m/s is not below v0 = " + std::to_string(v0) +
                        " m/s (unstable modulation regime)");
    }
}

DerivedDensities derive_densities(const WaveguideSpec& spec) {
    spec.validate();
    DerivedDensities d;
    d.cg = spec.Cg / spec.d0;
    d.cj = spec.CJ / spec.d0;
    d.lj = spec.L0 / spec.d0;
    d.v0_bare = 1.0 / std::sqrt(d.lj * d.cg);
    d.v0 = std::sqrt(spec.alpha0) * d.v0_bare;
    d.omega_d = spec.vd * spec.kd;
    d.lambda_d = constants::two_pi / spec.kd;
    return d;
}

std::pair<double, double> derive_alpha(double M, double I0, double dI) {
    const double theta = constants::pi * M * I0 / constants::phi0;
    const double c = std::cos(theta);
    if (!(c > 0.0)) {
        throw SpecError("derive_alpha: cos(pi*M*I0/phi0) <= 0, junction inductance diverges");
    }
    const double alpha0 = c;
    const double delta_alpha = -std::sin(theta) * constants::pi * M * dI / constants::phi0;
    return {alpha0, delta_alpha};
}

double cj_dispersion_ratio(const WaveguideSpec& spec, double k_max) {
    const double cg = spec.Cg / spec.d0;
    const double cj = spec.CJ / spec.d0;
    return cj * spec.d0 * spec.d0 * k_max * k_max / cg;
}

double max_harmonic_wavenumber(const WaveguideSpec& spec) {
    return spec.kd * (0.5 + spec.n_floquet);
}

}  // namespace chiralwg
