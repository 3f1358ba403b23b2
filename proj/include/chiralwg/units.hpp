#pragma once

#include <string>
#include <string_view>

namespace chiralwg::units {

// Physical dimension of a config quantity. AngularFrequency and
// AngularWavenumber accept cyclic units (Hz, 1/m) and multiply by 2*pi,
// or the angular units (rad/s, rad/m) verbatim.
enum class Dim {
    Dimensionless,
    Length,
    Time,
    Capacitance,
    Inductance,
    Current,
    Velocity,
    AngularFrequency,
    AngularWavenumber,
};

// Parse "3.02 GHz", "0.2 fF", "1 um", "0.15", ... into SI (angular where
// applicable). Throws SpecError on unknown units or dimension mismatch.
double parse_quantity(std::string_view text, Dim expected);

const char* dim_name(Dim d);

// Formatting helper for reports: angular frequency -> "x.xxx GHz" (cyclic).
std::string format_ghz(double omega_rad_s);

}  // namespace chiralwg::units
