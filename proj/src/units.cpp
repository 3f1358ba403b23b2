#include "chiralwg/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "chiralwg/constants.hpp"
#include "chiralwg/errors.hpp"

namespace chiralwg::units {

namespace {

struct UnitEntry {
    const char* symbol;
    Dim dim;
    double scale;   // multiplies the numeric value
    bool cyclic;    // true: value is per-cycle, multiply by 2*pi
};

constexpr std::array<UnitEntry, 34> kUnits{{
    {"m", Dim::Length, 1.0, false},
    {"mm", Dim::Length, 1e-3, false},
    {"um", Dim::Length, 1e-6, false},
    {"nm", Dim::Length, 1e-9, false},
    {"s", Dim::Time, 1.0, false},
    {"ms", Dim::Time, 1e-3, false},
    {"us", Dim::Time, 1e-6, false},
    {"ns", Dim::Time, 1e-9, false},
    {"ps", Dim::Time, 1e-12, false},
    {"F", Dim::Capacitance, 1.0, false},
    {"pF", Dim::Capacitance, 1e-12, false},
    {"fF", Dim::Capacitance, 1e-15, false},
    {"nF", Dim::Capacitance, 1e-9, false},
    {"H", Dim::Inductance, 1.0, false},
    {"uH", Dim::Inductance, 1e-6, false},
    {"nH", Dim::Inductance, 1e-9, false},
    {"pH", Dim::Inductance, 1e-12, false},
    {"A", Dim::Current, 1.0, false},
    {"mA", Dim::Current, 1e-3, false},
    {"uA", Dim::Current, 1e-6, false},
    {"nA", Dim::Current, 1e-9, false},
    {"m/s", Dim::Velocity, 1.0, false},
    {"km/s", Dim::Velocity, 1e3, false},
    {"Hz", Dim::AngularFrequency, 1.0, true},
    {"kHz", Dim::AngularFrequency, 1e3, true},
    {"MHz", Dim::AngularFrequency, 1e6, true},
    {"GHz", Dim::AngularFrequency, 1e9, true},
    {"rad/s", Dim::AngularFrequency, 1.0, false},
    {"Grad/s", Dim::AngularFrequency, 1e9, false},
    {"1/m", Dim::AngularWavenumber, 1.0, true},
    {"/m", Dim::AngularWavenumber, 1.0, true},
    {"1/mm", Dim::AngularWavenumber, 1e3, true},
    {"rad/m", Dim::AngularWavenumber, 1.0, false},
    {"rad/mm", Dim::AngularWavenumber, 1e3, false},
}};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

const char* dim_name(Dim d) {
    switch (d) {
        case Dim::Dimensionless: return "dimensionless";
        case Dim::Length: return "length";
        case Dim::Time: return "time";
        case Dim::Capacitance: return "capacitance";
        case Dim::Inductance: return "inductance";
        case Dim::Current: return "current";
        case Dim::Velocity: return "velocity";
        case Dim::AngularFrequency: return "frequency";
        case Dim::AngularWavenumber: return "wavenumber";
    }
    return "?";
}

double parse_quantity(std::string_view text, Dim expected) {
    std::string_view s = trim(text);
    if (s.empty()) throw SpecError("empty quantity where " + std::string(dim_name(expected)) + " expected");

    // Split numeric prefix from unit suffix.
    size_t pos = 0;
    while (pos < s.size()) {
        char c = s[pos];
        if ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.' || c == 'e' || c == 'E') {
            // 'e'/'E' only counts as part of the number if followed by digit or sign
            if ((c == 'e' || c == 'E') &&
                !(pos + 1 < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos + 1])) ||
                                         s[pos + 1] == '+' || s[pos + 1] == '-'))) {
                break;
            }
            ++pos;
        } else {
            break;
        }
    }
    std::string_view num = s.substr(0, pos);
    std::string_view unit = trim(s.substr(pos));

    double value = 0.0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc{} || p != num.data() + num.size()) {
        throw SpecError("cannot parse number in quantity '" + std::string(text) + "'");
    }

    if (unit.empty()) {
        if (expected == Dim::Dimensionless) return value;
        throw SpecError("missing unit on '" + std::string(text) + "' (expected " +
                        std::string(dim_name(expected)) + ")");
    }
    if (expected == Dim::Dimensionless) {
        throw SpecError("unexpected unit '" + std::string(unit) + "' on dimensionless quantity");
    }
    for (const auto& u : kUnits) {
        if (unit == u.symbol && u.dim == expected) {
            double v = value * u.scale;
            return u.cyclic ? v * constants::two_pi : v;
        }
    }
    throw SpecError("unknown or mismatched unit '" + std::string(unit) + "' for " +
                    std::string(dim_name(expected)) + " in '" + std::string(text) + "'");
}

std::string format_ghz(double omega_rad_s) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g GHz", omega_rad_s / constants::two_pi / 1e9);
    return buf;
}

}  // namespace chiralwg::units
