#pragma once

#include <stdexcept>
#include <string>

namespace chiralwg {

// Invalid physical parameters or malformed configuration.
struct SpecError : std::runtime_error {
    explicit SpecError(const std::string& msg) : std::runtime_error(msg) {}
};

// Solver breakdown (non-convergence, step underflow, positivity loss).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct WindowTooNarrow : SpecError {
    explicit WindowTooNarrow(const std::string& msg) : SpecError(msg) {}
};

struct WrapAround : SpecError {
    explicit WrapAround(const std::string& msg) : SpecError(msg) {}
};

struct DegenerateChirality : NumericalError {
    explicit DegenerateChirality(const std::string& msg) : NumericalError(msg) {}
};

struct PositivityLoss : NumericalError {
    explicit PositivityLoss(const std::string& msg) : NumericalError(msg) {}
};

struct StepFailure : NumericalError {
    explicit StepFailure(const std::string& msg) : NumericalError(msg) {}
};

struct Instability : NumericalError {
    explicit Instability(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace chiralwg
