#pragma once

#include <stdexcept>
#include <string>

namespace mkt {

// Thrown when a MobiusTable does not cover the range a computation needs.
struct TableTooSmall : std::out_of_range {
    explicit TableTooSmall(const std::string& what) : std::out_of_range(what) {}
};

struct NoSquareRoot : std::domain_error {
    explicit NoSquareRoot(const std::string& what) : std::domain_error(what) {}
};

struct CannotLift : std::domain_error {
    explicit CannotLift(const std::string& what) : std::domain_error(what) {}
};

struct NonCoprimeModuli : std::invalid_argument {
    explicit NonCoprimeModuli(const std::string& what) : std::invalid_argument(what) {}
};

// Search or refinement exceeded its iteration safety cap.
struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check that must hold by construction failed.
struct ConstructionBug : std::logic_error {
    explicit ConstructionBug(const std::string& what) : std::logic_error(what) {}
};

struct PreconditionViolation : std::invalid_argument {
    explicit PreconditionViolation(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidInstance : std::invalid_argument {
    explicit InvalidInstance(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace mkt
