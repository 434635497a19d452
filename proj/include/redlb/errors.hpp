#pragma once

#include <stdexcept>
#include <string>

namespace redlb {

// System parameters admit no equilibrium (arrival rate at or above capacity).
struct UnstableSystem : std::runtime_error {
    explicit UnstableSystem(const std::string& what) : std::runtime_error(what) {}
};

// The equilibrium-constant linear system is degenerate beyond the handled
// removable-singularity limits.
struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the convergence region of a transform.
struct OutOfDomain : std::runtime_error {
    explicit OutOfDomain(const std::string& what) : std::runtime_error(what) {}
};

// Loss probability so close to 1 that no jobs are admitted.
struct DegenerateLoss : std::runtime_error {
    explicit DegenerateLoss(const std::string& what) : std::runtime_error(what) {}
};

// Malformed parameters or configuration (e.g. d > N, bad JSON field).
struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace redlb
