#pragma once

#include <stdexcept>
#include <string>

namespace orbitred {

// Base for every failure this library signals on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& what = "division by zero scalar") : Error(what) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& what = "singular matrix") : Error(what) {}
};

// UL factorization does not exist; the point lies outside the section domain.
struct GaussObstruction : Error {
    explicit GaussObstruction(const std::string& what = "Gauss UL decomposition obstructed") : Error(what) {}
};

struct NotInTangentSpace : Error {
    explicit NotInTangentSpace(const std::string& what = "matrix is not in the ad-image") : Error(what) {}
};

struct InvalidOrdering : Error {
    explicit InvalidOrdering(const std::string& what = "eigenvalue ordering invalid") : Error(what) {}
};

struct MembershipViolation : Error {
    explicit MembershipViolation(const std::string& what = "matrix violates orbit membership") : Error(what) {}
};

struct EigenvalueMismatch : Error {
    explicit EigenvalueMismatch(const std::string& what = "eigenvalue not present") : Error(what) {}
};

// Condition (3) eigenvector has a vanishing component; outside the section domain.
struct ZeroEigenvectorComponent : Error {
    explicit ZeroEigenvectorComponent(const std::string& what = "eigenvector component vanishes") : Error(what) {}
};

struct LiftedOffOrbit : Error {
    explicit LiftedOffOrbit(const std::string& what = "lifted matrix fell off its orbit") : Error(what) {}
};

struct CorrectionUnsolvable : Error {
    explicit CorrectionUnsolvable(const std::string& what = "tangent correction system inconsistent") : Error(what) {}
};

struct StepThroughBoundary : Error {
    explicit StepThroughBoundary(const std::string& what = "finite-difference probe left the domain") : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace orbitred
