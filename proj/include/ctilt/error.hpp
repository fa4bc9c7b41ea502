#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ctilt {

/// Malformed or inconsistent input: unknown names, wrong shapes, algebra
/// mismatches.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bound quiver that cannot be turned into a finite-dimensional algebra by
/// the rewriting procedure (non-admissible or non-confluent).
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Randomised splitting ran out of attempts.
class DecompositionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A d-kernel, d-cokernel or add-resolution left the subcategory.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called on data that fails its precondition (uncertified
/// atlas, subcategory that is not cluster tilting, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failures found by a validation pass. Empty means well-formed.
struct Diagnostics {
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
    void add(std::string message) { failures.push_back(std::move(message)); }
};

}  // namespace ctilt
