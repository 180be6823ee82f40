#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace omlbell {

using ElementId = std::size_t;

/// One failed axiom instance. `witness` lists the element ids that break it.
struct Failure {
    std::string axiom;
    std::vector<ElementId> witness;
    std::string detail;
};

struct ValidationReport {
    std::vector<Failure> failures;

    bool valid() const { return failures.empty(); }

    void add(std::string axiom, std::vector<ElementId> witness, std::string detail = {}) {
        failures.push_back({std::move(axiom), std::move(witness), std::move(detail)});
    }

    void merge(const ValidationReport& other) {
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }

    /// Number of failures recorded under `axiom`.
    std::size_t count(const std::string& axiom) const;

    /// First failure, used for exception messages. Precondition: !valid().
    std::string summary() const;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SizeError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class DiagramError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class CoverageError : public Error {
public:
    using Error::Error;
};

class UnsupportedFormulaError : public Error {
public:
    using Error::Error;
};

/// An internal identity that must hold for every valid input failed.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Input failed an axiom check; the full report is attached.
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, ValidationReport report)
        : Error(what + ": " + report.summary()), report_(std::move(report)) {}

    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// A Greechie pasting that does not produce an orthomodular lattice.
class ConstructionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace omlbell
