#pragma once

#include <stdexcept>
#include <string>

namespace wfh {

/// An argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition of a computation does not hold for the input.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A complex would exceed the configured basis-size budget.
class SizeBudgetError : public std::runtime_error {
public:
    SizeBudgetError(const std::string& what, std::size_t requested, std::size_t budget)
        : std::runtime_error(what + ": " + std::to_string(requested) + " basis elements exceeds budget " +
                             std::to_string(budget)),
          requested_(requested),
          budget_(budget) {}
    std::size_t requested() const { return requested_; }
    std::size_t budget() const { return budget_; }

private:
    std::size_t requested_;
    std::size_t budget_;
};

/// Malformed input data (manifests, structure constants failing their axioms).
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, std::string what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)), message_(std::move(what)) {}
    const std::string& path() const { return path_; }
    const std::string& message() const { return message_; }

private:
    std::string path_;
    std::string message_;
};

}  // namespace wfh
