#pragma once

#include <stdexcept>
#include <string>

namespace schroder_lab {

// A divisor 1 - s^k (or s - s^k) of a coefficient recursion vanished.
class DegenerateParameter : public std::domain_error {
public:
    DegenerateParameter(const std::string& what, int index)
        : std::domain_error(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class OutOfRadius : public DomainError {
public:
    using DomainError::DomainError;
};

// A switchback node (or one of its nested radicands) is not real on the
// requested interval.
class ComplexValued : public DomainError {
public:
    ComplexValued(const std::string& what, long double lo, long double hi)
        : DomainError(what), lo_(lo), hi_(hi) {}
    long double lo() const noexcept { return lo_; }
    long double hi() const noexcept { return hi_; }

private:
    long double lo_;
    long double hi_;
};

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CancellationFailure : public std::logic_error {
public:
    CancellationFailure(const std::string& what, int index)
        : std::logic_error(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

class ScheduleInconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace schroder_lab
