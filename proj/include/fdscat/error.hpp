#pragma once

#include <stdexcept>
#include <string>

namespace fdscat
{

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// An iterative scheme failed to reach its tolerance.
class ConvergenceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Potential more singular than 1/r^2 at the origin.
class SingularPotentialError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A value object was built in a state that breaks its invariants.
class InvariantError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input text. Carries the 1-based line and the offending field.
class ParseError : public std::runtime_error
{
  public:
    ParseError(int line, std::string field, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", field '" + field + "': " + what),
          line_(line),
          field_(std::move(field))
    {
    }

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

  private:
    int line_;
    std::string field_;
};

} // namespace fdscat
