#ifndef SDEX_ERRORS_HPP
#define SDEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdex {

/// Raised when a request exceeds the documented resource budget of an
/// operation.  Callers may catch this and degrade; it is never used to
/// silently truncate a result.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an operation needs simplices above the dimension bound of a
/// truncated object.  Complete (honestly finite) objects never raise this.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sdex

#endif
