#ifndef FRACHARDY_ERRORS_HPP
#define FRACHARDY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frachardy {

// Parameter outside its validity window (bad alpha/p/n, malformed domain, ...).
class ParamError : public std::invalid_argument {
public:
    explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

// Point not in the domain where the operation requires membership.
class OutsideDomainError : public std::domain_error {
public:
    explicit OutsideDomainError(const std::string& what) : std::domain_error(what) {}
};

// Iterative scheme failed to reach its tolerance within the configured cap.
class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace frachardy

#endif
