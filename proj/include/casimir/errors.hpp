#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// invalid parameters (negative frequencies, zero gap, ...)
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// a closed form hit a pole or an overflow that cannot be paired away
class SingularEvaluation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RegionUnsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NaNIntegrand : public std::runtime_error {
public:
    NaNIntegrand(const std::string& what, double at) : std::runtime_error(what), abscissa(at) {}
    double abscissa;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace casimir
