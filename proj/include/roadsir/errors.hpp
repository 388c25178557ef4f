#ifndef ROADSIR_ERRORS_HPP
#define ROADSIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace roadsir {

/// Raised when a quantity is requested below the epidemic threshold
/// (basic reproduction number at or under 1), where it is undefined.
class no_spreading_error : public std::domain_error {
public:
    explicit no_spreading_error(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a time step produces a non-finite field value.
class blow_up_error : public std::runtime_error {
public:
    blow_up_error(const std::string& what, int i, int j, double t)
        : std::runtime_error(what), node_i(i), node_j(j), time(t) {}
    int node_i;
    int node_j;
    double time;
};

/// Raised when an iterative solve exceeds its iteration cap.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on malformed or out-of-range run configuration documents.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace roadsir

#endif
