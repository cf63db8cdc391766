#pragma once

#include <stdexcept>
#include <string>

namespace catenary {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Query outside the open coordinate domain of a patch (or u <= 0 where the
// weight u^alpha is undefined).
class DomainError : public Error {
public:
    using Error::Error;
};

// Bad user configuration: parameters, tolerances, sample tables.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Ruled-surface radicand 1 + 2uf + u^2 g is not positive.
class DegenerateMetricError : public Error {
public:
    using Error::Error;
};

// Zero velocity in a curve jet.
class SingularJetError : public Error {
public:
    using Error::Error;
};

// Operation requires a rotationally symmetric (G_v == 0) surface.
class KindError : public Error {
public:
    using Error::Error;
};

class InaccessibleRegionError : public Error {
public:
    using Error::Error;
};

class NotCriticalError : public Error {
public:
    using Error::Error;
};

class NotRealizableError : public Error {
public:
    using Error::Error;
};

class IOError : public Error {
public:
    using Error::Error;
};

}  // namespace catenary
