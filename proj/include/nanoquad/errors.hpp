#pragma once

#include <stdexcept>
#include <string>

namespace nanoquad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the supported domain (negative radius, nonfinite input, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The HE11 characteristic equation has no resolvable root in the guided band.
class NoGuidedMode : public Error {
public:
    using Error::Error;
};

/// V >= 2.405 while the single-mode guard is active.
class MultimodeRegime : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Transition violating the quadrupole selection rules.
class ForbiddenTransition : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

class NoInteriorExtremum : public Error {
public:
    using Error::Error;
};

/// Asymmetry requested for a (q, polarization) channel whose coupling vanishes identically.
class UndefinedChannel : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace nanoquad
