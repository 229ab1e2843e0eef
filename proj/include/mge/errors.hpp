#pragma once

#include <stdexcept>
#include <string>

namespace mge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: dimension mismatch, bad gains, malformed scenario file.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A regressor component evaluated to a non-finite value or divided by ~0.
class SignalError : public Error {
public:
    SignalError(const std::string& what, std::size_t component)
        : Error(what), component_(component) {}
    explicit SignalError(const std::string& what) : Error(what) {}

    std::size_t component() const noexcept { return component_; }

private:
    std::size_t component_ = 0;
};

/// Integration produced a non-finite or runaway state.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double t, std::size_t index)
        : Error(what), t_(t), index_(index) {}

    double time() const noexcept { return t_; }
    std::size_t index() const noexcept { return index_; }

private:
    double t_;
    std::size_t index_;
};

class ScenarioNotFound : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace mge
