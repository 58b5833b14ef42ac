#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stirap2d {

/// Base class for all errors raised by the simulator.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration document rejected; carries every validation failure, not just the first.
class ConfigError : public SimError {
public:
    explicit ConfigError(std::vector<std::string> messages)
        : SimError(join(messages)), messages_(std::move(messages)) {}

    const std::vector<std::string>& messages() const { return messages_; }

private:
    static std::string join(const std::vector<std::string>& msgs) {
        std::string out = "invalid configuration:";
        for (const auto& m : msgs) {
            out += "\n  - ";
            out += m;
        }
        return out;
    }
    std::vector<std::string> messages_;
};

class StepSizeError : public SimError {
public:
    using SimError::SimError;
};

class UndefinedStateError : public SimError {
public:
    using SimError::SimError;
};

class DegenerateSteadyStateError : public SimError {
public:
    using SimError::SimError;
};

class NotLocalizedError : public SimError {
public:
    using SimError::SimError;
};

class UndefinedWindingError : public SimError {
public:
    using SimError::SimError;
};

class GridMismatchError : public SimError {
public:
    using SimError::SimError;
};

class NotConvergedError : public SimError {
public:
    using SimError::SimError;
};

class IoError : public SimError {
public:
    using SimError::SimError;
};

} // namespace stirap2d
