#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imtk {

/// Input outside the validity region of a model or operation.
/// std::domain_error is reused directly so helpers can throw it too.
using DomainError = std::domain_error;

/// Malformed external data (CSV, JSONL, WAV). Carries the 1-based line
/// number when the format is line oriented, 0 otherwise.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line = 0)
        : std::runtime_error(std::move(msg)), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A requested physical target cannot be realized by a calibration table.
/// Carries the nearest achievable property value.
class UnreachableError : public std::runtime_error {
public:
    UnreachableError(std::string msg, double nearest)
        : std::runtime_error(std::move(msg)), nearest_(nearest) {}
    double nearest() const noexcept { return nearest_; }

private:
    double nearest_;
};

/// A bit allocation exceeds what a channel can carry. Carries the channel name.
class PlanningError : public std::runtime_error {
public:
    PlanningError(std::string msg, std::string channel)
        : std::runtime_error(std::move(msg)), channel_(std::move(channel)) {}
    const std::string& channel() const noexcept { return channel_; }

private:
    std::string channel_;
};

/// Invalid run configuration: unknown override key, inconsistent plan/model.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A channel-level decode failure (for example the magnetic no-detection
/// sentinel) surfaced through a word-level decode. Carries the channel name.
class DecodeError : public std::runtime_error {
public:
    DecodeError(std::string msg, std::string channel)
        : std::runtime_error(std::move(msg)), channel_(std::move(channel)) {}
    const std::string& channel() const noexcept { return channel_; }

private:
    std::string channel_;
};

} // namespace imtk
