#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftfp {

/// Malformed expression text. `offset` is the byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Evaluation left the domain of an operator (ln of a nonpositive value,
/// division by zero, a non-finite result) or an argument outside [0, inf).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point handed to a map or solver is not a member of the space.
class MembershipError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A map sent a member of the space outside the space.
class ClosureError : public std::runtime_error {
public:
    ClosureError(std::string message, double x, double image);

    double x() const noexcept { return x_; }
    double image() const noexcept { return image_; }

private:
    double x_;
    double image_;
};

/// Invalid configuration document; `path` names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& path, const std::string& message);

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace shiftfp
