#include "shiftfp/error.hpp"

#include <utility>

namespace shiftfp {

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : std::runtime_error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

ClosureError::ClosureError(std::string message, double x, double image)
    : std::runtime_error(std::move(message)), x_(x), image_(image) {}

ConfigError::ConfigError(const std::string& path, const std::string& message)
    : std::runtime_error(path.empty() ? message : path + ": " + message), path_(path) {}

}  // namespace shiftfp
