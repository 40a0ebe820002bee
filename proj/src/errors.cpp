#include "lyclamp/errors.hpp"

#include <utility>

namespace lyclamp {

namespace {
std::string format_config_message(const std::string& field, const std::string& message,
                                   std::size_t line) {
  std::string out = field.empty() ? message : field + ": " + message;
  if (line > 0) out += " (line " + std::to_string(line) + ")";
  return out;
}
}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message, std::size_t line)
    : Error(format_config_message(field, message, line)), field_(std::move(field)), line_(line) {}

}  // namespace lyclamp
