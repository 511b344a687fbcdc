#include "tickcoint/errors.hpp"

#include <utility>

namespace tickcoint {

namespace {

std::string decorate(const std::string& what, int line, const std::string& field) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (!field.empty()) out += field + ": ";
  return out + what;
}

}  // namespace

ConfigError::ConfigError(const std::string& what, int line, std::string field)
    : ValidationError(decorate(what, line, field)), line_(line), message_(what), field_(std::move(field)) {}

}  // namespace tickcoint
