#include "attoclock/errors.hpp"

#include <cstdio>

namespace attoclock {

namespace {

std::string suppressed_message(double field, double atomic_field) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "field %g exceeds atomic field strength %g", field, atomic_field);
  return buf;
}

}  // namespace

BarrierSuppressed::BarrierSuppressed(double field, double atomic_field)
    : DomainError(suppressed_message(field, atomic_field)), field_(field), atomic_field_(atomic_field) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace attoclock
