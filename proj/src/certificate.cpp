#include "gapcert/certificate.hpp"

namespace gapcert {

std::optional<double> Certificate::meta_value(std::string_view key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void mark_failed(Certificate& cert, std::string_view reason) {
  cert.pass = false;
  if (!cert.notes.empty()) cert.notes += "; ";
  cert.notes += reason;
}

}  // namespace gapcert
