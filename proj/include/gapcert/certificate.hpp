#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gapcert {

/**
 * Outcome of one checked inequality or claim.
 *
 * `margin` is the observed value of the certified quantity (for an inequality
 * A >= B, the minimum of A - B over the checked range, possibly in a stated
 * scaled form). A certificate that passes always has a positive margin. The
 * `anchor` states the mathematical claim being corroborated, or "plumbing" for
 * bookkeeping checks.
 */
struct Certificate {
  Certificate() = default;
  Certificate(std::string id_, std::string anchor_)
      : id(std::move(id_)), anchor(std::move(anchor_)) {}

  std::string id;
  std::string anchor;
  bool pass = false;
  double margin = 0.0;
  /// Grid, tolerance and diagnostic values in insertion order.
  std::vector<std::pair<std::string, double>> meta;
  std::string notes;

  Certificate& with(std::string key, double value) {
    meta.emplace_back(std::move(key), value);
    return *this;
  }
  std::optional<double> meta_value(std::string_view key) const;
};

/// Forces a failure, as used by the CLI's failure-injection hook.
void mark_failed(Certificate& cert, std::string_view reason);

}  // namespace gapcert
