#pragma once

#include <stdexcept>
#include <string>

namespace eqkh {

// Malformed input text (diagram, tangle, or graph files).
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Resource limit exceeded (crossing/edge caps, packing limits).
struct cap_error : std::runtime_error {
  explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Even group order without the explicit override.
struct even_order_error : std::runtime_error {
  explicit even_order_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally invalid data or a violated precondition discovered mid-computation
// (bad automorphism, non-chain-map, orientation conflicts, filtration violations).
struct structure_error : std::runtime_error {
  explicit structure_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace eqkh
