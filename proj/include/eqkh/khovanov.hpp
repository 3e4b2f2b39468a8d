#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "eqkh/complex.hpp"
#include "eqkh/diagram.hpp"

namespace eqkh {

enum class kh_flavor { oriented, framed };

// Enhanced states pack into 64 bits: the +1-marker mask above bit 40, one
// sign bit per circle below (bit = 1 means the circle carries +).
inline constexpr int state_sign_bits = 40;
inline constexpr std::uint64_t pack_state(std::uint32_t mask, std::uint64_t signs) {
  return (static_cast<std::uint64_t>(mask) << state_sign_bits) | signs;
}
inline constexpr std::uint32_t state_mask(std::uint64_t code) {
  return static_cast<std::uint32_t>(code >> state_sign_bits);
}
inline constexpr std::uint64_t state_signs(std::uint64_t code) {
  return code & ((std::uint64_t{1} << state_sign_bits) - 1);
}

// Grading of one enhanced state. Oriented flavor: (i, j) from the writhe;
// framed flavor: (sign sum, marker sum minus twice the sign sum).
grading state_grading(const link_diagram& d, std::uint64_t code, kh_flavor fl, int writhe);

// Annular weight: signed count of circles with nonzero winding.
int state_k(const link_diagram& d, std::uint64_t code);

// Images of one enhanced state under the differential (all marker flips);
// repeated codes add mod 2.
std::vector<std::uint64_t> differential_terms(const link_diagram& d, std::uint64_t code);

struct khovanov_complex {
  link_diagram d;
  kh_flavor flavor = kh_flavor::oriented;
  int writhe = 0;  // zero in the framed flavor
  graded_complex cx{2, 1};
  std::map<grading, std::vector<std::uint64_t>> basis;  // sorted state codes

  int state_index(grading g, std::uint64_t code) const;  // -1 when absent
};

// Builds the full enhanced-state complex. Throws cap_error past the crossing
// cap or the state-packing limits.
khovanov_complex build_khovanov_complex(const link_diagram& d, kh_flavor fl, int cap = 16);

// Short-sequence data at one crossing of a framed complex. States with marker
// -1 at the crossing come from the -1 smoothing (alpha, degree q+1 -> q); the
// +1-marker states map onto the +1 smoothing (beta, degree q -> q-1).
struct skein_report {
  khovanov_complex plus, zero, inf;    // framed complexes of D, D_0, D_inf
  std::map<grading, f2_matrix> alpha;  // keyed by the grading of the middle term
  std::map<grading, f2_matrix> beta;
  std::vector<grading> violations;     // gradings where exactness fails
};

// Verifies that alpha is injective, beta surjective, im alpha = ker beta, the
// dimensions add up, and both maps are chain maps, in every grading.
skein_report skein_exactness_check(const link_diagram& d, int v, int cap = 16);

// Grading-preserving chain map of oriented complexes induced by one kink
// insertion. Verifies the chain-map identity and that the induced map on every
// homology space is an isomorphism; throws structure_error otherwise.
std::map<grading, f2_matrix> r1_chain_map(const khovanov_complex& before,
                                          const khovanov_complex& after,
                                          const kink_result& kr);

}  // namespace eqkh
