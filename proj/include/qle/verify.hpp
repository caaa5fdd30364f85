#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qle {

struct VerifyCheck {
  std::string name;
  bool passed;
  std::string detail;
};

/// Invariant suite behind `qlelab verify`: sphere-core identities, kernel
/// equivalence, the spacetime-data closed forms, the energy identities and
/// estimates on randomised inputs drawn from `seed`, and a Weyl round trip.
std::vector<VerifyCheck> run_verify(std::uint64_t seed, int band_limit = 24);

}  // namespace qle
