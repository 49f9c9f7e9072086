#pragma once

#include <cstdint>
#include <random>

#include "photonkit/gauge.hpp"
#include "photonkit/vacuum.hpp"

namespace photonkit {

// Seeded generator with platform-independent uniform doubles, so identical
// seeds reproduce identical scenes and reports everywhere.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const std::uint64_t bits = engine_() >> 11;  // 53 random bits
    return lo + (hi - lo) * (static_cast<double>(bits) * 0x1.0p-53);
  }
  Complex complex_in_box(double scale) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Random constraint-completed packet. Widths and centers are kept in the zone
// where the default grid resolves the field and the shell truncation is
// negligible.
FieldEvaluator random_packet(PortableRng& rng);
FieldEvaluator random_field(PortableRng& rng);  // packet or 2-3 term combination
WeylLabel random_label(PortableRng& rng);
GaugeFunction random_gauge_function(PortableRng& rng);

}  // namespace photonkit
