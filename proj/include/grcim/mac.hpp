#pragma once

#include <span>
#include <stdexcept>
#include <string>

#include "grcim/formats.hpp"

namespace grcim {

enum class Arch { Conventional, GainRanging };
enum class Granularity { Unit, Row, IntWeights };

// ADC-requirement sweeps disable the range check with this; the energy model
// always enforces the real hardware limit.
constexpr int kNoRangeLimit = 1 << 20;

struct ArchConfig {
    Arch arch = Arch::GainRanging;
    Granularity gran = Granularity::Unit;
    int n_rows = 32;
    int n_cols = 32;
    FpFormat x_fmt{2, 1};
    FpFormat w_fmt{2, 1};
    int gain_range_limit = 6;  // max dynamic exponent span of the coupling stage
};

struct RangeViolation : std::domain_error {
    using std::domain_error::domain_error;
};

struct MacOut {
    double z_analog = 0.0;   // gain-weighted mantissa average, |z| <= 1
    double z_digital = 0.0;  // descaled output; equals the exact quantized dot / N_R
    double gain_sum = 0.0;   // sum of 2^E over rows
    double n_eff = 0.0;      // (sum 2^E)^2 / sum 4^E
    int span_used = 0;       // max E - min E seen
};

// One column of the gain-ranging array. Zero codes keep their effective
// exponent, so they still contribute coupling gain (and count toward n_eff).
MacOut gr_mac(std::span<const Code> x, std::span<const Code> w,
              const ArchConfig& cfg);

// Plain averaged dot product of quantized operands (the conventional column).
// Gains are all unity there, so n_eff is the physical row count.
MacOut conv_mac(std::span<const Code> x, std::span<const Code> w,
                const ArchConfig& cfg);

double n_eff_from_gains(std::span<const double> u);

const char* arch_name(Arch a);
const char* granularity_name(Granularity g);

}  // namespace grcim
