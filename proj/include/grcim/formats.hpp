#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grcim {

// Signed minifloat descriptor. n_e exponent bits, n_m stored mantissa bits.
// n_e = 0 selects the integer grid: no implicit bit, uniform step 2^-n_m on [0,1).
struct FpFormat {
    int n_e = 2;
    int n_m = 1;

    int e_max() const;             // 2^n_e - 1; 0 for the integer grid
    double min_normal() const;     // 2^-e_max (anchor 0.5 for n_e = 0)
    double sqnr_ceiling_db() const;
    double dr_bits() const;        // (n_m+1) + (e_max-1); n_m+1 on the integer grid
    std::string name() const;      // "E2M1"
    static std::optional<FpFormat> parse(std::string_view s);  // "E2M1" or "FP4_E2M1"
    bool operator==(const FpFormat&) const = default;
};

// One quantized operand. Sign is folded into value and mantissa.
struct Code {
    double value = 0.0;
    double mantissa = 0.0;  // normalized significand, |m| < 1
    int exponent = 0;       // effective exponent (>= 1 for FP; 0 on the integer grid)
};

// Exhaustive magnitude table for a format. Small by construction (<= 4 K codes),
// which keeps quantization trivially correct instead of fast-but-subtle.
class CodeTable {
public:
    explicit CodeTable(FpFormat f);

    const FpFormat& format() const { return fmt_; }
    std::size_t size() const { return mag_.size(); }
    double magnitude(std::size_t i) const { return mag_[i]; }
    double ulp(std::size_t i) const { return ulp_[i]; }  // grid step of code i's binade
    int exponent(std::size_t i) const { return exp_[i]; }
    double mantissa(std::size_t i) const { return man_[i]; }
    double max_value() const { return mag_.back(); }

    // Nearest code on the significand grid, ties to even significand.
    // Clips at max_value; magnitudes below half the smallest step go to signed zero.
    Code quantize(double x) const;
    std::size_t quantize_index(double magnitude) const;
    Code code_at(std::size_t i, bool negative) const;

    // Second moments under the uniform-over-codes (max-entropy) prior.
    double mean_sq_value() const;
    double mean_sq_mantissa() const;

private:
    FpFormat fmt_;
    std::vector<double> mag_, ulp_, man_;
    std::vector<int> exp_;
};

}  // namespace grcim
