#pragma once

#include <cstdint>
#include <vector>

#include "grcim/formats.hpp"

namespace grcim {

enum class Dist { Uniform, MaxEntropy, GaussianOutliers };

// Long-tailed operand model: zero-mean gaussian core truncated at 3 sigma with
// 3 sigma = full_scale / k, plus full-scale uniform outliers at rate eps.
struct OutlierSpec {
    double eps = 0.01;
    double k = 50.0;
};

struct Sample {
    std::vector<double> x;
    std::vector<std::uint8_t> outlier;  // per-element flag, only set for GaussianOutliers
};

// One stimulus vector per (seed, stream, trial). Max-entropy samples are exact
// codes of the table, so quantization is the identity on them.
Sample sample(Dist d, const CodeTable& t, int n, std::uint64_t seed,
              std::uint64_t stream, std::uint64_t trial,
              const OutlierSpec& o = {});

// Wide gaussian for the exponent-averaging experiment: sigma = FS/4, values
// past full scale redrawn (support exactly +-4 sigma).
std::vector<double> sample_clipped_gauss(int n, std::uint64_t seed,
                                         std::uint64_t stream,
                                         std::uint64_t trial);

// Max-entropy codes refined with symmetric sub-step jitter, x = c +- U(0, ulp(c)/2).
// Used by the format-SQNR measurement; quantize() maps each value back to its code.
std::vector<double> sample_maxent_jitter(const CodeTable& t, int n,
                                         std::uint64_t seed,
                                         std::uint64_t stream,
                                         std::uint64_t trial);

const char* dist_name(Dist d);
std::optional<Dist> parse_dist(std::string_view s);

}  // namespace grcim
