#include "grcim/stimulus.hpp"

#include <cmath>

#include "grcim/rng.hpp"

namespace grcim {

namespace {
// separate stream for accept/reject decisions so redraw loops never collide
// with value draws
constexpr std::uint64_t kFlagStreamOffset = 0x9000;

// per-sample budget: 31 normal slots (62 u01 slots)
double truncated_normal(double sigma, double bound, std::uint64_t seed,
                        std::uint64_t stream, std::uint64_t trial, int i) {
    for (int k = 0; k < 31; ++k) {
        double g = sigma * rng::normal(seed, stream, trial,
                                       std::uint64_t(i) * 31 + k);
        if (std::fabs(g) <= bound) return g;
    }
    return bound;  // unreachable in practice
}
}  // namespace

Sample sample(Dist d, const CodeTable& t, int n, std::uint64_t seed,
              std::uint64_t stream, std::uint64_t trial, const OutlierSpec& o) {
    Sample s;
    s.x.resize(n);
    if (d == Dist::GaussianOutliers) s.outlier.assign(n, 0);

    switch (d) {
        case Dist::Uniform: {
            double fs = t.max_value();
            for (int i = 0; i < n; ++i)
                s.x[i] = rng::uniform(-fs, fs, seed, stream, trial, i);
            break;
        }
        case Dist::MaxEntropy: {
            std::size_t codes = 2 * t.size();
            for (int i = 0; i < n; ++i) {
                auto j = std::size_t(rng::u01(seed, stream, trial, i) *
                                     double(codes));
                s.x[i] = t.code_at(j >> 1, j & 1).value;
            }
            break;
        }
        case Dist::GaussianOutliers: {
            double three_sigma = 1.0 / o.k;
            double sigma = three_sigma / 3.0;
            for (int i = 0; i < n; ++i) {
                double flag = rng::u01(seed, stream + kFlagStreamOffset, trial,
                                       2 * std::uint64_t(i));
                if (flag < o.eps) {
                    s.outlier[i] = 1;
                    s.x[i] = rng::uniform(-1.0, 1.0, seed,
                                          stream + kFlagStreamOffset, trial,
                                          2 * std::uint64_t(i) + 1);
                } else {
                    s.x[i] = truncated_normal(sigma, three_sigma, seed, stream,
                                              trial, i);
                }
            }
            break;
        }
    }
    return s;
}

std::vector<double> sample_clipped_gauss(int n, std::uint64_t seed,
                                         std::uint64_t stream,
                                         std::uint64_t trial) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = truncated_normal(0.25, 1.0, seed, stream, trial, i);
    return out;
}

std::vector<double> sample_maxent_jitter(const CodeTable& t, int n,
                                         std::uint64_t seed,
                                         std::uint64_t stream,
                                         std::uint64_t trial) {
    std::vector<double> out(n);
    std::size_t codes = 2 * t.size();
    for (int i = 0; i < n; ++i) {
        auto j = std::size_t(rng::u01(seed, stream, trial, 2 * std::uint64_t(i)) *
                             double(codes));
        std::size_t idx = j >> 1;
        double v = t.code_at(idx, j & 1).value;
        double u = rng::uniform(-0.5, 0.5, seed, stream, trial,
                                2 * std::uint64_t(i) + 1);
        out[i] = v + u * t.ulp(idx);
    }
    return out;
}

const char* dist_name(Dist d) {
    switch (d) {
        case Dist::Uniform: return "uniform";
        case Dist::MaxEntropy: return "maxent";
        case Dist::GaussianOutliers: return "gauss-outliers";
    }
    return "?";
}

std::optional<Dist> parse_dist(std::string_view s) {
    if (s == "uniform") return Dist::Uniform;
    if (s == "maxent") return Dist::MaxEntropy;
    if (s == "gauss-outliers" || s == "gauss") return Dist::GaussianOutliers;
    return std::nullopt;
}

}  // namespace grcim
