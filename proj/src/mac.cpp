#include "grcim/mac.hpp"

#include <cmath>

namespace grcim {

namespace {

// per-cell coupling exponent and the mantissa-domain operand it scales
struct CellPlan {
    int e;
    double m;
};

CellPlan plan_cell(const Code& x, const Code& w, Granularity g) {
    switch (g) {
        case Granularity::Unit:
            return {x.exponent + w.exponent, x.mantissa * w.mantissa};
        case Granularity::Row:
            return {x.exponent, x.mantissa * w.value};
        case Granularity::IntWeights:
            return {w.exponent, x.value * w.mantissa};
    }
    return {0, 0.0};
}

int descale_emax(const ArchConfig& cfg, Granularity g) {
    switch (g) {
        case Granularity::Unit:
            return cfg.x_fmt.e_max() + cfg.w_fmt.e_max();
        case Granularity::Row:
            return cfg.x_fmt.e_max();
        case Granularity::IntWeights:
            return cfg.w_fmt.e_max();
    }
    return 0;
}

}  // namespace

MacOut gr_mac(std::span<const Code> x, std::span<const Code> w,
              const ArchConfig& cfg) {
    const std::size_t n = x.size();
    int e_min = 0, e_max = 0;
    double sum_u = 0, sum_u2 = 0, sum_um = 0;
    for (std::size_t i = 0; i < n; ++i) {
        CellPlan c = plan_cell(x[i], w[i], cfg.gran);
        if (i == 0) {
            e_min = e_max = c.e;
        } else {
            if (c.e < e_min) e_min = c.e;
            if (c.e > e_max) e_max = c.e;
        }
        double u = std::pow(2.0, c.e);
        sum_u += u;
        sum_u2 += u * u;
        sum_um += u * c.m;
    }

    MacOut out;
    out.span_used = e_max - e_min;
    if (out.span_used > cfg.gain_range_limit)
        throw RangeViolation("exponent span " + std::to_string(out.span_used) +
                             " exceeds gain range limit " +
                             std::to_string(cfg.gain_range_limit));

    out.gain_sum = sum_u;
    out.n_eff = sum_u2 > 0 ? sum_u * sum_u / sum_u2 : 0.0;
    out.z_analog = sum_u > 0 ? sum_um / sum_u : 0.0;
    // undo the coupling gains and the row normalization
    double scale = std::pow(2.0, -descale_emax(cfg, cfg.gran)) / double(n);
    out.z_digital = out.z_analog * sum_u * scale;
    return out;
}

MacOut conv_mac(std::span<const Code> x, std::span<const Code> w,
                const ArchConfig& cfg) {
    (void)cfg;
    const std::size_t n = x.size();
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i].value * w[i].value;
    MacOut out;
    out.z_analog = acc / double(n);
    out.z_digital = out.z_analog;
    out.gain_sum = double(n);
    out.n_eff = double(n);
    out.span_used = 0;
    return out;
}

double n_eff_from_gains(std::span<const double> u) {
    double s = 0, s2 = 0;
    for (double v : u) {
        s += v;
        s2 += v * v;
    }
    return s2 > 0 ? s * s / s2 : 0.0;
}

const char* arch_name(Arch a) {
    return a == Arch::Conventional ? "conv" : "gr";
}

const char* granularity_name(Granularity g) {
    switch (g) {
        case Granularity::Unit: return "unit";
        case Granularity::Row: return "row";
        case Granularity::IntWeights: return "int";
    }
    return "?";
}

}  // namespace grcim
