#include "grcim/formats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace grcim {

int FpFormat::e_max() const { return n_e == 0 ? 0 : (1 << n_e) - 1; }

double FpFormat::min_normal() const {
    return n_e == 0 ? 0.5 : std::pow(2.0, -e_max());
}

double FpFormat::sqnr_ceiling_db() const { return 6.02 * n_m + 10.79; }

double FpFormat::dr_bits() const {
    return n_e == 0 ? n_m + 1 : (n_m + 1) + (e_max() - 1);
}

std::string FpFormat::name() const {
    return "E" + std::to_string(n_e) + "M" + std::to_string(n_m);
}

std::optional<FpFormat> FpFormat::parse(std::string_view s) {
    // accept an "FP<n>_" prefix, e.g. FP8_E4M3
    if (auto us = s.find('_'); us != std::string_view::npos && us + 1 < s.size() &&
        (s[0] == 'F' || s[0] == 'f'))
        s = s.substr(us + 1);
    if (s.size() < 4) return std::nullopt;
    if (s[0] != 'E' && s[0] != 'e') return std::nullopt;
    std::size_t i = 1;
    int ne = 0, nm = 0;
    bool any = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ne = ne * 10 + (s[i++] - '0');
        any = true;
    }
    if (!any || i >= s.size() || (s[i] != 'M' && s[i] != 'm')) return std::nullopt;
    ++i;
    any = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        nm = nm * 10 + (s[i++] - '0');
        any = true;
    }
    if (!any || i != s.size()) return std::nullopt;
    if (ne < 0 || ne > 6 || nm < 1 || nm > 8) return std::nullopt;
    return FpFormat{ne, nm};
}

CodeTable::CodeTable(FpFormat f) : fmt_(f) {
    const int nm = f.n_m;
    if (f.n_e == 0) {
        const double step = std::pow(2.0, -nm);
        for (int k = 0; k < (1 << nm); ++k) {
            mag_.push_back(k * step);
            ulp_.push_back(step);
            man_.push_back(k * step);
            exp_.push_back(0);
        }
        return;
    }
    const int emax = f.e_max();
    const double mstep = std::pow(2.0, -(nm + 1));
    // subnormals: m in [0, 0.5), effective exponent pinned to the bottom binade
    for (int k = 0; k < (1 << nm); ++k) {
        double m = k * mstep;
        mag_.push_back(m * std::pow(2.0, 1 - emax));
        ulp_.push_back(mstep * std::pow(2.0, 1 - emax));
        man_.push_back(m);
        exp_.push_back(1);
    }
    // normals: m in [0.5, 1)
    for (int e = 1; e <= emax; ++e) {
        for (int k = 0; k < (1 << nm); ++k) {
            double m = 0.5 + k * mstep;
            mag_.push_back(m * std::pow(2.0, e - emax));
            ulp_.push_back(mstep * std::pow(2.0, e - emax));
            man_.push_back(m);
            exp_.push_back(e);
        }
    }
}

std::size_t CodeTable::quantize_index(double magnitude) const {
    double a = std::fabs(magnitude);
    if (a >= mag_.back()) return mag_.size() - 1;
    auto it = std::upper_bound(mag_.begin(), mag_.end(), a);
    std::size_t hi = std::size_t(it - mag_.begin());
    if (hi == 0) return 0;
    std::size_t lo = hi - 1;
    double mid = 0.5 * (mag_[lo] + mag_[hi]);
    if (a < mid) return lo;
    if (a > mid) return hi;
    // tie: even significand wins; adjacent codes always differ in parity
    auto sig = [&](std::size_t i) {
        return static_cast<long long>(std::llround(mag_[i] / ulp_[i]));
    };
    return (sig(lo) % 2 == 0) ? lo : hi;
}

Code CodeTable::code_at(std::size_t i, bool negative) const {
    Code c;
    double s = negative ? -1.0 : 1.0;
    c.value = s * mag_[i];
    c.mantissa = s * man_[i];
    c.exponent = exp_[i];
    if (i == 0) {
        // keep the sign of zero observable
        c.value = negative ? -0.0 : 0.0;
        c.mantissa = negative ? -0.0 : 0.0;
    }
    return c;
}

Code CodeTable::quantize(double x) const {
    bool neg = std::signbit(x);
    return code_at(quantize_index(x), neg);
}

double CodeTable::mean_sq_value() const {
    double s = 0;
    for (double m : mag_) s += m * m;
    return s / double(mag_.size());
}

double CodeTable::mean_sq_mantissa() const {
    double s = 0;
    for (double m : man_) s += m * m;
    return s / double(man_.size());
}

}  // namespace grcim
