#include "grcim/circuit.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace grcim {

namespace {

double bank_cu(const LadderSpec& s) {
    return std::pow(2.0, s.n_m_w + 1) - 1.0;
}

void validate(const LadderSpec& s, int e_j) {
    if (e_j < 0 || e_j > s.e_max)
        throw std::invalid_argument("binade outside [0, e_max]");
}

// Tiny nodal network: fixed-potential nodes plus one floating node per
// shifted branch. Kept generic so it exercises different algebra than the
// closed-form expression.
struct Net {
    // node 0: drive (1 V), node 1: summing line (0 V), node 2: ground (0 V),
    // node 3: floating
    static constexpr int kDrive = 0, kLine = 1, kGnd = 2, kFloat = 3;
    struct Branch {
        int a, b;
        double c;
    };
    std::array<Branch, 4> br{};
    int nbr = 0;

    void add(int a, int b, double c) { br[nbr++] = {a, b, c}; }

    // solve charge neutrality at the floating node, report charge into the line
    double line_charge() const {
        double v[4] = {1.0, 0.0, 0.0, 0.0};
        double csum = 0, rhs = 0;
        bool has_float = false;
        for (int i = 0; i < nbr; ++i) {
            const Branch& x = br[i];
            if (x.a == kFloat || x.b == kFloat) {
                has_float = true;
                int other = x.a == kFloat ? x.b : x.a;
                csum += x.c;
                rhs += x.c * v[other];
            }
        }
        if (has_float) v[kFloat] = rhs / csum;
        double q = 0;
        for (int i = 0; i < nbr; ++i) {
            const Branch& x = br[i];
            if (x.a == kLine) q += x.c * (v[x.b] - v[kLine]);
            if (x.b == kLine) q += x.c * (v[x.a] - v[kLine]);
        }
        return q;
    }
};

}  // namespace

std::optional<double> coupling_cap_cu(const LadderSpec& s, int e_j) {
    validate(s, e_j);
    if (e_j == s.e_max) return std::nullopt;
    double div = std::pow(2.0, s.e_max - e_j) - 1.0;
    return (bank_cu(s) + s.c_p1_over_cu) / div;
}

double attenuation_closed(const LadderSpec& s, int e_j) {
    validate(s, e_j);
    auto ce = coupling_cap_cu(s, e_j);
    if (!ce) return 1.0;
    double ca = bank_cu(s);
    return *ce / (ca + s.c_p1_over_cu + *ce);
}

double attenuation_numeric(const LadderSpec& s, int e_j) {
    validate(s, e_j);
    double ca = bank_cu(s);
    auto ce = coupling_cap_cu(s, e_j);

    Net net;
    if (!ce) {
        net.add(Net::kDrive, Net::kLine, ca);
    } else {
        net.add(Net::kDrive, Net::kFloat, ca);
        if (s.c_p1_over_cu > 0) net.add(Net::kFloat, Net::kGnd, s.c_p1_over_cu);
        net.add(Net::kFloat, Net::kLine, *ce);
    }
    // normalize by the charge a direct connection would deliver
    return net.line_charge() / ca;
}

std::vector<LadderRow> size_ladder(const LadderSpec& s) {
    std::vector<LadderRow> rows;
    for (int j = 0; j <= s.e_max; ++j) {
        LadderRow r;
        r.e_j = j;
        auto ce = coupling_cap_cu(s, j);
        r.direct = !ce.has_value();
        r.c_e_cu = ce.value_or(0.0);
        r.atten_closed = attenuation_closed(s, j);
        r.atten_numeric = attenuation_numeric(s, j);
        r.target = std::pow(2.0, j - s.e_max);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace grcim
