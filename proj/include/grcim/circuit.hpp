#pragma once

#include <optional>
#include <vector>

namespace grcim {

// Capacitor bank for one weight cell: Ca = (2^(n_m_w+1)-1) unit caps, a
// parasitic shunt at the floating node, and a series coupling cap into the
// summing line (virtual ground). Attenuation target for binade j is
// 2^(j - e_max).
struct LadderSpec {
    int n_m_w = 3;
    int e_max = 3;
    double c_p1_over_cu = 0.0;
};

// Series cap in units of C_u. nullopt at j = e_max (direct connection).
std::optional<double> coupling_cap_cu(const LadderSpec& s, int e_j);

double attenuation_closed(const LadderSpec& s, int e_j);

// Independent check: netlist assembled as branch capacitances, charge into
// the virtual-ground line solved by nodal elimination.
double attenuation_numeric(const LadderSpec& s, int e_j);

struct LadderRow {
    int e_j = 0;
    bool direct = false;
    double c_e_cu = 0.0;
    double atten_closed = 0.0;
    double atten_numeric = 0.0;
    double target = 0.0;
};

std::vector<LadderRow> size_ladder(const LadderSpec& s);

}  // namespace grcim
