#include "grcim/energy.hpp"

#include <cmath>

#include "grcim/adcspec.hpp"

namespace grcim {

namespace {

// stored exponent field width for a (possibly fractional) range
double exp_field_bits(double e_max) {
    if (e_max <= 0) return 0.0;
    return std::ceil(std::log2(e_max + 1.0));
}

double span_x(double e_max) { return std::max(0.0, e_max - 1.0); }

double gran_span(Granularity g, double e_max_x, int e_max_w) {
    switch (g) {
        case Granularity::Unit: return span_x(e_max_x) + std::max(0, e_max_w - 1);
        case Granularity::Row: return span_x(e_max_x);
        case Granularity::IntWeights: return double(std::max(0, e_max_w - 1));
    }
    return 0.0;
}

// digital word width: enough for the converter output or the gain sum
double mult_width(double enob, double span, int n_rows) {
    double wsum = std::ceil(std::log2(n_rows * std::pow(2.0, span) + 1.0));
    return std::max(std::ceil(enob), wsum);
}

}  // namespace

double EnergyParams::e_fa_fj() const { return 6.0 * c_gate_ff * v2(); }

double adc_energy_fj(double enob, const EnergyParams& p) {
    return (p.k1_ff * enob + p.k2_ff * std::pow(4.0, enob)) * p.v2();
}

double dac_energy_fj(double res_bits, const EnergyParams& p) {
    return p.k3_ff * res_bits * p.v2();
}

double cell_switch_energy_fj(double n_sw, long n_cells, const EnergyParams& p) {
    return 0.5 * p.c_gate_ff * p.v2() * n_sw * double(n_cells);
}

double decoder_energy_fj(double n_in, double n_out, const EnergyParams& p) {
    return (0.5 * n_in + n_out + 1.0) * p.c_gate_ff * p.v2();
}

double multiplier_energy_fj(double n_bits, const EnergyParams& p) {
    return (1.5 * p.c_gate_ff * p.v2() + p.e_fa_fj()) * n_bits * n_bits;
}

double adder_tree_fa_count(int n_rows, double width_bits) {
    return (n_rows - 1) * (width_bits + std::ceil(std::log2(double(n_rows))) / 2.0);
}

DesignPoint make_design_point(int n_m, double e_max, Arch arch,
                              Granularity gran, const ArchConfig& cfg,
                              const EnergyParams&) {
    CodeTable tw{cfg.w_fmt};
    DesignPoint pt;
    pt.n_m = n_m;
    pt.e_max = e_max;
    pt.arch = arch;
    pt.gran = gran;
    pt.dr_bits = n_m + e_max;
    pt.sqnr_db = 6.02 * (n_m + 1) + 10.79;  // axis label counts the implicit bit
    double target = 6.02 * n_m + 10.79;     // stored-bit resolution to preserve
    pt.enob = worst_case_enob(target, e_max, arch, gran, tw.mean_sq_value(),
                              tw.mean_sq_mantissa(), cfg.n_rows);
    pt.dac_res = arch == Arch::Conventional ? n_m + e_max : double(n_m + 1);
    if (arch == Arch::Conventional) {
        pt.feasible = true;
    } else {
        double span = gran_span(gran, e_max, cfg.w_fmt.e_max());
        pt.feasible = span <= cfg.gain_range_limit;
        if (!pt.feasible) pt.reason = "gain-range";
    }
    return pt;
}

EnergyBreakdown cim_energy_per_op(const DesignPoint& pt, const ArchConfig& cfg,
                                  const EnergyParams& p) {
    EnergyBreakdown b;
    if (!pt.feasible && pt.reason == "gain-range") return b;

    const double ops = double(cfg.n_rows) * cfg.n_cols * 2.0;
    const long cells = long(cfg.n_rows) * cfg.n_cols;
    const int nmw = cfg.w_fmt.n_m;
    const int emw = cfg.w_fmt.e_max();

    b.adc = cfg.n_cols * adc_energy_fj(pt.enob, p) / ops;
    b.dac = cfg.n_rows * dac_energy_fj(pt.dac_res, p) / ops;

    if (pt.arch == Arch::Conventional) {
        // cell drives full mantissa plus the merged exponent lines
        double nsw = (nmw + 1) + std::max(0, emw - 1);
        b.cell_switching = cell_switch_energy_fj(nsw, cells, p) / ops;
        b.total = b.adc + b.dac + b.cell_switching;
        return b;
    }

    double span = gran_span(pt.gran, pt.e_max, emw);
    double n_mult = mult_width(pt.enob, span, cfg.n_rows);
    b.multipliers = cfg.n_cols * multiplier_energy_fj(n_mult, p) / ops;

    double tree_w = cfg.gain_range_limit + 1.0;
    double tree_fj = adder_tree_fa_count(cfg.n_rows, tree_w) * p.e_fa_fj();
    double xbits = exp_field_bits(pt.e_max);

    switch (pt.gran) {
        case Granularity::Unit: {
            b.cell_switching =
                cell_switch_energy_fj((nmw + 1) + 1.0, cells, p) / ops;
            b.adder_trees = cfg.n_cols * tree_fj / ops;
            double add_bits = std::max(xbits, double(cfg.w_fmt.n_e));
            b.unit_adders = add_bits * p.e_fa_fj() * double(cells) / ops;
            double nin = std::ceil(std::log2(span + 1.0));
            b.decoders = double(cells) *
                         decoder_energy_fj(nin, std::pow(2.0, nin), p) / ops;
            break;
        }
        case Granularity::Row: {
            b.cell_switching =
                cell_switch_energy_fj((nmw + 1) + std::max(0, emw - 1) + 1.0,
                                      cells, p) /
                ops;
            b.adder_trees = tree_fj / ops;  // one shared gain accumulator
            b.decoders = cfg.n_rows *
                         decoder_energy_fj(xbits, std::pow(2.0, xbits), p) / ops;
            break;
        }
        case Granularity::IntWeights: {
            b.cell_switching =
                cell_switch_energy_fj((nmw + 1) + 1.0, cells, p) / ops;
            // gains are static per cell: no runtime accumulator
            double nin = cfg.w_fmt.n_e;
            b.decoders = double(cells) *
                         decoder_energy_fj(nin, std::pow(2.0, nin), p) / ops;
            break;
        }
    }

    b.total = b.adc + b.dac + b.cell_switching + b.adder_trees + b.unit_adders +
              b.multipliers + b.decoders;
    return b;
}

double total_fj_per_op(int n_m, double e_max, Arch arch, Granularity gran,
                       const ArchConfig& cfg, const EnergyParams& p) {
    DesignPoint pt = make_design_point(n_m, e_max, arch, gran, cfg, p);
    if (!pt.feasible) return INFINITY;
    return cim_energy_per_op(pt, cfg, p).total;
}

std::vector<MapCell> energy_map(int nm_lo, int nm_hi, int dr_lo, int dr_hi,
                                const ArchConfig& cfg, const EnergyParams& p) {
    std::vector<MapCell> out;
    for (int nm = nm_lo; nm <= nm_hi; ++nm) {
        for (int dr = dr_lo; dr <= dr_hi; ++dr) {
            int emax = dr - nm;
            if (emax < 1) continue;

            MapCell conv;
            conv.point = make_design_point(nm, emax, Arch::Conventional,
                                           Granularity::Unit, cfg, p);
            conv.energy = cim_energy_per_op(conv.point, cfg, p);
            if (conv.energy.total > kEnergyCapFjPerOp) {
                conv.point.feasible = false;
                conv.point.reason = "energy-cap";
            }
            out.push_back(conv);

            MapCell best;
            bool have = false;
            for (Granularity g : {Granularity::Unit, Granularity::Row,
                                  Granularity::IntWeights}) {
                MapCell c;
                c.point = make_design_point(nm, emax, Arch::GainRanging, g, cfg, p);
                if (!c.point.feasible) continue;
                c.energy = cim_energy_per_op(c.point, cfg, p);
                if (!have || c.energy.total < best.energy.total) {
                    best = c;
                    have = true;
                }
            }
            if (!have) {
                best.point = make_design_point(nm, emax, Arch::GainRanging,
                                               Granularity::Row, cfg, p);
            } else if (best.energy.total > kEnergyCapFjPerOp) {
                best.point.feasible = false;
                best.point.reason = "energy-cap";
            }
            out.push_back(best);
        }
    }
    return out;
}

double conv_cap_crossing_dr(int n_m, double cap_fj, const ArchConfig& cfg,
                            const EnergyParams& p) {
    double best = 0.0;
    for (int k = 1; k <= 1400; ++k) {
        double emax = k * 0.01;
        double t = total_fj_per_op(n_m, emax, Arch::Conventional,
                                   Granularity::Unit, cfg, p);
        if (t <= cap_fj) best = n_m + emax;
    }
    return best;
}

double gr_max_feasible_dr(int n_m, double cap_fj, const ArchConfig& cfg,
                          const EnergyParams& p) {
    double best = 0.0;
    for (int k = 1; k <= 1400; ++k) {
        double emax = k * 0.01;
        for (Granularity g : {Granularity::Unit, Granularity::Row,
                              Granularity::IntWeights}) {
            double t = total_fj_per_op(n_m, emax, Arch::GainRanging, g, cfg, p);
            if (t <= cap_fj) {
                best = std::max(best, n_m + emax);
                break;
            }
        }
    }
    return best;
}

}  // namespace grcim
