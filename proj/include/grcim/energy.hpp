#pragma once

#include <string>
#include <vector>

#include "grcim/mac.hpp"

namespace grcim {

struct EnergyParams {
    double c_gate_ff = 0.7;  // per input gate
    double k1_ff = 100.0;    // ADC linear coefficient
    double k2_ff = 0.001;    // ADC exponential coefficient
    double k3_ff = 50.0;     // DAC per resolution bit
    double v_dd = 0.9;
    double e_fa_fj() const;  // full adder, 3 gate loads + short-circuit term
    double v2() const { return v_dd * v_dd; }
};

// Component laws. Energies in fJ per conversion/operation as noted.
double adc_energy_fj(double enob, const EnergyParams& p);        // per conversion
double dac_energy_fj(double res_bits, const EnergyParams& p);    // per conversion
double cell_switch_energy_fj(double n_sw, long n_cells,
                             const EnergyParams& p);             // per MVM
double decoder_energy_fj(double n_in, double n_out,
                         const EnergyParams& p);                 // per decode
double multiplier_energy_fj(double n_bits, const EnergyParams& p);
double adder_tree_fa_count(int n_rows, double width_bits);

constexpr double kEnergyCapFjPerOp = 100.0;

struct EnergyBreakdown {
    double adc = 0, dac = 0, cell_switching = 0, adder_trees = 0,
           unit_adders = 0, multipliers = 0, decoders = 0;
    double total = 0;
};

// One cell of the precision/dynamic-range plane. n_m counts stored mantissa
// bits of the input format; e_max may be fractional in contour scans.
struct DesignPoint {
    int n_m = 1;
    double e_max = 1.0;
    Arch arch = Arch::Conventional;
    Granularity gran = Granularity::Unit;
    double sqnr_db = 0.0;  // row label, implicit bit included
    double dr_bits = 0.0;
    double enob = 0.0;
    double dac_res = 0.0;
    bool feasible = false;     // range feasibility only; cap applied by the map
    std::string reason;        // "", "gain-range", "energy-cap"
};

DesignPoint make_design_point(int n_m, double e_max, Arch arch,
                              Granularity gran, const ArchConfig& cfg,
                              const EnergyParams& p);

// Per-op energy of a range-feasible point at the array size in cfg.
// Infeasible points get a zeroed breakdown.
EnergyBreakdown cim_energy_per_op(const DesignPoint& pt, const ArchConfig& cfg,
                                  const EnergyParams& p);

double total_fj_per_op(int n_m, double e_max, Arch arch, Granularity gran,
                       const ArchConfig& cfg, const EnergyParams& p);

struct MapCell {
    DesignPoint point;
    EnergyBreakdown energy;
};

// Full plane: conventional column plus the cheapest feasible gain-ranging
// granularity per cell. Integer e_max >= 1, dr = n_m + e_max.
std::vector<MapCell> energy_map(int nm_lo, int nm_hi, int dr_lo, int dr_hi,
                                const ArchConfig& cfg, const EnergyParams& p);

// Continuous-dr contour crossings for the range-advantage checks.
double conv_cap_crossing_dr(int n_m, double cap_fj, const ArchConfig& cfg,
                            const EnergyParams& p);
double gr_max_feasible_dr(int n_m, double cap_fj, const ArchConfig& cfg,
                          const EnergyParams& p);

}  // namespace grcim
