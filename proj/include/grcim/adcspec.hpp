#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grcim/mac.hpp"
#include "grcim/stimulus.hpp"

namespace grcim {

// Ideal uniform ADC over +-1 full scale, step 2/2^enob, q(0) = 0 exactly.
// Fractional enob is allowed and behaves as the interpolated noise floor.
double adc_quantize(double z, double enob);
double adc_noise_var(double enob);

struct SqnrOptions {
    long trials = 40000;
    std::uint64_t seed = 1;
    double adc_enob = 0.0;  // 0 = ideal converter
    int threads = 0;        // 0 = hardware default
};

struct SubsetStats {
    double sqnr_db = 0.0;
    bool no_signal = false;
    double pz_conv = 0.0;  // E[z^2] at the ADC input, conventional column
    double pz_gr = 0.0;    // same, gain-ranging column
    long n_trials = 0;
};

struct SqnrReport {
    SubsetStats global;
    SubsetStats core;   // outlier-free trials; mirrors global when !has_core
    bool has_core = false;
    double ceiling_db = 0.0;
};

SqnrReport measure_output_sqnr(Dist d, const ArchConfig& cfg,
                               const SqnrOptions& opt,
                               const OutlierSpec& o = {});

// enob keeping ADC noise margin_db below the quantization-noise floor implied
// by (target SQNR, signal power pz).
double enob_from(double target_db, double pz, double margin_db = 6.0);

// Binding ADC requirement: max over the global constraint and, when the core
// subset is distinguishable and not collapsed, the core constraint. Long tails
// concentrate the output near zero, so the global statistics alone would
// under-specify the converter.
double required_enob(const SqnrReport& rep, Arch arch, bool cap_to_ceiling);

// Closed-form worst-case dimensioning (energy map). e_max_x may be fractional
// for contour scans. Worst input: binade-uniform at the bottom of the range
// (full-scale uniform on the integer grid).
double worst_case_pz(double e_max_x, Arch arch, Granularity gran,
                     double w_mean_sq, double w_mantissa_mean_sq, int n_rows);
double worst_case_enob(double target_db, double e_max_x, Arch arch,
                       Granularity gran, double w_mean_sq,
                       double w_mantissa_mean_sq, int n_rows);
double worst_case_enob(const ArchConfig& cfg);

// Measured resolution of a format under its max-entropy prior (jitter-refined).
double measure_format_sqnr_db(const CodeTable& t, long samples,
                              std::uint64_t seed);

struct EnobPoint {
    Dist dist = Dist::Uniform;
    int n_e = 1;
    int n_m = 1;
    double conv_enob = 0.0;
    double gr_enob = 0.0;
    double sqnr_global_db = 0.0;
    double sqnr_core_db = 0.0;
    bool core_no_signal = false;
};

// Reproduction sweeps: measured (uncapped) targets, Unit granularity,
// range check disabled. One report drives both architectures per point.
std::vector<EnobPoint> enob_vs_range_sweep(std::span<const Dist> dists,
                                           int ne_lo, int ne_hi, int n_m,
                                           const ArchConfig& base,
                                           const SqnrOptions& opt);
std::vector<EnobPoint> enob_vs_precision_sweep(std::span<const Dist> dists,
                                               int nm_lo, int nm_hi, int n_e,
                                               const ArchConfig& base,
                                               const SqnrOptions& opt);

}  // namespace grcim
