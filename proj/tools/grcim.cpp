// Command line front end: measurement sweeps, energy maps and sizing reports
// with deterministic CSV/JSON output (byte-identical reruns for a fixed seed).

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grcim/adcspec.hpp"
#include "grcim/circuit.hpp"
#include "grcim/energy.hpp"
#include "grcim/formats.hpp"
#include "grcim/mac.hpp"
#include "grcim/rng.hpp"
#include "grcim/runio.hpp"
#include "grcim/stimulus.hpp"

using namespace grcim;

namespace {

struct Common {
    std::uint64_t seed = 1;
    long trials = 30000;
    int threads = 0;
    std::string out;
    std::string format = "csv";
    std::string config;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_trials = nullptr;
    CLI::Option* o_threads = nullptr;
};

void add_common(CLI::App* sub, Common& c) {
    c.o_seed = sub->add_option("--seed", c.seed, "rng seed");
    c.o_trials = sub->add_option("--trials", c.trials, "monte carlo trials");
    c.o_threads = sub->add_option("--threads", c.threads, "0 = all cores");
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", c.config, "key=value defaults file");
}

// file supplies defaults, explicit flags win
void apply_config(Common& c) {
    if (c.config.empty()) return;
    auto m = parse_config_file(c.config);
    if (!c.o_seed->count() && m.count("seed")) c.seed = std::stoull(m.at("seed"));
    if (!c.o_trials->count() && m.count("trials"))
        c.trials = std::stol(m.at("trials"));
    if (!c.o_threads->count() && m.count("threads"))
        c.threads = std::stoi(m.at("threads"));
}

void emit(const Common& c, const std::string& tool, const Table& t,
          std::vector<std::pair<std::string, std::string>> cfg) {
    RunMeta meta;
    meta.tool = tool;
    meta.seed = c.seed;
    meta.config = std::move(cfg);
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!c.out.empty()) {
        file.open(c.out);
        if (!file) throw std::runtime_error("cannot open " + c.out);
        os = &file;
    }
    if (c.format == "json")
        write_json(*os, t, meta);
    else
        write_csv(*os, t, meta);
}

FpFormat need_fmt(const std::string& s) {
    auto f = FpFormat::parse(s);
    if (!f) throw CLI::ValidationError("--fmt", "bad format name: " + s);
    return *f;
}

Dist need_dist(const std::string& s) {
    auto d = parse_dist(s);
    if (!d) throw CLI::ValidationError("--dist", "unknown distribution: " + s);
    return *d;
}

Granularity need_gran(const std::string& s) {
    if (s == "unit") return Granularity::Unit;
    if (s == "row") return Granularity::Row;
    if (s == "int") return Granularity::IntWeights;
    throw CLI::ValidationError("--gran", "unknown granularity: " + s);
}

std::vector<Dist> split_dists(const std::string& s) {
    std::vector<Dist> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(need_dist(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

std::string yn(bool b) { return b ? "yes" : "no"; }

// ---- sqnr -------------------------------------------------------------------

void run_sqnr(const Common& c, const std::string& dist, const std::string& xf,
              const std::string& wf, int rows, const std::string& gran,
              double adc_enob) {
    ArchConfig cfg;
    cfg.arch = Arch::GainRanging;
    cfg.gran = need_gran(gran);
    cfg.n_rows = rows;
    cfg.x_fmt = need_fmt(xf);
    cfg.w_fmt = need_fmt(wf);
    cfg.gain_range_limit = kNoRangeLimit;

    SqnrOptions opt;
    opt.trials = c.trials;
    opt.seed = c.seed;
    opt.threads = c.threads;
    opt.adc_enob = adc_enob;

    SqnrReport rep = measure_output_sqnr(need_dist(dist), cfg, opt);

    Table t;
    t.columns = {"metric", "value"};
    auto put = [&](const std::string& k, const std::string& v) {
        t.add_row({k, v});
    };
    put("ceiling_db", format_num(rep.ceiling_db));
    put("global_sqnr_db", format_num(rep.global.sqnr_db));
    put("global_no_signal", yn(rep.global.no_signal));
    put("global_pz_conv", format_num(rep.global.pz_conv));
    put("global_pz_gr", format_num(rep.global.pz_gr));
    put("has_core", yn(rep.has_core));
    put("core_sqnr_db", format_num(rep.core.sqnr_db));
    put("core_no_signal", yn(rep.core.no_signal));
    put("core_pz_conv", format_num(rep.core.pz_conv));
    put("core_pz_gr", format_num(rep.core.pz_gr));
    put("req_enob_conv", format_num(required_enob(rep, Arch::Conventional, true)));
    put("req_enob_gr", format_num(required_enob(rep, Arch::GainRanging, true)));
    put("req_enob_conv_uncapped",
        format_num(required_enob(rep, Arch::Conventional, false)));
    put("req_enob_gr_uncapped",
        format_num(required_enob(rep, Arch::GainRanging, false)));

    emit(c, "sqnr", t,
         {{"dist", dist},
          {"x_fmt", cfg.x_fmt.name()},
          {"w_fmt", cfg.w_fmt.name()},
          {"rows", std::to_string(rows)},
          {"gran", gran},
          {"trials", std::to_string(c.trials)}});
}

// ---- enob sweeps ------------------------------------------------------------

Table sweep_table(const std::vector<EnobPoint>& pts) {
    Table t;
    t.columns = {"dist",    "n_e",     "n_m",          "sqnr_global_db",
                 "sqnr_core_db", "core_no_signal", "conv_enob", "gr_enob",
                 "gap"};
    for (const auto& p : pts)
        t.add_row({dist_name(p.dist), std::to_string(p.n_e),
                   std::to_string(p.n_m), format_num(p.sqnr_global_db),
                   format_num(p.sqnr_core_db), yn(p.core_no_signal),
                   format_num(p.conv_enob), format_num(p.gr_enob),
                   format_num(p.conv_enob - p.gr_enob)});
    return t;
}

ArchConfig sweep_base(int rows) {
    ArchConfig cfg;
    cfg.arch = Arch::GainRanging;
    cfg.gran = Granularity::Unit;
    cfg.n_rows = rows;
    cfg.w_fmt = FpFormat{2, 1};
    cfg.gain_range_limit = kNoRangeLimit;
    return cfg;
}

void run_enob_sweep(const Common& c, const std::string& mode,
                    const std::string& dists, int rows, int nm, int ne_lo,
                    int ne_hi, int ne, int nm_lo, int nm_hi) {
    SqnrOptions opt;
    opt.trials = c.trials;
    opt.seed = c.seed;
    opt.threads = c.threads;
    auto dv = split_dists(dists);
    std::vector<EnobPoint> pts;
    if (mode == "range")
        pts = enob_vs_range_sweep(dv, ne_lo, ne_hi, nm, sweep_base(rows), opt);
    else if (mode == "precision")
        pts = enob_vs_precision_sweep(dv, nm_lo, nm_hi, ne, sweep_base(rows), opt);
    else
        throw CLI::ValidationError("--mode", "range or precision");

    emit(c, "enob-sweep", sweep_table(pts),
         {{"mode", mode}, {"dists", dists}, {"rows", std::to_string(rows)},
          {"trials", std::to_string(c.trials)}});
}

// ---- energy -----------------------------------------------------------------

ArchConfig energy_cfg() {
    ArchConfig cfg;
    cfg.n_rows = 32;
    cfg.n_cols = 32;
    cfg.w_fmt = FpFormat{2, 1};
    cfg.gain_range_limit = 6;
    return cfg;
}

void map_row(Table& t, const std::string& fmt_name, const MapCell& cell) {
    const DesignPoint& pt = cell.point;
    const EnergyBreakdown& e = cell.energy;
    t.add_row({fmt_name, std::to_string(pt.n_m), format_num(pt.e_max),
               format_num(pt.dr_bits), format_num(pt.sqnr_db),
               arch_name(pt.arch),
               pt.arch == Arch::Conventional ? "" : granularity_name(pt.gran),
               format_num(pt.enob), format_num(pt.dac_res), format_num(e.adc),
               format_num(e.dac), format_num(e.cell_switching),
               format_num(e.adder_trees), format_num(e.unit_adders),
               format_num(e.multipliers), format_num(e.decoders),
               format_num(e.total), yn(pt.feasible), pt.reason});
}

void run_energy_map(const Common& c, int nm_lo, int nm_hi, int dr_lo, int dr_hi,
                    bool with_fp8) {
    ArchConfig cfg = energy_cfg();
    EnergyParams p;
    Table t;
    t.columns = {"fmt",      "n_m",  "e_max", "dr_bits", "sqnr_db", "arch",
                 "gran",     "enob", "dac_res", "adc",   "dac",     "cells",
                 "trees",    "unit_adders", "mults", "decoders", "total_fj_op",
                 "feasible", "reason"};
    for (const auto& cell : energy_map(nm_lo, nm_hi, dr_lo, dr_hi, cfg, p))
        map_row(t, "", cell);

    if (with_fp8) {
        // native-range rows for the 8-bit minifloat with a 4-bit exponent
        auto cells = energy_map(3, 3, 18, 18, cfg, p);
        for (const auto& cell : cells) map_row(t, "FP8_E4M3", cell);
    }

    emit(c, "energy-map", t,
         {{"nm", std::to_string(nm_lo) + ".." + std::to_string(nm_hi)},
          {"dr", std::to_string(dr_lo) + ".." + std::to_string(dr_hi)},
          {"cap_fj_op", format_num(kEnergyCapFjPerOp)}});
}

void run_energy_breakdown(const Common& c, int nm, double emax,
                          const std::string& arch, const std::string& gran) {
    ArchConfig cfg = energy_cfg();
    EnergyParams p;
    Arch a = arch == "conv" ? Arch::Conventional : Arch::GainRanging;
    DesignPoint pt = make_design_point(nm, emax, a, need_gran(gran), cfg, p);
    EnergyBreakdown e = cim_energy_per_op(pt, cfg, p);

    Table t;
    t.columns = {"metric", "value"};
    t.add_row({"enob", format_num(pt.enob)});
    t.add_row({"dac_res", format_num(pt.dac_res)});
    t.add_row({"adc_fj_op", format_num(e.adc)});
    t.add_row({"dac_fj_op", format_num(e.dac)});
    t.add_row({"cells_fj_op", format_num(e.cell_switching)});
    t.add_row({"trees_fj_op", format_num(e.adder_trees)});
    t.add_row({"unit_adders_fj_op", format_num(e.unit_adders)});
    t.add_row({"mults_fj_op", format_num(e.multipliers)});
    t.add_row({"decoders_fj_op", format_num(e.decoders)});
    t.add_row({"total_fj_op", format_num(e.total)});
    t.add_row({"feasible", yn(pt.feasible)});
    t.add_row({"reason", pt.reason});

    emit(c, "energy-breakdown", t,
         {{"nm", std::to_string(nm)}, {"emax", format_num(emax)},
          {"arch", arch}, {"gran", gran}});
}

// ---- capacitor sizing -------------------------------------------------------

void run_capsize(const Common& c, int nmw, int emax, double cp1) {
    LadderSpec s{nmw, emax, cp1};
    Table t;
    t.columns = {"e_j", "direct", "c_e_cu", "atten_closed", "atten_numeric",
                 "target"};
    for (const auto& r : size_ladder(s))
        t.add_row({std::to_string(r.e_j), yn(r.direct), format_num(r.c_e_cu),
                   format_num(r.atten_closed), format_num(r.atten_numeric),
                   format_num(r.target)});
    emit(c, "capsize", t,
         {{"nmw", std::to_string(nmw)}, {"emax", std::to_string(emax)},
          {"cp1_cu", format_num(cp1)}});
}

// ---- mac trace --------------------------------------------------------------

void run_mac_trace(const Common& c, const std::string& xf, const std::string& wf,
                   const std::string& gran, int rows, long trial) {
    ArchConfig cfg;
    cfg.arch = Arch::GainRanging;
    cfg.gran = need_gran(gran);
    cfg.n_rows = rows;
    cfg.x_fmt = need_fmt(xf);
    cfg.w_fmt = need_fmt(wf);
    cfg.gain_range_limit = kNoRangeLimit;

    CodeTable tx{cfg.x_fmt}, tw{cfg.w_fmt};
    auto sx = sample(Dist::Uniform, tx, rows, c.seed, rng::kStreamX,
                     std::uint64_t(trial));
    auto sw = sample(Dist::MaxEntropy, tw, rows, c.seed, rng::kStreamW,
                     std::uint64_t(trial));
    std::vector<Code> xq, wq;
    for (int i = 0; i < rows; ++i) {
        xq.push_back(tx.quantize(sx.x[i]));
        wq.push_back(tw.quantize(sw.x[i]));
    }
    MacOut gr = gr_mac(xq, wq, cfg);
    MacOut ref = conv_mac(xq, wq, cfg);

    Table t;
    t.columns = {"row", "x", "w", "x_mantissa", "x_exp", "w_mantissa", "w_exp"};
    for (int i = 0; i < rows; ++i)
        t.add_row({std::to_string(i), format_num(xq[i].value),
                   format_num(wq[i].value), format_num(xq[i].mantissa),
                   std::to_string(xq[i].exponent), format_num(wq[i].mantissa),
                   std::to_string(wq[i].exponent)});

    emit(c, "mac-trace", t,
         {{"x_fmt", cfg.x_fmt.name()}, {"w_fmt", cfg.w_fmt.name()},
          {"gran", gran}, {"trial", std::to_string(trial)},
          {"z_analog", format_num(gr.z_analog)},
          {"z_digital", format_num(gr.z_digital)},
          {"z_exact", format_num(ref.z_analog)},
          {"gain_sum", format_num(gr.gain_sum)},
          {"n_eff", format_num(gr.n_eff)},
          {"span_used", std::to_string(gr.span_used)}});
}

// ---- canned figures ---------------------------------------------------------

void run_figure(const Common& c, const std::string& name) {
    SqnrOptions opt;
    opt.trials = c.trials;
    opt.seed = c.seed;
    opt.threads = c.threads;

    if (name == "core-collapse") {
        Table t;
        t.columns = {"n_e", "global_sqnr_db", "core_sqnr_db", "core_state",
                     "ceiling_gap_db"};
        for (int ne = 2; ne <= 5; ++ne) {
            ArchConfig cfg = sweep_base(32);
            cfg.x_fmt = FpFormat{ne, 2};
            SqnrReport r = measure_output_sqnr(Dist::GaussianOutliers, cfg, opt);
            t.add_row({std::to_string(ne), format_num(r.global.sqnr_db),
                       format_num(r.core.sqnr_db),
                       r.core.no_signal ? "collapsed" : "alive",
                       format_num(r.ceiling_db - r.core.sqnr_db)});
        }
        emit(c, "figure core-collapse", t, {{"n_m", "2"}, {"rows", "32"}});
        return;
    }
    if (name == "enob-vs-range") {
        Dist dv[] = {Dist::Uniform, Dist::GaussianOutliers};
        auto pts = enob_vs_range_sweep(dv, 2, 6, 2, sweep_base(32), opt);
        emit(c, "figure enob-vs-range", sweep_table(pts),
             {{"n_m", "2"}, {"rows", "32"}});
        return;
    }
    if (name == "enob-vs-precision") {
        Dist dv[] = {Dist::Uniform, Dist::GaussianOutliers, Dist::MaxEntropy};
        auto pts = enob_vs_precision_sweep(dv, 1, 6, 3, sweep_base(32), opt);
        emit(c, "figure enob-vs-precision", sweep_table(pts),
             {{"n_e", "3"}, {"rows", "32"}});
        return;
    }
    if (name == "averaging") {
        const int nr = 32;
        CodeTable t6{FpFormat{3, 2}};
        ArchConfig cfg = sweep_base(nr);
        cfg.x_fmt = FpFormat{3, 2};
        cfg.w_fmt = FpFormat{3, 2};
        double sum_neff = 0, mx2 = 0, xq2 = 0;
        for (long trial = 0; trial < c.trials; ++trial) {
            auto xs = sample_clipped_gauss(nr, c.seed, rng::kStreamX, trial);
            auto ws = sample_clipped_gauss(nr, c.seed, rng::kStreamW, trial);
            std::vector<Code> xq, wq;
            for (double v : xs) xq.push_back(t6.quantize(v));
            for (double v : ws) wq.push_back(t6.quantize(v));
            MacOut out = gr_mac(xq, wq, cfg);
            sum_neff += out.n_eff;
            for (const Code& q : xq) {
                mx2 += q.mantissa * q.mantissa;
                xq2 += q.value * q.value;
            }
        }
        double mean_neff = sum_neff / double(c.trials);
        double gain = (mx2 / xq2) * (nr / mean_neff);
        Table t;
        t.columns = {"metric", "value"};
        t.add_row({"mean_n_eff", format_num(mean_neff)});
        t.add_row({"mantissa_power_gain", format_num(mx2 / xq2)});
        t.add_row({"averaging_gain", format_num(nr / mean_neff)});
        t.add_row({"total_gain", format_num(gain)});
        t.add_row({"enob_saved_bits", format_num(0.5 * std::log2(gain))});
        emit(c, "figure averaging", t,
             {{"fmt", "E3M2"}, {"rows", "32"},
              {"trials", std::to_string(c.trials)}});
        return;
    }
    if (name == "energy-map") {
        run_energy_map(c, 1, 6, 4, 12, true);
        return;
    }
    throw CLI::ValidationError(
        "figure", "unknown figure (core-collapse, enob-vs-range, "
                  "enob-vs-precision, averaging, energy-map): " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical design explorer for gain-ranged in-memory MACs"};
    app.require_subcommand(1);

    // sqnr
    auto* sq = app.add_subcommand("sqnr", "output SQNR report for one design point");
    Common c_sq;
    add_common(sq, c_sq);
    std::string sq_dist = "uniform", sq_xf = "E2M1", sq_wf = "E2M1",
                sq_gran = "unit";
    int sq_rows = 32;
    double sq_adc = 0.0;
    sq->add_option("--dist", sq_dist, "uniform | maxent | gauss-outliers");
    sq->add_option("--x-fmt", sq_xf, "input format, e.g. E3M2");
    sq->add_option("--w-fmt", sq_wf, "weight format");
    sq->add_option("--rows", sq_rows, "rows per column");
    sq->add_option("--gran", sq_gran, "unit | row | int");
    sq->add_option("--adc-enob", sq_adc, "model a real converter (0 = ideal)");
    sq->callback([&] {
        apply_config(c_sq);
        run_sqnr(c_sq, sq_dist, sq_xf, sq_wf, sq_rows, sq_gran, sq_adc);
    });

    // enob-sweep
    auto* es = app.add_subcommand("enob-sweep",
                                  "required converter resolution sweeps");
    Common c_es;
    add_common(es, c_es);
    std::string es_mode = "range", es_dists = "uniform,gauss-outliers";
    int es_rows = 32, es_nm = 2, es_ne_lo = 2, es_ne_hi = 6, es_ne = 3,
        es_nm_lo = 1, es_nm_hi = 6;
    es->add_option("--mode", es_mode, "range | precision");
    es->add_option("--dists", es_dists, "comma separated");
    es->add_option("--rows", es_rows);
    es->add_option("--nm", es_nm, "mantissa bits (range mode)");
    es->add_option("--ne-lo", es_ne_lo);
    es->add_option("--ne-hi", es_ne_hi);
    es->add_option("--ne", es_ne, "exponent bits (precision mode)");
    es->add_option("--nm-lo", es_nm_lo);
    es->add_option("--nm-hi", es_nm_hi);
    es->callback([&] {
        apply_config(c_es);
        run_enob_sweep(c_es, es_mode, es_dists, es_rows, es_nm, es_ne_lo,
                       es_ne_hi, es_ne, es_nm_lo, es_nm_hi);
    });

    // energy-map
    auto* em = app.add_subcommand("energy-map",
                                  "per-op energy across the precision/range plane");
    Common c_em;
    add_common(em, c_em);
    int em_nm_lo = 1, em_nm_hi = 6, em_dr_lo = 4, em_dr_hi = 12;
    bool em_fp8 = false;
    em->add_option("--nm-lo", em_nm_lo);
    em->add_option("--nm-hi", em_nm_hi);
    em->add_option("--dr-lo", em_dr_lo);
    em->add_option("--dr-hi", em_dr_hi);
    em->add_flag("--fp8", em_fp8, "append native-range FP8_E4M3 rows");
    em->callback([&] {
        apply_config(c_em);
        run_energy_map(c_em, em_nm_lo, em_nm_hi, em_dr_lo, em_dr_hi, em_fp8);
    });

    // energy-breakdown
    auto* eb = app.add_subcommand("energy-breakdown",
                                  "component energies for one design point");
    Common c_eb;
    add_common(eb, c_eb);
    int eb_nm = 1;
    double eb_emax = 3;
    std::string eb_arch = "conv", eb_gran = "row";
    eb->add_option("--nm", eb_nm, "stored mantissa bits");
    eb->add_option("--emax", eb_emax, "exponent range (fractional ok)");
    eb->add_option("--arch", eb_arch, "conv | gr");
    eb->add_option("--gran", eb_gran, "unit | row | int");
    eb->callback([&] {
        apply_config(c_eb);
        run_energy_breakdown(c_eb, eb_nm, eb_emax, eb_arch, eb_gran);
    });

    // capsize
    auto* cs = app.add_subcommand("capsize", "coupling capacitor ladder sizing");
    Common c_cs;
    add_common(cs, c_cs);
    int cs_nmw = 3, cs_emax = 3;
    double cs_cp1 = 0.0;
    cs->add_option("--nmw", cs_nmw, "weight mantissa bits");
    cs->add_option("--emax", cs_emax, "exponent range");
    cs->add_option("--cp1", cs_cp1, "parasitic shunt in unit caps");
    cs->callback([&] {
        apply_config(c_cs);
        run_capsize(c_cs, cs_nmw, cs_emax, cs_cp1);
    });

    // mac-trace
    auto* mt = app.add_subcommand("mac-trace", "dump one column evaluation");
    Common c_mt;
    add_common(mt, c_mt);
    std::string mt_xf = "E3M2", mt_wf = "E2M1", mt_gran = "unit";
    int mt_rows = 8;
    long mt_trial = 0;
    mt->add_option("--x-fmt", mt_xf);
    mt->add_option("--w-fmt", mt_wf);
    mt->add_option("--gran", mt_gran);
    mt->add_option("--rows", mt_rows);
    mt->add_option("--trial", mt_trial);
    mt->callback([&] {
        apply_config(c_mt);
        run_mac_trace(c_mt, mt_xf, mt_wf, mt_gran, mt_rows, mt_trial);
    });

    // figure
    auto* fg = app.add_subcommand("figure", "canned analysis tables");
    Common c_fg;
    add_common(fg, c_fg);
    std::string fg_name;
    fg->add_option("name", fg_name,
                   "core-collapse | enob-vs-range | enob-vs-precision | "
                   "averaging | energy-map")
        ->required();
    fg->callback([&] {
        apply_config(c_fg);
        run_figure(c_fg, fg_name);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
