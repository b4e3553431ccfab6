#include "grcim/adcspec.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "grcim/rng.hpp"

namespace grcim {

namespace {
constexpr double kDbPerBit = 6.0205999132796239;  // 10 log10 4
constexpr double kCollapseDb = 3.0;
constexpr long kBlock = 512;  // fixed so the reduction order never changes

struct Acc {
    double sig = 0, err = 0, pz_conv = 0, pz_gr = 0;
    long n = 0;

    void operator+=(const Acc& o) {
        sig += o.sig;
        err += o.err;
        pz_conv += o.pz_conv;
        pz_gr += o.pz_gr;
        n += o.n;
    }
};

struct BlockAcc {
    Acc global, core;
};

SubsetStats finish(const Acc& a) {
    SubsetStats s;
    s.n_trials = a.n;
    if (a.n == 0) {
        s.no_signal = true;
        return s;
    }
    s.pz_conv = a.pz_conv / double(a.n);
    s.pz_gr = a.pz_gr / double(a.n);
    if (a.sig <= 0 || a.sig / double(a.n) < 1e-18) {
        s.no_signal = true;
        return s;
    }
    s.sqnr_db = a.err > 0 ? 10.0 * std::log10(a.sig / a.err) : 300.0;
    s.no_signal = s.sqnr_db < kCollapseDb;
    return s;
}
}  // namespace

double adc_quantize(double z, double enob) {
    double step = std::pow(2.0, 1.0 - enob);
    return step * std::round(z / step);
}

double adc_noise_var(double enob) {
    double step = std::pow(2.0, 1.0 - enob);
    return step * step / 12.0;
}

double enob_from(double target_db, double pz, double margin_db) {
    if (pz <= 0) return 0.0;
    return (target_db + margin_db - 10.0 * std::log10(3.0 * pz)) / kDbPerBit;
}

double required_enob(const SqnrReport& rep, Arch arch, bool cap_to_ceiling) {
    auto one = [&](const SubsetStats& s) {
        if (s.no_signal) return 0.0;
        double pz = arch == Arch::Conventional ? s.pz_conv : s.pz_gr;
        if (pz <= 0) return 0.0;
        double target = s.sqnr_db;
        if (cap_to_ceiling) target = std::min(target, rep.ceiling_db);
        return enob_from(target, pz);
    };
    double e = one(rep.global);
    if (rep.has_core) e = std::max(e, one(rep.core));
    return e;
}

SqnrReport measure_output_sqnr(Dist d, const ArchConfig& cfg,
                               const SqnrOptions& opt, const OutlierSpec& o) {
    const int nr = cfg.n_rows;
    CodeTable tx{cfg.x_fmt};
    CodeTable tw{cfg.w_fmt};

    const long nblocks = (opt.trials + kBlock - 1) / kBlock;
    std::vector<BlockAcc> blocks(static_cast<std::size_t>(nblocks));

    auto run_block = [&](long b) {
        BlockAcc acc;
        std::vector<Code> xq(nr), wq(nr);
        const long t0 = b * kBlock;
        const long t1 = std::min(opt.trials, t0 + kBlock);
        for (long t = t0; t < t1; ++t) {
            std::vector<double> xref;
            std::vector<std::uint8_t> flags;
            if (d == Dist::MaxEntropy) {
                // refine exact codes with sub-step jitter for a continuous reference
                xref = sample_maxent_jitter(tx, nr, opt.seed, rng::kStreamJitter,
                                            std::uint64_t(t));
            } else {
                Sample sx = sample(d, tx, nr, opt.seed, rng::kStreamX,
                                   std::uint64_t(t), o);
                xref = std::move(sx.x);
                flags = std::move(sx.outlier);
            }
            Sample sw = sample(Dist::MaxEntropy, tw, nr, opt.seed, rng::kStreamW,
                               std::uint64_t(t), o);
            bool clean = true;
            for (int i = 0; i < nr; ++i) {
                xq[i] = tx.quantize(xref[i]);
                wq[i] = tw.quantize(sw.x[i]);
            }
            for (std::uint8_t f : flags)
                if (f) { clean = false; break; }

            double zref = 0;
            for (int i = 0; i < nr; ++i) zref += xref[i] * wq[i].value;
            zref /= nr;

            MacOut cv = conv_mac(xq, wq, cfg);
            MacOut gr = gr_mac(xq, wq, cfg);

            double zq;
            if (opt.adc_enob > 0) {
                if (cfg.arch == Arch::GainRanging) {
                    double za = adc_quantize(gr.z_analog, opt.adc_enob);
                    zq = gr.z_analog != 0.0
                             ? za * (gr.z_digital / gr.z_analog)
                             : 0.0;
                } else {
                    zq = adc_quantize(cv.z_analog, opt.adc_enob);
                }
            } else {
                zq = cv.z_analog;
            }

            double e = zq - zref;
            Acc one;
            one.sig = zref * zref;
            one.err = e * e;
            one.pz_conv = cv.z_analog * cv.z_analog;
            one.pz_gr = gr.z_analog * gr.z_analog;
            one.n = 1;
            acc.global += one;
            if (clean) acc.core += one;
        }
        blocks[std::size_t(b)] = acc;
    };

    int workers = opt.threads > 0
                      ? opt.threads
                      : int(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min<long>(workers, nblocks);
    if (workers <= 1) {
        for (long b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int k = 0; k < workers; ++k)
            pool.emplace_back([&] {
                for (long b = next.fetch_add(1); b < nblocks;
                     b = next.fetch_add(1))
                    run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    Acc g, c;
    for (const auto& b : blocks) {  // fixed order, independent of workers
        g += b.global;
        c += b.core;
    }

    SqnrReport rep;
    rep.ceiling_db = cfg.x_fmt.sqnr_ceiling_db();
    rep.global = finish(g);
    rep.has_core = d == Dist::GaussianOutliers;
    rep.core = rep.has_core ? finish(c) : rep.global;
    return rep;
}

double measure_format_sqnr_db(const CodeTable& t, long samples,
                              std::uint64_t seed) {
    if (samples <= 0) {
        // equiprobable codes, symmetric sub-step jitter: noise ulp^2/12 per code
        double sig = 0, noise = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            sig += t.magnitude(i) * t.magnitude(i);
            noise += t.ulp(i) * t.ulp(i) / 12.0;
        }
        return 10.0 * std::log10(sig / noise);
    }
    double sig = 0, err = 0;
    const long chunk = 4096;
    for (long done = 0; done < samples; done += chunk) {
        long n = std::min(chunk, samples - done);
        auto xs = sample_maxent_jitter(t, int(n), seed, rng::kStreamJitter,
                                       std::uint64_t(done / chunk));
        for (double v : xs) {
            double q = t.quantize(v).value;
            sig += v * v;
            err += (v - q) * (v - q);
        }
    }
    return 10.0 * std::log10(sig / err);
}

double worst_case_pz(double e_max_x, Arch arch, Granularity gran,
                     double w_mean_sq, double w_mantissa_mean_sq, int n_rows) {
    // worst case input: full-scale uniform over the bottom binade, which is
    // the densest-power layout the format admits
    double x2 = e_max_x > 0 ? (7.0 / 3.0) * std::pow(4.0, -e_max_x) : 1.0 / 3.0;
    const double m2 = 7.0 / 12.0;
    if (arch == Arch::Conventional) return x2 * w_mean_sq / n_rows;
    switch (gran) {
        case Granularity::Unit: return m2 * w_mantissa_mean_sq / n_rows;
        case Granularity::Row: return m2 * w_mean_sq / n_rows;
        case Granularity::IntWeights: return x2 * w_mantissa_mean_sq / n_rows;
    }
    return 0.0;
}

double worst_case_enob(double target_db, double e_max_x, Arch arch,
                       Granularity gran, double w_mean_sq,
                       double w_mantissa_mean_sq, int n_rows) {
    return enob_from(target_db,
                     worst_case_pz(e_max_x, arch, gran, w_mean_sq,
                                   w_mantissa_mean_sq, n_rows));
}

double worst_case_enob(const ArchConfig& cfg) {
    CodeTable tw{cfg.w_fmt};
    return worst_case_enob(cfg.x_fmt.sqnr_ceiling_db(), cfg.x_fmt.e_max(),
                           cfg.arch, cfg.gran, tw.mean_sq_value(),
                           tw.mean_sq_mantissa(), cfg.n_rows);
}

std::vector<EnobPoint> enob_vs_range_sweep(std::span<const Dist> dists,
                                           int ne_lo, int ne_hi, int n_m,
                                           const ArchConfig& base,
                                           const SqnrOptions& opt) {
    std::vector<EnobPoint> out;
    for (Dist d : dists) {
        for (int ne = ne_lo; ne <= ne_hi; ++ne) {
            ArchConfig cfg = base;
            cfg.x_fmt = FpFormat{ne, n_m};
            SqnrReport rep = measure_output_sqnr(d, cfg, opt);
            EnobPoint p;
            p.dist = d;
            p.n_e = ne;
            p.n_m = n_m;
            p.conv_enob = required_enob(rep, Arch::Conventional, false);
            p.gr_enob = required_enob(rep, Arch::GainRanging, false);
            p.sqnr_global_db = rep.global.sqnr_db;
            p.sqnr_core_db = rep.core.sqnr_db;
            p.core_no_signal = rep.has_core && rep.core.no_signal;
            out.push_back(p);
        }
    }
    return out;
}

std::vector<EnobPoint> enob_vs_precision_sweep(std::span<const Dist> dists,
                                               int nm_lo, int nm_hi, int n_e,
                                               const ArchConfig& base,
                                               const SqnrOptions& opt) {
    std::vector<EnobPoint> out;
    for (Dist d : dists) {
        for (int nm = nm_lo; nm <= nm_hi; ++nm) {
            ArchConfig cfg = base;
            cfg.x_fmt = FpFormat{n_e, nm};
            SqnrReport rep = measure_output_sqnr(d, cfg, opt);
            EnobPoint p;
            p.dist = d;
            p.n_e = n_e;
            p.n_m = nm;
            p.conv_enob = required_enob(rep, Arch::Conventional, false);
            p.gr_enob = required_enob(rep, Arch::GainRanging, false);
            p.sqnr_global_db = rep.global.sqnr_db;
            p.sqnr_core_db = rep.core.sqnr_db;
            p.core_no_signal = rep.has_core && rep.core.no_signal;
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace grcim
