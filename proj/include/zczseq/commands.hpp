#pragma once

// generate / verify / analyze command implementations.
//
// Exit codes: 0 success, 1 validation failure, 2 check failure, 3 I/O failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zczseq/analysis.hpp"
#include "zczseq/io.hpp"
#include "zczseq/job.hpp"

namespace zczseq::cli {

namespace fs = std::filesystem;
using io::json;

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kCheckFailure = 2, kIoFailure = 3 };

inline constexpr const char* kManifestName = "manifest.json";
inline constexpr const char* kVerifyReportName = "verify_report.json";
inline constexpr const char* kAnalysisName = "analysis.json";

struct CommonOptions {
    ParseOverrides overrides;
    std::optional<fs::path> outDir;
};

inline std::string sequence_file_name(const std::string& label, std::size_t n) {
    return label + "_seq" + std::to_string(n) + ".csv";
}

// A job together with its sets, either rebuilt from parameters or read back
// from the files listed in a manifest.
struct LoadedJob {
    JobConfig job;
    std::vector<SequenceSet> sets;
    fs::path baseDir;
    bool fromManifest = false;
};

inline bool is_manifest(const json& j) {
    return j.is_object() && j.value("kind", std::string{}) == "manifest";
}

inline LoadedJob load_manifest(const json& m, const fs::path& manifestPath, const ParseOverrides& ov) {
    LoadedJob out{parse_job(m.at("config"), ov), {}, manifestPath.parent_path(), true};
    const auto ortho = make_orthogonal_set(out.job);
    for (const auto& entry : m.at("sets")) {
        const std::string label = entry.at("label").get<std::string>();
        std::vector<ComplexSeq> seqs;
        for (const auto& f : entry.at("sequence_files")) {
            auto seq = io::read_sequence_csv(out.baseDir / f.get<std::string>());
            if (static_cast<std::int64_t>(seq.size()) != out.job.interlace.n()) {
                throw IoError(f.get<std::string>() + ": length " + std::to_string(seq.size()) +
                              " does not match N = " + std::to_string(out.job.interlace.n()));
            }
            seqs.push_back(std::move(seq));
        }
        auto carrier = io::read_sequence_csv(out.baseDir / entry.at("carrier_file").get<std::string>());
        out.sets.push_back(SequenceSet{std::move(seqs), out.job.interlace, ortho, std::move(carrier), label});
    }
    return out;
}

inline LoadedJob load_job(const fs::path& path, const ParseOverrides& ov) {
    const json j = io::read_json(path);
    if (is_manifest(j)) {
        return load_manifest(j, path, ov);
    }
    LoadedJob out{parse_job(j, ov), {}, {}, false};
    out.sets = build_sets(out.job);
    return out;
}

inline json make_manifest(const JobConfig& job, const std::vector<SequenceSet>& sets) {
    json m;
    m["schema_version"] = io::kSchemaVersion;
    m["kind"] = "manifest";
    m["config"] = job_to_json(job);
    json arr = json::array();
    for (const auto& set : sets) {
        json e;
        e["label"] = set.label;
        e["carrier_file"] = set.label + "_carrier.csv";
        json files = json::array();
        for (std::size_t n = 0; n < set.sequences.size(); ++n) {
            files.push_back(sequence_file_name(set.label, n));
        }
        e["sequence_files"] = files;
        e["sequence_length"] = job.interlace.n();
        arr.push_back(e);
    }
    m["sets"] = arr;
    m["derived"] = {{"N", job.interlace.n()},
                    {"L", job.interlace.l()},
                    {"A", job.interlace.a()},
                    {"allowed_frequencies", job.interlace.allowed_frequencies()}};
    return m;
}

// Writes every set (carrier + sequences) and the manifest into dir.
inline void write_generation(const fs::path& dir, const JobConfig& job, const std::vector<SequenceSet>& sets) {
    for (const auto& set : sets) {
        io::write_file_atomic(dir / (set.label + "_carrier.csv"), io::sequence_csv(*set.carrier));
        for (std::size_t n = 0; n < set.sequences.size(); ++n) {
            io::write_file_atomic(dir / sequence_file_name(set.label, n), io::sequence_csv(set.sequences[n]));
        }
    }
    io::write_json(dir / kManifestName, make_manifest(job, sets));
}

// ---------------------------------------------------------------------------
// verification checks

enum class CheckStatus { Pass, Fail, NotApplicable };

struct CheckRecorder {
    json checks = json::array();
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t notApplicable = 0;

    void add(const std::string& name, CheckStatus st, json measured, json threshold) {
        const char* s = st == CheckStatus::Pass ? "pass" : st == CheckStatus::Fail ? "fail" : "not_applicable";
        (st == CheckStatus::Pass ? passed : st == CheckStatus::Fail ? failed : notApplicable)++;
        checks.push_back({{"name", name}, {"status", s}, {"measured", std::move(measured)},
                          {"threshold", std::move(threshold)}});
    }
    void add(const std::string& name, bool ok, json measured, json threshold) {
        add(name, ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(measured), std::move(threshold));
    }
};

inline json zone_json(const std::optional<std::size_t>& z) {
    return z ? json(*z) : json(nullptr);
}

inline void check_set(const JobConfig& job, const SequenceSet& set, CheckRecorder& rec) {
    const auto& il = set.interlace;
    const double tol = job.zeroTol;
    const double len = static_cast<double>(il.l());
    const auto guaranteed = static_cast<std::size_t>(il.t() - 1);
    const std::string p = set.label + ".";

    const auto sc = spectral_compliance(set, tol);
    rec.add(p + "spectral_compliance", sc.passed,
            {{"max_out_of_band", sc.maxOutOfBand}, {"max_in_band_deviation", sc.maxInBandDeviation}}, tol);

    // A ZC carrier is modulatable only for some (L, A); its check is then
    // informational and decides whether the PAPR claim applies.
    bool mcazacCarrier = job.carrier_is_mcazac() && set.carrier.has_value();
    std::optional<McazacReport> mz;
    if (mcazacCarrier) {
        mz = verify_mcazac(*set.carrier, il.a(), tol);
        if (job.carrierType == CarrierType::Zc) {
            mcazacCarrier = mz->passed;
        }
    }

    if (job.analysis.cazac && set.carrier) {
        const auto cz = verify_cazac(*set.carrier, tol);
        rec.add(p + "carrier_cazac", cz.passed,
                {{"magnitude_deviation", cz.magnitudeDeviation}, {"max_sidelobe", cz.maxSidelobe}}, tol);
        if (mz) {
            const json measured = {{"peak_deviation", mz->peakDeviation},
                                   {"max_zero_branch", mz->maxZeroBranch},
                                   {"failed_frequencies", mz->failedFrequencies}};
            if (job.carrierType == CarrierType::Zc && !mz->passed) {
                auto m = measured;
                m["reason"] = "ZC carrier is not modulatable for this A";
                rec.add(p + "carrier_mcazac", CheckStatus::NotApplicable, m, tol);
            } else {
                rec.add(p + "carrier_mcazac", mz->passed, measured, tol);
            }
        } else {
            rec.add(p + "carrier_mcazac", CheckStatus::NotApplicable,
                    {{"reason", "t is not a multiple of A"}}, nullptr);
        }
    }

    const auto sp = sparsity(set);
    rec.add(p + "sparsity", sp.maxOffGrid < tol * len && sp.maxZeroDelayCross < tol * len,
            {{"max_off_grid", sp.maxOffGrid}, {"max_zero_delay_cross", sp.maxZeroDelayCross}}, tol * len);

    const auto predictedAuto = job.zazExtension ? predicted_acorr(il, *job.zazExtension) : predicted_acorr(il);
    if (job.analysis.zones) {
        const auto predictedZone = measure_zones(predictedAuto, tol).zoneLength;
        std::size_t minZaz = static_cast<std::size_t>(il.n());
        bool zazOk = true;
        json perSeq = json::array();
        for (const auto& s : set.sequences) {
            const auto z = measure_zones(periodic_acorr(s), tol);
            perSeq.push_back({{"zaz", zone_json(z.zoneLength)}, {"edge_magnitude", z.edgeMagnitude}});
            minZaz = std::min(minZaz, z.zoneLength.value_or(0));
            zazOk = zazOk && z.zoneLength == predictedZone && *z.zoneLength >= guaranteed;
        }
        rec.add(p + "zaz", zazOk,
                {{"min_zaz", minZaz},
                 {"predicted_zaz", zone_json(predictedZone)},
                 {"exceeds_guaranteed_minimum", minZaz > guaranteed},
                 {"per_sequence", perSeq}},
                {{"guaranteed_minimum", guaranteed}});

        std::optional<std::size_t> minZccz;
        bool zcczOk = true;
        for (std::size_t x = 0; x < set.sequences.size(); ++x) {
            for (std::size_t y = x + 1; y < set.sequences.size(); ++y) {
                const auto z = measure_zones(periodic_xcorr(set.sequences[x], set.sequences[y]), tol);
                const std::size_t d = z.zoneLength.value_or(0);
                zcczOk = zcczOk && z.zoneLength && d >= guaranteed;
                minZccz = minZccz ? std::min(*minZccz, d) : d;
            }
        }
        if (minZccz) {
            rec.add(p + "zccz", zcczOk,
                    {{"min_zccz", *minZccz}, {"exceeds_guaranteed_minimum", *minZccz > guaranteed}},
                    {{"guaranteed_minimum", guaranteed}});
        } else {
            rec.add(p + "zccz", CheckStatus::NotApplicable, {{"reason", "set has a single sequence"}}, nullptr);
        }

        const std::size_t dzcz = minZccz ? std::min(minZaz, *minZccz) : minZaz;
        const auto bound = zcz_bound(il.n(), static_cast<std::int64_t>(set.sequences.size()));
        rec.add(p + "zcz_bound", static_cast<std::int64_t>(dzcz) <= bound,
                {{"zcz", dzcz}, {"optimal", static_cast<std::int64_t>(dzcz) == bound}}, {{"bound", bound}});
    }

    if (job.analysis.predictions && set.orthoSet) {
        double worst = 0.0;
        for (std::size_t x = 0; x < set.sequences.size(); ++x) {
            worst = std::max(worst, max_profile_diff(periodic_acorr(set.sequences[x]), predictedAuto));
            for (std::size_t y = 0; y < set.sequences.size(); ++y) {
                if (x == y) {
                    continue;
                }
                const auto pred = predicted_xcorr(il, (*set.orthoSet)[x], (*set.orthoSet)[y]);
                worst = std::max(worst, max_profile_diff(periodic_xcorr(set.sequences[x], set.sequences[y]), pred));
            }
        }
        rec.add(p + "prediction_match", worst < tol * len, {{"max_difference", worst}}, tol * len);
    }

    if (job.analysis.papr) {
        if (!mcazacCarrier) {
            rec.add(p + "papr", CheckStatus::NotApplicable,
                    {{"reason", job.carrier_is_mcazac() ? "the carrier is not modulatable CAZAC"
                                                        : "t is not a multiple of A"}},
                    nullptr);
        } else {
            const double expected = std::sqrt(static_cast<double>(il.a()) / static_cast<double>(il.delta()));
            double worstDb = 0.0;
            double worstSpread = 0.0;
            double worstMag = 0.0;
            for (const auto& s : set.sequences) {
                const auto pr = papr(s);
                worstDb = std::max(worstDb, pr.paprDb);
                worstSpread = std::max(worstSpread, pr.magnitudeSpread);
                for (const auto& v : s) {
                    worstMag = std::max(worstMag, std::abs(std::abs(v) - expected));
                }
            }
            rec.add(p + "papr", worstDb < 1e-8 && worstSpread < tol && worstMag < tol,
                    {{"max_papr_db", worstDb},
                     {"max_magnitude_spread", worstSpread},
                     {"expected_magnitude", expected},
                     {"max_magnitude_deviation", worstMag}},
                    {{"papr_db", 1e-8}, {"spread", tol}});
        }
    }
}

inline json run_checks(const JobConfig& job, const std::vector<SequenceSet>& sets) {
    CheckRecorder rec;
    for (const auto& set : sets) {
        check_set(job, set, rec);
    }

    if (job.analysis.crossSet && sets.size() > 1) {
        for (std::size_t r = 0; r < sets.size(); ++r) {
            for (std::size_t q = r + 1; q < sets.size(); ++q) {
                const auto cs = cross_set_check(sets[r], sets[q], job.s(), job.zeroTol);
                rec.add("cross_set." + sets[r].label + "_" + sets[q].label, cs.passed,
                        {{"max_magnitude", cs.maxMagnitude},
                         {"constant_magnitude", cs.constantMagnitude ? json(*cs.constantMagnitude) : json(nullptr)},
                         {"zero_delay_count", cs.zeroDelayCount}},
                        {{"bound", cs.bound}});
            }
        }
    }

    if (job.analysis.modulatabilitySweeps > 0) {
        if (job.carrierType == CarrierType::Zc) {
            rec.add("modulatability_sweep", CheckStatus::NotApplicable,
                    {{"reason", "carrier has no modulation parameter"}}, nullptr);
        } else {
            Rng rng(job.seed);
            std::size_t failures = 0;
            for (std::int64_t k = 0; k < job.analysis.modulatabilitySweeps; ++k) {
                ComplexSeq carrier{Complex{1.0, 0.0}};
                if (job.carrierType == CarrierType::GeneralizedUnified) {
                    auto p = job.unified;
                    p.eta = random_eta(p.a, rng);
                    carrier = generalized_unified(p);
                } else {
                    auto p = job.legacy;
                    p.eta = random_eta(p.a, rng);
                    carrier = legacy_unified(p);
                }
                if (!verify_mcazac(carrier, job.a(), job.zeroTol).passed) {
                    ++failures;
                }
            }
            rec.add("modulatability_sweep", failures == 0,
                    {{"draws", job.analysis.modulatabilitySweeps}, {"failures", failures}}, job.zeroTol);
        }
    }

    json report;
    report["schema_version"] = io::kSchemaVersion;
    report["checks"] = rec.checks;
    report["summary"] = {{"passed", rec.passed}, {"failed", rec.failed}, {"not_applicable", rec.notApplicable}};
    report["all_passed"] = rec.failed == 0;
    return report;
}

// ---------------------------------------------------------------------------
// commands

namespace detail {

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const json::exception& e) {
        err << "error: malformed configuration: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    }
}

} // namespace detail

inline int run_generate(const fs::path& config, const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const json j = io::read_json(config);
        const JobConfig job = parse_job(is_manifest(j) ? j.at("config") : j, opts.overrides);
        const auto sets = build_sets(job);
        const fs::path dir = opts.outDir ? *opts.outDir : fs::path(job.outputDir);
        write_generation(dir, job, sets);
        std::size_t count = 0;
        for (const auto& s : sets) {
            count += s.sequences.size();
        }
        out << "wrote " << sets.size() << " set(s), " << count << " sequence(s) of length " << job.interlace.n()
            << " to " << dir.string() << "\n";
        return static_cast<int>(kOk);
    });
}

inline int run_verify(const fs::path& config, const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const LoadedJob loaded = load_job(config, opts.overrides);
        const json report = run_checks(loaded.job, loaded.sets);
        fs::path dir;
        if (opts.outDir) {
            dir = *opts.outDir;
        } else if (loaded.fromManifest) {
            dir = loaded.baseDir;
        } else {
            dir = loaded.job.outputDir;
        }
        io::write_json(dir / kVerifyReportName, report);
        for (const auto& c : report.at("checks")) {
            out << c.at("status").get<std::string>() << "  " << c.at("name").get<std::string>() << "\n";
        }
        const bool ok = report.at("all_passed").get<bool>();
        out << (ok ? "all checks passed" : "some checks FAILED") << " (report: " << (dir / kVerifyReportName).string()
            << ")\n";
        return static_cast<int>(ok ? kOk : kCheckFailure);
    });
}

namespace detail {

struct NamedSeq {
    std::string name;
    ComplexSeq seq;
};

inline json analyze_sequence(const NamedSeq& s, const fs::path& dir, double tol) {
    const auto prof = periodic_acorr(s.seq);
    io::write_file_atomic(dir / (s.name + "_acorr.csv"), io::profile_csv(prof));
    io::write_file_atomic(dir / (s.name + "_acorr_sparse.csv"), io::sparse_profile_csv(prof, tol));
    const auto z = measure_zones(prof, tol);
    const auto pr = papr(s.seq);
    json runs = json::array();
    for (const auto& r : z.zeroRuns) {
        runs.push_back({r.start, r.length});
    }
    return {{"name", s.name},
            {"length", s.seq.size()},
            {"energy", energy(s.seq)},
            {"zaz", zone_json(z.zoneLength)},
            {"edge_magnitude", z.edgeMagnitude},
            {"max_sidelobe", z.maxNonzeroMagnitude},
            {"nonzero_delays", z.nonzeroDelays},
            {"zero_runs", runs},
            {"papr",
             {{"peak_power", pr.peakPower},
              {"mean_power", pr.meanPower},
              {"papr_db", pr.paprDb},
              {"magnitude_spread", pr.magnitudeSpread}}}};
}

inline json analyze_pair(const NamedSeq& x, const NamedSeq& y, const fs::path& dir, double tol) {
    const auto prof = periodic_xcorr(x.seq, y.seq);
    const std::string stem = x.name + "__" + y.name;
    io::write_file_atomic(dir / (stem + "_xcorr.csv"), io::profile_csv(prof));
    io::write_file_atomic(dir / (stem + "_xcorr_sparse.csv"), io::sparse_profile_csv(prof, tol));
    const auto z = measure_zones(prof, tol);
    return {{"x", x.name},
            {"y", y.name},
            {"zccz", zone_json(z.zoneLength)},
            {"max_magnitude", z.maxNonzeroMagnitude},
            {"nonzero_delays", z.nonzeroDelays}};
}

inline void analyze_group(const std::vector<NamedSeq>& group, const fs::path& dir, double tol, json& seqs,
                          json& pairs) {
    for (const auto& s : group) {
        seqs.push_back(analyze_sequence(s, dir, tol));
    }
    for (std::size_t x = 0; x < group.size(); ++x) {
        for (std::size_t y = x + 1; y < group.size(); ++y) {
            if (group[x].seq.size() == group[y].seq.size()) {
                pairs.push_back(analyze_pair(group[x], group[y], dir, tol));
            }
        }
    }
}

} // namespace detail

// Inputs are sequence CSV files or generation manifests.
inline int run_analyze(const std::vector<fs::path>& inputs, const fs::path& outDir, const CommonOptions& opts,
                       std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        if (inputs.empty()) {
            throw ValidationError("analyze: at least one --in path is required");
        }
        const double tol = opts.overrides.zeroTol.value_or(1e-9);
        json seqs = json::array();
        json pairs = json::array();
        json cross = json::array();
        std::vector<detail::NamedSeq> loose;

        for (const auto& in : inputs) {
            if (in.extension() == ".json") {
                const json m = io::read_json(in);
                if (!is_manifest(m)) {
                    throw ValidationError(in.string() + " is not a generation manifest");
                }
                const LoadedJob loaded = load_manifest(m, in, opts.overrides);
                const double jtol = opts.overrides.zeroTol.value_or(loaded.job.zeroTol);
                for (const auto& set : loaded.sets) {
                    std::vector<detail::NamedSeq> group;
                    for (std::size_t n = 0; n < set.sequences.size(); ++n) {
                        group.push_back({set.label + "_seq" + std::to_string(n), set.sequences[n]});
                    }
                    detail::analyze_group(group, outDir, jtol, seqs, pairs);
                }
                for (std::size_t r = 0; r < loaded.sets.size(); ++r) {
                    for (std::size_t q = r + 1; q < loaded.sets.size(); ++q) {
                        const auto cs = cross_set_check(loaded.sets[r], loaded.sets[q], loaded.job.s(), jtol);
                        cross.push_back({{"set_a", loaded.sets[r].label},
                                         {"set_b", loaded.sets[q].label},
                                         {"bound", cs.bound},
                                         {"max_magnitude", cs.maxMagnitude},
                                         {"within_bound", cs.withinBound},
                                         {"constant_magnitude", cs.constantMagnitude ? json(*cs.constantMagnitude)
                                                                                      : json(nullptr)},
                                         {"zero_delay_count", cs.zeroDelayCount}});
                    }
                }
            } else {
                loose.push_back({in.stem().string(), io::read_sequence_csv(in)});
            }
        }
        detail::analyze_group(loose, outDir, tol, seqs, pairs);

        json summary;
        summary["schema_version"] = io::kSchemaVersion;
        summary["sequences"] = seqs;
        summary["pairs"] = pairs;
        summary["cross_set"] = cross;
        io::write_json(outDir / kAnalysisName, summary);
        out << "analyzed " << seqs.size() << " sequence(s), " << pairs.size() << " pair(s) into " << outDir.string()
            << "\n";
        return static_cast<int>(kOk);
    });
}

} // namespace zczseq::cli
