#pragma once

// Job configuration for the command-line front end.
//
// A job names an interlace, a carrier construction, an orthogonal short set,
// an optional permutation family for multiple sets, analysis switches and
// an output directory. parse_job resolves every default and random choice,
// and job_to_json writes the fully explicit form back out; feeding that
// form to parse_job again rebuilds the identical job.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zczseq/analysis.hpp"
#include "zczseq/cazac.hpp"
#include "zczseq/io.hpp"
#include "zczseq/random.hpp"
#include "zczseq/zcz.hpp"

namespace zczseq {

enum class CarrierType { Zc, LegacyUnified, GeneralizedUnified };
enum class OrthoType { Dft, Zc, Walsh };

inline std::string to_string(CarrierType c) {
    switch (c) {
        case CarrierType::Zc: return "zc";
        case CarrierType::LegacyUnified: return "legacy-unified";
        case CarrierType::GeneralizedUnified: return "generalized-unified";
    }
    return "?";
}

inline std::string to_string(OrthoType o) {
    switch (o) {
        case OrthoType::Dft: return "dft";
        case OrthoType::Zc: return "zc";
        case OrthoType::Walsh: return "walsh";
    }
    return "?";
}

struct AnalysisSwitches {
    bool cazac = true;
    bool zones = true;
    bool papr = true;
    bool predictions = true;
    bool crossSet = true;
    std::int64_t modulatabilitySweeps = 0;
};

struct JobConfig {
    explicit JobConfig(InterlaceSpec il) : interlace(std::move(il)) {}

    InterlaceSpec interlace;
    std::optional<ZazExtensionSpec> zazExtension;
    CarrierType carrierType = CarrierType::GeneralizedUnified;
    ZCParams zc;
    LegacyUnifiedParams legacy;
    UnifiedMCAZACParams unified;
    OrthoType orthoType = OrthoType::Dft;
    ZCParams orthoZc;
    std::optional<PermutationFamily> family;
    AnalysisSwitches analysis;
    std::string outputDir = "out";
    double zeroTol = 1e-9;
    std::uint64_t seed = 1;

    [[nodiscard]] std::int64_t a() const noexcept { return interlace.a(); }
    [[nodiscard]] std::int64_t t() const noexcept { return interlace.t(); }
    // Repetition factor s = t / A for the MCAZAC constructions (0 when A does not divide t).
    [[nodiscard]] std::int64_t s() const noexcept { return t() % a() == 0 ? t() / a() : 0; }
    [[nodiscard]] bool carrier_is_mcazac() const noexcept { return s() != 0; }
};

struct ParseOverrides {
    std::optional<double> zeroTol;
    std::optional<std::uint64_t> seed;
};

namespace detail {

using io::json;

inline const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(where + ": missing required field '" + key + "'");
    }
    return j.at(key);
}

inline std::int64_t get_int(const json& j, const char* key, const std::string& where) {
    const auto& v = require(j, key, where);
    if (!v.is_number_integer()) {
        throw ValidationError(where + "." + key + " must be an integer");
    }
    return v.get<std::int64_t>();
}

inline std::int64_t get_int_or(const json& j, const char* key, std::int64_t dflt, const std::string& where) {
    return j.contains(key) ? get_int(j, key, where) : dflt;
}

inline std::vector<std::int64_t> get_int_list(const json& v, const std::string& where) {
    if (!v.is_array()) {
        throw ValidationError(where + " must be an array of integers");
    }
    std::vector<std::int64_t> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) {
            throw ValidationError(where + " must be an array of integers");
        }
        out.push_back(e.get<std::int64_t>());
    }
    return out;
}

inline bool get_bool_or(const json& j, const char* key, bool dflt) {
    if (!j.contains(key)) {
        return dflt;
    }
    if (!j.at(key).is_boolean()) {
        throw ValidationError(std::string("analysis.") + key + " must be a boolean");
    }
    return j.at(key).get<bool>();
}

inline std::vector<Complex> parse_eta(const json& c, std::int64_t a, Rng& rng) {
    if (!c.contains("eta") || c.at("eta") == "ones") {
        return std::vector<Complex>(static_cast<std::size_t>(a), Complex{1.0, 0.0});
    }
    if (c.at("eta") == "random") {
        return random_eta(a, rng);
    }
    return io::complex_list_from_json(c.at("eta"));
}

inline Permutation parse_mu(const json& c, std::int64_t a) {
    if (!c.contains("mu")) {
        return Permutation::identity(static_cast<std::size_t>(a));
    }
    return Permutation(get_int_list(c.at("mu"), "carrier.mu"));
}

inline InterlaceSpec parse_interlace(const json& j, std::optional<ZazExtensionSpec>& ext) {
    const std::string where = "interlace";
    const auto delta = get_int(j, "delta", where);
    const auto t = get_int(j, "t", where);
    if (j.contains("zaz_extension")) {
        const auto& e = j.at("zaz_extension");
        ZazExtensionSpec spec;
        spec.aPrime = get_int(e, "a_prime", where + ".zaz_extension");
        spec.sigma = get_int(e, "sigma", where + ".zaz_extension");
        spec.bigB = get_int(e, "b", where + ".zaz_extension");
        spec.innerOffsets = get_int_list(require(e, "inner_offsets", where + ".zaz_extension"),
                                         where + ".zaz_extension.inner_offsets");
        auto offsets = zaz_extended_offsets(delta, spec);
        if (j.contains("offsets") && get_int_list(j.at("offsets"), where + ".offsets") != offsets) {
            throw ValidationError("interlace.offsets contradict interlace.zaz_extension");
        }
        ext = spec;
        return build_interlace(delta, t, std::move(offsets));
    }
    return build_interlace(delta, t, get_int_list(require(j, "offsets", where), where + ".offsets"));
}

} // namespace detail

inline JobConfig parse_job(const io::json& root, const ParseOverrides& ov = {}) {
    using detail::json;
    if (!root.is_object()) {
        throw ValidationError("job config must be a JSON object");
    }
    if (root.contains("schema_version") && root.at("schema_version") != io::kSchemaVersion) {
        throw ValidationError("unsupported schema_version " + root.at("schema_version").dump());
    }
    std::optional<ZazExtensionSpec> ext;
    JobConfig job(detail::parse_interlace(detail::require(root, "interlace", "config"), ext));
    job.zazExtension = ext;

    if (root.contains("seed")) {
        if (!root.at("seed").is_number_unsigned()) {
            throw ValidationError("seed must be a non-negative integer");
        }
        job.seed = root.at("seed").get<std::uint64_t>();
    }
    if (ov.seed) {
        job.seed = *ov.seed;
    }
    if (root.contains("zero_tol")) {
        job.zeroTol = root.at("zero_tol").get<double>();
    }
    if (ov.zeroTol) {
        job.zeroTol = *ov.zeroTol;
    }
    if (!(job.zeroTol > 0.0)) {
        throw ValidationError("zero tolerance must be positive");
    }
    Rng rng(job.seed);

    const auto& c = detail::require(root, "carrier", "config");
    const std::string ctype = detail::require(c, "type", "carrier").get<std::string>();
    const std::int64_t a = job.a();
    const std::int64_t t = job.t();
    if (ctype == "zc") {
        job.carrierType = CarrierType::Zc;
        job.zc = {a * t, detail::get_int_or(c, "alpha", 1, "carrier"), detail::get_int_or(c, "q", 0, "carrier")};
        validate(job.zc);
    } else if (ctype == "legacy-unified" || ctype == "generalized-unified") {
        if (t % a != 0) {
            throw ValidationError("carrier " + ctype + " needs t to be a multiple of A (t = " + std::to_string(t) +
                                  ", A = " + std::to_string(a) + ")");
        }
        const std::int64_t s = t / a;
        if (c.contains("s") && detail::get_int(c, "s", "carrier") != s) {
            throw ValidationError("carrier.s must equal t / A = " + std::to_string(s));
        }
        if (ctype == "legacy-unified") {
            job.carrierType = CarrierType::LegacyUnified;
            job.legacy.a = a;
            job.legacy.s = s;
            job.legacy.r0 = detail::get_int_or(c, "r0", 1, "carrier");
            job.legacy.n0 = detail::get_int_or(c, "n0", 0, "carrier");
            job.legacy.r1 = detail::get_int_or(c, "r1", 1, "carrier");
            job.legacy.n1 = detail::get_int_or(c, "n1", 0, "carrier");
            job.legacy.mu = detail::parse_mu(c, a);
            job.legacy.eta = detail::parse_eta(c, a, rng);
            validate(job.legacy);
        } else {
            job.carrierType = CarrierType::GeneralizedUnified;
            job.unified.a = a;
            job.unified.s = s;
            job.unified.eta = detail::parse_eta(c, a, rng);
            job.unified.mu = detail::parse_mu(c, a);
            if (!c.contains("g") || c.at("g") == "zc") {
                job.unified.gl.assign(static_cast<std::size_t>(a), zadoff_chu({s, 1, 0}));
            } else if (c.at("g") == "random") {
                for (std::int64_t l = 0; l < a; ++l) {
                    job.unified.gl.push_back(random_cazac(s, rng));
                }
            } else {
                if (!c.at("g").is_array()) {
                    throw ValidationError("carrier.g must be \"zc\", \"random\" or a list of sequences");
                }
                for (const auto& g : c.at("g")) {
                    job.unified.gl.emplace_back(io::complex_list_from_json(g));
                }
            }
            validate(job.unified);
        }
    } else {
        throw ValidationError("unknown carrier.type '" + ctype + "'");
    }

    std::string otype = "dft";
    json oparams = json::object();
    if (root.contains("orthogonal_set")) {
        const auto& o = root.at("orthogonal_set");
        if (o.is_string()) {
            otype = o.get<std::string>();
        } else {
            otype = detail::require(o, "type", "orthogonal_set").get<std::string>();
            oparams = o;
        }
    }
    if (otype == "dft") {
        job.orthoType = OrthoType::Dft;
    } else if (otype == "walsh") {
        job.orthoType = OrthoType::Walsh;
        if ((a & (a - 1)) != 0) {
            throw ValidationError("orthogonal_set walsh needs A to be a power of two");
        }
    } else if (otype == "zc") {
        job.orthoType = OrthoType::Zc;
        const auto& base = job.carrierType == CarrierType::Zc ? job.zc : ZCParams{a * t, 1, 0};
        job.orthoZc = {a * t, detail::get_int_or(oparams, "alpha", base.root, "orthogonal_set"),
                       detail::get_int_or(oparams, "q", base.q, "orthogonal_set")};
        validate(job.orthoZc);
    } else {
        throw ValidationError("unknown orthogonal_set type '" + otype + "'");
    }

    if (root.contains("multi_set")) {
        const auto& m = root.at("multi_set");
        if (job.carrierType != CarrierType::GeneralizedUnified) {
            throw ValidationError("multi_set requires a generalized-unified carrier");
        }
        if (m.contains("permutations")) {
            std::vector<Permutation> members;
            for (const auto& p : m.at("permutations")) {
                members.emplace_back(detail::get_int_list(p, "multi_set.permutations"));
            }
            job.family = PermutationFamily(std::move(members));
        } else if (m.value("family", std::string{}) == "congruent") {
            job.family = congruent_permutation_family(a);
        } else {
            throw ValidationError("multi_set needs \"family\": \"congruent\" or an explicit \"permutations\" list");
        }
        if (static_cast<std::int64_t>(job.family->degree()) != a) {
            throw ValidationError("multi_set permutations must act on A = " + std::to_string(a) + " elements");
        }
        if (!verify_permutation_family(*job.family)) {
            throw ValidationError("multi_set permutations violate the difference-closure condition");
        }
    }

    if (root.contains("analysis")) {
        const auto& an = root.at("analysis");
        job.analysis.cazac = detail::get_bool_or(an, "cazac", true);
        job.analysis.zones = detail::get_bool_or(an, "zones", true);
        job.analysis.papr = detail::get_bool_or(an, "papr", true);
        job.analysis.predictions = detail::get_bool_or(an, "predictions", true);
        job.analysis.crossSet = detail::get_bool_or(an, "cross_set", true);
        job.analysis.modulatabilitySweeps = detail::get_int_or(an, "modulatability_sweeps", 0, "analysis");
    }
    if (root.contains("output")) {
        job.outputDir = root.at("output").value("dir", job.outputDir);
    }
    return job;
}

// Fully explicit form of the job (no defaults or random choices left).
inline io::json job_to_json(const JobConfig& job) {
    using io::json;
    json root;
    root["schema_version"] = io::kSchemaVersion;
    json il;
    il["delta"] = job.interlace.delta();
    il["t"] = job.interlace.t();
    il["offsets"] = job.interlace.offsets();
    if (job.zazExtension) {
        il["zaz_extension"] = {{"a_prime", job.zazExtension->aPrime},
                               {"sigma", job.zazExtension->sigma},
                               {"b", job.zazExtension->bigB},
                               {"inner_offsets", job.zazExtension->innerOffsets}};
    }
    root["interlace"] = il;

    json c;
    c["type"] = to_string(job.carrierType);
    const auto eta_json = [](const std::vector<Complex>& eta) {
        json arr = json::array();
        for (const auto& e : eta) {
            arr.push_back(io::complex_to_json(e));
        }
        return arr;
    };
    switch (job.carrierType) {
        case CarrierType::Zc:
            c["alpha"] = job.zc.root;
            c["q"] = job.zc.q;
            break;
        case CarrierType::LegacyUnified:
            c["s"] = job.legacy.s;
            c["r0"] = job.legacy.r0;
            c["n0"] = job.legacy.n0;
            c["r1"] = job.legacy.r1;
            c["n1"] = job.legacy.n1;
            c["mu"] = job.legacy.mu.mapping();
            c["eta"] = eta_json(job.legacy.eta);
            break;
        case CarrierType::GeneralizedUnified: {
            c["s"] = job.unified.s;
            c["mu"] = job.unified.mu.mapping();
            c["eta"] = eta_json(job.unified.eta);
            json g = json::array();
            for (const auto& seq : job.unified.gl) {
                g.push_back(io::seq_to_json(seq));
            }
            c["g"] = g;
            break;
        }
    }
    root["carrier"] = c;

    json o;
    o["type"] = to_string(job.orthoType);
    if (job.orthoType == OrthoType::Zc) {
        o["alpha"] = job.orthoZc.root;
        o["q"] = job.orthoZc.q;
    }
    root["orthogonal_set"] = o;

    if (job.family) {
        json perms = json::array();
        for (const auto& p : job.family->members()) {
            perms.push_back(p.mapping());
        }
        root["multi_set"] = {{"permutations", perms}};
    }
    root["analysis"] = {{"cazac", job.analysis.cazac},
                        {"zones", job.analysis.zones},
                        {"papr", job.analysis.papr},
                        {"predictions", job.analysis.predictions},
                        {"cross_set", job.analysis.crossSet},
                        {"modulatability_sweeps", job.analysis.modulatabilitySweeps}};
    root["output"] = {{"dir", job.outputDir}};
    root["zero_tol"] = job.zeroTol;
    root["seed"] = job.seed;
    return root;
}

inline OrthogonalSet make_orthogonal_set(const JobConfig& job) {
    switch (job.orthoType) {
        case OrthoType::Dft: return orthogonal_set_dft(job.a());
        case OrthoType::Walsh: return orthogonal_set_walsh(job.a());
        case OrthoType::Zc: return orthogonal_set_zc(job.orthoZc, job.t());
    }
    throw ValidationError("unknown orthogonal set");
}

inline ComplexSeq make_carrier(const JobConfig& job) {
    switch (job.carrierType) {
        case CarrierType::Zc: return zadoff_chu(job.zc);
        case CarrierType::LegacyUnified: return legacy_unified(job.legacy);
        case CarrierType::GeneralizedUnified: return generalized_unified(job.unified);
    }
    throw ValidationError("unknown carrier");
}

inline std::vector<SequenceSet> build_sets(const JobConfig& job) {
    const auto ortho = make_orthogonal_set(job);
    if (job.family) {
        return multi_set_generate(job.interlace, job.unified, *job.family, ortho);
    }
    return {build_sequence_set(job.interlace, ortho, make_carrier(job), "set0")};
}

} // namespace zczseq
