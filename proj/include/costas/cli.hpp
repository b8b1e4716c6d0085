#pragma once

// Batch orchestration behind the `costas` command-line tool. A RunConfig names
// one command and its parameters; run() executes it and renders the report.
//
// Exit status: 0 all verdicts pass, 1 some verdict fails, 2 usage or
// parameter error. Nothing is written to the output path unless the command
// completes without error.

#include "costas/construction.hpp"
#include "costas/ffield.hpp"
#include "costas/report.hpp"
#include "costas/theorems.hpp"
#include "costas/xcorr.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace costas::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerdictFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kCacheDirEnv = "COSTAS_CACHE_DIR";

enum class Command { Generate, VerifyCostas, Xcorr, Family, TheoremCheck, LemmaCheck, ConjectureScan };
enum class FamilyKind { Welch, GolombSub, GolombFull };
enum class Format { Json, Csv, Text };

/// A parameter error; `field` names the offending option.
class UsageError : public std::invalid_argument {
public:
    UsageError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// One permutation named on the command line: "p:g[:shift]" (Welch),
/// "q:g1:g2" (Golomb), or a file in text form.
struct PermutationRef {
    enum class Kind { Welch, Golomb, File } kind = Kind::Welch;
    std::uint32_t order = 0;
    std::uint32_t gen1 = 0;
    std::uint32_t gen2 = 0;
    std::int64_t shift = 0;
    std::string path;
};

struct RunConfig {
    Command command = Command::Generate;
    FamilyKind family = FamilyKind::Welch;

    std::optional<std::uint32_t> p, q;
    std::optional<std::uint32_t> g, g1, g2;
    std::int64_t shift = 0;
    std::optional<std::int64_t> u, v;
    bool pair_max_only = false;  // xcorr: report the pair maximum instead of the table

    std::vector<PermutationRef> permutations;  // xcorr operands, verify-costas inputs

    std::optional<std::uint32_t> p_min, p_max, q_min, q_max;
    bool all_g2 = false;
    bool shifted = false;
    bool long_run = false;
    std::vector<int> lemmas;  // lemma-check: empty means all three

    std::string output;  // empty: the caller's stream
    Format format = Format::Json;
    unsigned workers = 0;
    std::string cache_dir;
};

inline std::string default_cache_dir() {
    const char* env = std::getenv(kCacheDirEnv);
    return env ? std::string(env) : std::string{};
}

namespace detail {

inline std::vector<std::uint64_t> split_numbers(const std::string& text, const std::string& field) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw UsageError(field, "expected colon-separated integers, got '" + text + "'");
        out.push_back(std::stoull(part));
    }
    return out;
}

}  // namespace detail

inline PermutationRef parse_welch_ref(const std::string& text) {
    auto parts = detail::split_numbers(text, "--welch");
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("--welch", "expected p:g[:shift], got '" + text + "'");
    PermutationRef ref;
    ref.kind = PermutationRef::Kind::Welch;
    ref.order = static_cast<std::uint32_t>(parts[0]);
    ref.gen1 = static_cast<std::uint32_t>(parts[1]);
    ref.shift = parts.size() == 3 ? static_cast<std::int64_t>(parts[2]) : 0;
    return ref;
}

inline PermutationRef parse_golomb_ref(const std::string& text) {
    auto parts = detail::split_numbers(text, "--golomb");
    if (parts.size() != 3) throw UsageError("--golomb", "expected q:g1:g2, got '" + text + "'");
    PermutationRef ref;
    ref.kind = PermutationRef::Kind::Golomb;
    ref.order = static_cast<std::uint32_t>(parts[0]);
    ref.gen1 = static_cast<std::uint32_t>(parts[1]);
    ref.gen2 = static_cast<std::uint32_t>(parts[2]);
    return ref;
}

inline PermutationRef file_ref(std::string path) {
    PermutationRef ref;
    ref.kind = PermutationRef::Kind::File;
    ref.path = std::move(path);
    return ref;
}

namespace detail {

inline void require_prime_order(std::uint32_t p, const std::string& field) {
    if (p < 5 || !is_prime(p)) throw UsageError(field, std::to_string(p) + " is not a prime >= 5");
    if (p > kMaxFieldOrder) throw UsageError(field, std::to_string(p) + " exceeds the 2^20 field-size cap");
}

inline FieldSpec golomb_field(std::uint32_t q, const std::string& field) {
    if (q > kMaxFieldOrder) throw UsageError(field, std::to_string(q) + " exceeds the 2^20 field-size cap");
    if (q < 4 || !is_prime_power(q)) throw UsageError(field, std::to_string(q) + " is not a prime power >= 4");
    return make_field_of_order(q);
}

inline std::uint32_t required(const std::optional<std::uint32_t>& value, const std::string& field) {
    if (!value) throw UsageError(field, "required for this command");
    return *value;
}

struct Context {
    const RunConfig& config;

    LogTable table_for(const FieldSpec& spec) const {
        return cached_log_table(spec, smallest_primitive_element(spec), config.cache_dir);
    }

    FieldElement primitive(const FieldSpec& spec, std::uint32_t value, const std::string& field) const {
        if (value >= spec.q || !is_primitive(FieldElement{value}, spec))
            throw UsageError(field, std::to_string(value) + " is not a primitive element of GF(" + std::to_string(spec.q) + ")");
        return FieldElement{value};
    }

    CostasPermutation resolve(const PermutationRef& ref) const {
        switch (ref.kind) {
            case PermutationRef::Kind::Welch: {
                require_prime_order(ref.order, "--welch");
                primitive(make_field(ref.order), ref.gen1, "--welch");
                return welch(ref.order, ref.gen1, ref.shift);
            }
            case PermutationRef::Kind::Golomb: {
                const auto spec = golomb_field(ref.order, "--golomb");
                return golomb(table_for(spec), primitive(spec, ref.gen1, "--golomb"), primitive(spec, ref.gen2, "--golomb"));
            }
            case PermutationRef::Kind::File: {
                std::ifstream in(ref.path);
                if (!in) throw UsageError("--file", "cannot open '" + ref.path + "'");
                try {
                    return read_permutation(in);
                } catch (const std::invalid_argument& e) {
                    throw UsageError("--file", ref.path + ": " + e.what());
                }
            }
        }
        throw UsageError("permutation", "unknown kind");
    }

    std::vector<CostasPermutation> family() const {
        switch (config.family) {
            case FamilyKind::Welch: {
                const auto p = required(config.p, "--p");
                require_prime_order(p, "--p");
                return welch_family(p);
            }
            case FamilyKind::GolombSub: {
                const auto spec = golomb_field(required(config.q, "--q"), "--q");
                const auto table = table_for(spec);
                const auto g2 = config.g2 ? primitive(spec, *config.g2, "--g2") : table.base();
                return golomb_subfamily(table, g2);
            }
            case FamilyKind::GolombFull: {
                const auto spec = golomb_field(required(config.q, "--q"), "--q");
                return golomb_full_family(table_for(spec));
            }
        }
        return {};
    }
};

inline std::vector<std::uint32_t> order_range(const std::optional<std::uint32_t>& single,
                                              const std::optional<std::uint32_t>& lo,
                                              const std::optional<std::uint32_t>& hi, std::uint32_t default_lo,
                                              std::optional<std::uint32_t> default_hi, const std::string& name,
                                              bool primes_only) {
    std::uint32_t from, to;
    if (single) {
        if (lo || hi) throw UsageError("--" + name, "give either --" + name + " or a --" + name + "-min/--" + name + "-max range");
        from = to = *single;
    } else {
        if (!hi && !default_hi) throw UsageError("--" + name + "-max", "required for this command");
        from = lo.value_or(default_lo);
        to = hi ? *hi : *default_hi;
    }
    if (to > kMaxFieldOrder) throw UsageError("--" + name + "-max", "exceeds the 2^20 field-size cap");
    if (from > to) throw UsageError("--" + name + "-min", "range is empty");
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = std::max(from, default_lo); x <= to; ++x)
        if (primes_only ? is_prime(x) : is_prime_power(x)) out.push_back(x);
    if (single && out.empty())
        throw UsageError("--" + name, std::to_string(*single) + (primes_only ? " is not a prime >= " : " is not a prime power >= ") +
                                          std::to_string(default_lo));
    return out;
}

struct Report {
    std::string body;
    bool pass = true;
};

inline std::string render_verdicts(const std::vector<TheoremVerdict>& verdicts, Format format) {
    std::ostringstream os;
    switch (format) {
        case Format::Json: os << to_json(verdicts).dump(2) << '\n'; break;
        case Format::Csv: write_verdicts_csv(os, verdicts); break;
        case Format::Text:
            for (const auto& v : verdicts) os << to_text(v) << '\n';
            break;
    }
    return os.str();
}

inline bool all_pass(const std::vector<TheoremVerdict>& verdicts) {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.pass; });
}

inline json permutation_json(const CostasPermutation& perm) {
    json values = json::array();
    for (auto x : perm.values()) values.push_back(x);
    return json{{"provenance", provenance_to_json(perm.provenance())}, {"n", perm.n()}, {"values", values}};
}

inline Report run_generate(const Context& ctx) {
    const auto& c = ctx.config;
    std::vector<CostasPermutation> perms;
    if (!c.permutations.empty()) {
        for (const auto& ref : c.permutations) perms.push_back(ctx.resolve(ref));
    } else if (c.family == FamilyKind::Welch && c.g) {
        perms.push_back(ctx.resolve(PermutationRef{PermutationRef::Kind::Welch, required(c.p, "--p"), *c.g, 0, c.shift, {}}));
    } else if (c.family != FamilyKind::Welch && c.g1 && c.g2) {
        perms.push_back(ctx.resolve(PermutationRef{PermutationRef::Kind::Golomb, required(c.q, "--q"), *c.g1, *c.g2, 0, {}}));
    } else {
        perms = ctx.family();
    }
    std::ostringstream os;
    if (c.format == Format::Json) {
        json arr = json::array();
        for (const auto& perm : perms) arr.push_back(permutation_json(perm));
        os << arr.dump(2) << '\n';
    } else {
        for (const auto& perm : perms) write_permutation(os, perm);
    }
    return {os.str(), true};
}

inline Report run_verify_costas(const Context& ctx) {
    const auto& c = ctx.config;
    std::vector<CostasPermutation> perms;
    if (!c.permutations.empty()) {
        for (const auto& ref : c.permutations) perms.push_back(ctx.resolve(ref));
    } else {
        perms = ctx.family();
    }
    Report report;
    json arr = json::array();
    std::ostringstream text;
    for (const auto& perm : perms) {
        const bool costas = is_costas(perm);
        const bool consistent = matches_provenance(perm);
        report.pass &= costas && consistent;
        arr.push_back(json{{"provenance", provenance_to_json(perm.provenance())},
                           {"n", perm.n()},
                           {"costas", costas},
                           {"matches_provenance", consistent},
                           {"pass", costas && consistent}});
        text << '[' << to_string(perm.provenance()) << "] n=" << perm.n() << (costas ? " costas" : " NOT costas")
             << (consistent ? "" : " (values disagree with provenance)") << '\n';
    }
    if (c.format == Format::Json) report.body = arr.dump(2) + "\n";
    else if (c.format == Format::Csv) {
        std::ostringstream os;
        os << "permutation,n,costas,matches_provenance\n";
        for (const auto& j : arr)
            os << to_string(provenance_from_json(j["provenance"])) << ',' << j["n"].get<std::size_t>() << ','
               << (j["costas"].get<bool>() ? "true" : "false") << ','
               << (j["matches_provenance"].get<bool>() ? "true" : "false") << '\n';
        report.body = os.str();
    } else {
        report.body = text.str();
    }
    return report;
}

inline Report run_xcorr(const Context& ctx) {
    const auto& c = ctx.config;
    if (c.permutations.size() != 2) throw UsageError("--welch/--golomb/--file", "xcorr needs exactly two permutations");
    const auto f1 = ctx.resolve(c.permutations[0]);
    const auto f2 = ctx.resolve(c.permutations[1]);
    if (f1.n() != f2.n()) throw UsageError("--welch/--golomb/--file", "permutations have different lengths");
    std::ostringstream os;
    if (c.u || c.v) {
        if (!c.u || !c.v) throw UsageError(c.u ? "--v" : "--u", "--u and --v must be given together");
        const auto n = static_cast<std::int64_t>(f1.n());
        if (*c.u <= -n || *c.u >= n) throw UsageError("--u", "outside [1-n, n-1]");
        if (*c.v <= -n || *c.v >= n) throw UsageError("--v", "outside [1-n, n-1]");
        const auto value = cross_correlation_at(f1, f2, *c.u, *c.v);
        if (c.format == Format::Json)
            os << json{{"f1", provenance_to_json(f1.provenance())}, {"f2", provenance_to_json(f2.provenance())},
                       {"u", *c.u}, {"v", *c.v}, {"value", value}}.dump(2) << '\n';
        else os << value << '\n';
    } else if (c.pair_max_only) {
        if (f1.same_sequence(f2)) throw UsageError("--welch/--golomb/--file", "the two permutations are identical");
        const auto w = pair_max(f1, f2);
        if (c.format == Format::Json)
            os << json{{"f1", provenance_to_json(f1.provenance())}, {"f2", provenance_to_json(f2.provenance())},
                       {"max", w.value}, {"u", w.u}, {"v", w.v}}.dump(2) << '\n';
        else os << w.value << " at (u, v) = (" << w.u << ", " << w.v << ")\n";
    } else {
        const auto table = cross_correlation_table(f1, f2);
        if (c.format == Format::Json) {
            json rows = json::array();
            for (auto u = table.min_shift(); u <= table.max_shift(); ++u) {
                json row = json::array();
                for (auto v = table.min_shift(); v <= table.max_shift(); ++v) row.push_back(table.at(u, v));
                rows.push_back(row);
            }
            os << json{{"f1", provenance_to_json(f1.provenance())}, {"f2", provenance_to_json(f2.provenance())},
                       {"n", table.n()}, {"min_shift", table.min_shift()}, {"grid", rows}}.dump() << '\n';
        } else {
            write_table_csv(os, table);
        }
    }
    return {os.str(), true};
}

inline Report run_family(const Context& ctx) {
    const auto family = ctx.family();
    const auto result = family_max(family, ctx.config.workers);
    std::ostringstream os;
    switch (ctx.config.format) {
        case Format::Json: os << to_json(result).dump(2) << '\n'; break;
        case Format::Csv:
            os << "family,size,max,u,v\n"
               << to_string(result.family) << ',' << result.family_size << ',' << result.max_corr << ',' << result.u << ','
               << result.v << '\n';
            break;
        case Format::Text: os << to_text(result) << '\n'; break;
    }
    return {os.str(), true};
}

inline Report run_theorem_check(const Context& ctx) {
    const auto& c = ctx.config;
    std::vector<TheoremVerdict> verdicts;
    if (c.family == FamilyKind::Welch) {
        for (auto p : order_range(c.p, c.p_min, c.p_max, 5, std::nullopt, "p", true)) {
            verdicts.push_back(verify_theorem1(p, c.workers));
            if (c.shifted) verdicts.push_back(verify_theorem1_shifted(p, c.workers));
        }
    } else if (c.family == FamilyKind::GolombSub) {
        if (c.all_g2 && c.g2) throw UsageError("--g2", "cannot be combined with --all-g2");
        for (auto q : order_range(c.q, c.q_min, c.q_max, 4, std::nullopt, "q", false)) {
            const auto spec = make_field_of_order(q);
            const auto table = ctx.table_for(spec);
            if (c.all_g2) {
                for (auto& v : verify_theorem2_all_g2(table, c.workers)) verdicts.push_back(std::move(v));
            } else {
                const auto g2 = c.g2 ? ctx.primitive(spec, *c.g2, "--g2") : table.base();
                verdicts.push_back(verify_theorem2(table, g2, c.workers));
            }
        }
    } else {
        throw UsageError("--golomb-full", "theorem-check covers W_p and G_q; use conjecture-scan for L_q");
    }
    return {render_verdicts(verdicts, c.format), all_pass(verdicts)};
}

inline Report run_conjecture_scan(const Context& ctx) {
    const auto& c = ctx.config;
    const auto qs = order_range(c.q, c.q_min, c.q_max, 4, std::nullopt, "q", false);
    if (!c.long_run && !qs.empty() && qs.back() > kConjectureDefaultMaxQ)
        throw UsageError("--long-run", "required for q > " + std::to_string(kConjectureDefaultMaxQ));
    std::vector<TheoremVerdict> verdicts;
    for (auto q : qs) verdicts.push_back(conjecture_scan(ctx.table_for(make_field_of_order(q)), c.workers, c.long_run));
    return {render_verdicts(verdicts, c.format), all_pass(verdicts)};
}

inline Report run_lemma_check(const Context& ctx) {
    const auto& c = ctx.config;
    std::vector<int> lemmas = c.lemmas.empty() ? std::vector<int>{1, 2, 3} : c.lemmas;
    std::vector<LemmaSweep> sweeps;
    for (int lemma : lemmas) {
        switch (lemma) {
            case 1:
                for (auto p : order_range(c.p, c.p_min, c.p_max, 5, 61, "p", true))
                    sweeps.push_back(lemma1_sweep(p, c.workers));
                break;
            case 2:
                for (auto q : order_range(c.q, c.q_min, c.q_max, 4, 64, "q", false))
                    sweeps.push_back(lemma2_sweep(make_field_of_order(q), std::nullopt, c.workers));
                break;
            case 3:
                for (auto q : order_range(c.q, c.q_min, c.q_max, 4, 32, "q", false))
                    sweeps.push_back(lemma3_sweep(make_field_of_order(q), c.workers));
                break;
            default: throw UsageError("--lemma", "must be 1, 2 or 3");
        }
    }
    bool pass = std::all_of(sweeps.begin(), sweeps.end(), [](const auto& s) { return s.pass; });
    std::ostringstream os;
    switch (c.format) {
        case Format::Json: {
            json arr = json::array();
            for (const auto& s : sweeps) arr.push_back(to_json(s));
            os << arr.dump(2) << '\n';
            break;
        }
        case Format::Csv: write_lemma_csv(os, sweeps); break;
        case Format::Text:
            for (const auto& s : sweeps) os << to_text(s) << '\n';
            break;
    }
    return {os.str(), pass};
}

}  // namespace detail

/// Executes `config`, writing the report to config.output (or `out` when no
/// path is set) and diagnostics to `err`. Returns the process exit status.
inline int run(const RunConfig& config, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    detail::Report report;
    try {
        const detail::Context ctx{config};
        switch (config.command) {
            case Command::Generate: report = detail::run_generate(ctx); break;
            case Command::VerifyCostas: report = detail::run_verify_costas(ctx); break;
            case Command::Xcorr: report = detail::run_xcorr(ctx); break;
            case Command::Family: report = detail::run_family(ctx); break;
            case Command::TheoremCheck: report = detail::run_theorem_check(ctx); break;
            case Command::LemmaCheck: report = detail::run_lemma_check(ctx); break;
            case Command::ConjectureScan: report = detail::run_conjecture_scan(ctx); break;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (config.output.empty()) {
        out << report.body;
    } else {
        std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: --output: cannot write '" << config.output << "'\n";
            return kExitUsage;
        }
        file << report.body;
    }
    return report.pass ? kExitPass : kExitVerdictFailure;
}

}  // namespace costas::cli
