// costas: construct Welch/Golomb Costas permutations, compute cross-correlations,
// and check the family maxima against their predicted values.

#include "costas/cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <string>

namespace {

using costas::cli::Command;
using costas::cli::FamilyKind;
using costas::cli::Format;
using costas::cli::RunConfig;

struct Shared {
    std::string format;  // empty: per-command default
};

void add_output_options(CLI::App* cmd, RunConfig& config, Shared& shared) {
    cmd->add_option("--format", shared.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("-o,--output", config.output, "Write the report here instead of stdout");
    cmd->add_option("-j,--jobs", config.workers, "Worker threads (0 = all cores)");
    cmd->add_option("--cache-dir", config.cache_dir, "Log-table cache directory (default $COSTAS_CACHE_DIR)");
}

void add_family_selector(CLI::App* cmd, RunConfig& config, bool* welch_flag, bool* sub_flag, bool* full_flag) {
    auto* group = cmd->add_option_group("family", "Which family to use");
    if (welch_flag) group->add_flag("--welch", *welch_flag, "Welch family W_p");
    if (sub_flag) group->add_flag("--golomb-sub", *sub_flag, "Golomb subfamily G_q (fixed g2)");
    if (full_flag) group->add_flag("--golomb-full", *full_flag, "Full Golomb family L_q");
    group->require_option(0, 1);
    (void)config;
}

FamilyKind selected_family(bool welch, bool sub, bool full, FamilyKind fallback) {
    if (welch) return FamilyKind::Welch;
    if (sub) return FamilyKind::GolombSub;
    if (full) return FamilyKind::GolombFull;
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Welch and Golomb Costas permutations: construction, cross-correlation, family maxima"};
    app.require_subcommand(1);

    RunConfig config;
    config.cache_dir = costas::cli::default_cache_dir();
    Shared shared;
    bool welch = false, sub = false, full = false;
    std::vector<std::string> welch_refs, golomb_refs, file_refs;

    // generate
    auto* generate = app.add_subcommand("generate", "Print Welch/Golomb permutations (one, or a whole family)");
    add_family_selector(generate, config, &welch, &sub, &full);
    generate->add_option("--p", config.p, "Prime for Welch");
    generate->add_option("--q", config.q, "Prime power for Golomb");
    generate->add_option("--g", config.g, "Primitive root (Welch)");
    generate->add_option("--g1", config.g1, "Primitive element g1 (Golomb, canonical encoding)");
    generate->add_option("--g2", config.g2, "Primitive element g2 (Golomb, canonical encoding)");
    generate->add_option("--shift", config.shift, "Input shift c for a single Welch permutation");
    add_output_options(generate, config, shared);

    // verify-costas
    auto* verify = app.add_subcommand("verify-costas", "Check the Costas property of permutations");
    add_family_selector(verify, config, &welch, &sub, &full);
    verify->add_option("--p", config.p, "Prime for Welch");
    verify->add_option("--q", config.q, "Prime power for Golomb");
    verify->add_option("--g2", config.g2, "Fixed g2 for --golomb-sub");
    verify->add_option("--file", file_refs, "Permutation file in text form (repeatable)");
    add_output_options(verify, config, shared);

    // xcorr
    auto* xcorr = app.add_subcommand("xcorr", "Cross-correlation of two permutations");
    auto* welch_opt = xcorr->add_option("--welch", welch_refs, "Welch permutation p:g[:shift]");
    auto* golomb_opt = xcorr->add_option("--golomb", golomb_refs, "Golomb permutation q:g1:g2");
    auto* file_opt = xcorr->add_option("--file", file_refs, "Permutation file in text form");
    xcorr->add_option("--u", config.u, "Horizontal shift");
    xcorr->add_option("--v", config.v, "Vertical shift");
    xcorr->add_flag("--max", config.pair_max_only, "Report the maximum over all (u, v) and its least witness");
    add_output_options(xcorr, config, shared);

    // family
    auto* family = app.add_subcommand("family", "Maximal cross-correlation C(F) of a family");
    add_family_selector(family, config, &welch, &sub, &full);
    family->add_option("--p", config.p, "Prime for W_p");
    family->add_option("--q", config.q, "Prime power for G_q / L_q");
    family->add_option("--g2", config.g2, "Fixed g2 for G_q (default: smallest primitive element)");
    add_output_options(family, config, shared);

    // theorem-check
    auto* theorem = app.add_subcommand("theorem-check", "Verify predicted C(W_p) / C(G_q) by exhaustive scans");
    add_family_selector(theorem, config, &welch, &sub, nullptr);
    theorem->add_flag("--golomb", sub, "Alias for --golomb-sub");
    theorem->add_option("--p", config.p, "Single prime");
    theorem->add_option("--p-min", config.p_min, "Smallest prime of the sweep (default 5)");
    theorem->add_option("--p-max", config.p_max, "Largest prime of the sweep");
    theorem->add_option("--q", config.q, "Single prime power");
    theorem->add_option("--q-min", config.q_min, "Smallest prime power of the sweep (default 4)");
    theorem->add_option("--q-max", config.q_max, "Largest prime power of the sweep");
    theorem->add_option("--g2", config.g2, "Fixed g2 (default: smallest primitive element)");
    theorem->add_flag("--all-g2", config.all_g2, "One verdict per primitive g2");
    theorem->add_flag("--shifted", config.shifted, "Also scan W_p with one input shift per generator");
    add_output_options(theorem, config, shared);

    // lemma-check
    auto* lemma = app.add_subcommand("lemma-check", "Exhaustive solution-count sweeps against their bounds");
    lemma->add_option("--lemma", config.lemmas, "1, 2 or 3 (repeatable; default all)")->check(CLI::Range(1, 3));
    lemma->add_option("--p", config.p, "Single prime (lemma 1)");
    lemma->add_option("--p-min", config.p_min, "Smallest prime (default 5)");
    lemma->add_option("--p-max", config.p_max, "Largest prime (default 61)");
    lemma->add_option("--q", config.q, "Single prime power (lemmas 2, 3)");
    lemma->add_option("--q-min", config.q_min, "Smallest prime power (default 4)");
    lemma->add_option("--q-max", config.q_max, "Largest prime power (default 64 for lemma 2, 32 for lemma 3)");
    add_output_options(lemma, config, shared);

    // conjecture-scan
    auto* conjecture = app.add_subcommand("conjecture-scan", "Scan C(L_q) against the G_q bound");
    conjecture->add_option("--q", config.q, "Single prime power");
    conjecture->add_option("--q-min", config.q_min, "Smallest prime power (default 4)");
    conjecture->add_option("--q-max", config.q_max, "Largest prime power");
    conjecture->add_flag("--long-run", config.long_run, "Allow q > 64 (hours at q near 271)");
    add_output_options(conjecture, config, shared);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : costas::cli::kExitUsage;
    }

    try {
        if (*generate) {
            config.command = Command::Generate;
            config.family = selected_family(welch, sub, full, config.q ? FamilyKind::GolombSub : FamilyKind::Welch);
        } else if (*verify) {
            config.command = Command::VerifyCostas;
            config.family = selected_family(welch, sub, full, config.q ? FamilyKind::GolombSub : FamilyKind::Welch);
            for (auto& path : file_refs) config.permutations.push_back(costas::cli::file_ref(path));
        } else if (*xcorr) {
            config.command = Command::Xcorr;
            // Keep operands in command-line order across the three option kinds.
            std::map<const CLI::Option*, std::size_t> taken;
            for (const auto* opt : xcorr->parse_order()) {
                const auto i = taken[opt]++;
                if (opt == welch_opt) config.permutations.push_back(costas::cli::parse_welch_ref(welch_refs.at(i)));
                else if (opt == golomb_opt) config.permutations.push_back(costas::cli::parse_golomb_ref(golomb_refs.at(i)));
                else if (opt == file_opt) config.permutations.push_back(costas::cli::file_ref(file_refs.at(i)));
            }
        } else if (*family) {
            config.command = Command::Family;
            config.family = selected_family(welch, sub, full, config.q ? FamilyKind::GolombSub : FamilyKind::Welch);
        } else if (*theorem) {
            config.command = Command::TheoremCheck;
            config.family = selected_family(welch, sub, false, config.q || config.q_max ? FamilyKind::GolombSub : FamilyKind::Welch);
        } else if (*lemma) {
            config.command = Command::LemmaCheck;
        } else if (*conjecture) {
            config.command = Command::ConjectureScan;
            config.family = FamilyKind::GolombFull;
        }
    } catch (const costas::cli::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return costas::cli::kExitUsage;
    }

    if (shared.format.empty())
        shared.format = config.command == Command::Xcorr || config.command == Command::Generate ? "text" : "json";
    config.format = shared.format == "csv" ? Format::Csv : shared.format == "text" ? Format::Text : Format::Json;
    return costas::cli::run(config);
}
