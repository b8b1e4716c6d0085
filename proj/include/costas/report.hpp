#pragma once

// JSON / CSV / text renderings of scan results, theorem verdicts and lemma sweeps.

#include "costas/theorems.hpp"
#include "costas/xcorr.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace costas {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Provenance

inline json provenance_to_json(const Provenance& prov) {
    if (auto* w = std::get_if<WelchOrigin>(&prov))
        return json{{"construction", "welch"}, {"p", w->p}, {"g", w->g}, {"shift", w->shift}};
    if (auto* g = std::get_if<GolombOrigin>(&prov))
        return json{{"construction", "golomb"}, {"q", g->q}, {"g1", g->g1}, {"g2", g->g2}};
    return json{{"construction", "external"}};
}

inline Provenance provenance_from_json(const json& j) {
    const auto kind = j.at("construction").get<std::string>();
    if (kind == "welch")
        return WelchOrigin{j.at("p").get<std::uint32_t>(), j.at("g").get<std::uint32_t>(),
                           j.at("shift").get<std::uint32_t>()};
    if (kind == "golomb")
        return GolombOrigin{j.at("q").get<std::uint32_t>(), j.at("g1").get<std::uint32_t>(),
                            j.at("g2").get<std::uint32_t>()};
    if (kind == "external") return ExternalOrigin{};
    throw std::invalid_argument("unknown construction '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Family scans: {family, size, max, witness: {f1, f2, u, v}}

inline FamilyId family_id_from_json(const json& j) {
    const auto name = j.at("family").get<std::string>();
    FamilyId id;
    if (name.size() > 2 && name[1] == '_') {
        const auto order = static_cast<std::uint32_t>(std::stoul(name.substr(2)));
        switch (name[0]) {
            case 'W': id = {FamilyId::Kind::Welch, order, 0}; break;
            case 'G': id = {FamilyId::Kind::GolombSub, order, j.at("g2").get<std::uint32_t>()}; break;
            case 'L': id = {FamilyId::Kind::GolombFull, order, 0}; break;
            default: throw std::invalid_argument("unknown family '" + name + "'");
        }
    } else if (name != "custom") {
        throw std::invalid_argument("unknown family '" + name + "'");
    }
    return id;
}

inline json to_json(const FamilyScanResult& r) {
    json j;
    j["family"] = to_string(r.family);
    if (r.family.kind == FamilyId::Kind::GolombSub) j["g2"] = r.family.g2;
    j["size"] = r.family_size;
    j["max"] = r.max_corr;
    j["witness"] = json{{"f1", provenance_to_json(r.f1)},
                        {"f2", provenance_to_json(r.f2)},
                        {"u", r.u},
                        {"v", r.v},
                        {"f1_index", r.f1_index},
                        {"f2_index", r.f2_index}};
    return j;
}

inline FamilyScanResult family_scan_from_json(const json& j) {
    FamilyScanResult r;
    r.family = family_id_from_json(j);
    r.family_size = j.at("size").get<std::size_t>();
    r.max_corr = j.at("max").get<std::uint32_t>();
    const auto& w = j.at("witness");
    r.f1 = provenance_from_json(w.at("f1"));
    r.f2 = provenance_from_json(w.at("f2"));
    r.u = w.at("u").get<std::int64_t>();
    r.v = w.at("v").get<std::int64_t>();
    r.f1_index = w.at("f1_index").get<std::size_t>();
    r.f2_index = w.at("f2_index").get<std::size_t>();
    return r;
}

// ---------------------------------------------------------------------------
// Verdicts: {theorem, instance, kind, t, predicted, computed, pass, witness}

inline std::string instance_label(const TheoremVerdict& v) {
    std::string s = to_string(v.theorem) + (v.theorem == TheoremId::Welch ? ":p=" : ":q=") + std::to_string(v.order);
    if (v.g2) s += ":g2=" + std::to_string(*v.g2);
    if (v.shifted) s += ":shifted";
    return s;
}

inline json to_json(const TheoremVerdict& v) {
    json instance;
    instance[v.theorem == TheoremId::Welch ? "p" : "q"] = v.order;
    if (v.g2) instance["g2"] = *v.g2;
    if (v.shifted) instance["shifted"] = true;
    json j{{"theorem", to_string(v.theorem)},
           {"instance", instance},
           {"kind", to_string(v.kind)},
           {"t", v.t},
           {"predicted", v.predicted},
           {"computed", v.computed},
           {"pass", v.pass}};
    if (v.scan) {
        auto s = to_json(*v.scan);
        j["family"] = s["family"];
        j["family_size"] = s["size"];
        j["witness"] = s["witness"];
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline TheoremVerdict verdict_from_json(const json& j) {
    TheoremVerdict v;
    const auto theorem = j.at("theorem").get<std::string>();
    if (theorem == "theorem1") v.theorem = TheoremId::Welch;
    else if (theorem == "theorem2") v.theorem = TheoremId::Golomb;
    else if (theorem == "conjecture") v.theorem = TheoremId::Conjecture;
    else throw std::invalid_argument("unknown theorem '" + theorem + "'");
    const auto& inst = j.at("instance");
    v.order = inst.at(v.theorem == TheoremId::Welch ? "p" : "q").get<std::uint32_t>();
    if (inst.contains("g2")) v.g2 = inst.at("g2").get<std::uint32_t>();
    v.shifted = inst.value("shifted", false);
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "exact") v.kind = VerdictKind::Exact;
    else if (kind == "upper_bound") v.kind = VerdictKind::UpperBound;
    else throw std::invalid_argument("unknown verdict kind '" + kind + "'");
    v.t = j.at("t").get<std::uint32_t>();
    v.predicted = j.at("predicted").get<std::uint32_t>();
    v.computed = j.at("computed").get<std::uint32_t>();
    v.pass = j.at("pass").get<bool>();
    if (!j.at("witness").is_null()) {
        json s{{"family", j.at("family")}, {"size", j.at("family_size")}, {"max", v.computed}, {"witness", j.at("witness")}};
        if (v.g2) s["g2"] = *v.g2;
        v.scan = family_scan_from_json(s);
    }
    return v;
}

inline json to_json(const std::vector<TheoremVerdict>& verdicts) {
    json arr = json::array();
    for (const auto& v : verdicts) arr.push_back(to_json(v));
    return arr;
}

inline std::vector<TheoremVerdict> verdicts_from_json(const json& arr) {
    std::vector<TheoremVerdict> out;
    for (const auto& j : arr) out.push_back(verdict_from_json(j));
    return out;
}

/// instance,predicted,computed,pass
inline void write_verdicts_csv(std::ostream& os, const std::vector<TheoremVerdict>& verdicts) {
    os << "instance,predicted,computed,pass\n";
    for (const auto& v : verdicts)
        os << instance_label(v) << ',' << v.predicted << ',' << v.computed << ',' << (v.pass ? "true" : "false") << '\n';
}

/// Family symbol as in C(W_p), C(G_q), C(L_q).
inline std::string family_symbol(const TheoremVerdict& v) {
    switch (v.theorem) {
        case TheoremId::Welch: return "C(W_" + std::to_string(v.order) + ")";
        case TheoremId::Golomb:
            return "C(G_" + std::to_string(v.order) + (v.g2 ? ", g2=" + std::to_string(*v.g2) : std::string{}) + ")";
        case TheoremId::Conjecture: return "C(L_" + std::to_string(v.order) + ")";
    }
    return "C(?)";
}

inline std::string to_text(const TheoremVerdict& v) {
    std::ostringstream os;
    os << family_symbol(v) << " = " << v.computed << (v.kind == VerdictKind::Exact ? "   predicted = " : "   bound <= ")
       << v.predicted << "   t = " << v.t << "   " << (v.pass ? "PASS" : "FAIL");
    return os.str();
}

inline std::string to_text(const FamilyScanResult& r) {
    std::ostringstream os;
    os << "C(" << to_string(r.family);
    if (r.family.kind == FamilyId::Kind::GolombSub) os << ", g2=" << r.family.g2;
    os << ") = " << r.max_corr << "   |F| = " << r.family_size << "   witness: [" << to_string(r.f1) << "] vs ["
       << to_string(r.f2) << "] at (u, v) = (" << r.u << ", " << r.v << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Lemma sweeps

inline json to_json(const LemmaCount& c) {
    json j{{"lemma", static_cast<int>(c.lemma)}, {"order", c.order}, {"r", c.r}};
    switch (c.lemma) {
        case LemmaId::WelchShift: j["a"] = c.a; j["v"] = c.v; break;
        case LemmaId::GolombZeroShift: j["g1"] = c.g1; j["u"] = c.u; j["d"] = c.d; break;
        case LemmaId::GolombShift: j["a"] = c.a; j["b"] = c.b; break;
    }
    j["count"] = c.count;
    j["bound"] = c.bound;
    j["pass"] = c.pass;
    return j;
}

inline json to_json(const LemmaSweep& s) {
    return json{{"lemma", static_cast<int>(s.lemma)},
                {"order", s.order},
                {"instances", s.instances},
                {"bound", s.bound},
                {"max_count", s.max_count},
                {"worst", to_json(s.worst)},
                {"violations", s.violations},
                {"structure_violations", s.structure_violations},
                {"pass", s.pass}};
}

inline void write_lemma_csv(std::ostream& os, const std::vector<LemmaSweep>& sweeps) {
    os << "instance,bound,max_count,instances,pass\n";
    for (const auto& s : sweeps)
        os << "lemma" << static_cast<int>(s.lemma) << ':' << (s.lemma == LemmaId::WelchShift ? "p=" : "q=") << s.order
           << ',' << s.bound << ',' << s.max_count << ',' << s.instances << ',' << (s.pass ? "true" : "false") << '\n';
}

inline std::string to_text(const LemmaSweep& s) {
    std::ostringstream os;
    os << "lemma " << static_cast<int>(s.lemma) << (s.lemma == LemmaId::WelchShift ? "  p = " : "  q = ") << s.order
       << "   max N = " << s.max_count << "   bound = " << s.bound << "   instances = " << s.instances << "   "
       << (s.pass ? "PASS" : "FAIL");
    return os.str();
}

}  // namespace costas
