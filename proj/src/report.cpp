#include "cft/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cft {

using nlohmann::json;

namespace {

json level_to_json(const LevelStats& ls) {
    json j;
    j["undecided_in"] = ls.undecided_in;
    j["kept"] = ls.kept;
    j["discarded"] = ls.discarded;
    j["postponed_out"] = ls.postponed_out;
    j["clamps"] = ls.clamps;
    j["sampler"] = {{"calls", ls.sampler_calls},
                    {"full_parks", ls.sampler_full},
                    {"fallbacks", ls.sampler_fallback},
                    {"error_events", ls.sampler_error_events},
                    {"iterations", ls.sampler_iterations},
                    {"reuse_hits", ls.sampler_reuse_hits}};
    if (ls.type1_keeps || ls.type2_keeps) {
        j["type1_keeps"] = ls.type1_keeps;
        j["type2_keeps"] = ls.type2_keeps;
    }
    json pv = json::object();
    for (const auto& [v, c] : ls.per_vertex) {
        json e;
        e["keep"] = c.keep;
        e["safe"] = c.safe;
        e["pstpn"] = c.pstpn;
        if (c.fallback_keep) e["fallback_keep"] = c.fallback_keep;
        if (c.last_level_keep) e["last_level_keep"] = c.last_level_keep;
        pv[std::to_string(v)] = e;
    }
    j["per_vertex"] = pv;
    return j;
}

} // namespace

std::string report_spanner(const SpannerResult& r) {
    json j;
    j["algo"] = r.algo;
    j["n"] = r.n;
    j["k"] = r.k;
    j["f"] = r.f;
    j["stretch"] = 2 * r.k - 1;
    j["seed"] = r.seed;
    j["size"] = r.kept.size();
    j["clamp_events"] = r.clamp_events;
    j["centers_last_level"] = r.centers_last_level;
    if (r.reruns) j["reruns"] = r.reruns;
    if (!r.warning.empty()) j["warning"] = r.warning;
    json levels = json::array();
    for (const LevelStats& ls : r.levels) levels.push_back(level_to_json(ls));
    j["levels"] = levels;
    if (!r.potentials.empty()) {
        json pots = json::array();
        for (const PotentialRec& p : r.potentials) {
            pots.push_back({{"vertex", p.vertex},
                            {"phi", p.phi},
                            {"phi_x", p.phi_x},
                            {"phi_y", p.phi_y},
                            {"type1", p.type1},
                            {"type2", p.type2}});
        }
        j["last_level_potentials"] = pots;
    }
    if (!r.trace.empty()) {
        json tr = json::array();
        for (const DecisionRecord& d : r.trace)
            tr.push_back({{"level", d.level},
                          {"vertex", d.vertex},
                          {"edge", d.edge},
                          {"dcsn", decision_name(d.dcsn)},
                          {"fallback", d.fallback}});
        j["trace"] = tr;
    }
    return j.dump(2) + "\n";
}

std::string report_verify(const VerifyReport& r, const std::string& kind) {
    json j;
    j["kind"] = kind;
    j["pass"] = r.pass;
    j["fault_sets"] = r.fault_sets;
    j["violations"] = r.violations();
    j["max_stretch"] = r.max_stretch;
    json cf = json::object(), vf = json::object();
    for (const auto& [s, c] : r.checked_per_f) cf[std::to_string(s)] = c;
    for (const auto& [s, c] : r.violations_per_f) vf[std::to_string(s)] = c;
    j["checked_per_f"] = cf;
    j["violations_per_f"] = vf;
    if (!r.pass) {
        j["worst"] = {{"edge", r.worst_edge},
                      {"faults", r.worst_faults},
                      {"dist", r.worst_dist},
                      {"bound", r.worst_bound}};
    }
    return j.dump(2) + "\n";
}

std::string report_rounds(const SpannerResult& r, const RoundLog& log, const std::string& model) {
    json j;
    j["model"] = model;
    j["algo"] = r.algo;
    j["rounds"] = log.rounds;
    j["per_level_rounds"] = log.per_level_rounds;
    j["max_words_per_edge_round"] = log.max_words_per_edge_round;
    j["max_park_paths"] = log.max_park_paths;
    j["total_messages"] = log.total_messages;
    j["identical_to_sequential"] = log.identical_to_sequential;
    j["spanner_hash"] = log.spanner_hash;
    j["size"] = r.kept.size();
    return j.dump(2) + "\n";
}

std::string report_stats_row(const std::string& algo, const SpannerStatsRow& s) {
    json j;
    j["algo"] = algo;
    j["size"] = s.size;
    j["ratio_fn"] = s.ratio_fn;
    j["ratio_n"] = s.ratio_n;
    j["weight_h"] = s.weight_h;
    j["weight_g"] = s.weight_g;
    return j.dump() + "\n";
}

std::vector<int> parse_spanner_file(const std::string& path, int* k, int* f) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string word;
    if (!(in >> word) || word != "spanner") throw std::runtime_error("bad spanner file header");
    int kk, ff, stretch;
    if (!(in >> kk >> ff >> stretch)) throw std::runtime_error("bad spanner file header");
    if (k) *k = kk;
    if (f) *f = ff;
    std::vector<int> ids;
    int id;
    while (in >> id) ids.push_back(id);
    return ids;
}

} // namespace cft
