#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cft/baselines.hpp"
#include "cft/distsim.hpp"
#include "cft/engine.hpp"
#include "cft/ftgame.hpp"
#include "cft/report.hpp"
#include "cft/verifier.hpp"
#include "cft/warmup.hpp"

using namespace cft;

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

uint64_t resolve_seed(uint64_t seed, bool seed_given) {
    if (seed_given) return seed;
    std::random_device rd;
    uint64_t s = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    if (s == 0) s = 1;
    std::cerr << "seed " << s << "\n";
    return s;
}

ColoringPolicy policy_from(const std::string& s) {
    if (s == "uniform") return ColoringPolicy::Uniform;
    if (s == "legal") return ColoringPolicy::Legal;
    if (s == "mono" || s == "monochromatic-biased") return ColoringPolicy::MonochromaticBiased;
    throw CLI::ValidationError("policy", "unknown coloring policy " + s);
}

int run(int argc, char** argv) {
    CLI::App app{"color fault-tolerant spanner toolkit"};
    app.require_subcommand(1);

    // ---- gen
    auto* gen = app.add_subcommand("gen", "generate a random colored graph");
    std::string g_mode = "ecft", g_policy = "uniform", g_out;
    int g_n = 20, g_m = 60, g_colors = 6;
    double g_wlo = 1.0, g_whi = 10.0, g_bias = 0.7;
    uint64_t g_seed = 1;
    bool g_seed_given = false;
    gen->add_option("--mode", g_mode, "ecft|vcft")->check(CLI::IsMember({"ecft", "vcft"}));
    gen->add_option("--n", g_n, "vertex count");
    gen->add_option("--m", g_m, "edge count");
    double g_density = 0.0;
    gen->add_option("--density", g_density, "edge density (overrides --m)");
    gen->add_option("--colors", g_colors, "number of colors");
    gen->add_option("--policy", g_policy, "uniform|legal|mono");
    gen->add_option("--wmin", g_wlo, "minimum weight");
    gen->add_option("--wmax", g_whi, "maximum weight");
    gen->add_option("--mono-bias", g_bias, "bias toward color 0 (mono policy)");
    gen->add_option("--seed", g_seed)->each([&](const std::string&) { g_seed_given = true; });
    gen->add_option("--out", g_out, "output file (default stdout)");

    // ---- span
    auto* span = app.add_subcommand("span", "build a spanner");
    std::string s_in, s_algo = "ecft", s_mode = "practical", s_voting = "exact",
                s_symmetry = "sequential", s_out, s_report;
    int s_k = 2, s_f = 1, s_d = 0;
    double s_crho = 0.0;
    uint64_t s_seed = 1;
    bool s_seed_given = false, s_audit = false, s_trace = false, s_rerun = false;
    span->add_option("input", s_in, "graph file")->required();
    span->add_option("--algo", s_algo, "ecft|vcft|warmup3|baswana-sen|parter-vft|greedy")
        ->check(CLI::IsMember({"ecft", "vcft", "warmup3", "baswana-sen", "parter-vft", "greedy"}));
    span->add_option("--k", s_k, "stretch parameter (stretch 2k-1)");
    span->add_option("--f", s_f, "fault budget");
    span->add_option("--mode", s_mode, "paper|practical")
        ->check(CLI::IsMember({"paper", "practical"}));
    span->add_option("--d-const", s_d, "score base D (0 = mode default)");
    span->add_option("--rho-const", s_crho, "c_rho in the rho formula (0 = mode default)");
    span->add_option("--voting", s_voting, "exact|sampled")
        ->check(CLI::IsMember({"exact", "sampled"}));
    span->add_option("--symmetry", s_symmetry, "sequential|distributed (vcft last level)")
        ->check(CLI::IsMember({"sequential", "distributed"}));
    span->add_flag("--audit", s_audit, "run invariant audits");
    span->add_flag("--trace", s_trace, "record the decision trace");
    span->add_flag("--rerun", s_rerun, "vcft repetition trick");
    span->add_option("--seed", s_seed)->each([&](const std::string&) { s_seed_given = true; });
    span->add_option("--out", s_out, "spanner file (default stdout)");
    span->add_option("--report", s_report, "run report file");

    // ---- verify
    auto* ver = app.add_subcommand("verify", "fault-enumeration stretch verification");
    std::string v_graph, v_spanner, v_kind = "cft";
    int v_k = 0, v_f = -1, v_jobs = 1;
    long v_sample = 0;
    bool v_exact = false, v_allpairs = false;
    uint64_t v_seed = 1;
    std::string v_out;
    ver->add_option("graph", v_graph, "graph file")->required();
    ver->add_option("spanner", v_spanner, "spanner file")->required();
    ver->add_option("--kind", v_kind, "cft|vft|plain")
        ->check(CLI::IsMember({"cft", "vft", "plain"}));
    ver->add_flag("--exact", v_exact, "exhaustive fault enumeration (default)");
    ver->add_option("--sample", v_sample, "sampled mode with N trials");
    ver->add_option("--k", v_k, "override k (default: from spanner file)");
    ver->add_option("--f", v_f, "override f (default: from spanner file)");
    ver->add_option("--jobs", v_jobs, "worker threads");
    ver->add_flag("--all-pairs", v_allpairs, "also check all-pairs stretch");
    ver->add_option("--seed", v_seed);
    ver->add_option("--out", v_out, "report file (default stdout)");

    // ---- sim
    auto* sim = app.add_subcommand("sim", "synchronous distributed simulation");
    std::string m_in, m_model = "local", m_algo = "ecft", m_mode = "practical", m_out;
    int m_k = 2, m_f = 1;
    long m_budget = 0;
    uint64_t m_seed = 1;
    bool m_seed_given = false, m_audit = false;
    sim->add_option("input", m_in, "graph file")->required();
    sim->add_option("--model", m_model, "local|congest")
        ->check(CLI::IsMember({"local", "congest"}));
    sim->add_option("--word-budget", m_budget, "congest per-edge words per round (0 = unbounded)");
    sim->add_option("--algo", m_algo, "ecft|vcft|parter-vft|baswana-sen")
        ->check(CLI::IsMember({"ecft", "vcft", "parter-vft", "baswana-sen"}));
    sim->add_option("--k", m_k);
    sim->add_option("--f", m_f);
    sim->add_option("--mode", m_mode, "paper|practical")
        ->check(CLI::IsMember({"paper", "practical"}));
    sim->add_flag("--audit", m_audit);
    sim->add_option("--seed", m_seed)->each([&](const std::string&) { m_seed_given = true; });
    sim->add_option("--out", m_out, "report file (default stdout)");

    // ---- game
    auto* game = app.add_subcommand("game", "online fault-tolerance game");
    std::string a_alice = "park", a_bob = "forcing", a_in, a_out;
    int a_f = 2, a_k = 2, a_universe = 0;
    game->add_option("--alice", a_alice, "optimal|park")
        ->check(CLI::IsMember({"optimal", "park"}));
    game->add_option("--bob", a_bob, "forcing|file")->check(CLI::IsMember({"forcing", "file"}));
    game->add_option("--f", a_f);
    game->add_option("--k", a_k);
    game->add_option("--universe", a_universe, "universe size (default f+k)");
    game->add_option("--in", a_in, "set stream file for --bob file");
    game->add_option("--out", a_out, "trace file (default stdout)");

    // ---- bench
    auto* bench = app.add_subcommand("bench", "size/ratio sweep over seeds");
    int b_n = 20, b_m = 60, b_colors = 6, b_k = 2, b_f = 1, b_seeds = 10;
    std::string b_mode = "ecft", b_out;
    uint64_t b_seed0 = 1;
    bench->add_option("--mode", b_mode, "ecft|vcft")->check(CLI::IsMember({"ecft", "vcft"}));
    bench->add_option("--n", b_n);
    bench->add_option("--m", b_m);
    bench->add_option("--colors", b_colors);
    bench->add_option("--k", b_k);
    bench->add_option("--f", b_f);
    bench->add_option("--seeds", b_seeds, "number of seeds");
    bench->add_option("--seed0", b_seed0, "first seed");
    bench->add_option("--out", b_out, "table file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*gen) {
        GenParams p;
        p.mode = g_mode == "ecft" ? GraphMode::ECFT : GraphMode::VCFT;
        p.n = g_n;
        p.m = g_m;
        p.density = g_density;
        p.color_count = g_colors;
        p.weight_lo = g_wlo;
        p.weight_hi = g_whi;
        p.policy = policy_from(g_policy);
        p.mono_bias = g_bias;
        p.seed = resolve_seed(g_seed, g_seed_given);
        ColoredGraph g = generate_random(p);
        write_output(g_out, g.serialize());
        return 0;
    }

    if (*span) {
        ColoredGraph g = parse_graph_file(s_in);
        uint64_t seed = resolve_seed(s_seed, s_seed_given);
        BuildConfig cfg;
        cfg.mode = s_mode == "paper" ? ParamMode::Paper : ParamMode::Practical;
        cfg.d_const = s_d;
        cfg.c_rho = s_crho;
        cfg.seed = seed;
        cfg.voting = s_voting == "exact" ? Voting::Exact : Voting::Sampled;
        cfg.audit = s_audit;
        cfg.trace = s_trace;
        cfg.symmetry = s_symmetry == "sequential" ? Symmetry::Sequential : Symmetry::Distributed;
        cfg.rerun = s_rerun;
        SpannerResult r;
        if (s_algo == "ecft") r = build_ecft_spanner(g, s_f, s_k, cfg);
        else if (s_algo == "vcft") r = build_vcft_spanner(g, s_f, s_k, cfg);
        else if (s_algo == "warmup3") r = warmup_3spanner(g, s_f, seed, s_audit);
        else if (s_algo == "baswana-sen") r = baswana_sen(g, s_k, seed);
        else if (s_algo == "parter-vft") {
            ParterConfig pc;
            pc.voting = cfg.voting;
            pc.audit = s_audit;
            r = parter_vft(g, s_f, s_k, pc, seed);
        } else {
            r = greedy_cft(g, s_f, s_k);
        }
        if (!r.warning.empty()) std::cerr << "warning: " << r.warning << "\n";
        write_output(s_out, r.serialize(2 * r.k - 1));
        if (!s_report.empty()) write_output(s_report, report_spanner(r));
        return 0;
    }

    if (*ver) {
        ColoredGraph g = parse_graph_file(v_graph);
        int file_k = 0, file_f = 0;
        std::vector<int> h = parse_spanner_file(v_spanner, &file_k, &file_f);
        int k = v_k > 0 ? v_k : file_k;
        int f = v_f >= 0 ? v_f : file_f;
        VerifyOptions opt;
        opt.exact = v_exact || v_sample <= 0;
        opt.trials = v_sample;
        opt.seed = v_seed;
        opt.jobs = v_jobs;
        opt.all_pairs = v_allpairs;
        VerifyReport rep;
        if (v_kind == "cft") rep = verify_cft(g, h, f, k, opt);
        else if (v_kind == "vft") rep = verify_vft(g, h, f, k, opt);
        else rep = verify_plain(g, h, k, opt);
        write_output(v_out, report_verify(rep, v_kind));
        return rep.pass ? 0 : 1;
    }

    if (*sim) {
        ColoredGraph g = parse_graph_file(m_in);
        uint64_t seed = resolve_seed(m_seed, m_seed_given);
        BuildConfig cfg;
        cfg.mode = m_mode == "paper" ? ParamMode::Paper : ParamMode::Practical;
        cfg.seed = seed;
        cfg.audit = m_audit;
        SimVariant variant = sim_variant_from_name(m_algo);
        std::pair<SpannerResult, RoundLog> out =
            m_model == "local" ? simulate_local(g, m_f, m_k, variant, cfg)
                               : simulate_congest(g, m_f, m_k, variant, m_budget, cfg);
        write_output(m_out, report_rounds(out.first, out.second, m_model));
        return 0;
    }

    if (*game) {
        int universe = a_universe > 0 ? a_universe : a_f + a_k;
        std::vector<ColorSet> stream;
        if (a_bob == "forcing") {
            if (a_universe > 0 && a_universe != a_f + a_k)
                throw CLI::ValidationError("--universe", "forcing Bob requires |C| = f+k");
            stream = bob_forcing(a_f, a_k);
        } else {
            if (a_in.empty()) throw CLI::ValidationError("--in", "needed with --bob file");
            std::ifstream in(a_in);
            if (!in) throw std::runtime_error("cannot open " + a_in);
            std::string line;
            while (std::getline(in, line)) {
                std::istringstream is(line);
                std::vector<int> xs;
                int x;
                while (is >> x) xs.push_back(x);
                if (!xs.empty()) stream.push_back(ColorSet(xs));
            }
        }
        GameState st(universe, a_f, a_k,
                     a_alice == "optimal" ? AliceStrategy::Optimal : AliceStrategy::ParkBased);
        for (const ColorSet& p : stream) st.step(p);
        bool cert = check_certificate(universe, st.presented(), st.kept(), a_f);
        std::ostringstream os;
        os << st.trace();
        os << "# presented " << st.presented().size() << " kept " << st.kept().size()
           << " certificate " << (cert ? "valid" : "INVALID") << "\n";
        write_output(a_out, os.str());
        return cert ? 0 : 1;
    }

    if (*bench) {
        std::ostringstream os;
        os << "# algo seed size ratio_fn ratio_n verified\n";
        for (int s = 0; s < b_seeds; ++s) {
            uint64_t seed = b_seed0 + s;
            GenParams p;
            p.mode = b_mode == "ecft" ? GraphMode::ECFT : GraphMode::VCFT;
            p.n = b_n;
            p.m = b_m;
            p.color_count = b_colors;
            p.seed = seed;
            ColoredGraph g = generate_random(p);
            BuildConfig cfg;
            cfg.seed = seed;
            std::vector<std::pair<std::string, SpannerResult>> runs;
            if (p.mode == GraphMode::ECFT) {
                runs.emplace_back("ecft", build_ecft_spanner(g, b_f, b_k, cfg));
                runs.emplace_back("greedy", greedy_cft(g, b_f, b_k));
                runs.emplace_back("baswana-sen", baswana_sen(g, b_k, seed));
            } else {
                runs.emplace_back("vcft", build_vcft_spanner(g, b_f, b_k, cfg));
                runs.emplace_back("greedy", greedy_cft(g, b_f, b_k));
            }
            for (auto& [name, r] : runs) {
                SpannerStatsRow row = spanner_stats(g, r.kept, b_f, b_k);
                bool pass = true;
                if (name != "baswana-sen") {
                    VerifyOptions opt;
                    pass = verify_cft(g, r.kept, b_f, b_k, opt).pass;
                } else {
                    pass = verify_plain(g, r.kept, b_k).pass;
                }
                os << name << " " << seed << " " << row.size << " " << row.ratio_fn << " "
                   << row.ratio_n << " " << (pass ? "pass" : "FAIL") << "\n";
            }
        }
        write_output(b_out, os.str());
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error&) {
        return 2; // CLI11_PARSE already handled/printed inside run()
    } catch (const LemmaViolation& e) {
        std::cerr << "internal assertion (lemma violation): " << e.what() << "\n";
        return 3;
    } catch (const SimulationFault& e) {
        std::cerr << "simulation fault: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
