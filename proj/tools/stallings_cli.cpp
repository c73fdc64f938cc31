#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stallings/dicks.hpp"
#include "stallings/errors.hpp"
#include "stallings/locus.hpp"
#include "stallings/sampler.hpp"
#include "stallings/witness.hpp"

namespace {

using namespace stallings;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool looks_like_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;
        if (kind == "basepoint" || kind == "edge" || kind == "class" || kind == "rank") return true;
        if (kind == "alphabet:") continue;
        return false;
    }
    return false;
}

CoreGraph load_graph(const std::string& path) {
    std::string text = slurp(path);
    if (looks_like_graph_text(text)) return deserialize(text);
    SubgroupFile f = read_subgroup_text(text);
    return build_core_graph(f.generators, f.alphabet);
}

struct PairFiles {
    std::string H, K;
    bool theta = false;
};

std::pair<CoreGraph, CoreGraph> load_pair(const PairFiles& pf) {
    if (!pf.theta) return {load_graph(pf.H), load_graph(pf.K)};
    SubgroupFile fh = read_subgroup_text(slurp(pf.H));
    SubgroupFile fk = read_subgroup_text(slurp(pf.K));
    Alphabet abc = Alphabet::theta_target();
    std::vector<Word> hw, kw;
    for (const Word& w : fh.generators) hw.push_back(theta_embed(w, fh.alphabet));
    for (const Word& w : fk.generators) kw.push_back(theta_embed(w, fk.alphabet));
    return {build_core_graph(hw, abc), build_core_graph(kw, abc)};
}

std::string default_db_path() {
    if (const char* env = std::getenv("STALLINGS_WITNESS_DB")) return env;
    return "witnesses.tsv";
}

void print_witness(const WitnessRecord& rec) {
    std::cout << "profile " << to_string(rec.profile) << '\n';
    std::cout << "H:";
    for (const auto& w : rec.H_gens) std::cout << ' ' << w;
    std::cout << "\nK:";
    for (const auto& w : rec.K_gens) std::cout << ' ' << w;
    std::cout << "\nprovenance " << rec.provenance << '\n';
    std::cout << "verified " << (rec.verified ? "true" : "false") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stallings core graphs: subgroup lattice ranks, the Dicks decomposition, "
                 "rank-tuple classification and the conjecture search"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    PairFiles pf;
    auto add_pair_opts = [&](CLI::App* sub, bool with_theta = true) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("-H", pf.H, "subgroup or graph file for H ('-' = stdin)")->required();
        sub->add_option("-K", pf.K, "subgroup or graph file for K")->required();
        if (with_theta)
            sub->add_flag("--theta", pf.theta, "embed 2-letter inputs through x->cA, y->cB");
    };

    auto* cmd_rank = app.add_subcommand("rank", "rank of one subgroup or graph file");
    cmd_rank->set_help_flag("--help", "print help");
    std::string rank_input;
    cmd_rank->add_option("-H,input", rank_input, "subgroup or graph file ('-' = stdin)")->required();

    auto* cmd_meet = app.add_subcommand("meet", "core graph and rank of the intersection");
    add_pair_opts(cmd_meet);
    auto* cmd_join = app.add_subcommand("join", "core graph and rank of the join");
    add_pair_opts(cmd_join);
    auto* cmd_push = app.add_subcommand("pushout", "topological pushout with its cell classes");
    add_pair_opts(cmd_push);
    auto* cmd_norm = app.add_subcommand("normalize", "conjugate the pair away from valence-1 "
                                                     "basepoints");
    add_pair_opts(cmd_norm);
    auto* cmd_dicks = app.add_subcommand("dicks", "bipartite decomposition report for a pair");
    add_pair_opts(cmd_dicks);

    auto* cmd_sigma = app.add_subcommand("sigma", "Sigma of a colored multigraph edge list");
    cmd_sigma->set_help_flag("--help", "print help");
    std::string sigma_input = "-";
    cmd_sigma->add_option("input", sigma_input, "edge list file ('-' = stdin)");

    auto* cmd_sig = app.add_subcommand("sig", "subgraph isomorphism graph for K_{s,t}");
    add_pair_opts(cmd_sig);
    int sig_s = 1, sig_t = 1;
    cmd_sig->add_option("--s", sig_s, "first part size")->required();
    cmd_sig->add_option("--t", sig_t, "second part size")->required();

    int opt_h = 0, opt_k = 0, opt_v = 0, opt_c = 0;
    std::string db_path = default_db_path();
    auto* cmd_classify = app.add_subcommand("classify", "classify a rank tuple");
    cmd_classify->set_help_flag("--help", "print help");
    cmd_classify->add_option("-h", opt_h, "rank of H")->required();
    cmd_classify->add_option("-k", opt_k, "rank of K")->required();
    cmd_classify->add_option("-v", opt_v, "rank of the join")->required();
    cmd_classify->add_option("-c", opt_c, "rank of the intersection")->required();

    auto* cmd_locus = app.add_subcommand("locus", "verdict table for one page (h, k)");
    cmd_locus->set_help_flag("--help", "print help");
    bool locus_csv = false;
    cmd_locus->add_option("-h", opt_h, "rank of H")->required();
    cmd_locus->add_option("-k", opt_k, "rank of K")->required();
    cmd_locus->add_flag("--csv", locus_csv, "emit CSV instead of the aligned table");
    cmd_locus->add_option("--db", db_path, "witness store path");

    auto* cmd_witness = app.add_subcommand("witness", "construct a verified witness pair");
    cmd_witness->set_help_flag("--help", "print help");
    SearchBudget budget;
    cmd_witness->add_option("-h", opt_h, "rank of H")->required();
    cmd_witness->add_option("-k", opt_k, "rank of K")->required();
    cmd_witness->add_option("-v", opt_v, "rank of the join")->required();
    cmd_witness->add_option("-c", opt_c, "rank of the intersection")->required();
    cmd_witness->add_option("--db", db_path, "witness store path");
    cmd_witness->add_option("--seed", budget.seed, "search seed");
    cmd_witness->add_option("--attempts", budget.attempts, "search attempt budget");
    cmd_witness->add_option("--max-vertices", budget.max_vertices, "search graph size cap");

    auto* cmd_search = app.add_subcommand("search", "seeded Monte-Carlo conjecture scan");
    cmd_search->set_help_flag("--help", "print help");
    SampleConfig cfg;
    std::string mode_str = "rose", fraction_str = "1/1";
    cmd_search->add_option("--seed", cfg.seed, "random seed")->required();
    cmd_search->add_option("--pairs", cfg.pairs, "number of sampled pairs")->required();
    cmd_search->add_option("--max-vertices", cfg.max_vertices, "vertex count upper bound");
    cmd_search->add_option("--alphabet-size", cfg.alphabet_size, "letters in rose mode");
    cmd_search->add_option("--mode", mode_str, "rose | bipartite-theta");
    cmd_search->add_option("--jobs", cfg.jobs, "worker threads");
    cmd_search->add_option("--dicks-fraction", fraction_str,
                           "fraction of bipartite samples given the full invariant battery, "
                           "as num/den");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if ((app.got_subcommand(cmd_classify) || app.got_subcommand(cmd_locus) ||
         app.got_subcommand(cmd_witness)) &&
        opt_h > opt_k)
        std::cerr << "notice: swapping ranks so that h <= k\n";

    try {
        if (app.got_subcommand(cmd_rank)) {
            int r = rank(load_graph(rank_input));
            std::cout << "rank " << r << '\n';
        } else if (app.got_subcommand(cmd_meet)) {
            auto [H, K] = load_pair(pf);
            PullbackResult pb = pullback(H, K);
            std::string text = serialize(pb.meet);
            std::cout << text << "rank " << rank(pb.meet) << '\n';
        } else if (app.got_subcommand(cmd_join)) {
            auto [H, K] = load_pair(pf);
            CoreGraph j = join(H, K);
            std::string text = serialize(j);
            std::cout << text << "rank " << rank(j) << '\n';
        } else if (app.got_subcommand(cmd_push)) {
            auto [H, K] = load_pair(pf);
            std::cout << serialize(pushout(H, K, pullback(H, K)));
        } else if (app.got_subcommand(cmd_norm)) {
            auto [H, K] = load_pair(pf);
            NormalizedPair np = normalize_pair(H, K);
            std::cout << "conjugator "
                      << (np.conjugator.empty() ? std::string("1") : print_word(np.conjugator))
                      << '\n';
            std::cout << "# H\n" << serialize(np.H);
            std::cout << "# K\n" << serialize(np.K);
        } else if (app.got_subcommand(cmd_dicks)) {
            auto [H, K] = load_pair(pf);
            NormalizedPair np = normalize_pair(H, K);
            DicksBundle b(np.H, np.K, pullback(np.H, np.K));
            std::cout << dicks_report(b, rank_profile(np.H, np.K));
        } else if (app.got_subcommand(cmd_sigma)) {
            ColoredMultigraph g = read_colored_multigraph(slurp(sigma_input));
            std::cout << "sigma " << sigma(g) << '\n';
            std::cout << "nonmonochromatic-cycle "
                      << (has_nonmonochromatic_cycle(g) ? "true" : "false") << '\n';
        } else if (app.got_subcommand(cmd_sig)) {
            auto [H, K] = load_pair(pf);
            NormalizedPair np = normalize_pair(H, K);
            DicksBundle b(np.H, np.K, pullback(np.H, np.K));
            SigGraph sig = build_sig(b, sig_s, sig_t);
            std::cout << "vertices " << sig.vertices.size() << '\n';
            for (const auto& v : sig.vertices) {
                std::cout << "copy";
                for (int gid : v.part_H) std::cout << ' ' << b.vertex_name(gid);
                std::cout << " |";
                for (int gid : v.part_K) std::cout << ' ' << b.vertex_name(gid);
                std::cout << " valence " << v.valence << '\n';
            }
            std::cout << "edges " << sig.edges.size() << '\n';
            for (const auto& e : sig.edges)
                std::cout << "edge " << e.from << " -> " << e.to << ' '
                          << b.H().alphabet().letter(e.label) << '\n';
            std::cout << "odd-valence-vertices " << sig.odd_valence_count() << '\n';
        } else if (app.got_subcommand(cmd_classify)) {
            Classification cls = classify({opt_h, opt_k, opt_v, opt_c});
            std::cout << verdict_name(cls.verdict);
            if (!cls.rules.empty()) std::cout << " rule=" << cls.rules.front().id;
            if (cls.ivanov_open_question) std::cout << " ivanov-open-question";
            std::cout << '\n';
            for (const auto& r : cls.rules)
                std::cerr << r.id << ": " << r.citation << '\n';
        } else if (app.got_subcommand(cmd_locus)) {
            WitnessStore store(db_path);
            LocusTable t = locus_table(opt_h, opt_k, &store);
            std::cout << (locus_csv ? t.to_csv() : t.to_ascii());
        } else if (app.got_subcommand(cmd_witness)) {
            WitnessStore store(db_path);
            print_witness(construct_witness({opt_h, opt_k, opt_v, opt_c}, store, budget));
        } else if (app.got_subcommand(cmd_search)) {
            cfg.mode = parse_mode(mode_str);
            auto slash = fraction_str.find('/');
            if (slash == std::string::npos)
                throw parse_error("--dicks-fraction wants num/den, e.g. 1/4");
            cfg.dicks_check_num = std::stoul(fraction_str.substr(0, slash));
            cfg.dicks_check_den = std::stoul(fraction_str.substr(slash + 1));
            SearchReport report = search(cfg);
            std::cout << report.to_text();
            std::cerr << "elapsed " << report.elapsed_seconds << " s";
            if (report.elapsed_seconds > 0)
                std::cerr << " (" << static_cast<long>(report.pairs_evaluated /
                                                       report.elapsed_seconds)
                          << " pairs/s)";
            std::cerr << '\n';
            if (!report.invariant_failures.empty()) return 2;
        }
    } catch (const invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
