#include "stallings/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "stallings/dicks.hpp"
#include "stallings/errors.hpp"
#include "stallings/locus.hpp"

namespace stallings {

const char* mode_name(SampleMode m) {
    return m == SampleMode::rose ? "rose" : "bipartite-theta";
}

SampleMode parse_mode(const std::string& name) {
    if (name == "rose") return SampleMode::rose;
    if (name == "bipartite-theta" || name == "theta" || name == "bipartite")
        return SampleMode::bipartite_theta;
    throw parse_error("unknown sample mode '" + name + "' (want rose or bipartite-theta)");
}

std::vector<int> random_partial_injection(int n, Rng& rng) {
    if (n < 0 || n > 20)
        throw domain_error("partial-injection sampler supports 0 <= n <= 20 (weights stay in "
                           "64-bit range)");
    // Weight of domain size k: C(n,k)^2 k!.
    std::vector<std::uint64_t> weight(n + 1);
    std::uint64_t total = 0;
    for (int k = 0; k <= n; ++k) {
        std::uint64_t binom = 1;
        for (int j = 0; j < k; ++j) binom = binom * (n - j) / (j + 1);
        std::uint64_t w = binom * binom;
        for (int j = 2; j <= k; ++j) w *= j;
        weight[k] = w;
        total += w;
    }
    std::uint64_t draw = rng.below(total);
    int k = 0;
    while (draw >= weight[k]) draw -= weight[k++];

    auto k_subset = [&](int kk) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        for (int i = 0; i < kk; ++i) {
            int j = i + static_cast<int>(rng.below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(kk);
        return pool;
    };
    std::vector<int> domain = k_subset(k);
    std::vector<int> image = k_subset(k);
    // Random bijection domain -> image.
    for (int i = k - 1; i > 0; --i) {
        int j = static_cast<int>(rng.below(i + 1));
        std::swap(image[i], image[j]);
    }
    std::vector<int> sigma(n, -1);
    for (int i = 0; i < k; ++i) sigma[domain[i]] = image[i];
    return sigma;
}

CoreGraph random_core_graph(int n, const Alphabet& alphabet, Rng& rng, int max_attempts) {
    if (n < 1) throw domain_error("random_core_graph needs n >= 1");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Edge> edges;
        for (int l = 0; l < alphabet.size(); ++l) {
            std::vector<int> sigma = random_partial_injection(n, rng);
            for (int v = 0; v < n; ++v)
                if (sigma[v] >= 0) edges.push_back({v, sigma[v], l});
        }
        if (edges.empty()) continue;
        std::vector<int> valence(n, 0);
        for (const Edge& e : edges) {
            valence[e.origin]++;
            valence[e.terminus]++;
        }
        bool ok = true;
        for (int v = 1; v < n && ok; ++v) ok = valence[v] >= 2;
        if (!ok) continue;
        // Connectivity.
        std::vector<std::vector<int>> adj(n);
        for (const Edge& e : edges) {
            adj[e.origin].push_back(e.terminus);
            adj[e.terminus].push_back(e.origin);
        }
        std::vector<bool> seen(n, false);
        std::vector<int> stack{0};
        seen[0] = true;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != n) continue;
        LabeledGraph g;
        g.alphabet = alphabet;
        g.num_vertices = n;
        g.edges = std::move(edges);
        return CoreGraph(std::move(g), 0);
    }
    throw budget_error("no core graph accepted after " + std::to_string(max_attempts) +
                       " attempts; try a smaller vertex count or a larger alphabet");
}

namespace {

std::string json_escape_words(const std::vector<std::string>& words) {
    std::string out = "[";
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ',';
        out += '"' + words[i] + '"';
    }
    out += ']';
    return out;
}

// One sampled pair, evaluated end to end.
void evaluate_pair(const SampleConfig& cfg, long index, SearchReport& report,
                   std::atomic<bool>* stop) {
    Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(index));
    Alphabet domain = cfg.mode == SampleMode::bipartite_theta
                          ? Alphabet::xy()
                          : [&] {
                                std::vector<std::string> ls;
                                for (int i = 0; i < cfg.alphabet_size; ++i)
                                    ls.push_back(std::string(1, static_cast<char>('a' + i)));
                                return Alphabet(ls);
                            }();
    int n_H = 1 + static_cast<int>(rng.below(cfg.max_vertices));
    int n_K = 1 + static_cast<int>(rng.below(cfg.max_vertices));
    CoreGraph H = random_core_graph(n_H, domain, rng, 500);
    CoreGraph K = random_core_graph(n_K, domain, rng, 500);

    RankProfile profile = rank_profile(H, K);  // throws on HN/Hopfian violation
    report.tuples[profile]++;
    report.pairs_evaluated++;

    RankProfile sorted = profile;
    if (sorted.h > sorted.k) std::swap(sorted.h, sorted.k);
    if (sorted.h < 2) {
        report.unclassified++;
    } else {
        Classification cls = classify(sorted);
        if (cls.verdict == Verdict::NONREALIZABLE) {
            std::ostringstream msg;
            msg << "pair " << index << ": sampled profile " << to_string(profile)
                << " was classified NONREALIZABLE by rule " << cls.rules.front().id
                << "; a sampled pair is a constructive witness, so this is a bug";
            report.invariant_failures.push_back(msg.str());
            if (stop) stop->store(true);
            return;
        }
        if (cls.verdict == Verdict::UNKNOWN) {
            ViolationRecord v;
            v.pair_index = index;
            v.profile = profile;
            for (const Word& w : basis_words(H)) v.H_gens.push_back(print_word(w));
            for (const Word& w : basis_words(K)) v.K_gens.push_back(print_word(w));
            // Re-verify through the word pipeline before reporting.
            std::vector<Word> hw, kw;
            for (const auto& s : v.H_gens) hw.push_back(parse_word(s, domain));
            for (const auto& s : v.K_gens) kw.push_back(parse_word(s, domain));
            v.verified = (rank_profile(hw, kw, domain) == profile);
            report.violations.push_back(std::move(v));
        }
    }

    if (cfg.mode != SampleMode::bipartite_theta) return;
    if (!rng.chance_num_den(cfg.dicks_check_num, cfg.dicks_check_den)) return;
    if (profile.c < 1) return;  // the Dicks layer presumes a nontrivial meet

    // Theta transport and the full invariant battery.
    Alphabet abc = Alphabet::theta_target();
    std::vector<Word> Hg, Kg;
    for (const Word& w : basis_words(H)) Hg.push_back(theta_embed(w, domain));
    for (const Word& w : basis_words(K)) Kg.push_back(theta_embed(w, domain));
    CoreGraph Ht = build_core_graph(Hg, abc);
    CoreGraph Kt = build_core_graph(Kg, abc);
    auto fail = [&](const std::string& what) {
        report.invariant_failures.push_back("pair " + std::to_string(index) + ": " + what);
        if (stop) stop->store(true);
    };
    RankProfile tprofile = rank_profile(Ht, Kt);
    if (!(tprofile == profile)) {
        fail("theta transport changed the profile from " + to_string(profile) + " to " +
             to_string(tprofile));
        return;
    }
    NormalizedPair np = normalize_pair(Ht, Kt);
    PullbackResult pb = pullback(np.H, np.K);
    DicksBundle bundle(np.H, np.K, pb);
    RankProfile nprofile = rank_profile(np.H, np.K);
    if (!(nprofile == profile)) {
        fail("normalization changed the profile from " + to_string(profile) + " to " +
             to_string(nprofile));
        return;
    }
    Theorem43Report tr = theorem43_report(bundle, nprofile);
    if (!tr.ok) {
        fail("rank-decomposition checks failed: " + tr.detail);
        return;
    }
    check_duality(bundle);  // throws invariant_violation on failure
    if (!compare_pushouts(pushout(np.H, np.K, pb), pushout_from_dicks(bundle))) {
        fail("dicks-modeled pushout disagrees with the quotient pushout");
        return;
    }
    report.dicks_checked++;
}

}  // namespace

void SearchReport::merge(const SearchReport& other) {
    for (const auto& [profile, count] : other.tuples) tuples[profile] += count;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    invariant_failures.insert(invariant_failures.end(), other.invariant_failures.begin(),
                              other.invariant_failures.end());
    pairs_evaluated += other.pairs_evaluated;
    skipped += other.skipped;
    unclassified += other.unclassified;
    dicks_checked += other.dicks_checked;
}

SearchReport search(const SampleConfig& cfg) {
    if (cfg.pairs < 0) throw domain_error("pair count must be nonnegative");
    if (cfg.max_vertices < 1) throw domain_error("max_vertices must be at least 1");
    if (cfg.alphabet_size < 2) throw domain_error("alphabet_size must be at least 2");
    if (cfg.dicks_check_den == 0) throw domain_error("dicks fraction denominator must be positive");
    auto t0 = std::chrono::steady_clock::now();
    SearchReport report;
    report.config = cfg;
    report.pairs_requested = cfg.pairs;

    int jobs = std::max(1, cfg.jobs);
    std::vector<SearchReport> partial(jobs);
    std::atomic<bool> stop{false};

    auto worker = [&](int w) {
        for (long index = w; index < cfg.pairs; index += jobs) {
            if (stop.load()) return;
            try {
                evaluate_pair(cfg, index, partial[w], &stop);
            } catch (const budget_error&) {
                partial[w].skipped++;
            } catch (const invariant_violation& e) {
                partial[w].invariant_failures.push_back("pair " + std::to_string(index) + ": " +
                                                        e.what());
                stop.store(true);
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
        for (auto& t : threads) t.join();
    }
    for (const auto& p : partial) report.merge(p);
    std::sort(report.violations.begin(), report.violations.end(),
              [](const ViolationRecord& a, const ViolationRecord& b) {
                  return a.pair_index < b.pair_index;
              });
    std::sort(report.invariant_failures.begin(), report.invariant_failures.end());
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string SearchReport::to_text() const {
    std::ostringstream out;
    out << "# conjecture search report\n";
    out << "# seed=" << config.seed << " pairs=" << config.pairs
        << " max_vertices=" << config.max_vertices << " alphabet_size=" << config.alphabet_size
        << " mode=" << mode_name(config.mode) << " dicks_fraction=" << config.dicks_check_num
        << "/" << config.dicks_check_den << '\n';
    out << "# vertex counts are drawn uniformly from [1, max_vertices]\n";
    out << "h\tk\tv\tc\tcount\n";
    for (const auto& [p, count] : tuples)
        out << p.h << '\t' << p.k << '\t' << p.v << '\t' << p.c << '\t' << count << '\n';
    for (const auto& v : violations) {
        out << "{\"pair\":" << v.pair_index << ",\"h\":" << v.profile.h << ",\"k\":" << v.profile.k
            << ",\"v\":" << v.profile.v << ",\"c\":" << v.profile.c
            << ",\"H\":" << json_escape_words(v.H_gens) << ",\"K\":" << json_escape_words(v.K_gens)
            << ",\"verified\":" << (v.verified ? "true" : "false") << "}\n";
    }
    for (const auto& f : invariant_failures) out << "! " << f << '\n';
    out << "pairs=" << pairs_evaluated << " violations=" << violations.size()
        << " failures=" << invariant_failures.size() << " seed=" << config.seed << '\n';
    return out.str();
}

}  // namespace stallings
