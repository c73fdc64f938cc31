#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stallings/dicks.hpp"
#include "stallings/locus.hpp"
#include "stallings/sampler.hpp"
#include "stallings/witness.hpp"

namespace py = pybind11;
using namespace stallings;

namespace {

Alphabet alphabet_from(const std::vector<std::string>& letters) { return Alphabet(letters); }

std::pair<std::vector<Word>, Alphabet> parse_generators(const std::vector<std::string>& texts) {
    std::ostringstream joined;
    for (const auto& t : texts) joined << t << '\n';
    SubgroupFile f = read_subgroup_text(joined.str());
    return {f.generators, f.alphabet};
}

// One subgroup, held as its core graph.
struct Subgroup {
    CoreGraph graph;

    explicit Subgroup(const std::vector<std::string>& generators)
        : graph([&] {
              auto [gens, alphabet] = parse_generators(generators);
              return build_core_graph(gens, alphabet);
          }()) {}

    int rank_() const { return rank(graph); }
    bool contains_(const std::string& text) const {
        return contains(graph, parse_word(text, graph.alphabet()));
    }
    std::vector<std::string> basis() const {
        std::vector<std::string> out;
        for (const Word& w : basis_words(graph)) out.push_back(print_word(w));
        return out;
    }
    std::string serialized() const { return serialize(graph); }
    int vertices() const { return graph.num_vertices(); }
    int edges() const { return graph.num_edges(); }
};

py::dict profile_dict(const RankProfile& p) {
    py::dict d;
    d["h"] = p.h;
    d["k"] = p.k;
    d["v"] = p.v;
    d["c"] = p.c;
    d["i"] = p.i();
    return d;
}

}  // namespace

PYBIND11_MODULE(_stallings, m) {
    m.doc() = "Core graphs of free-group subgroups: ranks of meets, joins and pushouts, the "
              "bipartite decomposition, rank-tuple classification and the conjecture search.";

    py::class_<Subgroup>(m, "Subgroup")
        .def(py::init<const std::vector<std::string>&>(), py::arg("generators"))
        .def_property_readonly("rank", &Subgroup::rank_)
        .def("contains", &Subgroup::contains_, py::arg("word"))
        .def("basis", &Subgroup::basis)
        .def("serialize", &Subgroup::serialized)
        .def_property_readonly("num_vertices", &Subgroup::vertices)
        .def_property_readonly("num_edges", &Subgroup::edges);

    m.def("reduce_word", [](const std::string& text, const std::vector<std::string>& letters) {
        return print_word(parse_word(text, alphabet_from(letters)));
    }, py::arg("word"), py::arg("alphabet"));

    m.def("theta_embed", [](const std::string& text) {
        Alphabet xy = Alphabet::xy();
        return print_word(theta_embed(parse_word(text, xy), xy));
    }, py::arg("word"), "x -> cA, y -> cB, freely reduced");

    m.def("rank_profile", [](const Subgroup& H, const Subgroup& K) {
        return profile_dict(rank_profile(H.graph, K.graph));
    }, py::arg("H"), py::arg("K"));

    m.def("meet", [](const Subgroup& H, const Subgroup& K) {
        return serialize(pullback(H.graph, K.graph).meet);
    });
    m.def("join_graph", [](const Subgroup& H, const Subgroup& K) {
        return serialize(join(H.graph, K.graph));
    });
    m.def("pushout_rank", [](const Subgroup& H, const Subgroup& K) {
        return pushout(H.graph, K.graph, pullback(H.graph, K.graph)).rank();
    });

    m.def("a_sequence", &a_sequence, py::arg("h"), py::arg("k"));

    m.def("classify", [](int h, int k, int v, int c) {
        Classification cls = classify({h, k, v, c});
        py::dict d;
        d["verdict"] = std::string(verdict_name(cls.verdict));
        py::list rules;
        for (const auto& r : cls.rules) rules.append(r.id);
        d["rules"] = rules;
        d["ivanov_open_question"] = cls.ivanov_open_question;
        return d;
    }, py::arg("h"), py::arg("k"), py::arg("v"), py::arg("c"));

    m.def("sigma", [](int n, const std::vector<std::tuple<int, int, std::string>>& edges) {
        std::vector<ColoredEdge> es;
        for (const auto& [u, v, color] : edges) es.push_back({u, v, parse_color(color)});
        return sigma(ColoredMultigraph(n, std::move(es)));
    }, py::arg("n"), py::arg("edges"));

    m.def("has_nonmonochromatic_cycle",
          [](int n, const std::vector<std::tuple<int, int, std::string>>& edges) {
              std::vector<ColoredEdge> es;
              for (const auto& [u, v, color] : edges) es.push_back({u, v, parse_color(color)});
              return has_nonmonochromatic_cycle(ColoredMultigraph(n, std::move(es)));
          }, py::arg("n"), py::arg("edges"));

    m.def("dicks_report", [](const Subgroup& H, const Subgroup& K) {
        NormalizedPair np = normalize_pair(H.graph, K.graph);
        DicksBundle b(np.H, np.K, pullback(np.H, np.K));
        return dicks_report(b, rank_profile(np.H, np.K));
    }, py::arg("H"), py::arg("K"));

    m.def("construct_witness", [](int h, int k, int v, int c, std::uint64_t seed, long attempts) {
        WitnessStore store;
        SearchBudget budget;
        budget.seed = seed;
        budget.attempts = attempts;
        WitnessRecord rec = construct_witness({h, k, v, c}, store, budget);
        py::dict d;
        d["profile"] = profile_dict(rec.profile);
        d["H"] = rec.H_gens;
        d["K"] = rec.K_gens;
        d["provenance"] = rec.provenance;
        d["verified"] = rec.verified;
        return d;
    }, py::arg("h"), py::arg("k"), py::arg("v"), py::arg("c"), py::arg("seed") = 20240713,
       py::arg("attempts") = 200000);

    m.def("search_report", [](std::uint64_t seed, long pairs, int max_vertices,
                              const std::string& mode, int jobs) {
        SampleConfig cfg;
        cfg.seed = seed;
        cfg.pairs = pairs;
        cfg.max_vertices = max_vertices;
        cfg.mode = parse_mode(mode);
        cfg.jobs = jobs;
        return search(cfg).to_text();
    }, py::arg("seed"), py::arg("pairs"), py::arg("max_vertices") = 6, py::arg("mode") = "rose",
       py::arg("jobs") = 1);
}
