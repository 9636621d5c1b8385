#pragma once

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "steenrod/parse.hpp"
#include "steenrod/testring.hpp"

namespace steenrod {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson seq_to_json(const Seq& r) { return OrderedJson(r.entries()); }
inline OrderedJson bseq_to_json(const BSeq& e) { return OrderedJson(e.entries()); }

inline OrderedJson element_to_json(const Element& x, const PrimeContext& ctx) {
    OrderedJson j;
    j["schema"] = 1;
    j["p"] = ctx.p;
    auto d = homogeneous_degree(x, ctx.p);
    if (d) j["degree"] = *d;
    j["basis"] = "milnor";
    j["terms"] = OrderedJson::array();
    std::vector<std::pair<const MilnorMonomial*, int>> terms;
    for (const auto& [m, c] : x.terms()) terms.push_back({&m, c});
    std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        return a.first->degree(ctx.p) < b.first->degree(ctx.p);
    });
    for (const auto& [m, c] : terms) {
        OrderedJson t;
        t["coeff"] = c;
        t["E"] = bseq_to_json(m->e);
        t["R"] = seq_to_json(m->r);
        j["terms"].push_back(std::move(t));
    }
    return j;
}

/// Admissible elements serialize with E = the eps list and R = the exponent
/// list of each word.
inline OrderedJson admissible_to_json(const AdmissibleElement& a, const PrimeContext& ctx) {
    OrderedJson j;
    j["schema"] = 1;
    j["p"] = ctx.p;
    if (!a.is_zero()) j["degree"] = a.degree;
    j["basis"] = "admissible";
    j["terms"] = OrderedJson::array();
    for (const auto& [w, c] : a.terms) {
        OrderedJson t;
        t["coeff"] = c;
        t["E"] = OrderedJson(w.eps_list());
        t["R"] = OrderedJson(w.ops());
        j["terms"].push_back(std::move(t));
    }
    return j;
}

inline OrderedJson dual_to_json(const DualElement& x, const PrimeContext& ctx) {
    OrderedJson j;
    j["schema"] = 1;
    j["p"] = ctx.p;
    j["basis"] = "dual";
    j["terms"] = OrderedJson::array();
    for (const auto& [m, c] : x.terms()) {
        OrderedJson t;
        t["coeff"] = c;
        t["E"] = bseq_to_json(m.e);
        t["R"] = seq_to_json(m.r);
        j["terms"].push_back(std::move(t));
    }
    return j;
}

inline OrderedJson matrix_to_json(const FpMat& m) {
    OrderedJson j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = OrderedJson(m.data());
    return j;
}

inline FpMat matrix_from_json(const OrderedJson& j, int p) {
    FpMat m(j.at("rows").get<int>(), j.at("cols").get<int>(), p);
    auto entries = j.at("entries").get<std::vector<int>>();
    if (entries.size() != static_cast<size_t>(m.rows()) * static_cast<size_t>(m.cols()))
        throw std::invalid_argument("matrix_from_json: wrong entry count");
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            m.set(r, c, entries[static_cast<size_t>(r) * m.cols() + c]);
    return m;
}

// ---------------------------------------------------------------------------
// On-disk cache for change-of-basis matrices: one file per (p, n).
// ---------------------------------------------------------------------------

inline std::filesystem::path cache_file_path(const std::filesystem::path& dir, int p, int n) {
    return dir / ("cob_p" + std::to_string(p) + "_n" + std::to_string(n) + ".json");
}

inline void write_change_of_basis(const std::filesystem::path& dir, int p,
                                  const ChangeOfBasis& cob) {
    OrderedJson j;
    j["schema"] = 1;
    j["kind"] = "change_of_basis";
    j["p"] = p;
    j["n"] = cob.degree;
    j["words"] = OrderedJson::array();
    for (const auto& w : cob.words) j["words"].push_back(OrderedJson(w.flattened()));
    j["monomials"] = OrderedJson::array();
    for (const auto& m : cob.monomials) {
        OrderedJson t;
        t["E"] = bseq_to_json(m.e);
        t["R"] = seq_to_json(m.r);
        j["monomials"].push_back(std::move(t));
    }
    j["matrix"] = matrix_to_json(cob.milnor_from_admissible);
    j["inverse"] = matrix_to_json(cob.admissible_from_milnor);
    std::filesystem::create_directories(dir);
    std::ofstream out(cache_file_path(dir, p, cob.degree));
    out << j.dump() << "\n";
}

/// Load a cached matrix if the file exists and matches the freshly enumerated
/// index lists; otherwise report a miss so the caller recomputes.
inline std::shared_ptr<const ChangeOfBasis> read_change_of_basis(
    const std::filesystem::path& dir, int p, int n) {
    std::filesystem::path file = cache_file_path(dir, p, n);
    std::ifstream in(file);
    if (!in) return nullptr;
    OrderedJson j;
    try {
        in >> j;
        if (j.at("schema").get<int>() != 1 ||
            j.at("kind").get<std::string>() != "change_of_basis" || j.at("p").get<int>() != p ||
            j.at("n").get<int>() != n)
            return nullptr;
        PrimeContext ctx = PrimeContext::make(p, std::max(PrimeContext::default_cap(p), n));
        auto cob = std::make_shared<ChangeOfBasis>();
        cob->degree = n;
        cob->words = enumerate_admissible(n, ctx);
        cob->monomials = milnor_basis(n, ctx);
        auto jwords = j.at("words");
        if (jwords.size() != cob->words.size()) return nullptr;
        for (size_t k = 0; k < cob->words.size(); ++k)
            if (jwords[k].get<std::vector<int>>() != cob->words[k].flattened()) return nullptr;
        cob->milnor_from_admissible = matrix_from_json(j.at("matrix"), p);
        cob->admissible_from_milnor = matrix_from_json(j.at("inverse"), p);
        int dim = static_cast<int>(cob->words.size());
        if (cob->milnor_from_admissible.rows() != dim ||
            cob->milnor_from_admissible.cols() != dim)
            return nullptr;
        if (!(cob->milnor_from_admissible.times(cob->admissible_from_milnor) ==
              FpMat::identity(dim, p)))
            return nullptr;
        for (const auto& w : cob->words) cob->word_expansions.push_back(word_to_milnor(w, ctx));
        return cob;
    } catch (const std::exception&) {
        return nullptr;
    }
}

/// Route the change-of-basis cache through a directory.
inline void enable_disk_cache(const std::filesystem::path& dir) {
    detail::cache_hooks().load = [dir](int p, int n) { return read_change_of_basis(dir, p, n); };
    detail::cache_hooks().store = [dir](int p, const ChangeOfBasis& cob) {
        write_change_of_basis(dir, p, cob);
    };
}

// ---------------------------------------------------------------------------
// Test-ring presentations.
// ---------------------------------------------------------------------------

inline GradedTestRing test_ring_from_json(const OrderedJson& j) {
    int p = j.at("p").get<int>();
    if (!PrimeContext::is_supported_prime(p))
        throw std::invalid_argument("test ring: unsupported prime");
    std::vector<TestRingGen> gens;
    for (const auto& g : j.at("generators")) {
        TestRingGen tg;
        tg.name = g.at("name").get<std::string>();
        tg.degree = g.at("degree").get<int>();
        tg.parity = g.value("parity", std::abs(tg.degree) % 2);
        tg.truncation = g.at("truncation").get<int>();
        gens.push_back(std::move(tg));
    }
    return GradedTestRing(p, j.value("name", std::string("custom")), std::move(gens));
}

inline GradedTestRing load_test_ring(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open test ring file " + file.string());
    OrderedJson j;
    in >> j;
    return test_ring_from_json(j);
}

}  // namespace steenrod
