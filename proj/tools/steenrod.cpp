// Command-line front end: basis listings, products, basis conversions,
// excess queries, and the verification suites, with text or JSON output.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "steenrod/verify.hpp"

using namespace steenrod;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct GlobalOptions {
    int p = 2;
    std::optional<int> cap;
    std::string format = "text";
    std::string cache_dir;
    unsigned long long seed = 1;
    bool seed_set = false;
};

PrimeContext context_of(const GlobalOptions& g) { return PrimeContext::make(g.p, g.cap); }

void setup_cache(const GlobalOptions& g) {
    std::string dir = g.cache_dir;
    if (dir.empty()) {
        const char* env = std::getenv("STEENROD_CACHE_DIR");
        if (env) dir = env;
    }
    if (!dir.empty()) enable_disk_cache(dir);
}

int cmd_basis(const GlobalOptions& g, const std::string& kind, int n, std::optional<int> level) {
    PrimeContext ctx = context_of(g);
    std::ostringstream text;
    OrderedJson j;
    j["schema"] = 1;
    j["p"] = ctx.p;
    j["kind"] = kind;
    j["n"] = n;
    long long count = 0;
    if (kind == "admissible") {
        for (const Word& w : enumerate_admissible(n, ctx)) {
            text << word_to_text(w, ctx.p) << " : degree " << word_degree(w, ctx.p)
                 << ", excess " << word_excess(w, ctx.p) << "\n";
            OrderedJson e;
            e["E"] = OrderedJson(w.eps_list());
            e["R"] = OrderedJson(w.ops());
            e["excess"] = word_excess(w, ctx.p);
            j["entries"].push_back(std::move(e));
            ++count;
        }
    } else if (kind == "milnor") {
        for (const auto& m : milnor_basis(n, ctx)) {
            text << mono_to_text(m, ctx.p) << " : degree " << m.degree(ctx.p) << ", weight "
                 << m.weight(ctx.p) << "\n";
            OrderedJson e;
            e["E"] = bseq_to_json(m.e);
            e["R"] = seq_to_json(m.r);
            e["weight"] = m.weight(ctx.p);
            j["entries"].push_back(std::move(e));
            ++count;
        }
    } else if (kind == "filtration") {
        if (!level) throw CLI::ValidationError("--kind filtration requires -i");
        j["i"] = *level;
        GradedSubspace f = filtration_basis(*level, n, FiltrationKind::milnor, ctx);
        for (const Element& b : f.basis) {
            const MilnorMonomial& m = b.terms().begin()->first;
            text << mono_to_text(m, ctx.p) << " : degree " << m.degree(ctx.p) << ", weight "
                 << m.weight(ctx.p) << "\n";
            OrderedJson e;
            e["E"] = bseq_to_json(m.e);
            e["R"] = seq_to_json(m.r);
            e["weight"] = m.weight(ctx.p);
            j["entries"].push_back(std::move(e));
            ++count;
        }
    } else if (kind == "dual") {
        if (!level) throw CLI::ValidationError("--kind dual requires -i");
        j["i"] = *level;
        for (const auto& m : dual_basis(n, ctx)) {
            if (m.level(ctx.p) > *level) continue;
            text << dual_mono_to_text(m, ctx.p) << " : degree " << m.degree(ctx.p)
                 << ", level " << m.level(ctx.p) << "\n";
            OrderedJson e;
            e["E"] = bseq_to_json(m.e);
            e["R"] = seq_to_json(m.r);
            e["level"] = m.level(ctx.p);
            j["entries"].push_back(std::move(e));
            ++count;
        }
    } else {
        throw CLI::ValidationError("unknown basis kind: " + kind);
    }
    text << "count: " << count << "\n";
    j["count"] = count;
    if (j.find("entries") == j.end()) j["entries"] = OrderedJson::array();
    if (g.format == "json")
        std::cout << j.dump() << "\n";
    else
        std::cout << text.str();
    return kExitOk;
}

int cmd_product(const GlobalOptions& g, const std::string& lhs, const std::string& rhs) {
    PrimeContext ctx = context_of(g);
    Element a = parse_element(lhs, ctx);
    Element b = parse_element(rhs, ctx);
    Element ab = milnor_product(a, b, ctx);
    if (g.format == "json")
        std::cout << element_to_json(ab, ctx).dump() << "\n";
    else
        std::cout << element_to_text(ab, ctx) << "\n";
    return kExitOk;
}

int cmd_convert(const GlobalOptions& g, const std::string& to, const std::string& input) {
    PrimeContext ctx = context_of(g);
    Element x = parse_element(input, ctx);
    if (to == "milnor") {
        if (g.format == "json")
            std::cout << element_to_json(x, ctx).dump() << "\n";
        else
            std::cout << element_to_text(x, ctx) << "\n";
        return kExitOk;
    }
    if (to == "admissible") {
        AdmissibleElement a = milnor_to_admissible(x, ctx);
        if (g.format == "json")
            std::cout << admissible_to_json(a, ctx).dump() << "\n";
        else
            std::cout << admissible_to_text(a, ctx) << "\n";
        return kExitOk;
    }
    throw CLI::ValidationError("unknown target basis: " + to);
}

int cmd_excess(const GlobalOptions& g, const std::string& word_text,
               const std::string& element_text) {
    PrimeContext ctx = context_of(g);
    long long e;
    if (!word_text.empty()) {
        Word w = parse_word(word_text, ctx);
        e = word_excess(w, ctx.p);
    } else {
        Element x = parse_element(element_text, ctx);
        AdmissibleElement a = milnor_to_admissible(x, ctx);
        e = element_excess(a, ctx);
    }
    if (g.format == "json") {
        OrderedJson j;
        j["schema"] = 1;
        j["p"] = ctx.p;
        j["excess"] = e;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << e << "\n";
    }
    return kExitOk;
}

int cmd_verify(const GlobalOptions& g, const std::string& family, std::optional<int> max_degree,
               std::optional<int> max_level, std::optional<int> samples,
               std::optional<int> module_cap, std::optional<int> ses_dim,
               const std::string& test_ring_file) {
    VerifyOptions opts;
    opts.ctx = context_of(g);
    if (max_degree) opts.max_degree = *max_degree;
    if (max_level) opts.max_level = *max_level;
    if (samples) opts.samples = *samples;
    if (module_cap) opts.module_cap = *module_cap;
    if (ses_dim) opts.ses_dim = *ses_dim;
    opts.seed = g.seed;
    // randomized families refuse to run without an explicit seed
    bool randomized = family == "excess-bound" || family == "fil2" || family == "theta-n" ||
                      family == "theta-formal" || family == "all";
    if (randomized && !g.seed_set)
        throw CLI::ValidationError("family '" + family + "' is randomized; pass --seed");
    if (!test_ring_file.empty()) opts.test_ring = load_test_ring(test_ring_file);
    auto t0 = std::chrono::steady_clock::now();
    Report rep = run_family(family, opts);
    auto t1 = std::chrono::steady_clock::now();
    emit_jsonl(rep, std::cout);
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::cerr << "verify " << family << ": " << rep.total_checked() << " checks, "
              << rep.failures() << " failures, " << ms << " ms\n";
    return rep.all_ok() ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations in the mod-p Steenrod algebra"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may appear after the subcommand name

    GlobalOptions g;
    app.add_option("-p,--prime", g.p, "prime (2 <= p <= 13)")->capture_default_str();
    app.add_option("--cap", g.cap, "degree cap (defaults by prime)");
    app.add_option("--format", g.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--cache-dir", g.cache_dir,
                   "directory for change-of-basis cache files (env STEENROD_CACHE_DIR)");
    auto* seed_opt = app.add_option("--seed", g.seed, "seed for randomized verification");

    auto* basis = app.add_subcommand("basis", "list a basis");
    std::string kind;
    int basis_n = 0;
    std::optional<int> basis_i;
    basis->add_option("--kind", kind, "admissible|milnor|filtration|dual")->required();
    basis->add_option("-n,--degree", basis_n, "degree")->required();
    basis->add_option("-i,--level", basis_i, "filtration level (filtration/dual kinds)");

    auto* product = app.add_subcommand("product", "multiply two elements");
    std::string lhs, rhs;
    product->add_option("lhs", lhs, "left factor")->required();
    product->add_option("rhs", rhs, "right factor")->required();

    auto* convert = app.add_subcommand("convert", "convert an element between bases");
    std::string conv_to = "admissible", conv_elem;
    convert->add_option("--to", conv_to, "admissible|milnor")->capture_default_str();
    convert->add_option("element", conv_elem, "element expression")->required();

    auto* excess = app.add_subcommand("excess", "excess of a word or element");
    std::string exc_word, exc_elem;
    excess->add_option("--word", exc_word, "word expression, e.g. \"b P1\" or \"Sq^4 Sq^2\"");
    excess->add_option("element", exc_elem, "element expression");

    auto* verify = app.add_subcommand("verify", "run a verification family");
    std::string family, ring_file;
    std::optional<int> v_deg, v_level, v_samples, v_cap, v_dim;
    verify->add_option("--family", family, "verification family (or 'all')")->required();
    verify->add_option("--max-degree", v_deg, "degree range bound");
    verify->add_option("--max-level", v_level, "filtration level bound");
    verify->add_option("--samples", v_samples, "sample count for randomized families");
    verify->add_option("--module-cap", v_cap, "degree cap for unstable-module families");
    verify->add_option("--ses-dim", v_dim, "total dimension bound of the V sweep");
    verify->add_option("--test-ring", ring_file, "JSON test-ring presentation");

    try {
        app.parse(argc, argv);
        g.seed_set = seed_opt->count() > 0;
        setup_cache(g);
        if (*basis) return cmd_basis(g, kind, basis_n, basis_i);
        if (*product) return cmd_product(g, lhs, rhs);
        if (*convert) return cmd_convert(g, conv_to, conv_elem);
        if (*excess) {
            if (exc_word.empty() && exc_elem.empty())
                throw CLI::ValidationError("excess needs --word or an element");
            return cmd_excess(g, exc_word, exc_elem);
        }
        if (*verify)
            return cmd_verify(g, family, v_deg, v_level, v_samples, v_cap, v_dim, ring_file);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
}
