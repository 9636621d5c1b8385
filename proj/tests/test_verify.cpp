#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "steenrod/verify.hpp"

using namespace steenrod;

TEST_CASE("family registry dispatch") {
    VerifyOptions o;
    o.ctx = PrimeContext::make(2);
    o.max_degree = 8;
    o.max_level = 4;
    o.samples = 20;
    o.seed = 11;
    o.module_cap = 10;
    o.ses_dim = 1;
    o.ses_top_degree = 2;
    for (const std::string& fam :
         {"basis", "excess-bound", "span", "weight", "fil1", "fil2", "e3", "e5", "a5", "cong1",
          "cong22", "cong42", "e9", "dual-filt3", "pairing", "e1-7", "adjoint", "scheme-hopf",
          "rho", "induced-filt2", "coaction", "ses", "um", "suspension", "triangle",
          "phi-exact", "free-pattern"}) {
        Report rep = run_family(fam, o);
        INFO(fam);
        REQUIRE(rep.all_ok());
    }
    REQUIRE_THROWS_AS(run_family("nonsense", o), std::invalid_argument);
}

TEST_CASE("family names are registered") {
    auto fams = known_families();
    for (const char* required : {"a5", "ses", "e3", "cong1", "basis", "theta-formal"}) {
        bool found = false;
        for (const auto& f : fams) found = found || f == required;
        REQUIRE(found);
    }
}

TEST_CASE("dual condition sub-family filter") {
    VerifyOptions o;
    o.ctx = PrimeContext::make(3);
    o.max_degree = 8;
    o.max_level = 4;
    Report rep = run_family("e5*", o);
    REQUIRE(!rep.records.empty());
    for (const auto& r : rep.records) REQUIRE(r.family == "e5star");
    REQUIRE(rep.all_ok());
}

TEST_CASE("jsonl report shape") {
    VerifyOptions o;
    o.ctx = PrimeContext::make(2);
    o.max_degree = 4;
    Report rep = run_family("basis", o);
    std::ostringstream os;
    emit_jsonl(rep, os);
    std::istringstream is(os.str());
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) {
        REQUIRE(line.front() == '{');
        REQUIRE(line.back() == '}');
        REQUIRE(line.find("\"family\":\"basis\"") != std::string::npos);
        REQUIRE(line.find("\"status\":\"pass\"") != std::string::npos);
        ++lines;
    }
    REQUIRE(lines == 5);
}

TEST_CASE("failure records surface witnesses") {
    // a broken record renders a witness field
    Report rep;
    CheckRecord rec;
    rec.family = "demo";
    rec.p = 2;
    rec.ok = false;
    rec.witness = "it \"broke\"";
    rep.add(rec);
    std::ostringstream os;
    emit_jsonl(rep, os);
    REQUIRE(os.str().find("\"status\":\"fail\"") != std::string::npos);
    REQUIRE(os.str().find("\\\"broke\\\"") != std::string::npos);
    REQUIRE(rep.failures() == 1);
}
