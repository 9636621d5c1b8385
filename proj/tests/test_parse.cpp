#include <catch2/catch_amalgamated.hpp>
#include <filesystem>

#include "steenrod/serialize.hpp"

using namespace steenrod;

TEST_CASE("element parsing round trips") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(parse_element("Sq(2)", c2) == milnor_sq(2));
    REQUIRE(parse_element("Sq(1,1)", c2) ==
            Element::single(MilnorMonomial{BSeq{}, Seq({1, 1})}, 1, 2));
    REQUIRE(parse_element("Sq^2 Sq^1", c2) ==
            milnor_product(milnor_sq(2), milnor_sq(1), c2));
    REQUIRE(parse_element("Sq2Sq1", c2) == parse_element("Sq^2 Sq^1", c2));
    REQUIRE(parse_element("Sq(3) + Sq(0,1)", c2) == parse_element("Sq^2 Sq^1", c2));
    REQUIRE(parse_element("1", c2) == milnor_unit());
    REQUIRE(parse_element("0", c2).is_zero());
    REQUIRE(parse_element("Sq(1) + Sq(1)", c2).is_zero());

    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE(parse_element("b", c3) == milnor_Q(0));
    REQUIRE(parse_element("Q(0,1)", c3) ==
            Element::single(MilnorMonomial{BSeq({0, 1}), Seq{}}, 1, 3));
    REQUIRE(parse_element("Q(1) P(2)", c3) ==
            Element::single(MilnorMonomial{BSeq({1}), Seq({2})}, 1, 3));
    REQUIRE(parse_element("2 P(1)", c3) == milnor_P(1).scaled(2, 3));
    REQUIRE(parse_element("b P^1", c3) == milnor_product(milnor_Q(0), milnor_P(1), c3));
    REQUIRE(parse_element("P1", c3) == milnor_P(1));
    REQUIRE(parse_element("-1 P(1)", c3) == milnor_P(1).scaled(2, 3));
}

TEST_CASE("parse errors carry positions") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE_THROWS_AS(parse_element("Sq(", c2), ParseError);
    REQUIRE_THROWS_AS(parse_element("Sq(1) +", c2), ParseError);
    REQUIRE_THROWS_AS(parse_element("b", c2), ParseError);  // beta needs odd p
    REQUIRE_THROWS_AS(parse_element("Sq(1) Sq", c2), ParseError);
    REQUIRE_THROWS_AS(parse_element("xyz", c2), ParseError);
    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE_THROWS_AS(parse_element("Sq(1)", c3), ParseError);
    try {
        parse_element("Sq(1) @", c2);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        REQUIRE(e.position == 6);
    }
}

TEST_CASE("word parsing") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(parse_word("Sq^4 Sq^2 Sq^1", c2) == Word::sq({4, 2, 1}));
    REQUIRE(parse_word("", c2).is_unit());
    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE(parse_word("b P1", c3) == Word::odd({1, 0}, {1}));
    REQUIRE(parse_word("b P^2 b", c3) == Word::odd({1, 1}, {2}));
    REQUIRE(parse_word("b b", c3) == Word::odd({1, 1}, {0}));
    REQUIRE(word_excess(parse_word("b P1", c3), 3) == 3);
    REQUIRE_THROWS_AS(parse_word("P^1", c2), ParseError);
}

TEST_CASE("text rendering") {
    PrimeContext c2 = PrimeContext::make(2);
    REQUIRE(element_to_text(milnor_product(milnor_sq(2), milnor_sq(2), c2), c2) == "Sq(1,1)");
    REQUIRE(element_to_text(Element{}, c2) == "0");
    REQUIRE(element_to_text(milnor_unit(), c2) == "1");
    AdmissibleElement conv = milnor_to_admissible(
        Element::single(MilnorMonomial{BSeq{}, Seq({0, 1})}, 1, 2), c2);
    REQUIRE(admissible_to_text(conv, c2) == "Sq^3 + Sq^2 Sq^1");

    PrimeContext c3 = PrimeContext::make(3);
    REQUIRE(mono_to_text(MilnorMonomial{BSeq({1}), Seq({2})}, 3) == "Q(1) P(2)");
    REQUIRE(word_to_text(Word::odd({1, 0}, {2}), 3) == "b P^2");
    REQUIRE(dual_mono_to_text(DualMonomial{BSeq({1}), Seq({1})}, 3) == "tau(1) xi(1)");
    REQUIRE(dual_mono_to_text(DualMonomial{BSeq{}, Seq({0, 1})}, 2) == "zeta(0,1)");
}

TEST_CASE("element json schema") {
    PrimeContext c2 = PrimeContext::make(2);
    Element x = milnor_product(milnor_sq(2), milnor_sq(2), c2);
    OrderedJson j = element_to_json(x, c2);
    REQUIRE(j["schema"] == 1);
    REQUIRE(j["p"] == 2);
    REQUIRE(j["degree"] == 4);
    REQUIRE(j["basis"] == "milnor");
    REQUIRE(j["terms"].size() == 1);
    REQUIRE(j["terms"][0]["coeff"] == 1);
    REQUIRE(j["terms"][0]["R"] == OrderedJson({1, 1}));
    FpMat m(2, 3, 5);
    m.set(0, 1, 4);
    REQUIRE(matrix_from_json(matrix_to_json(m), 5) == m);
}

TEST_CASE("disk cache round trips") {
    namespace fs = std::filesystem;
    PrimeContext c2 = PrimeContext::make(2);
    fs::path dir = fs::temp_directory_path() / "steenrod_cache_test";
    fs::remove_all(dir);
    auto cob = change_of_basis(7, c2);
    write_change_of_basis(dir, 2, *cob);
    auto loaded = read_change_of_basis(dir, 2, 7);
    REQUIRE(loaded != nullptr);
    REQUIRE(loaded->milnor_from_admissible == cob->milnor_from_admissible);
    REQUIRE(loaded->admissible_from_milnor == cob->admissible_from_milnor);
    REQUIRE(loaded->words == cob->words);
    // corrupt file: loader reports a miss
    {
        std::ofstream out(cache_file_path(dir, 2, 7));
        out << "{\"schema\":99}\n";
    }
    REQUIRE(read_change_of_basis(dir, 2, 7) == nullptr);
    REQUIRE(read_change_of_basis(dir, 2, 9) == nullptr);
    fs::remove_all(dir);
}

TEST_CASE("test ring from json") {
    OrderedJson j;
    j["schema"] = 1;
    j["p"] = 3;
    j["name"] = "demo";
    j["generators"] = OrderedJson::array();
    OrderedJson z;
    z["name"] = "z";
    z["degree"] = 1;
    z["parity"] = 1;
    z["truncation"] = 2;
    j["generators"].push_back(z);
    OrderedJson w;
    w["name"] = "w";
    w["degree"] = 2;
    w["truncation"] = 4;
    j["generators"].push_back(w);
    GradedTestRing ring = test_ring_from_json(j);
    REQUIRE(ring.prime() == 3);
    REQUIRE(ring.gens().size() == 2);
    REQUIRE(ring.gens()[1].parity == 0);  // inferred from the degree
    REQUIRE(ring.mul(ring.gen(0), ring.gen(0)).is_zero());
}
