#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moorek/json_io.hpp"
#include "moorek/twisted.hpp"

using namespace moorek;

TEST_CASE("group JSON round-trips byte-identically") {
    AbelianGroup g({2, 4, 0}, {"a", "b", "t"});
    std::string s1 = dump_json(group_to_json(g));
    AbelianGroup back = group_from_json(Json::parse(s1));
    std::string s2 = dump_json(group_to_json(back));
    CHECK(s1 == s2);
    CHECK(back.factors() == g.factors());
    CHECK(back.labels() == g.labels());
}

TEST_CASE("profile JSON round-trips byte-identically through our types") {
    for (const char* expr : {"M(3)", "S(2)", "MxSM(3)", "prod(S(2),S(2))"}) {
        KProfile p = catalog(parse_space(expr), 3, SplittingData{true});
        std::string s1 = dump_json(profile_to_json(p));
        KProfile back = profile_from_json(Json::parse(s1));
        std::string s2 = dump_json(profile_to_json(back));
        CAPTURE(expr);
        CHECK(s1 == s2);
        // The reconstructed profile still validates.
        CHECK(validate(back).pass);
    }
}

TEST_CASE("profile JSON reports carry the assumption flags") {
    KProfile p = catalog(parse_space("MxSM(4)"), 4);
    Json j = profile_to_json(p);
    CHECK(j["full_modn_trusted"] == false);
    CHECK(j["assumptions"].size() >= 1);
    // Pinned mask marks the smash Tor lift as unbacked.
    bool any_unpinned = false;
    for (const auto& b : j["modn_pinned"][1])
        if (b == false) any_unpinned = true;
    CHECK(any_unpinned);
}

TEST_CASE("ring JSON round-trip and sparse table format") {
    AbelianGroup add({4, 4}, {"t", "s"});
    BilinearTable t(2, std::vector<IntVec>(2, IntVec::Zero(2)));
    // t*t = 2s (upper triangular scaled by 2, associative and nilpotent).
    IntVec e = IntVec::Zero(2);
    e(1) = 2;
    t[0][0] = e;
    FiniteNilRing r(add, t);
    std::string s1 = dump_json(ring_to_json(r));
    FiniteNilRing back = ring_from_json(Json::parse(s1));
    std::string s2 = dump_json(ring_to_json(back));
    CHECK(s1 == s2);
    CHECK(back.multiply(IntVec::Ones(2), IntVec::Ones(2)) == r.multiply(IntVec::Ones(2), IntVec::Ones(2)));
}

TEST_CASE("group table JSON uses the documented lexicographic ordering") {
    TwistedGroup tg = TwistedGroup::build(moore_profile(3, 3));
    GroupTable t = tg.full_table();
    Json j = group_table_to_json(t);
    CHECK(j["order"] == 3);
    CHECK(j["elements"][0][0] == 0);
    CHECK(j["elements"][1][0] == 1);
    CHECK(j["elements"][2][0] == 2);
    // o = + on the Moore carrier.
    CHECK(j["table"][1][2] == 0);
}

TEST_CASE("classify JSON carries the Heisenberg verdict") {
    KProfile p = mn_x_sigma_mn(3);
    TwistedGroup tg = TwistedGroup::build(p);
    ClassifyReport rep = classify(tg.subgroup(theorem36_generators(p)));
    Json j = classify_to_json(rep);
    CHECK(j["order"] == 27);
    CHECK(j["abelian"] == false);
    CHECK(j["heisenberg"] == true);
    CHECK(j["heisenberg_n"] == 3);
    CHECK(j["assumptions"].size() >= 1);
}

TEST_CASE("simn and count reports match the documented schema") {
    SimnReport s;
    s.classes = 2;
    s.tensor_order = 2;
    s.inequality = true;
    s.note = "n";
    Json js = simn_to_json(s);
    CHECK(js["classes"] == 2);
    CHECK(js["tensor_order"] == 2);
    CHECK(js["inequality"] == true);

    CountReport c;
    c.k0_tensor_order = 3;
    c.heven = 3;
    c.tor_hypothesis = true;
    c.asserted = true;
    c.equal = true;
    Json jc = count_to_json(c);
    CHECK(jc["k0_tensor_order"] == 3);
    CHECK(jc["heven_order"] == 3);
    CHECK(jc["equal"] == true);
}

TEST_CASE("malformed JSON inputs raise input errors") {
    CHECK_THROWS_AS(group_from_json(Json::parse("{\"labels\": []}")), input_error);
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]"), 2, 2), input_error);
    CHECK_THROWS_AS(table_from_json(Json::parse("[[0,0]]"), 1, 1, 1), input_error);
    CHECK_THROWS_AS(table_from_json(Json::parse("[[5,0,[1]]]"), 1, 1, 1), input_error);
}
