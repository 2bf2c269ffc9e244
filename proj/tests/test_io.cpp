#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curvedeg/io.hpp"
#include "testutil.hpp"

using namespace curvedeg;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kMinimalDoc = R"({
  "format_version": 1,
  "genus": 2,
  "order_m": 1,
  "vertices": [{"id": 0, "genus": 2}],
  "edges": []
})";

} // namespace

TEST_CASE("minimal document parses with identity defaults and validates") {
    const auto d = parse_degeneration(kMinimalDoc);
    CHECK(d.genus == 2);
    CHECK(d.m() == 1);
    CHECK(d.action.sigma.vertex_map.at(0) == 0);
    CHECK(validate_degeneration(d).empty());
}

TEST_CASE("serialize then parse is the identity on fixtures") {
    for (const auto& d : fixtures::all_valid()) {
        const std::string doc = serialize_degeneration(d);
        const auto back = parse_degeneration(doc);
        CHECK(serialize_degeneration(back) == doc);
        // Value-level identity: the identity map is an isomorphism.
        Isomorphism id;
        for (const auto& v : d.graph.vertices()) id.vertex_map[v.id] = v.id;
        for (const auto& e : d.graph.edges()) id.edge_map[e.id] = e.id;
        for (const auto& f : d.graph.flags()) id.flag_map[f.id] = f.id;
        CHECK(is_isomorphism(d, back, id));
    }
}

TEST_CASE("parse rejections are field-addressed") {
    CHECK_THROWS_AS(parse_degeneration("{"), parse_error);
    CHECK_THROWS_WITH_AS(
        parse_degeneration(R"({"format_version": 2, "genus": 2, "order_m": 1,
                               "vertices": [{"id":0,"genus":2}], "edges": []})"),
        doctest::Contains("format_version"), parse_error);
    CHECK_THROWS_WITH_AS(
        parse_degeneration(R"({"format_version": 1, "genus": 2, "order_m": 1, "surprise": 3,
                               "vertices": [{"id":0,"genus":2}], "edges": []})"),
        doctest::Contains("unknown field"), parse_error);
    // Non-reduced rational.
    CHECK_THROWS_WITH_AS(
        parse_degeneration(R"({"format_version": 1, "genus": 2, "order_m": 2,
          "vertices": [{"id":0,"genus":2}], "edges": [],
          "vertex_smooth_ram": [{"vertex":0,"entries":[{"numerator":2,"denominator":4,"multiplicity":1}]}]})"),
        doctest::Contains("reduced"), parse_error);
    // Duplicate vertex id.
    CHECK_THROWS_AS(
        parse_degeneration(R"({"format_version": 1, "genus": 2, "order_m": 1,
          "vertices": [{"id":0,"genus":2},{"id":0,"genus":1}], "edges": []})"),
        parse_error);
    // Unknown flag in valencies.
    CHECK_THROWS_WITH_AS(
        parse_degeneration(R"({"format_version": 1, "genus": 2, "order_m": 1,
          "vertices": [{"id":0,"genus":2}], "edges": [],
          "flag_valencies": [{"flag": 4, "numerator": 0, "denominator": 1}]})"),
        doctest::Contains("unknown flag"), parse_error);
}

TEST_CASE("screw N=0 parses but fails validation") {
    auto d = fixtures::theta_m1();
    d.screw[0] = 0;
    const std::string doc = serialize_degeneration(d);
    const auto back = parse_degeneration(doc); // no throw
    bool found = false;
    for (const auto& viol : validate_degeneration(back))
        if (viol.message.find(">= 1") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("DOT export of the theta graph") {
    const auto t = fixtures::theta_m1();
    const std::string dot = export_dot(t.graph);
    CHECK(dot.find("v0 [label=\"v0 g=0\"];") != std::string::npos);
    CHECK(dot.find("v1 [label=\"v1 g=0\"];") != std::string::npos);
    std::size_t edges = 0, pos = 0;
    while ((pos = dot.find("v0 -- v1", pos)) != std::string::npos) {
        ++edges;
        pos += 1;
    }
    CHECK(edges == 3);
}

TEST_CASE("invariants report is deterministic and complete") {
    const auto d = fixtures::amphidrome_loop_m6();
    const std::string rep = invariants_report(d);
    CHECK(rep == invariants_report(d));
    CHECK(rep.find("gbar 0") != std::string::npos);
    CHECK(rep.find("amphidrome yes") != std::string::npos);
    CHECK(rep.find("chi 2/3") != std::string::npos);
    CHECK(rep.find("screw 5/3") != std::string::npos);
}

TEST_CASE("resolve report covers smooth points and both edge models") {
    const auto rep = resolve_report(fixtures::two_components_m4());
    CHECK(rep.find("\"model\": \"non-amphidrome\"") != std::string::npos);
    CHECK(rep.find("\"smooth_points\"") != std::string::npos);

    const auto amph = resolve_report(fixtures::amphidrome_loop_m6());
    CHECK(amph.find("\"model\": \"amphidrome\"") != std::string::npos);
    CHECK(amph.find("\"chi_residue\": 4") != std::string::npos);

    const auto doc = nlohmann::json::parse(amph);
    REQUIRE(doc.at("edges").size() == 1);
    CHECK_FALSE(doc.at("edges")[0].contains("chain")); // no amphidrome chains
    CHECK_FALSE(doc.at("edges")[0].contains("sing"));
    REQUIRE(doc.at("smooth_points").size() == 2);
    CHECK(doc.at("smooth_points")[0].at("sing").at("n") == 2);
}

TEST_CASE("corpus files are canonical and validate as labelled") {
    namespace fs = std::filesystem;
    const fs::path corpus(CURVEDEG_CORPUS_DIR);
    REQUIRE(fs::exists(corpus / "valid"));
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(corpus / "valid")) {
        const std::string text = read_file(entry.path());
        const auto d = parse_degeneration(text);
        CHECK(validate_degeneration(d).empty());
        CHECK(serialize_degeneration(d) == text); // byte-canonical on disk
        ++count;
    }
    CHECK(count >= 5);

    for (const auto& entry : fs::directory_iterator(corpus / "invalid")) {
        const std::string text = read_file(entry.path());
        const auto d = parse_degeneration(text); // parses...
        CHECK_FALSE(validate_degeneration(d).empty()); // ...but does not validate
        ++count;
    }

    for (const auto& entry : fs::directory_iterator(corpus / "rejected")) {
        CHECK_THROWS_AS(parse_degeneration(read_file(entry.path())), parse_error);
    }
}
