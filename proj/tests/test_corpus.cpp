#include "diffiety/corpus.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace diffiety;

TEST_CASE("corpus loads and parses") {
    const auto& corpus = load_corpus();
    REQUIRE(corpus.size() == 5);
    std::vector<std::string> names;
    for (const auto& e : corpus) {
        names.push_back(e.name);
        EquationSystem E = e.parse();
        CHECK(E.name() == e.name);
        CHECK(E.normal_form().ok);
        CHECK(!e.goldens.empty());
    }
    CHECK(names == std::vector<std::string>{"heat", "burgers", "kdv", "transport", "wave2"});

    CHECK(corpus_entry("kdv").name == "kdv");
    CHECK_THROWS_AS(corpus_entry("nope"), error);
}

TEST_CASE("every golden re-verifies from scratch") {
    for (const auto& e : load_corpus()) {
        CAPTURE(e.name);
        CHECK_NOTHROW(verify_goldens(e));
    }
}

TEST_CASE("embedded texts match the files on disk") {
    for (const auto& e : load_corpus()) {
        CAPTURE(e.name);
        std::ifstream in(std::string(DIFFIETY_CORPUS_DIR) + "/" + e.name + ".eq");
        REQUIRE(in.good());
        std::ostringstream body;
        body << in.rdbuf();
        CHECK(body.str() == e.text);
    }
}
