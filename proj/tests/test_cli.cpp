#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "stabfun/corpus.hpp"
#include "stabfun/io.hpp"
#include "stabfun/stable.hpp"

using namespace sf;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(STABFUN_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    Run r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string tmp_file(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / ("stabfun_test_" + name);
    std::ofstream(path) << body;
    return path.string();
}

const std::string& corpus1_path() {
    static const std::string p = tmp_file("corpus1.json", serialize(corpus_definitions(1, 101)).dump());
    return p;
}

std::string doc(const std::string& name) { return std::string(STABFUN_DOCS_DIR) + "/" + name; }

bool same_rep(const Rep& a, const Rep& b) { return a.dims == b.dims && a.mats == b.mats; }

const std::string kSmallAlgebra = R"({
  "algebras": {"Q": {"vertices": ["x", "y"], "arrows": [{"name": "a", "src": "x", "tgt": "y"}],
                     "relations": []}},
  "modules": {)";

}  // namespace

TEST_CASE("corpus algebras have the expected dimensions") {
    Run r = cli("corpus --n 1");
    REQUIRE(r.code == 0);
    Definitions d = parse_definitions(json::parse(r.out));
    CHECK(d.algebras.at("A")->dim() == 7);
    CHECK(d.algebras.at("B")->dim() == 10);
    CHECK(d.algebras.at("Lambda")->dim() == 14);
    CHECK(d.algebras.at("Gamma")->dim() == 20);
    CHECK(d.manifest["gp_modules"].size() == 10);
    Definitions d2 = parse_definitions(json::parse(cli("corpus --n 2").out));
    CHECK(d2.manifest["gp_modules"].size() == 21);
}

TEST_CASE("ext between simples over A") {
    Run r = cli("--file " + corpus1_path() + " --algebra A ext --from S1 --to S0 --degree 1 --format json");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["dim"] == 1);
    Run t = cli("--corpus 1 --algebra A ext --from S1 --to S0 --degree 1");
    CHECK(t.code == 0);
    CHECK(t.out == "Ext^1(S1, S0) = 1\n");
}

TEST_CASE("gp-check on the simple tensor projective") {
    Run r = cli("--file " + corpus1_path() + " gp-check --module S_tensor_P1 --depth 8 --format json");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["verdict"] == "GP-up-to-depth");
    CHECK(j["depth"] == 8);
}

TEST_CASE("tilting-check and endo on the corpus candidate") {
    json t = json::parse(cli("--file " + corpus1_path() + " tilting-check --candidate T_tilting --format json").out);
    CHECK(t["self_orthogonal"] == true);
    CHECK(t["generates"] == "yes");
    json e = json::parse(cli("--file " + corpus1_path() + " endo --candidate T_tilting --format json").out);
    CHECK(e["vertices"] == 4);
    CHECK(e["relations"] == 0);
    CHECK(e["arrows"].size() == 3);
}

TEST_CASE("parse errors name the location") {
    SUBCASE("unknown arrow in a relation") {
        const std::string f = tmp_file("badrel.json", R"({"algebras": {"Q": {"vertices": ["0", "1"],
            "arrows": [{"name": "a", "src": "0", "tgt": "1"}],
            "relations": [[{"coeff": 1, "path": ["a", "zeta"]}]]}}})");
        Run r = cli("--file " + f + " --algebra Q projdim --module S0");
        CHECK(r.code == 2);
        CHECK(r.out.find("zeta") != std::string::npos);
        CHECK(r.out.find("/algebras/Q/relations/0/0/path/1") != std::string::npos);
    }
    SUBCASE("matrix of the wrong shape") {
        json d = json::parse(kSmallAlgebra + R"("M": {"algebra": "Q", "dims": [1, 2], "arrows": {"a": [[1]]}}}})");
        try {
            parse_definitions(d);
            FAIL("no error");
        } catch (const ParseError& e) {
            CHECK(e.where() == "/modules/M/arrows/a");
        }
    }
    SUBCASE("non-homomorphism") {
        json d = json::parse(kSmallAlgebra + R"("Sx": {"algebra": "Q", "simple": "x"},
            "Px": {"algebra": "Q", "projective": "x"}},
            "maps": {"f": {"from": "Sx", "to": "Px", "at": {"x": [[1]]}}}})");
        try {
            parse_definitions(d);
            FAIL("no error");
        } catch (const ParseError& e) {
            CHECK(e.where() == "/maps/f/at");
        }
    }
    SUBCASE("relation violated by a module") {
        json d = json::parse(R"({"algebras": {"Q": {"vertices": ["0", "1", "2"],
            "arrows": [{"name": "a", "src": "0", "tgt": "1"}, {"name": "b", "src": "1", "tgt": "2"}],
            "relations": [[{"path": ["a", "b"]}]]}},
            "modules": {"M": {"algebra": "Q", "dims": [1, 1, 1], "arrows": {"a": [[1]], "b": [[1]]}}}})");
        CHECK_THROWS_AS(parse_definitions(d), ParseError);
    }
    SUBCASE("malformed json") {
        Run r = cli("--file " + tmp_file("broken.json", "{\"algebras\": ") + " corpus");
        CHECK(r.code == 0);  // corpus ignores --file
        Run s = cli("--file " + tmp_file("broken.json", "{\"algebras\": ") + " --algebra Q projdim --module S0");
        CHECK(s.code == 2);
        CHECK(s.out.find("malformed JSON") != std::string::npos);
    }
    SUBCASE("non-prime field") {
        CHECK_THROWS_AS(parse_definitions(json::parse(R"({"field": {"prime": 12}})")), ParseError);
    }
}

TEST_CASE("empty module block is the zero representation") {
    Definitions d = parse_definitions(json::parse(kSmallAlgebra + R"("Z": {"algebra": "Q"}}})"));
    CHECK(d.module("Z").is_zero());
    CHECK(d.module("Z").dims == std::vector<int>{0, 0});
    Run r = cli("--file " + doc("linear_a3.json") + " decompose --module Zero --format json");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["summands"].empty());
}

TEST_CASE("exit codes") {
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("gp-check --module S0").code == 2);  // no definitions
    CHECK(cli("--file /nonexistent/x.json gp-check --module S0").code == 2);
    CHECK(cli("--file " + doc("linear_a3.json") + " gp-check --module nope").code == 2);
    CHECK(cli("--file " + doc("linear_a3.json") + " --format dot ext --from S0 --to S1 --degree 1").code == 2);
    CHECK(cli("--prime 12 corpus").code == 2);
    // S1 is not Gorenstein projective, so there is no cosyzygy sequence
    Run r = cli("--file " + doc("linear_a3.json") + " cosyzygy --module S1");
    CHECK(r.code == 1);
    CHECK(r.out.find("error") != std::string::npos);
}

TEST_CASE("identical seeds give identical machine-readable output") {
    const std::string a = cli("--corpus 1 --seed 5 decompose --module M_0_1 --format json").out;
    CHECK(a == cli("--corpus 1 --seed 5 decompose --module M_0_1 --format json").out);
    CHECK(cli("corpus --n 1").out == cli("corpus --n 1").out);
    const std::string s = "--file " + corpus1_path() + " stable-image --functor Fp --module M_1_3 --format json";
    CHECK(cli(s).out == cli(s).out);
}

TEST_CASE("serialize then parse round-trips") {
    for (const std::string& name : {"linear_a3.json", "dual_numbers.json", "tilting_functor.json"}) {
        CAPTURE(name);
        Definitions d = load_definitions(doc(name));
        json once = serialize(d);
        Definitions e = parse_definitions(once);
        CHECK(serialize(e) == once);
        for (const auto& [n, m] : d.modules) CHECK(same_rep(m, e.module(n)));
        for (const auto& [n, c] : d.complexes) CHECK(c.c.terms.size() == e.complex(n).c.terms.size());
    }
    Definitions c = load_definitions(corpus1_path());
    json once = serialize(c);
    CHECK(serialize(parse_definitions(once)) == once);
    CHECK(once == json::parse(std::ifstream(corpus1_path())));
}

TEST_CASE("round-trip property on random modules") {
    std::mt19937_64 rng(2024);
    Definitions base = load_definitions(doc("tilting_functor.json"));
    for (int trial = 0; trial < 40; ++trial) {
        const std::string alg = trial % 2 ? "A" : "B";
        Definitions d = base;
        Rep m = random_module(d.algebras.at(alg), rng, 3);
        d.modules["R"] = m;
        d.module_alg["R"] = alg;
        Definitions e = parse_definitions(serialize(d));
        CHECK(same_rep(e.module("R"), m));
    }
}

TEST_CASE("corpus manifest is consistent with the loaded objects") {
    Definitions d = load_definitions(corpus1_path());
    const FunctorData& fp = d.functor("Fp");
    for (const auto& e : d.manifest["gp_modules"]) {
        const std::string name = e["module"];
        CAPTURE(name);
        const Rep& m = d.module(name);
        if (e["ses"].is_null()) {
            CHECK(same_rep(m, d.module(e["equals"].get<std::string>())));
        } else {
            const MapDef &f = d.map(e["ses"]["f"]), &g = d.map(e["ses"]["g"]);
            CHECK(is_short_exact(d.module(f.from), m, d.module(g.to), f.hom, g.hom));
        }
        CHECK(stable_iso(stable_image(fp, m).core(), d.module(e["stable_image"])));
        CHECK(e["image_gp_verdict"] == "GP-up-to-depth");
    }
}

TEST_CASE("DOT output has one node per basis vector") {
    Run r = cli("--file " + corpus1_path() + " stable-image --functor Fp --module M_1_3 --format dot");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("digraph", 0) == 0);
    std::size_t nodes = 0, edges = 0, pos = 0;
    while ((pos = r.out.find("[label=", pos)) != std::string::npos) {
        const std::size_t line = r.out.rfind('\n', pos);
        (r.out.substr(line, pos - line).find("->") != std::string::npos ? edges : nodes)++;
        ++pos;
    }
    CHECK(nodes == 3);
    CHECK(edges == 2);
}

TEST_CASE("worked example files load and answer") {
    CHECK(cli("--file " + doc("linear_a3.json") + " ext --from S0 --to S1 --degree 1").out == "Ext^1(S0, S1) = 1\n");
    json h = json::parse(cli("--file " + doc("linear_a3.json") + " hom-d --from C --to S0 --format json").out);
    CHECK(h["dim"] == 1);
    json g = json::parse(cli("--file " + doc("dual_numbers.json") + " gp-check --module k0 --format json").out);
    CHECK(g["verdict"] == "GP-up-to-depth");
    json c = json::parse(cli("--file " + doc("dual_numbers.json") + " compare-kd --from E --to K --format json").out);
    CHECK(c["isomorphism"] == true);
    json f = json::parse(
        cli("--file " + doc("tilting_functor.json") + " findim-check --functor F --format json").out);
    CHECK(f["ok"] == true);
}
