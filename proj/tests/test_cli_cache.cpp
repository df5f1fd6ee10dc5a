#include "ecmf/cli.hpp"
#include "ecmf/errors.hpp"
#include "ecmf/modular_group.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace ecmf;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("ecmf_test_" + std::to_string(std::rand()) + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("curve literals") {
    CHECK(parse_curve("[0,-1,1,-10,-20]").id() == "[0,-1,1,-10,-20]");
    CHECK(parse_curve(" [ 0, -1, 1, -10, -20 ] ").id() == "[0,-1,1,-10,-20]");
    CHECK(parse_curve("legendre:2").id() == "[0,-3,0,2,0]");
    CHECK(parse_curve("legendre:-1").id() == "[0,0,0,-1,0]");
    CHECK(parse_curve("legendre:1/2").id() == "[0,-6,0,8,0]");

    CHECK_THROWS_AS(parse_curve("legendre:1"), DomainError); // singular
    CHECK_THROWS_AS(parse_curve("[1,2,3]"), ParseError);
    CHECK_THROWS_AS(parse_curve("[1,2,3,4,5"), ParseError);
    try {
        parse_curve("[1,2,x,4,5]");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
        CHECK(std::string(e.what()).find("position 5") != std::string::npos);
    }
}

TEST_CASE("cmd_jinv prints the quoted expansion") {
    RunReport r = cmd_jinv(3);
    CHECK(r.text == "q^-1 + 744 + 196884 q + 21493760 q^2\n");
    CHECK(r.verdict == Verdict::Informational);
    CHECK(r.exit_code() == 0);
    CHECK(r.to_json()["results"]["series"]["leadExp"] == -1);
}

TEST_CASE("cmd_genus / cmd_cusps / cmd_classify") {
    CHECK(cmd_genus(2).results["genus"] == 0);
    CHECK(cmd_genus(11).results["genus"] == 1);
    CHECK(cmd_cusps(4).results["cusps"] == 3);

    RunReport cls = cmd_classify("[[1,0],[1,1]]");
    CHECK(cls.results["class"] == "parabolic");
    CHECK(cls.results["fixed_point"] == "0");
    CHECK(cls.text == "parabolic, fixed point 0\n");
    CHECK(cmd_classify("[[0,-1],[1,0]]").results["class"] == "elliptic");
    CHECK(cmd_classify("[[1,1],[0,1]]").results["fixed_point"] == "infinity");
}

TEST_CASE("cmd_ap: quoted example rows and the empty table") {
    RunReport r = cmd_ap("[0,0,0,-1,0]", 5);
    const auto& table = r.results["table"];
    REQUIRE(table.size() == 3);
    CHECK(table[0]["p"] == 2);
    CHECK(table[0]["good"] == false);
    CHECK(table[1]["p"] == 3);
    CHECK(table[1]["ap"] == 0);
    CHECK(table[2]["p"] == 5);
    CHECK(table[2]["ap"] == -2);

    CHECK(cmd_ap("[0,0,0,-1,0]", 1).results["table"].empty());
}

TEST_CASE("cmd_ap runs are deterministic (byte-identical payloads)") {
    const std::string a = cmd_ap("[0,-1,1,-10,-20]", 60).to_json().dump();
    const std::string b = cmd_ap("[0,-1,1,-10,-20]", 60).to_json().dump();
    CHECK(a == b);
    const std::string m1 = cmd_modularity("[0,-1,1,-10,-20]", 11, 20, 2).to_json().dump();
    const std::string m2 = cmd_modularity("[0,-1,1,-10,-20]", 11, 20, 1).to_json().dump();
    CHECK(m1 == m2); // thread count cannot leak into the payload
}

TEST_CASE("ap cache: populate, reuse, corrupt lines, audit") {
    TempDir tmp;
    const std::filesystem::path cache_file = tmp.path / "ap.csv";

    ApOptions opts;
    opts.cache_path = cache_file;
    opts.audit_seed = 1;

    RunReport first = cmd_ap("[0,-1,1,-10,-20]", 60, opts);
    REQUIRE(std::filesystem::exists(cache_file));
    {
        std::ifstream in(cache_file);
        std::string line1, line2;
        std::getline(in, line1);
        std::getline(in, line2);
        CHECK(line1 == "# ecmf-ap-cache v1");
        CHECK(line2 == "curveId,p,ap,good");
    }
    // cached rerun reproduces the same table
    RunReport second = cmd_ap("[0,-1,1,-10,-20]", 60, opts);
    CHECK(first.to_json()["results"]["table"] == second.to_json()["results"]["table"]);
    CHECK(second.verdict == Verdict::Informational);

    // a corrupt line is named, skipped and recomputed
    {
        std::ofstream out(cache_file, std::ios::app);
        out << "\"[0,-1,1,-10,-20]\",9999,totally,broken\n";
    }
    RunReport third = cmd_ap("[0,-1,1,-10,-20]", 60, opts);
    REQUIRE(third.results["cache"]["corrupt_lines"].size() == 1);
    const std::string named = third.results["cache"]["corrupt_lines"][0];
    CHECK(named.find("line") != std::string::npos);
    CHECK(third.verdict == Verdict::Informational);
    CHECK(third.to_json()["results"]["table"] == first.to_json()["results"]["table"]);

    // poison a value: some audit seed within a few tries must catch it
    {
        ApCache cache(cache_file);
        cache.store({"[0,-1,1,-10,-20]", 7, 5, true}); // real a_7 = -2
        cache.save();
    }
    bool caught = false;
    for (std::uint64_t seed = 0; seed < 60 && !caught; ++seed) {
        ApOptions audit_opts = opts;
        audit_opts.audit_seed = seed;
        RunReport audited = cmd_ap("[0,-1,1,-10,-20]", 60, audit_opts);
        if (audited.verdict == Verdict::Fail) {
            caught = true;
            CHECK(audited.exit_code() == 1);
            REQUIRE(audited.results["cache"]["audit_failures"].size() == 1);
            const std::string msg = audited.results["cache"]["audit_failures"][0];
            CHECK(msg.find("p=7") != std::string::npos);
            // the poisoned entry was repaired on disk
            ApCache repaired(cache_file);
            CHECK(repaired.lookup("[0,-1,1,-10,-20]", 7)->ap == -2);
        }
    }
    CHECK(caught);
}

TEST_CASE("cmd_zeta: pass, and explained failure at a bad prime") {
    RunReport good = cmd_zeta("[0,0,0,-1,0]", 5, 2);
    CHECK(good.verdict == Verdict::Pass);
    CHECK(good.results["counts"][1] == 32);
    CHECK(good.exit_code() == 0);

    RunReport bad = cmd_zeta("[0,0,0,-1,0]", 2, 1);
    CHECK(bad.verdict == Verdict::Fail);
    CHECK(bad.exit_code() == 1);
    const std::string err = bad.results["error"];
    CHECK(err.find("bad reduction") != std::string::npos);

    RunReport depth1 = cmd_zeta("[0,0,0,-1,0]", 7, 1);
    CHECK(depth1.verdict == Verdict::Pass);
}

TEST_CASE("cmd_modularity: pass, mismatch, unsupported level") {
    CHECK(cmd_modularity("[0,-1,1,-10,-20]", 11, 50).verdict == Verdict::Pass);

    RunReport miss = cmd_modularity("[0,0,0,-1,0]", 11, 50);
    CHECK(miss.verdict == Verdict::Fail);
    CHECK(miss.results["first_mismatch"] == 3);

    CHECK_THROWS_WITH_AS(cmd_modularity("[0,-1,1,-10,-20]", 37, 50),
                         doctest::Contains("11"), NotImplementedError);
}

TEST_CASE("cmd_lvalue methods agree loosely at small cutoff") {
    RunReport e = cmd_lvalue("[0,-1,1,-10,-20]", 2.0, 500, "euler_product");
    RunReport d = cmd_lvalue("[0,-1,1,-10,-20]", 2.0, 500, "dirichlet_sum");
    CHECK(e.results["certified"] == true);
    CHECK(std::abs(e.results["value"].get<double>() - d.results["value"].get<double>()) < 1e-3);
    CHECK_THROWS_AS(cmd_lvalue("[0,-1,1,-10,-20]", 2.0, 100, "magic"), UsageError);
}

TEST_CASE("cmd_fermat and cmd_frey") {
    RunReport empty = cmd_fermat(15, 5, false);
    CHECK(empty.verdict == Verdict::Pass);
    CHECK(empty.results["hits"].empty());

    RunReport control = cmd_fermat(15, 3, true);
    CHECK(control.verdict == Verdict::Pass); // n = 2 hits are not counterexamples
    bool has345 = false;
    for (const auto& h : control.results["hits"])
        if (h["X"] == "3" && h["Y"] == "4" && h["Z"] == "5") has345 = true;
    CHECK(has345);

    RunReport frey = cmd_frey(2, 1, 3);
    CHECK(frey.results["curve"] == "[0,-7,0,-8,0]");
    CHECK(frey.results["discriminant"] == "82944");
    // 82944 = 2^10 * 3^4: the bad primes
    CHECK(frey.results["bad_primes"] == nlohmann::json::array({2, 3}));
}

TEST_CASE("cmd_bsd_explore is loudly uncertified") {
    RunReport r = cmd_bsd_explore("[0,-1,1,-10,-20]", 200);
    CHECK(r.verdict == Verdict::Informational);
    CHECK(r.text.find("UNCERTIFIED") != std::string::npos);
    bool saw_uncertified_step = false;
    for (const auto& step : r.results["steps"])
        if (step["certified"] == false) saw_uncertified_step = true;
    CHECK(saw_uncertified_step);
}

TEST_CASE("report envelope fields") {
    RunReport r = cmd_genus(7);
    nlohmann::json j = r.to_json();
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "genus");
    CHECK(j["inputs"]["N"] == 7);
    CHECK(j.contains("verdict"));
}

TEST_CASE("malformed literals only ever raise library errors") {
    std::mt19937 rng(424242);
    const std::string alphabet = "[],-+0123456789legendre:/x ";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 24);
    for (int trial = 0; trial < 400; ++trial) {
        std::string s;
        const int L = len(rng);
        for (int i = 0; i < L; ++i) s += alphabet[pick(rng)];
        try {
            (void)parse_curve(s);
        } catch (const Error&) {
            // ParseError, DomainError or InvariantError are all acceptable
        }
        try {
            (void)parse_matrix(s);
        } catch (const Error&) {
        }
    }
}

TEST_CASE("cache directory comes from the environment by default") {
    TempDir tmp;
    setenv("ECMF_CACHE_DIR", tmp.path.c_str(), 1);
    auto path = default_cache_path();
    REQUIRE(path.has_value());
    CHECK(*path == tmp.path / "ap_cache.csv");

    cmd_ap("[0,0,0,-1,0]", 20); // no explicit cache option
    CHECK(std::filesystem::exists(tmp.path / "ap_cache.csv"));

    unsetenv("ECMF_CACHE_DIR");
    CHECK_FALSE(default_cache_path().has_value());
}
