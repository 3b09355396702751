#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "support.hpp"

using focus::testing::data_path;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = focus::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("focus_cli_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

std::string value_of(const std::string& text, const std::string& key)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + " ", 0) == 0)
            return line.substr(key.size() + 1);
    return {};
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("check")
    {
        const auto ok = run({"check", data_path("two_coin.inst"), "--psi", "2"});
        CHECK(ok.code == focus::cli::kOk);
        CHECK(value_of(ok.out, "satisfied") == "yes");
        CHECK(std::stod(value_of(ok.out, "delta")) == doctest::Approx(0.25));
        CHECK(value_of(ok.out, "atomic") == "yes");

        const auto bad = run({"check", data_path("two_coin.inst"), "--psi", "1"});
        CHECK(bad.code == focus::cli::kFailed);
        CHECK(value_of(bad.out, "satisfied") == "no");

        const auto fam = run({"check", data_path("two_coin.inst"), "--psi", "2", "--family",
                              "file:" + data_path("two_coin.family")});
        CHECK(fam.code == focus::cli::kOk);
    }

    TEST_CASE("parse errors exit 2")
    {
        const auto path = temp_file("bad.inst", "states 2\ntheta 0 1\nflaw F 0\narc F 0 nope 1\n");
        const auto r = run({"check", path});
        CHECK(r.code == focus::cli::kParseError);
        CHECK(r.err.find("line 4") != std::string::npos);
        CHECK(run({"check", "/nonexistent/file.inst"}).code == focus::cli::kParseError);
        CHECK(run({"bogus"}).code == focus::cli::kParseError);
        CHECK(run({"check", data_path("two_coin.inst"), "--psi", "-1"}).code == focus::cli::kParseError);
        const auto graph = temp_file("bad.graph", "p edge 2 1\ne 1 1\n");
        CHECK(run({"aec", graph}).code == focus::cli::kParseError);
    }

    TEST_CASE("simulate is deterministic")
    {
        const std::vector<std::string> args{"simulate", data_path("two_coin.inst"), "--psi", "2", "--trials",
                                            "2000", "--s", "2", "--seed", "5"};
        const auto a = run(args);
        CHECK(a.code == focus::cli::kOk);
        CHECK(value_of(a.out, "pass") == "yes");
        auto threaded = args;
        threaded.insert(threaded.end(), {"--threads", "4"});
        CHECK(run(threaded).out == a.out);
        CHECK(run({"simulate", data_path("two_coin.inst"), "--psi", "1"}).code == focus::cli::kFailed);
    }

    TEST_CASE("forest")
    {
        const auto r = run({"forest", "--family", "file:" + data_path("two_coin.family"), "--psi", "2", "--t", "3"});
        CHECK(r.code == focus::cli::kOk);
        CHECK(r.out.find("weight_sum") != std::string::npos);
        const auto s = run({"forest", "--family", "file:" + data_path("two_coin.family"), "--psi", "2", "--samples",
                            "2000", "--seed", "1"});
        CHECK(s.code == focus::cli::kOk);
        CHECK(run({"forest", "--psi", "2"}).code == focus::cli::kParseError);
    }

    TEST_CASE("exact")
    {
        const auto inst = data_path("two_coin.inst");
        const auto d = run({"exact", inst, "--check", "distribution", "--t", "2"});
        CHECK(d.code == focus::cli::kOk);
        CHECK(d.out.find("halt") != std::string::npos);
        CHECK(run({"exact", inst, "--check", "witness", "--t", "3"}).code == focus::cli::kOk);
        CHECK(run({"exact", inst, "--check", "atomic"}).code == focus::cli::kOk);
        // two flaws overlap at state 3, so B is addressed first less often than mu(B)
        CHECK(run({"exact", inst, "--check", "window", "--t", "3"}).code == focus::cli::kFailed);
        CHECK(run({"exact", data_path("non_atomic.inst"), "--check", "atomic"}).code == focus::cli::kFailed);
        CHECK(run({"exact", inst, "--check", "distribution", "--t", "6", "--cap", "2"}).code == focus::cli::kCapExceeded);
    }

    TEST_CASE("harmonic")
    {
        const auto r = run({"harmonic", data_path("biased_coin.inst")});
        CHECK(r.code == focus::cli::kOk);
        const auto path = temp_file("harmonic.inst", r.out);
        CHECK(run({"exact", path, "--check", "atomic"}).code == focus::cli::kOk);
    }

    TEST_CASE("aec and verify")
    {
        const auto graph = data_path("c6.graph");
        const auto a = run({"aec", graph, "--mode", "general", "--seed", "3"});
        REQUIRE(a.code == focus::cli::kOk);
        CHECK(value_of(a.out, "c colors") == "5");
        CHECK(run({"aec", graph, "--mode", "general", "--seed", "3"}).out == a.out);
        const auto coloring = temp_file("c6.col", a.out);
        const auto v = run({"verify", graph, coloring});
        CHECK(v.code == focus::cli::kOk);
        CHECK(v.out == "ok\n");

        const auto bad = run({"verify", graph, data_path("c6_bichromatic.col")});
        CHECK(bad.code == focus::cli::kFailed);
        CHECK(bad.out.rfind("violation", 0) == 0);

        const auto missing = temp_file("missing.col", "1 2 1\n");
        CHECK(run({"verify", graph, missing}).code == focus::cli::kParseError);

        CHECK(run({"aec", graph, "--mode", "general", "--max-steps", "0"}).code == focus::cli::kCapExceeded);
        CHECK(run({"aec", graph, "--mode", "nope"}).code == focus::cli::kParseError);
    }

    TEST_CASE("output file")
    {
        const auto path = (std::filesystem::temp_directory_path() / "focus_cli_test_out.txt").string();
        std::filesystem::remove(path);
        const auto r = run({"check", data_path("two_coin.inst"), "--psi", "2", "--out", path});
        CHECK(r.code == focus::cli::kOk);
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str().find("satisfied yes") != std::string::npos);
    }
}
