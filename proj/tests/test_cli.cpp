#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "detequiv/cli.hpp"
#include "detequiv/kernel_io.hpp"

using namespace detequiv;
namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const fs::path kFixtures = fs::path(DETEQUIV_SOURCE_DIR) / "fixtures";

struct Run {
    int code;
    std::string out;
    std::string err;
    Json report() const { return Json::parse(out); }
};

Run run(const std::vector<std::string>& args, const SelftestOptions& opts = {}) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err, opts);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name, const std::string& file) { return (kFixtures / name / file).string(); }

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "detequiv_cli_test" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Everything except timing and the input paths, which depend on the caller.
Json comparable(Json report) {
    report.erase("timing");
    for (auto& in : report["inputs"]) in.erase("path");
    return report;
}

}  // namespace

TEST_CASE("golden recover reports") {
    for (const auto& entry : fs::directory_iterator(kFixtures)) {
        const auto name = entry.path().filename().string();
        CAPTURE(name);
        const auto r = run({"recover", fixture(name, "K.kernel"), fixture(name, "Q.kernel")});
        const auto expected = Json::parse(read_file(entry.path() / "expected.report"));
        CHECK(comparable(r.report()) == comparable(expected));
        CHECK(r.code == (expected["outcome"]["status"] == "transformation" ? 0 : 1));
    }
}

TEST_CASE("recover matches the generated ground truth") {
    for (const std::string name : {"conjugated_pair_gf101", "conjugated_pair_rational", "symmetric_pair"}) {
        CAPTURE(name);
        const auto dir = scratch(name);
        const auto r = run({"recover", fixture(name, "K.kernel"), fixture(name, "Q.kernel"), "--out",
                            (dir / "t.txt").string()});
        CHECK(r.code == 0);
        const auto got = parse_transformation(read_file(dir / "t.txt"));
        const auto truth = parse_transformation(read_file(kFixtures / name / "transform.txt"));
        CHECK(proportional(got.g, truth.g));
    }
}

TEST_CASE("recover diagnoses") {
    auto r = run({"recover", fixture("counterexample_zero3", "K.kernel"), fixture("counterexample_zero3", "Q.kernel")});
    CHECK(r.code == 1);
    CHECK(r.report()["outcome"]["diagnosis"]["kind"] == "MixedPartialTransposition");
    r = run({"recover", fixture("inequivalent", "K.kernel"), fixture("inequivalent", "Q.kernel")});
    CHECK(r.code == 1);
    CHECK(r.report()["outcome"]["diagnosis"]["kind"] == "NotEquivalent");
    CHECK(r.report()["outcome"]["diagnosis"]["minor"]["subset"].size() == 3);
}

TEST_CASE("check") {
    const auto k = fixture("inequivalent", "K.kernel");
    auto r = run({"check", k, k});
    CHECK(r.code == 0);
    CHECK(r.report()["outcome"]["equivalent"] == true);

    const auto dir = scratch("check");
    write_file_atomic(dir / "tweak.kernel", "field rational\nn 3\n1 2 3\n1 2 13\n7 5 3\n5 11 1\n");
    r = run({"check", k, (dir / "tweak.kernel").string()});
    CHECK(r.code == 1);
    CHECK(r.report()["outcome"]["first_violation"]["subset"] == Json::array({"2"}));

    setenv(std::string(kFixtureEnv).c_str(), kFixtures.string().c_str(), 1);
    r = run({"check", "--fixture", "counterexample_zero3", "--report", (dir / "r.json").string()});
    CHECK(r.code == 0);
    CHECK(r.report()["outcome"]["max_order_checked"] == 6);
    CHECK(Json::parse(read_file(dir / "r.json"))["outcome"] == r.report()["outcome"]);
    r = run({"check", "--fixture", "counterexample_ones2", "--max-order", "2"});
    CHECK(r.code == 0);
    CHECK(r.report()["outcome"]["minors_checked"] == 10);
    unsetenv(std::string(kFixtureEnv).c_str());

    CHECK(run({"check", k, k, "--max-order", "9"}).code == 2);
    CHECK(run({"check", k}).code == 2);
    CHECK(run({"check", k, fixture("counterexample_zero3", "K.kernel")}).code == 2);
    CHECK(run({"check", k, (dir / "missing.kernel").string()}).code == 2);
}

TEST_CASE("large kernels need an explicit flag") {
    const auto dir = scratch("large");
    CHECK(run({"gen", "random", "--n", "17", "--field", "gf:101", "--seed", "1", "--out", dir.string()}).code == 0);
    const auto k = (dir / "K.kernel").string();
    const auto r = run({"check", k, k});
    CHECK(r.code == 2);
    CHECK(r.err.find("--allow-large") != std::string::npos);
    CHECK(run({"check", k, k, "--max-order", "3"}).code == 0);
}

TEST_CASE("classify") {
    auto r = run({"classify", fixture("symmetric_pair", "K.kernel"), fixture("symmetric_pair", "K.kernel")});
    CHECK(r.code == 0);
    CHECK(r.report()["outcome"]["global"] == "EitherWorks");
    CHECK(r.report()["outcome"]["counts"]["Both"] == 10);

    r = run({"classify", fixture("conjugated_pair_rational", "K.kernel"), fixture("conjugated_pair_rational", "Q.kernel")});
    CHECK(r.code == 0);
    CHECK(r.report()["outcome"]["counts"]["Case2"] == 0);

    r = run({"classify", fixture("counterexample_ones2", "K.kernel"), fixture("counterexample_ones2", "Q.kernel")});
    CHECK(r.code == 1);
    CHECK(r.report()["outcome"]["global"] == "Mixed");
    CHECK(r.report()["outcome"]["counts"]["Case1"] > 0);
    CHECK(r.report()["outcome"]["counts"]["Case2"] > 0);
    CHECK(r.report()["outcome"]["triangles"].size() == 4);
}

TEST_CASE("gen") {
    const auto a = scratch("gen_a");
    const auto b = scratch("gen_b");
    const std::vector<std::string> flags = {"pair", "--n", "6", "--field", "gf:101", "--seed", "7", "--transpose"};
    auto with_out = [&](const fs::path& dir) {
        std::vector<std::string> args{"gen"};
        args.insert(args.end(), flags.begin(), flags.end());
        args.push_back("--out");
        args.push_back(dir.string());
        return args;
    };
    const auto ra = run(with_out(a));
    CHECK(ra.code == 0);
    CHECK(ra.report()["rng"] == "mt19937_64+reject");
    CHECK(run(with_out(b)).code == 0);
    for (const std::string f : {"K.kernel", "Q.kernel", "transform.txt"}) {
        CHECK(read_file(a / f) == read_file(b / f));
    }
    CHECK(parse_transformation(read_file(a / "transform.txt")).transpose);

    const auto c = scratch("gen_c");
    CHECK(run({"gen", "counterexample", "--half", "3", "--seed", "2", "--out", c.string()}).code == 0);
    const auto r = run({"recover", (c / "K.kernel").string(), (c / "Q.kernel").string()});
    CHECK(r.report()["outcome"]["diagnosis"]["kind"] == "MixedPartialTransposition");

    CHECK(run({"gen", "pair", "--n", "4", "--out", c.string()}).code == 2);
    CHECK(run({"gen", "random", "--n", "4", "--seed", "1", "--field", "gf:8", "--out", c.string()}).code == 2);
    CHECK(run({"gen", "random", "--n", "4", "--seed", "1", "--field", "gf:2", "--out", c.string()}).code == 2);
    const auto two = run({"gen", "random", "--n", "4", "--seed", "1", "--field", "gf:2", "--allow-char2", "--out", c.string()});
    CHECK(two.code == 0);
    CHECK(two.err.find("warning") != std::string::npos);
    CHECK(run({"gen", "counterexample", "--variant", "threes", "--seed", "1", "--out", c.string()}).code == 2);
    CHECK(run({"gen"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("selftest") {
    SelftestOptions quick;
    quick.identity_samples_gf = 20;
    quick.identity_samples_q = 5;
    quick.cocycle_samples = 10;
    const auto a = run({"selftest"}, quick);
    CHECK(a.code == 0);
    const auto b = run({"selftest"}, quick);
    CHECK(comparable(a.report()) == comparable(b.report()));

    quick.product = [](const PairFunction& h, const Cycle& p) {
        return cycle_product(h, p.length() == 3 ? reverse(p) : p);
    };
    const auto broken = run({"selftest"}, quick);
    CHECK(broken.code == 1);
    CHECK(broken.report()["outcome"]["first_failure"] == "decomposition identities");
    CHECK(broken.err.find("decomposition identities") != std::string::npos);
}

TEST_CASE("sha256") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
