#include "detequiv/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "detequiv/classify.hpp"
#include "detequiv/generate.hpp"
#include "detequiv/kernel_io.hpp"
#include "detequiv/recovery.hpp"
#include "detequiv/rng.hpp"

namespace detequiv {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::IoError, "SHA-256 failed");
    }
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return ss.str();
}

namespace {

constexpr std::size_t kLargeN = 16;
constexpr std::size_t kMaxListed = 20;

struct Input {
    std::string role;
    fs::path path;
    Kernel kernel;
    std::string hash;
};

Input load(const std::string& role, const fs::path& path) {
    const auto text = read_file(path);
    Kernel k = [&] {
        try {
            return parse_kernel(text);
        } catch (const Error& e) {
            throw Error(e.code(), path.string() + ": " + e.detail());
        }
    }();
    return {role, path, std::move(k), sha256_hex(text)};
}

struct Pair {
    Input k;
    Input q;
};

/// Positional K and Q, or --fixture NAME resolved under the fixture directory.
struct PairArgs {
    std::vector<std::string> paths;
    std::string fixture;

    void attach(CLI::App* cmd) {
        cmd->add_option("files", paths, "K and Q kernel files")->expected(2);
        cmd->add_option("--fixture", fixture, "fixture name; directory from $DETEQUIV_FIXTURES or ./fixtures");
    }

    Pair load_pair() const {
        fs::path kp, qp;
        if (!fixture.empty()) {
            if (!paths.empty()) throw CLI::ValidationError("give either two files or --fixture, not both");
            const char* env = std::getenv(std::string(kFixtureEnv).c_str());
            const fs::path dir = fs::path(env && *env ? env : "fixtures") / fixture;
            kp = dir / "K.kernel";
            qp = dir / "Q.kernel";
        } else if (paths.size() == 2) {
            kp = paths[0];
            qp = paths[1];
        } else {
            throw CLI::ValidationError("expected two kernel files or --fixture");
        }
        Pair p{load("K", kp), load("Q", qp)};
        require_comparable(p.k.kernel, p.q.kernel);
        return p;
    }
};

std::string label_cycle(const Kernel& k, const Cycle& c) {
    std::string s = "(";
    for (auto v : c.closed()) s += (s.size() > 1 ? "," : "") + k.labels()[v];
    return s + ")";
}

Json label_subset(const Kernel& k, const std::vector<std::size_t>& subset) {
    Json out = Json::array();
    for (auto i : subset) out.push_back(k.labels()[i]);
    return out;
}

Json minor_json(const Kernel& k, const MinorViolation& v) {
    return Json{{"subset", label_subset(k, v.subset)},
                {"k_minor", format_scalar(v.k_minor)},
                {"q_minor", format_scalar(v.q_minor)}};
}

Json minor_report_json(const Kernel& k, const MinorReport& r) {
    Json out;
    out["equivalent"] = r.equivalent;
    out["max_order_checked"] = r.max_order_checked;
    out["minors_checked"] = r.minors_checked;
    out["first_violation"] = r.first_violation ? minor_json(k, *r.first_violation) : Json(nullptr);
    return out;
}

Json case_report_json(const Kernel& k, const CaseReport& r) {
    Json out;
    out["global"] = to_string(r.global);
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(label_cycle(k, w));
    out["witnesses"] = witnesses;
    std::size_t counts[4] = {0, 0, 0, 0};
    for (const auto& [_, c] : r.triangles) ++counts[static_cast<int>(c)];
    Json cj;
    for (auto c : {TriangleCase::Case1, TriangleCase::Case2, TriangleCase::Both, TriangleCase::Neither}) {
        cj[std::string(to_string(c))] = counts[static_cast<int>(c)];
    }
    out["counts"] = cj;
    Json tri = Json::array();
    for (const auto& [cycle, c] : r.triangles) tri.push_back(Json{{"cycle", label_cycle(k, cycle)}, {"case", to_string(c)}});
    out["triangles"] = tri;
    return out;
}

Json transformation_json(const Kernel& k, const Transformation& t) {
    Json g = Json::array();
    for (const auto& v : t.g) g.push_back(format_scalar(v));
    return Json{{"transpose", t.transpose},
                {"base_label", k.labels()[t.base_index]},
                {"g", g}};
}

Json diagnosis_json(const Kernel& k, const Diagnosis& d) {
    Json out;
    out["kind"] = to_string(d.kind);
    out["message"] = d.message;
    out["minor"] = d.minor ? minor_json(k, *d.minor) : Json(nullptr);
    Json tri = Json::array();
    for (const auto& c : d.triangles) tri.push_back(label_cycle(k, c));
    out["triangles"] = tri;
    Json zeros = Json::array();
    for (const auto& z : d.zero_entries) zeros.push_back(Json::array({k.labels()[z.row], k.labels()[z.col]}));
    out["zero_entries"] = zeros;
    out["cross_minor_violation_count"] = d.cross_minor_violations.size();
    Json quads = Json::array();
    for (std::size_t i = 0; i < d.cross_minor_violations.size() && i < kMaxListed; ++i) {
        const auto& v = d.cross_minor_violations[i];
        quads.push_back(Json{{"rows", Json::array({k.labels()[v.x], k.labels()[v.z]})},
                             {"cols", Json::array({k.labels()[v.y], k.labels()[v.w]})}});
    }
    out["cross_minor_violations"] = quads;
    return out;
}

class Reporter {
public:
    Reporter(std::string command, std::ostream& out) : out_(out), start_(std::chrono::steady_clock::now()) {
        report_["command"] = std::move(command);
        report_["tool_version"] = kToolVersion;
        report_["inputs"] = Json::array();
    }

    void input(const Input& in) {
        report_["inputs"].push_back(Json{{"role", in.role}, {"path", in.path.generic_string()}, {"sha256", in.hash}});
    }
    void rng() { report_["rng"] = Rng::kAlgorithm; }
    Json& outcome() { return report_["outcome"]; }

    void emit(const std::string& report_path) {
        const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_);
        report_["timing"] = Json{{"elapsed_ms", std::round(elapsed.count() * 1000.0) / 1000.0}};
        const auto text = report_.dump(2) + "\n";
        if (!report_path.empty()) write_file_atomic(report_path, text);
        out_ << text;
    }

private:
    std::ostream& out_;
    Json report_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const SelftestOptions& selftest_options) {
    CLI::App app{"Determinantal equivalence of finite kernels"};
    app.name("detequiv");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string report_path;

    // check
    auto* check = app.add_subcommand("check", "compare principal minors up to a given order");
    PairArgs check_args;
    check_args.attach(check);
    std::size_t max_order = 0;
    bool allow_large = false;
    check->add_option("--max-order", max_order, "largest minor order to compare (default n)");
    check->add_flag("--allow-large", allow_large, "permit full enumeration above n = 16");
    check->add_option("--report", report_path, "also write the report to this file");

    // recover
    auto* rec = app.add_subcommand("recover", "recover g and the transpose flag, or diagnose");
    PairArgs rec_args;
    rec_args.attach(rec);
    std::string rec_out;
    rec->add_option("--out", rec_out, "write the transformation sidecar here on success");
    rec->add_option("--report", report_path, "also write the report to this file");

    // classify
    auto* cls = app.add_subcommand("classify", "per-triangle case report");
    PairArgs cls_args;
    cls_args.attach(cls);
    cls->add_option("--report", report_path, "also write the report to this file");

    // gen
    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    std::size_t gen_n = 4, gen_half = 2;
    std::string gen_field = "rational", gen_variant = "zero", gen_out;
    std::uint64_t gen_seed = 0;
    bool gen_transpose = false, gen_cross = false, gen_symmetric = false, gen_char2 = false;
    auto common = [&](CLI::App* sub, bool with_n) {
        if (with_n) sub->add_option("--n", gen_n, "ground set size")->check(CLI::Range(1, 1 << 20));
        sub->add_option("--field", gen_field, "rational or gf:<p>");
        sub->add_option("--seed", gen_seed, "RNG seed")->required();
        sub->add_option("--out", gen_out, "output directory")->required();
        sub->add_flag("--allow-char2", gen_char2, "permit GF(2)");
    };
    auto* gen_random = gen->add_subcommand("random", "one random kernel");
    common(gen_random, true);
    gen_random->add_flag("--cross-minor", gen_cross, "resample until every cross minor is nonzero");
    gen_random->add_flag("--symmetric", gen_symmetric, "symmetric kernel");
    auto* gen_pair = gen->add_subcommand("pair", "random kernel and a conjugated copy");
    common(gen_pair, true);
    gen_pair->add_flag("--cross-minor", gen_cross, "resample until every cross minor is nonzero");
    gen_pair->add_flag("--symmetric", gen_symmetric, "symmetric kernel");
    gen_pair->add_flag("--transpose", gen_transpose, "transpose before conjugating");
    auto* gen_cex = gen->add_subcommand("counterexample", "partial-transposition block pair");
    common(gen_cex, false);
    gen_cex->add_option("--half", gen_half, "block size")->check(CLI::Range(1, 1 << 10));
    gen_cex->add_option("--variant", gen_variant, "zero or ones")->check(CLI::IsMember({"zero", "ones"}));

    // selftest
    auto* self = app.add_subcommand("selftest", "fixed-seed property suite");

    std::vector<std::string> argv_store{"detequiv"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*check) {
            Reporter rep("check", out);
            const auto pair = check_args.load_pair();
            rep.input(pair.k);
            rep.input(pair.q);
            const auto n = pair.k.kernel.size();
            const std::size_t order = max_order == 0 ? n : max_order;
            if (order > n) throw Error(ErrorCode::IndexOutOfRange, "--max-order exceeds n = " + std::to_string(n));
            if (n > kLargeN && order > 4 && !allow_large) {
                err << "warning: n = " << n << " makes minor enumeration exponential; pass --allow-large or lower --max-order\n";
                return kExitUsage;
            }
            const auto r = check_determinantal_equivalence(pair.k.kernel, pair.q.kernel, order);
            rep.outcome() = minor_report_json(pair.k.kernel, r);
            rep.emit(report_path);
            return r.equivalent ? kExitOk : kExitNegative;
        }
        if (*rec) {
            Reporter rep("recover", out);
            const auto pair = rec_args.load_pair();
            rep.input(pair.k);
            rep.input(pair.q);
            const auto& k = pair.k.kernel;
            const auto r = recover(k, pair.q.kernel);
            Json& o = rep.outcome();
            o["status"] = r.ok() ? "transformation" : "diagnosis";
            o["global_case"] = r.cases ? Json(to_string(r.cases->global)) : Json(nullptr);
            if (r.ok()) {
                o["transformation"] = transformation_json(k, r.transformation());
                if (!rec_out.empty()) write_file_atomic(rec_out, format_transformation(r.transformation(), k.field()));
            } else {
                o["diagnosis"] = diagnosis_json(k, r.diagnosis());
            }
            rep.emit(report_path);
            return r.ok() ? kExitOk : kExitNegative;
        }
        if (*cls) {
            Reporter rep("classify", out);
            const auto pair = cls_args.load_pair();
            rep.input(pair.k);
            rep.input(pair.q);
            const auto r = classify_all(pair.k.kernel, pair.q.kernel);
            rep.outcome() = case_report_json(pair.k.kernel, r);
            rep.emit(report_path);
            const bool affirmative = r.global != GlobalCase::Mixed && r.global != GlobalCase::Inequivalent;
            return affirmative ? kExitOk : kExitNegative;
        }
        if (*gen) {
            const auto spec = FieldSpec::parse(gen_field, gen_char2);
            if (spec.is_prime() && spec.modulus() == 2) err << "warning: characteristic 2 requested\n";
            const fs::path dir = gen_out;
            Reporter rep("gen", out);
            rep.rng();
            Json& o = rep.outcome();
            o["seed"] = gen_seed;
            o["field"] = spec.to_string();
            Json files = Json::array();
            auto emit_kernel = [&](const Kernel& k, const std::string& name) {
                const auto text = format_kernel(k);
                write_file_atomic(dir / name, text);
                files.push_back(Json{{"path", (dir / name).generic_string()}, {"sha256", sha256_hex(text)}});
            };
            if (*gen_random || *gen_pair) {
                GenConfig cfg;
                cfg.n = gen_n;
                cfg.spec = spec;
                cfg.seed = gen_seed;
                cfg.require_cross_minor = gen_cross;
                cfg.symmetric = gen_symmetric;
                const auto k = gen_random_kernel(cfg);
                o["kind"] = *gen_random ? "random" : "pair";
                o["n"] = gen_n;
                emit_kernel(k, "K.kernel");
                if (*gen_pair) {
                    // The conjugation draws from a second stream so K matches `gen random` for the same seed.
                    const auto [q, t] = gen_conjugated_pair(k, gen_seed ^ 0x9e3779b97f4a7c15ULL, gen_transpose);
                    o["transpose"] = gen_transpose;
                    emit_kernel(q, "Q.kernel");
                    const auto sidecar = format_transformation(t, spec);
                    write_file_atomic(dir / "transform.txt", sidecar);
                    files.push_back(Json{{"path", (dir / "transform.txt").generic_string()}, {"sha256", sha256_hex(sidecar)}});
                }
            } else {
                const auto variant = parse_block_variant(gen_variant);
                const auto [k, q] = gen_block_counterexample(gen_half, variant, gen_seed, spec);
                o["kind"] = "counterexample";
                o["half"] = gen_half;
                o["variant"] = to_string(variant);
                emit_kernel(k, "K.kernel");
                emit_kernel(q, "Q.kernel");
            }
            o["files"] = files;
            rep.emit("");
            return kExitOk;
        }
        if (*self) {
            Reporter rep("selftest", out);
            const auto r = run_selftest(selftest_options);
            Json& o = rep.outcome();
            o["passed"] = r.passed();
            o["first_failure"] = r.passed() ? Json(nullptr) : Json(r.first_failure());
            Json props = Json::array();
            for (const auto& p : r.properties) {
                props.push_back(Json{{"name", p.name}, {"passed", p.passed}, {"cases", p.cases}, {"detail", p.detail}});
            }
            o["properties"] = props;
            rep.emit("");
            if (!r.passed()) err << "selftest failed: " << r.first_failure() << "\n";
            return r.passed() ? kExitOk : kExitNegative;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace detequiv
