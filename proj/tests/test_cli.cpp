#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "antikz/cli.hpp"
#include "antikz/errors.hpp"

using namespace antikz;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "antikz_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig small_sweep_config(const std::string& out) {
    const std::string text = "command = sweep-tau\n"
                             "model.n = 16\n"
                             "model.tau = 1\n"
                             "model.w2 = 0\n"
                             "sweep.tau = 4 8 16\n"
                             "sweep.w2 = 0.001 0.01\n"
                             "seed = 7\n"
                             "output = " + out + "\n";
    return parse_config_text(text, "inline");
}

} // namespace

TEST_CASE("config parsing") {
    SUBCASE("full round trip") {
        const auto cfg = parse_config_text("command = single\n"
                                           "model.n = 128\n"
                                           "model.lambda = 2\n"
                                           "model.tau = 12.5\n"
                                           "model.w2 = 1e-3\n"
                                           "model.protocol = field-ramp\n"
                                           "model.g_start = 2\n"
                                           "model.g_end = 0\n"
                                           "integrator.method = adaptive\n"
                                           "integrator.tolerance = 1e-9\n"
                                           "seed = 99\n"
                                           "format = json\n"
                                           "threads = 2\n"
                                           "# a comment\n",
                                           "inline");
        CHECK(cfg.command == "single");
        CHECK(cfg.params.n_sites == 128);
        CHECK(cfg.params.lambda == 2.0);
        CHECK(cfg.params.tau == 12.5);
        CHECK(cfg.params.protocol.kind == ProtocolKind::FieldRamp);
        CHECK(cfg.integrator.method == StepMethod::AdaptiveCashKarp);
        CHECK(cfg.seed == 99);
        CHECK(cfg.trajectories.seed == 99);
        CHECK(cfg.format == OutputFormat::Json);
        CHECK(cfg.threads == 2);
        CHECK_NOTHROW(cfg.validate());
    }
    SUBCASE("unknown key is rejected with its line") {
        try {
            parse_config_text("command = single\nmodel.n = 16\nmodel.tua = 1\n", "cfg");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("model.tua") != std::string::npos);
            CHECK(std::string(e.what()).find("cfg:3") != std::string::npos);
        }
    }
    SUBCASE("malformed value names the field and constraint") {
        auto cfg = parse_config_text("command = single\nmodel.n = 16\nmodel.tau = -1\n",
                                     "cfg");
        try {
            cfg.validate();
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("model.tau") != std::string::npos);
            CHECK(msg.find("> 0") != std::string::npos);
        }
    }
    SUBCASE("bad command") {
        auto cfg = parse_config_text("command = explode\nmodel.n = 16\nmodel.tau = 1\n",
                                     "cfg");
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("tau_log grid expansion") {
        const auto cfg = parse_config_text("command = sweep-tau\nmodel.n = 16\n"
                                           "model.tau = 1\nsweep.tau_log = 4 64 5\n",
                                           "cfg");
        REQUIRE(cfg.sweep_tau.size() == 5);
        CHECK(cfg.sweep_tau.front() == doctest::Approx(4.0));
        CHECK(cfg.sweep_tau.back() == doctest::Approx(64.0));
    }
}

TEST_CASE("single command writes a schema-conformant row") {
    const auto out = (test_dir() / "single.csv").string();
    auto cfg = parse_config_text("command = single\nmodel.n = 16\nmodel.tau = 5\n"
                                 "model.w2 = 0.001\noutput = " + out + "\n",
                                 "inline");
    REQUIRE(run(cfg) == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("protocol,N,lambda,tau,w2,method,n_w,q,de,seed\n", 0) == 0);
    CHECK(text.find("annealing,16,1,5,0.001") != std::string::npos);
    CHECK(fs::exists(out + ".meta.json"));
    const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
    CHECK(meta["version"] == kVersion);
    CHECK(meta["config"]["model"]["n"] == 16);
    CHECK(meta.contains("wall_time_s"));
}

TEST_CASE("identical config and seed give byte-identical tables") {
    const auto out1 = (test_dir() / "det1.csv").string();
    const auto out2 = (test_dir() / "det2.csv").string();
    auto cfg1 = small_sweep_config(out1);
    auto cfg2 = small_sweep_config(out2);
    REQUIRE(run(cfg1) == 0);
    REQUIRE(run(cfg2) == 0);
    CHECK(slurp(out1) == slurp(out2));
}

TEST_CASE("sweep-tau emits per-W2 plot files with the delta column") {
    const auto out = (test_dir() / "sweep.csv").string();
    auto cfg = small_sweep_config(out);
    REQUIRE(run(cfg) == 0);

    // Baseline + 2 noise values, 3 taus each.
    std::istringstream rows(slurp(out));
    std::string line;
    int count = 0;
    while (std::getline(rows, line))
        if (!line.empty() && line[0] != 'p' && line[0] != '#') ++count;
    CHECK(count == 9);

    for (const char* tag : {"0", "0.001", "0.01"}) {
        const std::string plot = out + ".plot.w2_" + tag + ".dat";
        REQUIRE(fs::exists(plot));
        const std::string text = slurp(plot);
        CHECK(text.find("delta_n_w") != std::string::npos);
    }
    // The noisy delta column is positive at these taus.
    const std::string noisy = slurp(out + ".plot.w2_0.01.dat");
    std::istringstream is(noisy);
    std::getline(is, line); // header
    double tau, w2, nw, q, de, dnw;
    REQUIRE((is >> tau >> w2 >> nw >> q >> de >> dnw));
    CHECK(dnw > 0.0);

    const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
    CHECK(meta["results"].contains("kzm_fit"));
    CHECK(meta["results"].contains("heating"));
}

TEST_CASE("json format mirrors the csv fields") {
    const auto out = (test_dir() / "single.json").string();
    auto cfg = parse_config_text("command = single\nmodel.n = 16\nmodel.tau = 5\n"
                                 "format = json\noutput = " + out + "\n",
                                 "inline");
    REQUIRE(run(cfg) == 0);
    const auto rows = nlohmann::json::parse(slurp(out));
    REQUIRE(rows.is_array());
    REQUIRE(rows.size() == 1);
    for (const char* key : {"protocol", "N", "lambda", "tau", "w2", "method",
                            "n_w", "q", "de", "seed"})
        CHECK(rows[0].contains(key));
}

TEST_CASE("verify-novikov writes a pass/fail report") {
    const auto out = (test_dir() / "novikov.json").string();
    auto cfg = parse_config_text("command = verify-novikov\nmodel.n = 16\n"
                                 "model.tau = 2\nmodel.w2 = 0.01\n"
                                 "trajectories.n = 400\ntrajectories.dt = 0.002\n"
                                 "seed = 5\noutput = " + out + "\n",
                                 "inline");
    REQUIRE(run(cfg) == 0);
    const auto report = nlohmann::json::parse(slurp(out));
    CHECK(report["n_traj"] == 400);
    CHECK(report["entries"].size() == 4);
    CHECK(report["max_sigma"].get<double>() < 5.0);
    CHECK(report["pass"].is_boolean());
}

TEST_CASE("verify-oracle compares both routes") {
    const auto out = (test_dir() / "oracle.csv").string();
    auto cfg = parse_config_text("command = verify-oracle\nmodel.n = 4\n"
                                 "model.tau = 1\noracle.points = 2:0 2:0.01\n"
                                 "integrator.dt = 0.001\noutput = " + out + "\n",
                                 "inline");
    REQUIRE(run(cfg) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("master-equation") != std::string::npos);
    CHECK(text.find("oracle") != std::string::npos);
    const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
    for (const auto& d : meta["results"]["oracle_diffs"])
        CHECK(d["dn_w"].get<double>() < 1e-5);
}

TEST_CASE("tau-opt fits the scaling and emits fig-3 style data") {
    const auto out = (test_dir() / "tauopt.csv").string();
    auto cfg = parse_config_text("command = tau-opt\nmodel.n = 32\nmodel.tau = 1\n"
                                 "sweep.tau_log = 1.5 150 10\n"
                                 "sweep.w2 = 0.0003 0.001 0.003 0.01 0.03\n"
                                 "output = " + out + "\n",
                                 "inline");
    REQUIRE(run(cfg) == 0);
    const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
    const double b = meta["results"]["tau_opt_fit"]["b"].get<double>();
    CHECK(b < 0.0);
    CHECK(fs::exists(out + ".plot.tauopt.dat"));
}

TEST_CASE("asymptotics command") {
    const auto out = (test_dir() / "asym.dat").string();
    auto cfg = parse_config_text("command = asymptotics\nmodel.n = 1024\nmodel.tau = 1\n"
                                 "sweep.tau = 100 400 1600\noutput = " + out + "\n",
                                 "inline");
    REQUIRE(run(cfg) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("n_k_closed") != std::string::npos);
}

TEST_CASE("emit_plot_data rejects empty input") {
    CHECK_THROWS_AS(emit_plot_data({}, (test_dir() / "x").string()),
                    std::invalid_argument);
}

TEST_CASE("binary end-to-end exit codes") {
#ifdef TEST_ANTIKZ_BIN
    const std::string bin = TEST_ANTIKZ_BIN;
    const auto dir = test_dir();
    {
        std::ofstream good(dir / "good.cfg");
        good << "command = single\nmodel.n = 16\nmodel.tau = 2\noutput = "
             << (dir / "e2e.csv").string() << "\n";
    }
    {
        std::ofstream bad(dir / "bad.cfg");
        bad << "command = single\nmodel.n = 16\nmodel.tau = -2\n";
    }
    auto exit_code = [](int status) { return WEXITSTATUS(status); };
    CHECK(exit_code(std::system((bin + " --config " + (dir / "good.cfg").string() +
                                 " >/dev/null 2>&1").c_str())) == 0);
    CHECK(exit_code(std::system((bin + " --config " + (dir / "bad.cfg").string() +
                                 " >/dev/null 2>&1").c_str())) == 1);
    CHECK(exit_code(std::system((bin + " --config " + (dir / "missing.cfg").string() +
                                 " >/dev/null 2>&1").c_str())) == 3);
    CHECK(fs::exists(dir / "e2e.csv"));
#endif
}
