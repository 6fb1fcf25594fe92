#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qw/experiments.hpp"
#include "qw/io.hpp"
#include "qw/mat2.hpp"

using namespace qw;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("qwlimits_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("format_double17 round-trips the exact bits") {
    for (double v : {1.0 / 3.0, 6.103515625e-05, -2.4543692606170259e+17, 0.1, 3.5e-300}) {
        const std::string s = format_double17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("emit_csv: header-only table and field-dump layout") {
    const auto dir = fresh_dir("csv");
    Table empty;
    empty.header = {"site", "x", "re_L", "im_L", "re_R", "im_R"};
    emit_csv((dir / "empty.csv").string(), empty);
    CHECK(slurp(dir / "empty.csv") == "site,x,re_L,im_L,re_R,im_R\n");

    Table t;
    t.header = {"dt", "dx", "distance"};
    t.rows = {{0.5, 1.0, 0.25}};
    emit_csv((dir / "r.csv").string(), t);
    CHECK(slurp(dir / "r.csv") == "dt,dx,distance\n0.5,1,0.25\n");
}

TEST_CASE("emit_plotdata writes two columns and rejects empty series") {
    const auto dir = fresh_dir("plot");
    emit_plotdata((dir / "s.dat").string(), {{1.0, 2.0}, {3.0, 4.0}});
    CHECK(slurp(dir / "s.dat") == "1 2\n3 4\n");
    CHECK_THROWS_AS(emit_plotdata((dir / "e.dat").string(), {}), Error);
}

TEST_CASE("parse_config_file: comments, blanks, and malformed lines") {
    const auto dir = fresh_dir("cfg");
    write_text_file((dir / "ok.cfg").string(),
                    "# walk setup\nn_sites = 64\n\nsteps=10   # trailing comment\n");
    const auto kv = parse_config_file((dir / "ok.cfg").string());
    CHECK(kv.at("n_sites") == "64");
    CHECK(kv.at("steps") == "10");

    write_text_file((dir / "bad.cfg").string(), "just words\n");
    CHECK_THROWS_AS(parse_config_file((dir / "bad.cfg").string()), Error);
}

TEST_CASE("run: walk simulation passes its norm contract and writes outputs") {
    const auto dir = fresh_dir("simulate");
    ExperimentConfig cfg;
    cfg.experiment = "simulate";
    cfg.params = {{"n_sites", "64"}, {"steps", "50"}};
    cfg.output_dir = dir.string();
    const RunSummary s = run(cfg);
    CHECK(s.pass);
    CHECK(s.metrics.at("norm_drift") <= 1e-10);
    CHECK(fs::exists(dir / "summary.json"));
    CHECK(fs::exists(dir / "field.csv"));
    CHECK(fs::exists(dir / "distribution.csv"));
    CHECK(fs::exists(dir / "distribution.dat"));
    CHECK(slurp(dir / "summary.json").find("\"pass\": true") != std::string::npos);
}

TEST_CASE("run: unknown experiment and unknown parameter raise config errors") {
    ExperimentConfig cfg;
    cfg.experiment = "no-such-thing";
    CHECK_THROWS_AS(run(cfg), Error);

    ExperimentConfig cfg2;
    cfg2.experiment = "simulate";
    cfg2.params = {{"n_stes", "64"}};  // typo
    cfg2.output_dir = fresh_dir("typo").string();
    try {
        run(cfg2);
        FAIL("expected invalid_config");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_config);
    }
}

TEST_CASE("run: tolerance failure is a pass=false, not an error") {
    const auto dir = fresh_dir("tolfail");
    ExperimentConfig cfg;
    cfg.experiment = "simulate";
    cfg.params = {{"n_sites", "32"}, {"steps", "200"}, {"tol_norm", "1e-30"}};
    cfg.output_dir = dir.string();
    const RunSummary s = run(cfg);
    CHECK_FALSE(s.pass);
}

TEST_CASE("run: identical config and seed give byte-identical CSV outputs") {
    const auto d1 = fresh_dir("det1");
    const auto d2 = fresh_dir("det2");
    for (const auto& d : {d1, d2}) {
        ExperimentConfig cfg;
        cfg.experiment = "bessel-check";
        cfg.params = {{"n_sites", "32"}, {"trials", "2"}, {"t_list", "0.5,2"}};
        cfg.seed = 424242;
        cfg.output_dir = d.string();
        const RunSummary s = run(cfg);
        CHECK(s.pass);
    }
    CHECK(slurp(d1 / "deviations.csv") == slurp(d2 / "deviations.csv"));

    // a different seed changes the draws
    ExperimentConfig cfg;
    cfg.experiment = "bessel-check";
    cfg.params = {{"n_sites", "32"}, {"trials", "2"}, {"t_list", "0.5,2"}};
    cfg.seed = 7;
    const auto d3 = fresh_dir("det3");
    cfg.output_dir = d3.string();
    run(cfg);
    CHECK(slurp(d1 / "deviations.csv") != slurp(d3 / "deviations.csv"));
}

TEST_CASE("run: --jobs parallelism does not change the results") {
    const auto d1 = fresh_dir("jobs1");
    const auto d2 = fresh_dir("jobs4");
    for (int jobs : {1, 4}) {
        ExperimentConfig cfg;
        cfg.experiment = "decompose-check";
        cfg.params = {{"n_sites", "32"}, {"trials", "3"}, {"t_list", "1,2"}};
        cfg.seed = 99;
        cfg.jobs = jobs;
        cfg.output_dir = (jobs == 1 ? d1 : d2).string();
        const RunSummary s = run(cfg);
        CHECK(s.pass);
    }
    CHECK(slurp(d1 / "decompose.csv") == slurp(d2 / "decompose.csv"));
}

TEST_CASE("run: every experiment passes with its default parameters") {
    // small overrides where defaults would be slow in a unit run
    const std::map<std::string, std::map<std::string, std::string>> shrink = {
        {"bessel-check", {{"n_sites", "32"}, {"trials", "2"}, {"t_list", "0.5,2"}}},
        {"decompose-check", {{"n_sites", "32"}, {"trials", "2"}, {"t_list", "0.5,2"}}},
        {"dirac-limit", {{"axes", "2"}, {"k_points", "4"}}},
        {"spectrum", {{"triples", "3"}, {"k_points", "16"}}},
    };
    for (const auto& name : experiment_names()) {
        ExperimentConfig cfg;
        cfg.experiment = name;
        cfg.seed = 31415;
        if (auto it = shrink.find(name); it != shrink.end()) cfg.params = it->second;
        cfg.output_dir = fresh_dir("all_" + name).string();
        const RunSummary s = run(cfg);
        INFO("experiment ", name);
        CHECK(s.pass);
        CHECK(fs::exists(fs::path(cfg.output_dir) / "summary.json"));
    }
    // convergence reports serialize to JSON alongside the CSV
    const auto dir = fs::path(fresh_dir("all_generator-limit2"));
    ExperimentConfig cfg;
    cfg.experiment = "generator-limit";
    cfg.output_dir = dir.string();
    run(cfg);
    const std::string rj = slurp(dir / "report.json");
    CHECK(rj.find("\"fitted_slope\"") != std::string::npos);
    CHECK(rj.find("\"verdict\": \"converged\"") != std::string::npos);
    CHECK(rj.find("\"probe_points\"") != std::string::npos);
}

TEST_CASE("describe_experiment: every registered experiment has a contract description") {
    for (const auto& name : experiment_names()) {
        const std::string text = describe_experiment(name);
        CHECK(text.size() > 40);
    }
    CHECK_THROWS_AS(describe_experiment("bogus"), Error);
}
