#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <catsim/cli.hpp>
#include <catsim/csv.hpp>
#include <iostream>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CaptureStdout {
    CaptureStdout() { old_ = std::cout.rdbuf(buf_.rdbuf()); }
    ~CaptureStdout() { std::cout.rdbuf(old_); }
    std::string text() const { return buf_.str(); }

private:
    std::stringstream buf_;
    std::streambuf* old_;
};

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"catsim"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return catsim::cli_main(static_cast<int>(argv.size()), argv.data());
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("catsim_test_" + name);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// drop the timestamp header line for byte comparison
std::string without_timestamp(const std::string& text) {
    std::stringstream in(text), out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("# generated:", 0) != 0) out << line << "\n";
    return out.str();
}

}  // namespace

TEST_CASE("mode=period prints tau") {
    CaptureStdout cap;
    CHECK(run_cli({"period", "--n_cat_exp", "4"}) == 0);
    CHECK(cap.text() == "tau=12\n");
}

TEST_CASE("mode=classical-acf writes the expected CSV values") {
    const fs::path out = temp_file("ccl.csv");
    CHECK(run_cli({"classical-acf", "--t_max", "2", "--sample_dt", "0.25",
                   "--out_path", out.string()}) == 0);
    const catsim::csv::File f = catsim::csv::read(out.string());
    REQUIRE(f.col_names.size() == 2);
    CHECK(f.col_names[1] == "C_cl");
    REQUIRE(f.cols[0].size() == 9);
    CHECK(f.cols[1][0] == doctest::Approx(0.5));
    CHECK(std::abs(f.cols[1][4]) < 1e-12);  // C(1)
    CHECK(std::abs(f.cols[1][8]) < 1e-12);  // C(2)
    CHECK(f.cols[1][1] == doctest::Approx(1.0 / M_PI));
    CHECK(f.meta.at("mode") == "classical-acf");
}

TEST_CASE("mode=acf reproduces anti-periodicity through the full pipeline") {
    const fs::path out = temp_file("acf32.csv");
    CHECK(run_cli({"acf", "--n_cat_exp", "5", "--t_max", "64", "--n_substeps",
                   "4", "--out_path", out.string()}) == 0);
    const catsim::csv::File f = catsim::csv::read(out.string());
    const auto& t = f.cols[0];
    const auto& c = f.cols[1];
    REQUIRE(t.size() == 65);
    for (int i = 0; i <= 32; ++i)
        CHECK(c[static_cast<std::size_t>(i + 32)] ==
              doctest::Approx(-c[static_cast<std::size_t>(i)]).epsilon(1e-8));
}

TEST_CASE("identical configs give byte-identical CSVs modulo timestamp") {
    const fs::path out1 = temp_file("det1.csv");
    const fs::path out2 = temp_file("det2.csv");
    const std::vector<std::string> base{
        "acf",          "--n_cat_exp", "4",  "--nu_exp",   "1",
        "--n_small",    "2",           "--eta", "1",       "--kappa",
        "0.5",          "--t_max",     "6",  "--n_substeps", "8"};
    auto args1 = base;
    args1.insert(args1.end(), {"--out_path", out1.string()});
    auto args2 = base;
    args2.insert(args2.end(), {"--out_path", out2.string()});
    CHECK(run_cli(args1) == 0);
    CHECK(run_cli(args2) == 0);
    const std::string a = read_file(out1), b = read_file(out2);
    CHECK(without_timestamp(a) != "");
    // out_path differs in the embedded config; normalize it away
    std::string na = without_timestamp(a), nb = without_timestamp(b);
    const std::string ka = "# out_path=" + out1.string();
    const std::string kb = "# out_path=" + out2.string();
    na.replace(na.find(ka), ka.size(), "# out_path=X");
    nb.replace(nb.find(kb), kb.size(), "# out_path=X");
    CHECK(na == nb);
}

TEST_CASE("CSV embeds the full config as comments") {
    const fs::path out = temp_file("prov.csv");
    CHECK(run_cli({"otoc", "--n_cat_exp", "3", "--t_max", "2", "--n_substeps",
                   "2", "--out_path", out.string()}) == 0);
    const catsim::csv::File f = catsim::csv::read(out.string());
    for (const char* key :
         {"mode", "n_cat_exp", "nu_exp", "n_small", "eta", "kappa", "t_max",
          "sample_dt", "n_substeps", "double_acf", "memory_budget_bytes"})
        CHECK(f.meta.count(key) == 1);
    REQUIRE(f.col_names.size() == 5);
    CHECK(f.col_names[1] == "O");
    CHECK(f.col_names[4] == "delta_O");
}

TEST_CASE("config file with command line override") {
    const fs::path cfgp = temp_file("job.cfg");
    {
        std::ofstream cfg(cfgp);
        cfg << "mode=period\n" << "n_cat_exp=4\n";
    }
    {
        CaptureStdout cap;
        CHECK(run_cli({"--config", cfgp.string()}) == 0);
        CHECK(cap.text() == "tau=12\n");
    }
    {
        CaptureStdout cap;
        CHECK(run_cli({"--config", cfgp.string(), "--n_cat_exp", "5"}) == 0);
        CHECK(cap.text() == "tau=24\n");
    }
}

TEST_CASE("error paths and exit codes") {
    // invalid mode -> config error (2), diagnostic names the key
    CHECK(run_cli({"frobnicate"}) == 2);
    // invalid geometry key
    CHECK(run_cli({"period", "--n_cat_exp", "2", "--nu_exp", "3"}) == 2);
    // missing out_path
    CHECK(run_cli({"acf", "--n_cat_exp", "3", "--t_max", "1"}) == 2);
    // memory budget exceeded -> 3, message carries the required size
    CHECK(run_cli({"acf", "--n_cat_exp", "8", "--nu_exp", "1", "--n_small",
                   "3", "--t_max", "1", "--memory_budget_bytes", "1000",
                   "--out_path", temp_file("never.csv").string()}) == 3);
    // unreadable input CSV -> 4
    CHECK(run_cli({"fit", "--fit_kind", "power-decay", "--in_path",
                   "/nonexistent/file.csv", "--fit_window", "1", "2"}) == 4);
    // bad sample grid
    CHECK(run_cli({"acf", "--n_cat_exp", "3", "--sample_dt", "0.3", "--t_max",
                   "1", "--out_path", temp_file("never2.csv").string()}) == 2);
}

TEST_CASE("fit mode round trip through CSV") {
    // synthesize a power-decay series, write it, fit it back
    const fs::path data = temp_file("sig.csv");
    {
        std::vector<double> t, v;
        for (double x = 0.25; x <= 20.0 + 1e-9; x += 0.25) {
            t.push_back(x);
            v.push_back(2.0 * (1.0 - 0.5 * std::pow(x, 1.0 - 1.7)));
        }
        catsim::csv::write(data.string(), {{"mode", "synthetic"}}, t,
                           {{"sigma_abs_C", v}});
    }
    CaptureStdout cap;
    CHECK(run_cli({"fit", "--fit_kind", "power-decay", "--in_path",
                   data.string(), "--fit_window", "2", "20"}) == 0);
    const std::string text = cap.text();
    CHECK(text.find("fit=power-decay") != std::string::npos);
    const std::size_t pos = text.find("d=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::abs(std::stod(text.substr(pos + 2)) - 1.7) < 1e-4);
}
