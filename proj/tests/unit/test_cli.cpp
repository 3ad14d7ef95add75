#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "sct/io.hpp"

namespace fs = std::filesystem;
using sct::cli::run_cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    const int code = run_cli(args, o, e);
    return {code, o.str(), e.str()};
}

struct Dir {
    fs::path p = fs::temp_directory_path() / ("sct_cli_" + std::to_string(::getpid()));
    Dir() { fs::create_directories(p); }
    ~Dir() { fs::remove_all(p); }
    std::string operator/(const char* n) const { return (p / n).string(); }
};

}  // namespace

TEST_CASE("cli usage errors exit with 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"transform"}).code == 1);
    const Run h = run({"--help"});
    CHECK(h.code == 0);
    CHECK(h.out.find("transform") != std::string::npos);
}

TEST_CASE("cli pipeline: synth, transform, sct, ridge, reconstruct, info") {
    Dir d;
    // A small grid keeps the run short.
    const std::vector<std::string> fast{"--set", "alpha_sq=0.05", "--set", "q=0.99", "--set", "alpha_w=2"};
    auto with = [&](std::vector<std::string> a) {
        a.insert(a.end(), fast.begin(), fast.end());
        return a;
    };
    REQUIRE(run({"synth", "crossing", "-o", d / "x.csv", "--truth", d / "truth.csv"}).code == 0);
    REQUIRE(fs::exists(d / "truth.csv"));

    Run r = run(with({"transform", d / "x.csv", "--t0", "1", "-o", d / "t.tfc", "--dtype", "c64", "--slice", "3",
                      "--slice-csv", d / "slice.csv", "--tf-csv", d / "tf.csv"}));
    REQUIRE(r.code == 0);
    const auto h = sct::read_tensor_header(d / "t.tfc");
    CHECK(h.dtype == sct::TensorDtype::complex64);
    CHECK(h.n_chirp == 20);
    CHECK(h.n_time == 401);
    CHECK(h.t0_s == 1.0);
    CHECK(fs::file_size(d / "slice.csv") > 0);

    r = run(with({"sct", d / "x.csv", "--t0", "1", "-o", d / "s.tfc", "--summary", d / "sum.csv"}));
    REQUIRE(r.code == 0);
    const std::string summary = sct::read_file(d / "sum.csv");
    CHECK(summary.rfind("t_s,contributed_re", 0) == 0);

    r = run(with({"ridge", d / "s.tfc", "-o", d / "r.csv", "--truth", "crossing", "--t0", "1", "--report",
                  d / "rep.csv", "--modes", d / "m.csv"}));
    REQUIRE(r.code == 0);
    const sct::RidgeSet ridges = sct::cli::parse_ridges_csv(sct::read_file(d / "r.csv"));
    CHECK(ridges.K == 2);
    CHECK(ridges.times_s.size() == 401);
    CHECK(sct::read_file(d / "rep.csv").rfind("component,rel_error_I1,rel_error_I2,reference_I1,reference_I2", 0) == 0);

    r = run(with({"reconstruct", d / "x.csv", "--t0", "1", "--ridges", d / "r.csv", "-o", d / "m2.csv"}));
    REQUIRE(r.code == 0);
    CHECK(sct::read_file(d / "m.csv") == sct::read_file(d / "m2.csv"));

    r = run({"info", d / "s.tfc"});
    CHECK(r.code == 0);
    CHECK(r.out.find("20 x 11 x 401") != std::string::npos);
}

TEST_CASE("cli failures leave no outputs behind") {
    Dir d;
    CHECK(run({"transform", d / "missing.csv", "-o", d / "t.tfc"}).code == 2);
    CHECK_FALSE(fs::exists(d / "t.tfc"));
    sct::write_file_atomic(d / "junk.tfc", "not a tensor");
    CHECK(run({"info", d / "junk.tfc"}).code == 2);
    REQUIRE(run({"synth", "crossing", "-o", d / "x.csv"}).code == 0);
    // The slice time is checked after the transform; the tensor must not be written.
    const Run r = run({"transform", d / "x.csv", "-o", d / "t.tfc", "--set", "alpha_sq=0.1", "--slice", "99",
                       "--slice-csv", d / "s.csv"});
    CHECK(r.code == 1);
    CHECK_FALSE(fs::exists(d / "t.tfc"));
    CHECK(run({"transform", d / "x.csv", "-o", d / "t.tfc", "--set", "alpha_sq=2"}).code == 1);
    CHECK(run({"transform", d / "x.csv", "-o", d / "t.tfc", "--set", "nonsense"}).code == 1);
    CHECK(run({"synth", "unknown", "-o", d / "y.csv"}).code == 1);
}

TEST_CASE("ridge CSV round trip") {
    sct::RidgeSet r;
    r.K = 2;
    r.times_s = {0.0, 0.5};
    r.curves = {{{1.0, 2.0, true, true}, {1.5, 2.0, true, true}}, {{9.0, -1.0, true, true}, {0.0, 0.0, false, false}}};
    const auto back = sct::cli::parse_ridges_csv(sct::cli::ridges_csv(r));
    CHECK(back.K == 2);
    CHECK(back.curves[1][0].omega_hz == 9.0);
    CHECK_FALSE(back.curves[1][1].valid);
    CHECK_THROWS(sct::cli::parse_ridges_csv("t_s,a\n1,2\n"));
    CHECK_THROWS(sct::cli::parse_ridges_csv("t_s,a,b,c\n1,2\n"));
}
