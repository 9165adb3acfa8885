#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "agum/halfhex.hpp"
#include "cli.hpp"
#include "doctest.h"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "agum");
    std::ostringstream out, err;
    const int code = agum::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);)
        if (!l.empty() && l[0] != '#') v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("kernel eval prints 2/sqrt(pi)") {
    const auto r = run({"kernel", "eval", "--s", "2", "--x", "0", "--t", "2", "--y", "0"});
    CHECK(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "s,x,t,y,gauge,K");
    CHECK(lines[1] == "2,0,2,0,plain,1.1283791671");
    CHECK(r.out.find("# agum ") == 0);
}

TEST_CASE("tile enumerate counts 3 for p = N = 2") {
    const auto r = run({"tile", "enumerate", "--p", "2", "--N", "2"});
    CHECK(r.code == 0);
    CHECK(data_lines(r.out).back() == "2,2,3,3");
}

TEST_CASE("usage and domain errors exit with 2") {
    CHECK(run({"kernel", "eval", "--s", "2", "--x", "0", "--t", "2", "--y", "0", "--bogus"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"tile", "enumerate", "--p", "5", "--N", "2"}).code == 2);
    CHECK(run({"limit", "bead", "--tx", "0", "--x", "0", "--ty", "0.5", "--y", "0"}).code == 2);
    CHECK(run({"kernel", "corr", "--points", "2:abc"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("same seed, same bytes; thread count does not matter") {
    const std::vector<std::string> cmd{"sample", "bordered", "--n", "5", "--reps", "40", "--seed", "11"};
    setenv("AGUM_THREADS", "1", 1);
    const auto a = run(cmd);
    setenv("AGUM_THREADS", "3", 1);
    const auto b = run(cmd);
    unsetenv("AGUM_THREADS");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("# seed: 11") != std::string::npos);
    CHECK(run({"sample", "matrix", "--n", "3", "--seed", "12"}).out != run({"sample", "matrix", "--n", "3", "--seed", "13"}).out);
}

TEST_CASE("json mirrors csv") {
    const std::vector<std::string> cmd{"converge", "soft", "--n", "20,40", "--point", "0:0,1:0.5"};
    const auto csv = run(cmd);
    auto jcmd = cmd;
    jcmd.insert(jcmd.end(), {"--format", "json"});
    const auto js = run(jcmd);
    REQUIRE(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    const auto lines = data_lines(csv.out);
    CHECK(j["columns"].size() == 5);
    REQUIRE(j["rows"].size() == lines.size() - 1);
    for (std::size_t i = 0; i < j["rows"].size(); ++i) {
        std::istringstream is(lines[i + 1]);
        for (const auto& v : j["rows"][i]) {
            std::string field;
            std::getline(is, field, ',');
            CHECK(std::stod(field) == doctest::Approx(v.get<double>()).epsilon(1e-15));
        }
    }
}

TEST_CASE("numbers carry at most 12 significant digits") {
    const auto r = run({"sample", "matrix", "--n", "6", "--reps", "3", "--seed", "1"});
    for (const auto& l : data_lines(r.out)) {
        const auto v = l.substr(l.rfind(',') + 1);
        const auto mant = v.substr(0, v.find('e'));
        const auto first = mant.find_first_of("123456789");
        int digits = 0;
        for (std::size_t i = first; i < mant.size(); ++i) digits += std::isdigit(static_cast<unsigned char>(mant[i])) != 0;
        CHECK(digits <= 12);
    }
}

TEST_CASE("tile sample export blocks reproduce from their replica seed") {
    const auto r = run({"tile", "sample", "--p", "2", "--N", "3", "--reps", "3", "--seed", "5"});
    CHECK(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 3 * 4);
    for (int rep = 0; rep < 3; ++rep) {
        CHECK(lines[4 * rep] == "p,N,seed");
        const auto vals = lines[4 * rep + 1];
        const auto seed = std::stoull(vals.substr(vals.rfind(',') + 1));
        agum::Rng rng(seed);
        std::ostringstream os;
        agum::write_ensemble(os, agum::sample_ensemble(2, 3, rng), seed);
        std::string expect;
        for (int k = 0; k < 4; ++k) expect += lines[4 * rep + k] + "\n";
        CHECK(os.str() == expect);
    }
}

TEST_CASE("tile measure and limit subcommands") {
    const auto m = run({"tile", "measure", "--p", "2", "--N", "2", "--line", "2", "--kind", "red"});
    CHECK(m.code == 0);
    CHECK(m.out.find("2 4,0.333333333333,1/3") != std::string::npos);
    const auto h = run({"limit", "hard", "--s", "1", "--x", "0", "--t", "1", "--y", "0"});
    CHECK(data_lines(h.out).back() == "hard,1,0,1,0,2");
    const auto a = run({"limit", "airy", "--x", "0", "--y", "0"});
    CHECK(data_lines(a.out).back() == "airy,0,0,0,0,0.0669874837797");
}

TEST_CASE("output file and verify") {
    const std::string path = "cli_test_output.csv";
    const auto r = run({"kernel", "corr", "--points", "2:0.5", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(data_lines(ss.str()).back().rfind("1,", 0) == 0);
    std::remove(path.c_str());
    const auto v = run({"verify", "4"});
    CHECK(v.code == 0);
    CHECK(v.out.find(",PASS,") != std::string::npos);
    CHECK(run({"verify", "13"}).code == 2);
}
