#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hilbert/body_io.hpp"
#include "hilbert/hilbert_core.hpp"

using hilbert::cli::run;

namespace {

struct Invocation {
    int code;
    std::string out, err;
};

Invocation call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST(Cli, DistanceInDisk) {
    const Invocation r = call({"dist", "--body", "disk", "--p", "0,0", "--q", "0.5,0"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(std::stod(r.out), std::atanh(0.5), 1e-11);
}

TEST(Cli, IdealTriangleCsv) {
    const Invocation r = call({"ideal", "--body", "triangle", "--tri", "0,0.5", "0.5,0", "0.5,0.5"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("body_id,triangle_id,value,error,verdict\n", 0), 0u);
    const auto row = r.out.substr(r.out.find('\n') + 1);
    EXPECT_EQ(row.rfind("triangle,0,", 0), 0u);
    EXPECT_NE(row.find("Converged"), std::string::npos);
    const double value = std::stod(row.substr(11));
    EXPECT_NEAR(value, std::pow(M_PI, 3) / 24.0, 1e-5);
}

TEST(Cli, VerifyPassesWithExitZero) {
    const Invocation r = call({"verify", "thm3", "--body", "random", "--seed", "7", "--samples", "5"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("\"pass\": true"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"bogus"}).code, 2);
    EXPECT_EQ(call({"dist", "--body", "disk", "--p", "0,0"}).code, 2);
    EXPECT_EQ(call({"dist", "--body", "disk", "--p", "2,0", "--q", "0,0"}).code, 2);
    EXPECT_EQ(call({"verify", "nope"}).code, 2);
    EXPECT_EQ(call({"sweep-alpha", "--from", "0.1", "--to", "0.7"}).code, 2);
}

TEST(Cli, SweepEndsExactlyAtHalf) {
    const Invocation r = call({"sweep-alpha", "--from", "0.1", "--to", "0.5", "--steps", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\n0.5,0,"), std::string::npos);
}

TEST(Cli, SeedsAreReproducible) {
    const std::vector<std::string> a{"ideal", "--body", "square", "--samples", "4", "--seed", "11"};
    EXPECT_EQ(call(a).out, call(a).out);
    auto b = a;
    b.back() = "12";
    EXPECT_NE(call(a).out, call(b).out);
}

TEST(Cli, OutAndSvgFilesAreDeterministic) {
    const auto dir = std::filesystem::temp_directory_path() / "hilbert_cli_test";
    std::filesystem::create_directories(dir);
    std::string first;
    for (int k = 0; k < 2; ++k) {
        const auto csv = dir / ("a" + std::to_string(k) + ".csv");
        const auto svg = dir / ("a" + std::to_string(k) + ".svg");
        const Invocation r = call({"ideal", "--body", "random", "--samples", "3", "--seed", "5", "--out", csv.string(),
                            "--svg", svg.string()});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_TRUE(r.out.empty());
        const std::string both = slurp(csv) + slurp(svg);
        EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
        if (k == 0)
            first = both;
        else
            EXPECT_EQ(first, both);
    }
    std::filesystem::remove_all(dir);
}

TEST(Cli, BodyFileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "hilbert_cli_body.json";
    {
        std::ofstream f(path);
        f << hilbert::body_to_json(hilbert::ConvexBody(hilbert::Ellipse({0, 0}, 2.0, 1.0)));
    }
    const Invocation r = call({"dist", "--body", path.string(), "--p", "0,0", "--q", "1,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(r.out), std::atanh(0.5), 1e-11);
    std::filesystem::remove(path);
}
