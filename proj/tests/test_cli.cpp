#include "cli.hpp"

#include <gtest/gtest.h>

using namespace cocompact;
using cli::json;

namespace {

cli::Outcome run(const std::string& cmd, const json& in, cli::Options opt = {})
{
    return cli::run(cmd, in.dump(), opt);
}

const json kTriple = {{"entries", {{1, 0}, {0, 1}, {1, 1}}}};

} // namespace

TEST(Cli, SalemCheck)
{
    auto r = run("salem-check", {{"poly", {1, 0, -1, -1, -1, 0, 1}}});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.output["status"], "yes");
    EXPECT_EQ(r.output["witness"]["k"], 3);
    auto no = run("salem-check", {{"poly", {1, -2, 1}}});
    EXPECT_EQ(no.output["status"], "no");
    EXPECT_EQ(no.exit_code, 0);
}

TEST(Cli, DecideT2AndBoundsEcho)
{
    auto r = run("decide-t2", {{"family", "Osc2"}, {"mu", kTriple}});
    EXPECT_EQ(r.output["status"], "yes");
    EXPECT_EQ(r.output["witness"]["basis"], json::parse(R"([["1","0"],["0","1"]])"));
    EXPECT_EQ(r.output["bounds_used"]["seed"], 1);
}

TEST(Cli, BuildVerifyRoundTrip)
{
    std::vector<json> inputs = {
        {{"theorem", 1}, {"f", {1, -3, 1}}, {"q", 1}},
        {{"theorem", 2}, {"family", "Osc2"}, {"mu", kTriple}},
        {{"theorem", 2}, {"family", "D"}, {"mu", kTriple}},
        {{"theorem", 2}, {"family", "D"}, {"mu", {{"entries", json::array()}}}},
    };
    for (const auto& in : inputs) {
        auto built = run("build-lattice", in);
        ASSERT_EQ(built.output["status"], "yes") << built.output.dump();
        cli::Options opt;
        opt.bound = 2;
        auto ver = run("verify-lattice", built.output, opt);
        EXPECT_EQ(ver.output["status"], "yes") << ver.output.dump();
        EXPECT_EQ(ver.output["witness"]["closure"]["violations"], 0);
        // lattice JSON survives a second trip unchanged
        EXPECT_EQ(cli::lattice_to_json(cli::lattice_from_json(built.output["witness"])), built.output["witness"]);
    }
}

TEST(Cli, Deterministic)
{
    json in = {{"grid", 6}};
    cli::Options opt;
    opt.seed = 42;
    EXPECT_EQ(cli::run("bch-check", in.dump(), opt).output.dump(), cli::run("bch-check", in.dump(), opt).output.dump());
    auto a = run("mu-check-t1", {{"f", {1, -3, 1}}, {"mu", {{"entries", {1}}}}});
    EXPECT_EQ(a.output["status"], "no");
    EXPECT_EQ(a.output.dump(), run("mu-check-t1", {{"f", {1, -3, 1}}, {"mu", {{"entries", {1}}}}}).output.dump());
}

TEST(Cli, MuCheckWithSalemSymbols)
{
    // mu = (s_1 + 2 pi) / ln r for the quartic (4, 3)
    json in = {{"f", {1, -4, 3, -4, 1}},
               {"mu",
                {{"symbols", {{{"salem", "angle"}, {"j", 0}, {"name", "s"}}, {{"salem", "period"}, {"name", "p"}}}},
                 {"entries", {{{{"sym", "s"}, {"coef", 1}}, {{"sym", "p"}, {"coef", 1}}}}}}}};
    auto r = run("mu-check-t1", in);
    EXPECT_EQ(r.output["status"], "yes") << r.output.dump();
    EXPECT_EQ(r.output["witness"]["assignments"][0]["k"], "1");
}

TEST(Cli, Errors)
{
    auto bad = cli::run("salem-check", "{\"poly\": [1, \"x\"]}", {});
    EXPECT_EQ(bad.exit_code, cli::kError);
    EXPECT_EQ(bad.output["status"], "error");
    EXPECT_NE(bad.output["error"]["message"].get<std::string>().find("/poly/1"), std::string::npos);

    EXPECT_EQ(cli::run("salem-check", "{", {}).exit_code, cli::kError);
    EXPECT_EQ(cli::run("nope", "{}", {}).exit_code, cli::kUsage);

    // A corrupted generator is an internal failure, not a verdict.
    auto built = run("build-lattice", {{"theorem", 2}, {"family", "D"}, {"mu", kTriple}});
    json lat = built.output["witness"];
    lat["generators"][0]["zeta"][0] = "1/18";
    auto ver = run("verify-lattice", lat);
    EXPECT_EQ(ver.exit_code, cli::kInternal);
    EXPECT_EQ(ver.output["error"]["kind"], "closure");
}

TEST(Cli, CommensurableAndEquiv)
{
    json a = {{"A", {{2, 1}, {1, 1}}}, {"J", {{0, 1}, {-1, 0}}}};
    auto r = run("commensurable", {{"a1", a}, {"a2", a}});
    EXPECT_EQ(r.output["status"], "yes") << r.output.dump();
    auto e = run("salem-equiv", {{"p1", {1, -3, 1}}, {"p2", {1, -7, 1}}});
    EXPECT_EQ(e.output["status"], "yes");
    EXPECT_EQ(e.output["witness"]["k1"], 2);
    EXPECT_EQ(e.output["witness"]["k2"], 1);
}
