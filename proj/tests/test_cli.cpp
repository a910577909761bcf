#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dqm/dqm_file.hpp"
#include "dqm/random.hpp"

using namespace dqm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("dqm-cli-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string save(const std::string& name, const DQMatrix& a) {
        const auto p = (dir_ / name).string();
        save_dqm(p, a);
        return p;
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

DQMatrix worked() {
    DQMatrix a = DQMatrix::identity(2);
    a(0, 1).in = Quaternion::i();
    a(1, 0).in = -Quaternion::i();
    return a;
}

DQMatrix diag2(DualQuaternion a, DualQuaternion b) {
    DQMatrix d(2, 2);
    d(0, 0) = a;
    d(1, 1) = b;
    return d;
}

}  // namespace

TEST(CliFormat, DualNumbers) {
    EXPECT_EQ(cli::format_dual(1, -0.0), "(1, 0)");
    EXPECT_EQ(cli::format_dual(0.99999999999999989, -1.0000000000000002), "(1, -1)");
    EXPECT_EQ(cli::format_dual(1.4142135623730951, 0), "(1.41421356237, 0)");
}

TEST_F(CliTest, Eig) {
    EXPECT_EQ(run({"eig", save("i.dqm", DQMatrix::identity(2))}).out, "(1, 0) (1, 0)\n");
    EXPECT_EQ(run({"eig", save("w.dqm", worked())}).out, "(1, 1) (1, -1)\n");
    DQMatrix bad = DQMatrix::identity(2);
    bad(0, 1) = DualQuaternion(2.0);
    const Outcome r = run({"eig", save("bad.dqm", bad)});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("NotHermitian"), std::string::npos);
}

TEST_F(CliTest, Svd) {
    const auto d = save("d.dqm", diag2(DualQuaternion(2.0), DualQuaternion(Quaternion(), Quaternion(1))));
    EXPECT_EQ(run({"svd", d}).out, "(2, 0) (0, 1); r=1 t=2 s=2\n");
    EXPECT_EQ(run({"svd", save("z.dqm", DQMatrix(2, 3))}).out, "(0, 0) (0, 0); r=0 t=0 s=2\n");
    Rng rng(3);
    const Outcome q = run({"svd", save("q.dqm", embed(random_qmatrix(rng, 3, 2))), "--json"});
    EXPECT_EQ(q.code, 0);
    EXPECT_NE(q.out.find("\"r\": 2"), std::string::npos);
}

TEST_F(CliTest, Norm) {
    EXPECT_EQ(run({"norm", save("i.dqm", DQMatrix::identity(2)), "--kind", "fro"}).out, "(1.41421356237, 0)\n");
    EXPECT_EQ(run({"norm", save("d.dqm", diag2(DualQuaternion(3.0), DualQuaternion(1.0))), "--kind", "spec"}).out, "(3, 0)\n");
    DQMatrix e(1, 2);
    e(0, 0) = DualQuaternion(Quaternion(), Quaternion(3));
    e(0, 1) = DualQuaternion(Quaternion(), Quaternion(0, 4, 0, 0));
    EXPECT_EQ(run({"norm", save("e.dqm", e), "--kind", "spec"}).out, "(0, 5)\n");
    EXPECT_EQ(run({"norm", path("i.dqm"), "--kind", "nuclear"}).code, 2);
}

TEST_F(CliTest, CheckExitCodes) {
    Rng rng(4);
    const auto a = save("a.dqm", random_general(rng, 3, 4));
    const Outcome vn = run({"check", "vn", a, a});
    EXPECT_EQ(vn.code, 0);
    EXPECT_NE(vn.out.find("result: holds"), std::string::npos);

    const Outcome hw = run({"check", "hw", a, a});
    EXPECT_EQ(hw.code, 2);
    EXPECT_NE(hw.out.find("condition not met"), std::string::npos);

    const Outcome herm = run({"check", "hw-herm", save("w.dqm", worked()), save("i.dqm", DQMatrix::identity(2))});
    EXPECT_EQ(herm.code, 0);
    EXPECT_NE(herm.out.find("lhs (0, 1.41421356237) rhs (0, 1.41421356237)"), std::string::npos);

    const auto h = save("h.dqm", random_hermitian(rng, 3));
    EXPECT_EQ(run({"check", "kyfan", h, "--k", "2"}).code, 0);
    EXPECT_EQ(run({"check", "kyfan", h, "--k", "4"}).code, 2);
    EXPECT_EQ(run({"check", "kyfan", h}).code, 0);
    EXPECT_EQ(run({"check", "lem43", save("s.dqm", random_general(rng, 3, 3))}).code, 0);
    EXPECT_EQ(run({"check", "lem43", a}).code, 2);
    EXPECT_EQ(run({"check", "vn-herm", h, h}).code, 0);
    EXPECT_EQ(run({"check", "vn-herm", h, path("s.dqm")}).code, 2);
    EXPECT_EQ(run({"check", "vn", a}).code, 2);
    EXPECT_EQ(run({"check", "bogus", a, a}).code, 2);

    const auto u = save("u.dqm", random_general(rng, 4, 1));
    const auto v = save("v.dqm", random_general(rng, 1, 4));
    EXPECT_EQ(run({"check", "cauchy", u, v}).code, 0);
    EXPECT_EQ(run({"check", "cauchy", u, a}).code, 2);

    const Outcome js = run({"check", "vn", a, a, "--json"});
    EXPECT_NE(js.out.find("\"worst_slack\""), std::string::npos);
}

TEST_F(CliTest, GenIsDeterministic) {
    ASSERT_EQ(run({"gen", "--kind", "hermitian", "--m", "4", "--seed", "9", "--out", path("a.dqm")}).code, 0);
    ASSERT_EQ(run({"gen", "--kind", "hermitian", "--m", "4", "--seed", "9", "--out", path("b.dqm")}).code, 0);
    const auto read = [](const std::string& p) {
        std::ifstream is(p);
        return std::string(std::istreambuf_iterator<char>(is), {});
    };
    EXPECT_EQ(read(path("a.dqm")), read(path("b.dqm")));
    EXPECT_TRUE(is_hermitian(load_dqm(path("a.dqm"))));

    EXPECT_EQ(run({"gen", "--kind", "eps-perturb-pair", "--m", "3", "--seed", "1", "--out", path("p.dqm"), "--out",
                   path("q.dqm")})
                  .code,
              0);
    EXPECT_FALSE(is_appreciable(load_dqm(path("q.dqm")) - load_dqm(path("p.dqm"))));
    EXPECT_EQ(run({"gen", "--kind", "eps-perturb-pair", "--m", "3", "--out", path("p.dqm")}).code, 2);
    EXPECT_EQ(run({"gen", "--kind", "general", "--m", "0", "--out", path("x.dqm")}).code, 2);
    EXPECT_EQ(run({"gen", "--kind", "nope", "--m", "2", "--out", path("x.dqm")}).code, 2);
}

TEST_F(CliTest, Verify) {
    EXPECT_EQ(run({"verify", "--trials", "0"}).code, 2);
    const Outcome ok = run({"verify", "--trials", "5", "--max-size", "4", "--criteria", "1,2,5"});
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("[PASS] 5 majorization and trace bounds"), std::string::npos);
    const Outcome bad = run({"verify", "--trials", "5", "--max-size", "4", "--criteria", "5", "--inject-failure", "5"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("[FAIL] 5"), std::string::npos);
    EXPECT_EQ(run({"verify", "--criteria", "11"}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"eig"}).code, 2);
    EXPECT_EQ(run({"eig", path("missing.dqm")}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}
