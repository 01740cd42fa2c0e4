#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PERIOSCOPE_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("locper reproduces the first local periods") {
  const auto r = run("locper --spec tm --from 0 --to 15");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "i,p\n0,1\n1,3\n2,1\n3,6\n4,2\n5,12\n6,1\n7,12\n8,1\n9,24\n10,1\n11,24\n12,2\n13,24\n14,1\n15,24\n");
}

TEST_CASE("closedform") {
  const auto r = run("closedform --rep pd");
  CHECK(r.code == 0);
  CHECK(r.out == "(5/9 + 2/3 ℓ)·2^ℓ + 1/2 − 1/18·(−1)^ℓ\n");
}

TEST_CASE("seq") {
  const auto empty = run("seq --spec tm --n 0");
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());
  CHECK(run("seq --spec rs --n 16").out == "0001001000011101\n");
  const auto json = run(R"(seq --spec '{"kind":"morphism","rules":{"0":"01","1":"00"},"seed":"0"}' --n 8)");
  CHECK(json.out == "01000101\n");
}

TEST_CASE("summatory CSV") {
  CHECK(run("summatory --spec pd --n 3").out == "n,P,h\n1,1,1/1\n2,3,3/2\n3,7,7/3\n");
}

TEST_CASE("analyze") {
  const auto r = run("analyze --rep tm");
  CHECK(r.code == 0);
  CHECK(r.out.find("X(N) = N^2 Phi[4,0]({log_2 N}) + O(N log N)") != std::string::npos);
}

TEST_CASE("infer round trip through a file") {
  const std::string path = "cli_test_pd_rep.json";
  CHECK(run("infer --spec pd --train 1024 --validate 2048 --out " + path).code == 0);
  const auto r = run("closedform --rep " + path);
  CHECK(r.code == 0);
  CHECK(r.out.find("2^ℓ") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("phi output is deterministic across thread counts") {
  const auto a = run("--threads 1 phi --rep tm --lambda 4 --grid 8 --lmin 4 --lmax 8");
  const auto b = run("--threads 3 phi --rep tm --lambda 4 --grid 8 --lmin 4 --lmax 8");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("u,n,sample\n", 0) == 0);
  const auto c = run("phi --spec tm --lambda 4 --grid 8 --lmin 4 --lmax 8");
  CHECK(c.out == a.out);
}

TEST_CASE("verify") {
  const auto r = run("verify --suite tables --suite pd_closed_form");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("seq --spec tm --n 4 --bogus").code == 2);
  CHECK(run("seq --spec nonsense --n 4").code == 2);
  CHECK(run("locper --spec rs --from 0 --to 100 --horizon-cap 16").code == 3);
  CHECK(run("infer --spec rs --train 64 --validate 128").code == 3);
  CHECK(run("verify --suite rs_spectral --budget 1024").code == 1);
}
