// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the citefit executable.  The binary path arrives in
// the CITEFIT_BIN environment variable; every test works inside its own
// scratch directory under the system temp root.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

std::string binary_path() {
  const char* bin = std::getenv("CITEFIT_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CITEFIT_BIN must point at the citefit binary");
  return bin;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Scratch {
 public:
  Scratch() {
    dir_ = fs::temp_directory_path() /
           ("citefit_cli_" + std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }

  const fs::path& dir() const { return dir_; }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
  }

  RunResult run(const std::string& args) const {
    const fs::path out_file = dir_ / "stdout.txt";
    const fs::path err_file = dir_ / "stderr.txt";
    const std::string cmd = binary_path() + " " + args + " > " +
                            out_file.string() + " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(status);
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
  }

 private:
  static inline int counter_ = 0;
  fs::path dir_;
};

std::string plain_corpus() {
  // 60 articles: 18 uncited, the rest a Zipf-like decay.  Every family
  // fits this interior to its search box, so exit codes stay 0.
  std::ostringstream out;
  for (int i = 0; i < 18; ++i) out << 0 << "\n";
  for (int i = 0; i < 42; ++i) out << (100 / (i + 2)) << "\n";
  return out.str();
}

TEST_SUITE_BEGIN("cli");

TEST_CASE("fit: table on stdout, JSON artifact, exit 0") {
  Scratch scratch;
  const fs::path input = scratch.write("counts.txt", plain_corpus());
  const fs::path out = scratch.dir() / "fit.json";
  const RunResult result = scratch.run(
      "fit --input " + input.string() + " --family dln --zero-inflated --out " +
      out.string());
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("counts") != std::string::npos);  // label column
  CHECK(result.out.find("zidl") != std::string::npos);
  REQUIRE(fs::exists(out));
  const std::string json = slurp(out);
  CHECK(json.find("\"base\"") != std::string::npos);
  CHECK(json.find("\"zero_inflated\"") != std::string::npos);
  CHECK(json.find("\"loglik\"") != std::string::npos);
}

TEST_CASE("fit without the flag writes a bare result object") {
  Scratch scratch;
  const fs::path input = scratch.write("counts.txt", plain_corpus());
  const fs::path out = scratch.dir() / "fit.json";
  const RunResult result = scratch.run(
      "fit --input " + input.string() + " --family hooked --out " +
      out.string());
  CHECK(result.exit_code == 0);
  const std::string json = slurp(out);
  CHECK(json.find("\"model\": \"hooked\"") != std::string::npos);
  CHECK(json.find("\"base\"") == std::string::npos);
}

TEST_CASE("malformed input exits 2 with a parse diagnostic") {
  Scratch scratch;
  const fs::path input = scratch.write("bad.txt", "3\nseven\n");
  const RunResult result =
      scratch.run("fit --input " + input.string() + " --family dln");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("line 2") != std::string::npos);
}

TEST_CASE("missing required flags exit 2") {
  Scratch scratch;
  const RunResult result = scratch.run("fit --family dln");
  CHECK(result.exit_code == 2);
}

TEST_CASE("degenerate fit exits 1 but still writes its artifact") {
  Scratch scratch;
  std::ostringstream ones;
  for (int i = 0; i < 30; ++i) ones << "0\n";  // every article uncited
  const fs::path input = scratch.write("ones.txt", ones.str());
  const fs::path out = scratch.dir() / "fit.json";
  const RunResult result = scratch.run(
      "fit --input " + input.string() + " --family dln --out " + out.string());
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("degenerate") != std::string::npos);
  CHECK(fs::exists(out));
}

TEST_CASE("compare: winner line, JSON, byte-identical across modes") {
  Scratch scratch;
  const fs::path input = scratch.write("counts.txt", plain_corpus());
  const fs::path serial = scratch.dir() / "serial.json";
  const fs::path parallel = scratch.dir() / "parallel.json";

  const RunResult run1 = scratch.run(
      "compare --input " + input.string() + " --out " + serial.string());
  CHECK(run1.exit_code == 0);
  CHECK(run1.out.find("winner:") != std::string::npos);

  const RunResult run2 = scratch.run("compare --input " + input.string() +
                                     " --parallel --out " + parallel.string());
  CHECK(run2.exit_code == 0);
  CHECK(slurp(serial) == slurp(parallel));
  CHECK(run1.out == run2.out);
}

TEST_CASE("curves: sup of column difference is the reported K-S") {
  Scratch scratch;
  const fs::path input = scratch.write("counts.txt", plain_corpus());
  const fs::path fit = scratch.dir() / "fit.json";
  scratch.run("fit --input " + input.string() +
              " --family dln --zero-inflated --out " + fit.string());
  const fs::path curves = scratch.dir() / "curves.csv";
  const RunResult result =
      scratch.run("curves --input " + input.string() + " --fit " +
                  fit.string() + " --out " + curves.string());
  CHECK(result.exit_code == 0);

  // Pull ks out of the JSON and the sup out of the CSV.
  const std::string json = slurp(fit);
  const std::size_t zi_at = json.find("\"zero_inflated\"");
  std::size_t ks_at = json.find("\"ks\":", zi_at);
  const double reported =
      std::stod(json.substr(ks_at + 5, json.find(',', ks_at) - ks_at - 5));

  std::ifstream in(curves);
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,empirical_cdf,fitted_cdf");
  double sup = 0.0, last_emp = 0.0;
  while (std::getline(in, line)) {
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    const double emp = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const double fitted = std::stod(line.substr(c2 + 1));
    sup = std::max(sup, std::abs(emp - fitted));
    last_emp = emp;
  }
  CHECK(last_emp == 1.0);
  CHECK(std::abs(sup - reported) <= 1e-12);
}

TEST_CASE("curves refuses a fit made on different data") {
  Scratch scratch;
  const fs::path input = scratch.write("counts.txt", plain_corpus());
  const fs::path other = scratch.write("other.txt", "0\n1\n2\n3\n4\n5\n");
  const fs::path fit = scratch.dir() / "fit.json";
  scratch.run("fit --input " + input.string() + " --family dln --out " +
              fit.string());
  const RunResult result = scratch.run(
      "curves --input " + other.string() + " --fit " + fit.string());
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("mismatch") != std::string::npos);
}

TEST_CASE("simulate is byte-deterministic and writes a truthful sidecar") {
  Scratch scratch;
  const fs::path a = scratch.dir() / "a.txt";
  const fs::path b = scratch.dir() / "b.txt";
  const std::string flags =
      "simulate --family hooked --alpha 3.0 --b 6.0 --p 0.2 -n 500 --seed 77 "
      "--out ";
  CHECK(scratch.run(flags + a.string()).exit_code == 0);
  CHECK(scratch.run(flags + b.string()).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a.string() + ".truth.json") == slurp(b.string() + ".truth.json"));

  const std::string truth = slurp(a.string() + ".truth.json");
  CHECK(truth.find("\"p\": 0.2") != std::string::npos);
  CHECK(truth.find("\"zihp\"") != std::string::npos);
  CHECK(truth.find("\"seed\": 77") != std::string::npos);
}

TEST_CASE("simulate rejects out-of-domain parameters with a usage error") {
  Scratch scratch;
  const fs::path out = scratch.dir() / "x.txt";
  const RunResult result = scratch.run(
      "simulate --family dln --mu 0 --sigma -1 -n 10 --out " + out.string());
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("sigma") != std::string::npos);
}

TEST_CASE("simulate round trip: fit recovers the planted parameters") {
  Scratch scratch;
  const fs::path data = scratch.dir() / "corpus.txt";
  CHECK(scratch.run("simulate --family dln --mu 2.0 --sigma 1.1 --p 0.25 "
                    "-n 4000 --seed 11 --out " + data.string())
            .exit_code == 0);
  const fs::path fit = scratch.dir() / "fit.json";
  CHECK(scratch.run("fit --input " + data.string() +
                    " --family dln --zero-inflated --out " + fit.string())
            .exit_code == 0);
  const std::string json = slurp(fit);
  const std::size_t zi_at = json.find("\"zero_inflated\"");
  auto grab = [&](const std::string& key) {
    std::size_t at = json.find("\"" + key + "\":", zi_at);
    at += key.size() + 3;
    return std::stod(json.substr(at, json.find_first_of(",}\n", at) - at));
  };
  CHECK(std::abs(grab("mu") - 2.0) < 0.1);
  CHECK(std::abs(grab("sigma") - 1.1) < 0.1);
  CHECK(std::abs(grab("p") - 0.25) < 0.05);
}

TEST_CASE("filter removes sparse journals and reports them") {
  Scratch scratch;
  std::ostringstream csv;
  csv << "journal,citations\n";
  for (int i = 0; i < 10; ++i) csv << "Solid Journal," << (i + 1) << "\n";
  for (int i = 0; i < 8; ++i) csv << "Dead Weekly,0\n";
  csv << "Dead Weekly,2\n";
  const fs::path input = scratch.write("journals.csv", csv.str());
  const fs::path out = scratch.dir() / "kept.csv";
  const RunResult result =
      scratch.run("filter --input " + input.string() +
                  " --threshold 50 --out " + out.string());
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("Dead Weekly") != std::string::npos);
  CHECK(result.out.find("kept 10 of 19") != std::string::npos);
  const std::string kept = slurp(out);
  CHECK(kept.find("Solid Journal") != std::string::npos);
  CHECK(kept.find("Dead Weekly") == std::string::npos);
}

TEST_CASE("filter without a journal column exits 2") {
  Scratch scratch;
  const fs::path input = scratch.write("flat.csv", "citations\n1\n2\n");
  const RunResult result =
      scratch.run("filter --input " + input.string() + " --threshold 50");
  CHECK(result.exit_code == 2);
}

TEST_SUITE_END();

}  // namespace
