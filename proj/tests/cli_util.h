// Copyright 2026 The Factsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// In-process CLI runs for the command tests and the acceptance suite.

#ifndef FACTSUM_TESTS_CLI_UTIL_H_
#define FACTSUM_TESTS_CLI_UTIL_H_

#include <unistd.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "factsum/cli.h"
#include "factsum/io.h"
#include "test_util.h"

namespace factsum::testing {

// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() /
              ("factsum-" + name + "-" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  std::string operator/(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

inline CliRun RunFactsum(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"factsum"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun run;
  run.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

inline std::vector<std::string> ReadLines(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Outputs of one segment -> oracle -> train -> summarize -> evaluate ->
// positions run on the fixture corpus.
struct Pipeline {
  std::vector<CliRun> runs;
  std::vector<std::string> artifacts;  // paths, in production order

  bool AllSucceeded() const {
    for (const CliRun& r : runs) {
      if (r.code != 0) return false;
    }
    return !runs.empty();
  }
};

inline Pipeline RunFixturePipeline(const ScratchDir& dir, uint64_t seed) {
  const std::string manifest = dir / "runs.manifest.jsonl";
  const std::string s = std::to_string(seed);
  Pipeline p;
  auto step = [&](std::vector<std::string> args,
                  std::vector<std::string> artifacts) {
    args.insert(args.end(), {"--seed", s, "--manifest", manifest});
    p.runs.push_back(RunFactsum(args));
    p.artifacts.insert(p.artifacts.end(), artifacts.begin(), artifacts.end());
  };
  step({"segment", "-i", DataPath("fixture_corpus.jsonl"), "-o",
        dir / "facts.jsonl"},
       {dir / "facts.jsonl"});
  step({"oracle", "-i", dir / "facts.jsonl", "-o", dir / "labels.jsonl",
        "--mode", "fact", "--report", dir / "oracle.csv"},
       {dir / "labels.jsonl", dir / "oracle.csv"});
  step({"train", "-i", dir / "labels.jsonl", "-o", dir / "model.ckpt",
        "--d-model", "16", "--layers", "1", "--heads", "2", "--d-ff", "32",
        "--max-len", "128", "--steps", "60", "--warmup", "20",
        "--lr-coefficient", "0.05", "--batch-size", "8", "--checkpoint-every",
        "30"},
       {dir / "model.ckpt", dir / "model.ckpt.step30",
        dir / "model.ckpt.loss.csv"});
  step({"summarize", "-i", dir / "facts.jsonl", "--model", dir / "model.ckpt",
        "-o", dir / "summaries.txt"},
       {dir / "summaries.txt"});
  step({"evaluate", "-i", dir / "summaries.txt", "--reference",
        dir / "facts.jsonl", "-o", dir / "rouge.csv"},
       {dir / "rouge.csv"});
  step({"positions", "-i", dir / "summaries.txt", "--facts",
        dir / "facts.jsonl", "-o", dir / "positions.csv"},
       {dir / "positions.csv"});
  return p;
}

}  // namespace factsum::testing

#endif  // FACTSUM_TESTS_CLI_UTIL_H_
