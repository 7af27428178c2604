#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "msa/corpus.hpp"
#include "msa/miner.hpp"
#include "msa/relatedness.hpp"

namespace msa::cli {

// Everything a command needs, after layering defaults < config file < flags.
struct PipelineConfig {
  std::filesystem::path corpus;
  CorpusFormat corpus_format = CorpusFormat::jsonl;
  std::filesystem::path index = "msa-index";
  std::filesystem::path rules = "msa-rules";
  std::filesystem::path datasets;  // dataset manifest, optional
  PipelineParams params;
  MiningParams mining;
};

// Reads a flat JSON config. Relative paths resolve against the file's
// directory. Unknown keys are rejected.
PipelineConfig load_config(const std::filesystem::path& path);

// Runs the msa command line. `args` excludes the program name. Data goes to
// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msa::cli
