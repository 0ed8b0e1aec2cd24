#pragma once

#include <string>
#include <vector>

#include "cherednik/config.hpp"
#include "cherednik/parameter.hpp"

namespace cherednik {

// A fully validated unit of work: group and parameters are built, the command
// is recognized, every option key is known and defaults are filled in. The
// stored config is the canonical echo; parsing it again yields the same job.
struct Job {
  GroupPtr group;
  Parameter param;
  std::string command;
  unsigned truncation = 12;
  Config config;
};

// Builds a job from config text. `command` comes from the command line and
// must agree with [command] name when both are present (either alone works).
// `overrides` are "section.key=value" strings applied before validation.
// `default_truncation` is the environment-level fallback for options that
// take a truncation degree.
Job parse_job(const std::string& command, const std::string& config_text,
              const std::vector<std::string>& overrides, unsigned default_truncation = 12);

// Canonical config text for the job; parse_job on it reproduces the job.
std::string serialize_job(const Job& job);

struct RunResult {
  std::string human;   // multi-line human-readable report
  std::string record;  // one-line machine-readable record
};

// Dispatches the job to the owning module and renders the report. Failures
// surface as Error with the module's code.
RunResult run_job(const Job& job);

// Exit code for a failed run, per the documented mapping:
// invalid input 2, cap exceeded 3, internal/certificate 4.
int exit_code_of(ErrorCode c);

// Full driver: `cherednik <command> --config <file> [--override k=v ...]`.
int cli_main(int argc, char** argv);

}  // namespace cherednik
