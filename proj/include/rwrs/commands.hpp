#pragma once

// Library-level implementations of the CLI verbs, callable in-process by
// tests. Exit codes: 0 pass, 1 verification FAIL, 2 usage/config error.

#include <string>

namespace rwrs {

struct CommandOptions {
    std::string config_path;
    std::string out_dir = "out";
    int threads = 0;  // 0 = config value (0 there = all cores)
    bool plots = false;
    std::string ingest;        // path to a records CSV; skip simulation
    std::string suite = "all";
};

int cmd_simulate(const CommandOptions& opts);
int cmd_verify(const CommandOptions& opts);
int cmd_estimate_b(const CommandOptions& opts);

}  // namespace rwrs
