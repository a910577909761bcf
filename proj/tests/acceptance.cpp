// Acceptance suite: one line per criterion, exit status 0 only if all pass.
// The CLI exit-code fixtures run the real dqm binary.

#include <sys/wait.h>

#include <cstdlib>
#include <iostream>
#include <string>

#include "dqm/verification.hpp"

namespace {

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

int run_binary(const std::vector<std::string>& args) {
    std::string cmd = quote(DQM_CLI_PATH);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main(int argc, char** argv) {
    dqm::SuiteConfig config;
    if (argc > 1) config.seed = std::stoull(argv[1]);
    config.cli = run_binary;

    const dqm::RunReport report = dqm::run_suite(config);
    for (const auto& c : report.checks) {
        const std::string line = dqm::summary_line(c);
        std::cout << "[PRIMARY] criterion " << c.criterion << " " << c.name << ": " << (c.passed() ? "PASS" : "FAIL")
                  << " (" << line.substr(line.find(": ") + 2) << ")\n";
        for (const auto& n : c.notes) std::cout << "    " << n << "\n";
    }
    std::cout << report.instances << " instances, seed " << report.seed << ", " << report.wall_seconds << " s\n";
    return report.passed() ? 0 : 1;
}
