#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "phx/phx.h"

int main(int argc, char** argv)
{
    CLI::App app{"Polyhomogeneous boundary expansions: expand, iterate, validate"};
    std::string config, out_dir, command;
    bool quiet = false;
    app.add_option("config", config, "run configuration (INI)")->required();
    app.add_option("-o,--out", out_dir, "output directory, overrides [output] dir");
    app.add_option("-c,--command", command, "run this command instead of the configured one")
        ->check(CLI::IsMember({"expand", "match", "iterate", "validate", "ln-coeffs", "friedman"}));
    app.add_flag("-q,--quiet", quiet, "suppress the report on success");
    app.set_version_flag("--version", std::string(phx_version()));
    CLI11_PARSE(app, argc, argv);

    char* report = nullptr;
    const phx_status st = phx_run_file(config.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
                                      command.empty() ? nullptr : command.c_str(), &report);
    if (!report) {
        std::fprintf(stderr, "phx: %s\n", phx_last_error());
        return st;
    }
    if (st == PHX_OK || st == PHX_ERR_VALIDATION) {
        if (!quiet || st != PHX_OK) std::fputs(report, stdout);
    } else {
        std::fputs(report, stderr);
    }
    phx_string_free(report);
    return st;
}
