#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "algfun/job.hpp"

using nlohmann::json;

namespace {

json load_json(const std::string& path_or_inline) {
    if (!path_or_inline.empty() && path_or_inline.front() == '{')
        return json::parse(path_or_inline);
    std::ifstream in(path_or_inline);
    if (!in) throw std::runtime_error("cannot open " + path_or_inline);
    json j;
    in >> j;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact SL2 loop, homotopy-certificate, winding-number, and unimodular-row "
                 "toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // accept the global options after the subcommand too

    std::string ring_arg, json_out, refine_width;
    app.add_option("--ring", ring_arg, "ring descriptor (JSON file or inline object)");
    app.add_option("--json-out", json_out, "write the machine-readable result here");
    app.add_option("--refine-width", refine_width,
                   "rational width bound for root-interval refinement");

    struct Sub {
        CLI::App* cmd;
        std::string job_file;
        std::string loop_file, matrix_file, row_file;
        int samples = 4096;
    };
    std::vector<std::string> names = {
        "verify-loop",     "verify-homotopy", "loop-mul",        "winding",
        "eta",             "oracle",          "decompose-nil",   "connect-identity",
        "contract-nil",    "lift-nil",        "injectivity-homotopy", "swan-weibel",
        "basepoint-shift", "product-split",   "gamma-mul",       "complete",
        "quillen-check",   "circle-degree",   "example-suite"};
    // Insert first, bind afterwards: map node addresses are stable, so the
    // option targets stay valid.
    std::map<std::string, Sub> subs;
    for (const auto& n : names) {
        Sub& s = subs[n];
        s.cmd = app.add_subcommand(n, "");
        if (n != "example-suite")
            s.cmd->add_option("--job", s.job_file, "JSON payload file");
        if (n == "winding" || n == "oracle")
            s.cmd->add_option("--loop", s.loop_file, "plane-loop JSON file ({f1, f2, var})");
        if (n == "eta" || n == "verify-loop")
            s.cmd->add_option("--matrix", s.matrix_file, "loop-matrix JSON file");
        if (n == "oracle") s.cmd->add_option("--samples", s.samples, "sample count");
        if (n == "circle-degree" || n == "complete")
            s.cmd->add_option("--row", s.row_file, "row JSON file");
    }

    CLI11_PARSE(app, argc, argv);

    algfun::JobResult result;
    try {
        std::string cmd;
        const Sub* sub = nullptr;
        for (const auto& [n, s] : subs)
            if (s.cmd->parsed()) {
                cmd = n;
                sub = &s;
            }
        json job = json::object();
        if (!sub->job_file.empty()) job = load_json(sub->job_file);
        if (!sub->loop_file.empty()) job.update(load_json(sub->loop_file));
        if (!sub->matrix_file.empty()) job["matrix"] = load_json(sub->matrix_file).contains("matrix")
                                                            ? load_json(sub->matrix_file)["matrix"]
                                                            : load_json(sub->matrix_file);
        if (!sub->row_file.empty())
            job["row"] = load_json(sub->row_file).contains("row") ? load_json(sub->row_file)["row"]
                                                                  : load_json(sub->row_file);
        if (cmd == "oracle") job["samples"] = sub->samples;
        if (!ring_arg.empty()) job["ring"] = load_json(ring_arg);
        if (!refine_width.empty()) job["refine_width"] = refine_width;
        job["command"] = cmd;
        result = algfun::run_job(job);
    } catch (const json::exception& e) {
        result = {2, {{"ok", false}, {"error", e.what()}}, std::string("schema error: ") + e.what()};
    } catch (const std::exception& e) {
        result = {2, {{"ok", false}, {"error", e.what()}}, std::string("error: ") + e.what()};
    }

    std::cout << result.summary << std::endl;
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << result.output.dump(2) << "\n";
    }
    return result.exit_code;
}
