#ifndef SOCLIN_MANIFEST_HPP
#define SOCLIN_MANIFEST_HPP

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "soclin/common.hpp"

namespace soclin {

// Reproducibility record written alongside every command's outputs: the
// parameter snapshot plus the input paths is enough to replay the run
// byte-identically. Timestamps are informational only.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv; // verbatim command line, replayable
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::map<std::string, std::string> params;
    std::string tool_version = kVersion;
    std::string started;
    std::string finished;

    static std::string now_utc() {
        const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&t, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    nlohmann::json to_json() const {
        return nlohmann::json{{"command", command},    {"argv", argv},
                              {"inputs", inputs},       {"outputs", outputs},
                              {"params", params},       {"tool_version", tool_version},
                              {"started", started},     {"finished", finished}};
    }

    static RunManifest from_json(const nlohmann::json& j) {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.argv = j.at("argv").get<std::vector<std::string>>();
        m.inputs = j.at("inputs").get<std::vector<std::string>>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        m.params = j.at("params").get<std::map<std::string, std::string>>();
        m.tool_version = j.value("tool_version", std::string{});
        return m;
    }

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw InputError("cannot write manifest: " + path);
        out << to_json().dump(2) << "\n";
    }

    static RunManifest load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw InputError("cannot read manifest: " + path);
        nlohmann::json j;
        in >> j;
        return from_json(j);
    }
};

} // namespace soclin

#endif // SOCLIN_MANIFEST_HPP
