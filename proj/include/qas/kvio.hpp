#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qas {

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double v);

// Flat key=value text files ('#' comments, blank lines ignored).
std::map<std::string, std::string> parse_kv_file(const std::string& path);
std::map<std::string, std::string> parse_kv_text(const std::string& text);

// Provenance record written next to every command's outputs.
struct RunManifest {
    std::string command;
    std::uint64_t seed = 0;
    std::string started;
    std::string finished;
    std::map<std::string, std::string> config;
    std::vector<std::string> artifacts;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

std::string timestamp_utc_now();

}  // namespace qas
