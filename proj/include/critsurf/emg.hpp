#pragma once

#include <critsurf/embedded_graph.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace critsurf {

/// Parses the EMG 1 text format; the result is validated by EmbeddedGraph::build.
EmbeddedGraph parse_emg(std::string_view text);
std::string write_emg(const EmbeddedGraph& g);

EmbeddedGraph read_emg_file(const std::filesystem::path& path);
void write_emg_file(const std::filesystem::path& path, const EmbeddedGraph& g);

} // namespace critsurf
