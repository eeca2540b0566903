#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "radiolab/radio.hpp"

namespace radiolab {

std::string hex_encode(std::string_view bytes);

// One JSON object per round: {"round", "transmitters": [{"node", "msg_hex"}],
// "observations": [...]} where each observation is "tx", "noise",
// "collision", "silence" or "heard:<sender>".
void write_trace_jsonl(std::ostream& out, const ExecutionTrace& trace);

}  // namespace radiolab
