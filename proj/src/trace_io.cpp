#include "radiolab/trace_io.hpp"

#include <ostream>

#include <json.hpp>

namespace radiolab {

std::string hex_encode(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 15]);
  }
  return out;
}

void write_trace_jsonl(std::ostream& out, const ExecutionTrace& trace) {
  for (Round r = 1; r <= trace.rounds(); ++r) {
    nlohmann::json rec;
    rec["round"] = r;
    auto& tx = rec["transmitters"] = nlohmann::json::array();
    for (const auto& t : trace.transmitters(r)) tx.push_back({{"node", t.node}, {"msg_hex", hex_encode(t.message)}});
    auto& obs = rec["observations"] = nlohmann::json::array();
    for (Vertex v = 0; v < trace.node_count(); ++v) {
      Observation o = trace.observation_at(r, v);
      switch (o.kind) {
        case ObservationKind::Transmitted: obs.push_back("tx"); break;
        case ObservationKind::Heard: obs.push_back("heard:" + std::to_string(*trace.heard_from(r, v))); break;
        default: obs.push_back(std::string(to_string(o.kind)));
      }
    }
    out << rec.dump() << '\n';
  }
}

}  // namespace radiolab
