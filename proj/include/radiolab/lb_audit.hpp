#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "radiolab/generators.hpp"
#include "radiolab/labels.hpp"
#include "radiolab/radio.hpp"

namespace radiolab::lb {

enum class EntryKind { Message, Hash, Silence };

struct Entry {
  EntryKind kind = EntryKind::Silence;
  std::string message;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// One round of a collision-detection run: who sent what, and the history
// entry every node appended.
struct RoundRecord {
  std::vector<std::pair<Vertex, std::string>> transmitters;
  std::vector<Entry> entries;
};

struct AuditInput {
  std::size_t node_count = 0;
  std::vector<RoundRecord> rounds;
};

// Throws InvalidParams for a run without collision detection.
AuditInput audit_input(const ExecutionTrace& trace);

// Global per-round entry: the message if exactly one node sent, # for two
// or more senders, silence otherwise.
std::vector<Entry> canonical_history(const AuditInput& input);
std::vector<Entry> canonical_history(const ExecutionTrace& trace);

struct ComponentTimeline {
  // canonical[i] = components whose nodes all match the canonical history
  // after round i (i = 0 .. rounds), increasing.
  std::vector<std::vector<std::size_t>> canonical;
  // Round in which each component left, 0 if it never did.
  std::vector<Round> left_in;
};

// Nodes outside every component (component_of == -1) are ignored here.
ComponentTimeline canonical_components(const AuditInput& input, const LBFamilyDescriptor& partition);

struct Violation {
  std::string check;
  Round round = 0;
  std::string detail;
};

struct DepartureEvent {
  Round round = 0;
  std::size_t component = 0;
  std::vector<Vertex> triggers;
  std::vector<LabelBits> trigger_labels;
};

struct RoundSummary {
  Round round = 0;
  std::size_t departures = 0;
  std::size_t transmitter_components = 0;
  std::size_t violations = 0;
};

struct AuditReport {
  static const std::vector<std::string>& check_names();

  std::size_t node_count = 0;
  std::size_t components = 0;
  Round rounds = 0;
  std::vector<Violation> violations;
  std::vector<DepartureEvent> departures;
  std::vector<RoundSummary> per_round;
  // One trigger node per round with departures.
  std::vector<Vertex> trigger_nodes;
  std::size_t distinct_labels = 0;
  std::size_t distinct_trigger_labels = 0;
  std::size_t still_canonical = 0;

  bool passed() const { return violations.empty(); }
  std::size_t violations_of(const std::string& check) const;
};

// Checks per round:
//   heard-outside     a node that heard had at most one sender outside its component
//   same-label        equal label and canonical history give the same decision
//   departure-senders a departing component had a sender inside, at most one outside
//   three-components  senders in three components: nobody leaves
//   two-departures    at most two components leave
//   trigger-multiset  no label triggers more than two departure rounds
//   monotone          the canonical component set never grows
AuditReport audit_facts(const AuditInput& input, const LBFamilyDescriptor& partition,
                        std::span<const LabelBits> labels);
AuditReport audit_facts(const ExecutionTrace& trace, const LBFamilyDescriptor& partition,
                        std::span<const LabelBits> labels);

nlohmann::json to_json(const AuditReport& report);
// round,departures,transmitter_components,violations
void write_audit_csv(std::ostream& out, const AuditReport& report);

}  // namespace radiolab::lb
