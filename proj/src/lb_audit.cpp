#include "radiolab/lb_audit.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "radiolab/error.hpp"

namespace radiolab::lb {

AuditInput audit_input(const ExecutionTrace& trace) {
  if (!trace.collision_detection()) throw Error(ErrorCode::InvalidParams, "audits need a collision-detection run");
  AuditInput in;
  in.node_count = trace.node_count();
  for (Round r = 1; r <= trace.rounds(); ++r) {
    RoundRecord rec;
    for (const auto& tx : trace.transmitters(r)) rec.transmitters.emplace_back(tx.node, tx.message);
    rec.entries.reserve(in.node_count);
    for (Vertex v = 0; v < in.node_count; ++v) {
      Observation o = trace.observation_at(r, v);
      switch (o.kind) {
        case ObservationKind::Heard: rec.entries.push_back({EntryKind::Message, std::string(o.message)}); break;
        case ObservationKind::Silence: rec.entries.push_back({EntryKind::Silence, {}}); break;
        default: rec.entries.push_back({EntryKind::Hash, {}}); break;
      }
    }
    in.rounds.push_back(std::move(rec));
  }
  return in;
}

std::vector<Entry> canonical_history(const AuditInput& input) {
  std::vector<Entry> h;
  for (const auto& rec : input.rounds) {
    if (rec.transmitters.empty()) h.push_back({EntryKind::Silence, {}});
    else if (rec.transmitters.size() == 1) h.push_back({EntryKind::Message, rec.transmitters[0].second});
    else h.push_back({EntryKind::Hash, {}});
  }
  return h;
}

std::vector<Entry> canonical_history(const ExecutionTrace& trace) { return canonical_history(audit_input(trace)); }

namespace {

// First round whose entry differs from the canonical one; rounds + 1 if none.
std::vector<Round> first_deviation(const AuditInput& input, const std::vector<Entry>& canon) {
  std::vector<Round> dev(input.node_count, static_cast<Round>(input.rounds.size()) + 1);
  for (std::size_t i = 0; i < input.rounds.size(); ++i) {
    for (Vertex v = 0; v < input.node_count; ++v) {
      if (dev[v] <= static_cast<Round>(input.rounds.size()) ) continue;
      if (!(input.rounds[i].entries.at(v) == canon[i])) dev[v] = static_cast<Round>(i) + 1;
    }
  }
  return dev;
}

}  // namespace

ComponentTimeline canonical_components(const AuditInput& input, const LBFamilyDescriptor& partition) {
  auto canon = canonical_history(input);
  auto dev = first_deviation(input, canon);
  const std::size_t k = partition.components.size();
  ComponentTimeline t;
  t.left_in.assign(k, 0);
  std::vector<Round> comp_dev(k, static_cast<Round>(input.rounds.size()) + 1);
  for (std::size_t j = 0; j < k; ++j) {
    for (Vertex v : partition.components[j]) comp_dev[j] = std::min(comp_dev[j], dev.at(v));
    if (comp_dev[j] <= static_cast<Round>(input.rounds.size())) t.left_in[j] = comp_dev[j];
  }
  for (std::size_t i = 0; i <= input.rounds.size(); ++i) {
    std::vector<std::size_t> in;
    for (std::size_t j = 0; j < k; ++j)
      if (comp_dev[j] > static_cast<Round>(i)) in.push_back(j);
    t.canonical.push_back(std::move(in));
  }
  return t;
}

const std::vector<std::string>& AuditReport::check_names() {
  static const std::vector<std::string> names{"heard-outside", "same-label", "departure-senders", "three-components", "two-departures", "trigger-multiset", "monotone"};
  return names;
}

std::size_t AuditReport::violations_of(const std::string& check) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.check == check; }));
}

AuditReport audit_facts(const AuditInput& input, const LBFamilyDescriptor& partition,
                        std::span<const LabelBits> labels) {
  const std::size_t n = input.node_count;
  if (labels.size() != n) throw Error(ErrorCode::InvalidParams, "one label per node expected");
  auto comp = partition.component_of(n);
  auto canon = canonical_history(input);
  auto dev = first_deviation(input, canon);
  auto timeline = canonical_components(input, partition);

  AuditReport rep;
  rep.node_count = n;
  rep.components = partition.components.size();
  rep.rounds = static_cast<Round>(input.rounds.size());
  rep.distinct_labels = std::set<LabelBits>(labels.begin(), labels.end()).size();
  auto flag = [&](const char* check, Round r, std::string detail) {
    rep.violations.push_back({check, r, std::move(detail)});
    ++rep.per_round.back().violations;
  };

  std::map<LabelBits, std::size_t> trigger_count;
  for (std::size_t i = 0; i < input.rounds.size(); ++i) {
    const Round r = static_cast<Round>(i) + 1;
    const auto& rec = input.rounds[i];
    rep.per_round.push_back({r, 0, 0, 0});

    std::vector<bool> sent(n, false);
    std::map<int, std::size_t> per_comp;
    for (const auto& [v, msg] : rec.transmitters) {
      sent.at(v) = true;
      ++per_comp[comp[v]];
    }
    std::size_t comps_sending = 0;
    for (const auto& [c, count] : per_comp)
      if (c >= 0) ++comps_sending;
    rep.per_round.back().transmitter_components = comps_sending;
    const std::size_t total = rec.transmitters.size();

    // a node that heard had at most one sender outside its component
    if (total >= 2) {
      for (Vertex w = 0; w < n; ++w) {
        if (rec.entries[w].kind != EntryKind::Message) continue;
        std::size_t outside = total - (comp[w] >= 0 ? per_comp[comp[w]] : 0);
        if (outside >= 2) flag("heard-outside", r, "node " + std::to_string(w) + " heard with two senders outside its component");
      }
    }

    // same label and canonical history, same decision
    std::map<LabelBits, std::pair<std::size_t, std::size_t>> acts;  // label -> (sent, silent)
    for (Vertex v = 0; v < n; ++v) {
      if (dev[v] <= r - 1) continue;
      auto& a = acts[labels[v]];
      (sent[v] ? a.first : a.second)++;
    }
    for (const auto& [label, a] : acts)
      if (a.first > 0 && a.second > 0) flag("same-label", r, "canonical nodes with label " + label.to_hex() + " acted differently");

    // monotone
    const auto& before = timeline.canonical[i];
    const auto& after = timeline.canonical[i + 1];
    if (!std::includes(before.begin(), before.end(), after.begin(), after.end())) flag("monotone", r, "canonical set grew");

    std::vector<std::size_t> leaving;
    std::set_difference(before.begin(), before.end(), after.begin(), after.end(), std::back_inserter(leaving));
    rep.per_round.back().departures = leaving.size();

    for (std::size_t j : leaving) {
      DepartureEvent ev{r, j, {}};
      for (const auto& [v, msg] : rec.transmitters)
        if (comp[v] == static_cast<int>(j)) {
          ev.triggers.push_back(v);
          ev.trigger_labels.push_back(labels[v]);
        }
      std::size_t outside = total - ev.triggers.size();
      if (ev.triggers.empty()) flag("departure-senders", r, "component " + std::to_string(j) + " left without a sender inside");
      if (outside > 1) flag("departure-senders", r, "component " + std::to_string(j) + " left with " + std::to_string(outside) + " senders outside");
      rep.departures.push_back(std::move(ev));
    }
    if (comps_sending >= 3 && !leaving.empty()) flag("three-components", r, "departures with senders in three components");
    if (leaving.size() > 2) flag("two-departures", r, std::to_string(leaving.size()) + " components left");

    if (!leaving.empty()) {
      const auto& first = rep.departures[rep.departures.size() - leaving.size()];
      if (!first.triggers.empty()) {
        Vertex trig = first.triggers.front();
        rep.trigger_nodes.push_back(trig);
        if (++trigger_count[labels[trig]] > 2) {
          flag("trigger-multiset", r, "label " + labels[trig].to_hex() + " triggers a third departure");
        }
      }
    }
  }
  rep.distinct_trigger_labels = trigger_count.size();
  rep.still_canonical = timeline.canonical.back().size();
  return rep;
}

AuditReport audit_facts(const ExecutionTrace& trace, const LBFamilyDescriptor& partition,
                        std::span<const LabelBits> labels) {
  return audit_facts(audit_input(trace), partition, labels);
}

nlohmann::json to_json(const AuditReport& rep) {
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& name : AuditReport::check_names()) {
    auto count = rep.violations_of(name);
    checks[name] = {{"pass", count == 0}, {"violations", count}};
  }
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : rep.violations) violations.push_back({{"check", v.check}, {"round", v.round}, {"detail", v.detail}});
  nlohmann::json departures = nlohmann::json::array();
  for (const auto& d : rep.departures) {
    nlohmann::json hex = nlohmann::json::array();
    for (const auto& l : d.trigger_labels) hex.push_back(l.to_hex());
    departures.push_back({{"round", d.round}, {"component", d.component}, {"triggers", d.triggers}, {"trigger_labels", hex}});
  }
  return {{"pass", rep.passed()},
          {"nodes", rep.node_count},
          {"components", rep.components},
          {"rounds", rep.rounds},
          {"checks", checks},
          {"violations", violations},
          {"departures", departures},
          {"trigger_nodes", rep.trigger_nodes},
          {"distinct_labels", rep.distinct_labels},
          {"distinct_trigger_labels", rep.distinct_trigger_labels},
          {"still_canonical", rep.still_canonical}};
}

void write_audit_csv(std::ostream& out, const AuditReport& rep) {
  out << "round,departures,transmitter_components,violations\n";
  for (const auto& s : rep.per_round)
    out << s.round << ',' << s.departures << ',' << s.transmitter_components << ',' << s.violations << '\n';
}

}  // namespace radiolab::lb
