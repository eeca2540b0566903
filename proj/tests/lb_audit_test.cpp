#include <doctest.h>

#include <sstream>

#include "radiolab/compact_sd.hpp"
#include "radiolab/error.hpp"
#include "radiolab/generators.hpp"
#include "radiolab/lb_audit.hpp"
#include "radiolab/toprec.hpp"

using namespace radiolab;
using namespace radiolab::lb;

namespace {

Entry msg(std::string m) { return {EntryKind::Message, std::move(m)}; }
Entry hash() { return {EntryKind::Hash, {}}; }
Entry quiet() { return {EntryKind::Silence, {}}; }

// Three components {0,1} {2,3} {4,5}.
LBFamilyDescriptor three_pairs() {
  LBFamilyDescriptor d;
  d.n = 6;
  d.components = {{0, 1}, {2, 3}, {4, 5}};
  return d;
}

std::vector<LabelBits> labels_of(std::initializer_list<const char*> bits) {
  std::vector<LabelBits> out;
  for (auto b : bits) out.push_back(Bits::from_string(b));
  return out;
}

}  // namespace

TEST_CASE("canonical history from sender counts") {
  AuditInput in;
  in.node_count = 6;
  in.rounds.push_back({{}, std::vector<Entry>(6, quiet())});
  in.rounds.push_back({{{0, "x"}}, {hash(), msg("x"), msg("x"), msg("x"), msg("x"), msg("x")}});
  in.rounds.push_back({{{1, "a"}, {3, "b"}}, {msg("b"), hash(), msg("a"), hash(), hash(), hash()}});
  auto h = canonical_history(in);
  REQUIRE(h.size() == 3);
  CHECK(h[0] == quiet());
  CHECK(h[1] == msg("x"));
  CHECK(h[2] == hash());
  // a literal "#" message is not a collision
  CHECK_FALSE(msg("#") == hash());
}

TEST_CASE("component departures and sender counts on a hand-built run") {
  AuditInput in;
  in.node_count = 6;
  // round 1: node 0 sends alone, everybody else hears it; node 0 records #
  in.rounds.push_back({{{0, "x"}}, {hash(), msg("x"), msg("x"), msg("x"), msg("x"), msg("x")}});
  // round 2: nodes 1 and 3 send, node 0 hears 3, node 2 hears 1
  in.rounds.push_back({{{1, "a"}, {3, "b"}}, {msg("b"), hash(), msg("a"), hash(), hash(), hash()}});
  auto t = canonical_components(in, three_pairs());
  REQUIRE(t.canonical.size() == 3);
  // a lone sender records # against the canonical "x" and leaves
  CHECK(t.canonical[0] == std::vector<std::size_t>{0, 1, 2});
  CHECK(t.canonical[1] == std::vector<std::size_t>{1, 2});
  CHECK(t.canonical[2] == std::vector<std::size_t>{2});
  CHECK(t.left_in == std::vector<Round>{1, 2, 0});

  auto rep = audit_facts(in, three_pairs(), labels_of({"0", "1", "10", "11", "100", "101"}));
  CHECK(rep.passed());
  REQUIRE(rep.departures.size() == 2);
  CHECK(rep.departures[0].triggers == std::vector<Vertex>{0});
  CHECK(rep.departures[1].triggers == std::vector<Vertex>{3});
  CHECK(rep.trigger_nodes == std::vector<Vertex>{0, 3});
  CHECK(rep.per_round[0].departures == 1);
  CHECK(rep.per_round[1].departures == 1);
  CHECK(rep.per_round[1].transmitter_components == 2);
  CHECK(rep.still_canonical == 1);
  CHECK(rep.distinct_labels == 6);
}

TEST_CASE("negative control: three components leave in one round") {
  AuditInput in;
  in.node_count = 6;
  // physically impossible: three senders and yet three nodes hear one
  in.rounds.push_back({{{0, "a"}, {2, "b"}, {4, "c"}}, {hash(), msg("c"), hash(), msg("a"), hash(), msg("b")}});
  auto rep = audit_facts(in, three_pairs(), labels_of({"0", "1", "10", "11", "100", "101"}));
  CHECK_FALSE(rep.passed());
  CHECK(rep.violations_of("two-departures") == 1);
  CHECK(rep.violations_of("three-components") == 1);
  CHECK(rep.violations_of("heard-outside") == 3);
  CHECK(rep.violations_of("departure-senders") == 3);
  auto j = to_json(rep);
  CHECK(j["pass"] == false);
  CHECK(j["checks"]["two-departures"]["pass"] == false);
  CHECK(j["checks"]["same-label"]["pass"] == true);
}

TEST_CASE("same-label check and the trigger multiset on hand-built runs") {
  AuditInput in;
  in.node_count = 6;
  // nodes 0 and 2 share a label, only 0 sends
  in.rounds.push_back({{{0, "x"}}, {hash(), msg("x"), msg("x"), msg("x"), msg("x"), msg("x")}});
  auto rep = audit_facts(in, three_pairs(), labels_of({"1", "0", "1", "11", "100", "101"}));
  CHECK(rep.violations_of("same-label") == 1);

  // one label triggers three departures in three rounds
  AuditInput t;
  t.node_count = 6;
  t.rounds.push_back({{{0, "p"}, {2, "q"}}, {msg("q"), hash(), hash(), hash(), hash(), hash()}});
  t.rounds.push_back({{{2, "p"}, {4, "q"}}, {hash(), hash(), msg("q"), hash(), hash(), hash()}});
  t.rounds.push_back({{{4, "p"}, {0, "q"}}, {hash(), hash(), hash(), hash(), msg("q"), hash()}});
  auto labels = labels_of({"1", "0", "1", "0", "1", "0"});
  auto r2 = audit_facts(t, three_pairs(), labels);
  CHECK(r2.trigger_nodes == std::vector<Vertex>{0, 2, 4});
  CHECK(r2.violations_of("trigger-multiset") == 1);
  CHECK(r2.distinct_trigger_labels == 1);
}

TEST_CASE("audits reject runs without collision detection") {
  auto [g, desc] = gen_lb_family(16);
  auto b = sd::build_general_sd(g);
  auto tr = run(g, b.labels, [](const LabelBits& l) { return sd::general_sd_program(l); });
  CHECK_THROWS_AS(audit_input(tr), Error);
}

TEST_CASE("topology recognition on G_36 satisfies every audited fact") {
  auto [g, desc] = gen_lb_family(36);
  auto b = topo::build_toprec_labels(g);
  auto tr = run(g, b.labels, [](const LabelBits& l) { return topo::toprec_program(l); }, RunOptions{true, {}});
  auto rep = audit_facts(tr, desc, b.labels);
  for (const auto& v : rep.violations) INFO(v.check, " r", v.round, ": ", v.detail);
  CHECK(rep.passed());
  CHECK(rep.components == 6);
  CHECK(rep.rounds == tr.rounds());
  // everybody learns the whole graph, so every component must have left
  CHECK(rep.still_canonical == 0);
  CHECK(rep.trigger_nodes.size() >= 3);
  std::ostringstream csv;
  write_audit_csv(csv, rep);
  CHECK(csv.str().rfind("round,departures,transmitter_components,violations\n", 0) == 0);
}

TEST_CASE("size discovery on G_16 satisfies every audited fact") {
  auto [g, desc] = gen_lb_family(16);
  auto b = sd::build_general_sd(g);
  auto tr = run(g, b.labels, [](const LabelBits& l) { return sd::general_sd_program(l); }, RunOptions{true, {}});
  auto rep = audit_facts(tr, desc, b.labels);
  for (const auto& v : rep.violations) INFO(v.check, " r", v.round, ": ", v.detail);
  CHECK(rep.passed());
  for (Vertex v = 0; v < g.size(); ++v) CHECK(tr.output(v) == "16");
}
