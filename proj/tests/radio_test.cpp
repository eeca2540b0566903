#include <doctest.h>

#include <sstream>

#include "radiolab/error.hpp"
#include "radiolab/generators.hpp"
#include "radiolab/radio.hpp"
#include "radiolab/rng.hpp"
#include "radiolab/trace_io.hpp"

using namespace radiolab;

// Programs see no node identity: the context and history expose nothing
// beyond the label, the clock and observations.
template <class T>
concept names_node = requires(const T& x) { x.node; } || requires(const T& x) { x.node(); };
template <class T>
concept names_graph = requires(const T& x) { x.graph; } || requires(const T& x) { x.trace(); };
static_assert(!names_node<NodeContext> && !names_graph<NodeContext>);
static_assert(!names_node<HistoryView> && !names_graph<HistoryView>);
static_assert(std::is_invocable_r_v<std::unique_ptr<NodeProgram>, ProgramFactory, const LabelBits&>);
static_assert(!std::is_invocable_v<ProgramFactory, Vertex, const LabelBits&>);

namespace {

// Label "1" transmits "x" in round 1; everyone outputs what it observed.
class EchoProgram : public NodeProgram {
 public:
  explicit EchoProgram(const LabelBits& label) : sender_(label.size() == 1 && label[0]) {}
  Action act(const NodeContext& ctx) override {
    return sender_ && ctx.round == 1 ? Action::transmit("x") : Action::listen();
  }
  void observe(const NodeContext& ctx) override {
    Observation o = ctx.history.back();
    out_ = o.heard() ? "heard:" + std::string(o.message) : std::string(to_string(o.kind));
  }
  std::optional<std::string> output() const override { return out_; }
  bool idle() const override { return true; }

 private:
  bool sender_;
  std::optional<std::string> out_;
};

class LabelLengthProgram : public NodeProgram {
 public:
  explicit LabelLengthProgram(const LabelBits&) {}
  Action act(const NodeContext&) override { return Action::listen(); }
  void observe(const NodeContext& ctx) override {
    if (ctx.round == 1) out_ = std::to_string(ctx.label.size());
  }
  std::optional<std::string> output() const override { return out_; }
  bool idle() const override { return true; }

 private:
  std::optional<std::string> out_;
};

// Transmits a label-and-history dependent message; used for determinism and
// replay checks.
class ChatterProgram : public NodeProgram {
 public:
  explicit ChatterProgram(const LabelBits& label) : seed_(label.empty() ? 0 : from_binary(label)) {}
  Action act(const NodeContext& ctx) override {
    std::uint64_t mix = seed_ * 31 + static_cast<std::uint64_t>(ctx.round) * 17 + heard_;
    if (mix % 3 == 0) return Action::transmit(std::to_string(seed_) + "@" + std::to_string(ctx.round));
    return Action::listen();
  }
  void observe(const NodeContext& ctx) override {
    if (ctx.history.back().heard()) heard_ += ctx.history.back().message.size();
    if (ctx.round == 12) out_ = std::to_string(heard_);
  }
  std::optional<std::string> output() const override { return out_; }
  bool idle() const override { return out_.has_value(); }

 private:
  std::uint64_t seed_;
  std::uint64_t heard_ = 0;
  std::optional<std::string> out_;
};

std::vector<LabelBits> labels_of(std::initializer_list<const char*> bits) {
  std::vector<LabelBits> out;
  for (const char* b : bits) out.push_back(Bits::from_string(b));
  return out;
}

ProgramFactory factory_for(auto tag) {
  using P = typename decltype(tag)::type;
  return [](const LabelBits& l) { return std::make_unique<P>(l); };
}

template <class T>
struct type_tag {
  using type = T;
};

}  // namespace

TEST_CASE("observation rules") {
  Graph g = make_star(4);  // center 0
  std::vector<Transmission> none;
  CHECK(observation(0, none, g, false, false).kind == ObservationKind::Noise);
  CHECK(observation(0, none, g, true, false).kind == ObservationKind::Silence);

  std::vector<Transmission> two{{1, "a"}, {2, "b"}};
  CHECK(observation(0, two, g, true, false).kind == ObservationKind::Collision);
  CHECK(observation(0, two, g, false, false).kind == ObservationKind::Noise);

  std::vector<Transmission> one{{1, "m"}};
  for (bool cd : {false, true}) {
    Observation o = observation(0, one, g, cd, false);
    CHECK(o.kind == ObservationKind::Heard);
    CHECK(o.message == "m");
  }
  CHECK(observation(1, one, g, false, true).kind == ObservationKind::Transmitted);
  // Non-neighbors transmitting do not count.
  CHECK(observation(2, one, g, true, false).kind == ObservationKind::Silence);
}

TEST_CASE("no-CD cannot tell silence from collision") {
  Graph g = make_star(6);
  std::vector<Transmission> zero;
  std::vector<Transmission> pair{{3, "p"}, {5, "q"}};
  CHECK(observation(0, zero, g, false, false).kind == observation(0, pair, g, false, false).kind);
}

TEST_CASE("run examples") {
  Graph single = make_path(1);
  auto l1 = labels_of({"101"});
  auto t1 = run(single, l1, factory_for(type_tag<LabelLengthProgram>{}));
  CHECK(t1.rounds() == 1);
  CHECK(t1.output(0) == "3");

  Graph p2 = make_path(2);
  auto t2 = run(p2, labels_of({"1", "0"}), factory_for(type_tag<EchoProgram>{}));
  CHECK(t2.output(1) == "heard:x");
  CHECK(t2.output(0) == "transmitted");

  Graph p3 = make_path(3);
  auto t3 = run(p3, labels_of({"1", "0", "1"}), factory_for(type_tag<EchoProgram>{}));
  CHECK(t3.output(1) == "noise");
  auto t3cd = run(p3, labels_of({"1", "0", "1"}), factory_for(type_tag<EchoProgram>{}), {.collision_detection = true});
  CHECK(t3cd.output(1) == "collision");
}

TEST_CASE("round limit") {
  class Mute : public NodeProgram {
   public:
    explicit Mute(const LabelBits&) {}
    Action act(const NodeContext&) override { return Action::listen(); }
    void observe(const NodeContext&) override {}
    std::optional<std::string> output() const override { return std::nullopt; }
    bool idle() const override { return true; }
  };
  Graph g = make_path(2);
  auto labels = labels_of({"", ""});
  try {
    run(g, labels, [](const LabelBits& l) { return std::make_unique<Mute>(l); }, {.max_rounds = 5});
    FAIL("expected RoundLimitExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RoundLimitExceeded);
  }
}

TEST_CASE("history_of in CD mode") {
  Graph p2 = make_path(2);
  auto labels = labels_of({"1", "0"});
  auto trace = run(p2, labels, factory_for(type_tag<EchoProgram>{}), {.collision_detection = true});
  History h0 = history_of(trace, 0);
  REQUIRE(h0.size() == 1);
  CHECK(history_symbol(h0[0]) == "#");
  History h1 = history_of(trace, 1);
  CHECK(history_symbol(h1[0]) == "x");

  Graph p3 = make_path(3);
  auto quiet = run(p3, labels_of({"0", "0", "0"}), factory_for(type_tag<EchoProgram>{}), {.collision_detection = true});
  for (Vertex v = 0; v < 3; ++v) CHECK(history_symbol(history_of(quiet, v)[0]) == "ε");
}

TEST_CASE("determinism and replay") {
  Graph g = gen_random_connected(30, 0.15, 11);
  std::vector<LabelBits> labels;
  for (std::uint64_t v = 0; v < g.size(); ++v) labels.push_back(to_binary(v % 7));
  for (bool cd : {false, true}) {
    auto a = run(g, labels, factory_for(type_tag<ChatterProgram>{}), {.collision_detection = cd});
    auto b = run(g, labels, factory_for(type_tag<ChatterProgram>{}), {.collision_detection = cd});
    REQUIRE(a.rounds() == b.rounds());
    std::ostringstream da, db;
    write_trace_jsonl(da, a);
    write_trace_jsonl(db, b);
    CHECK(da.str() == db.str());

    // Replay every round through the stand-alone observation rule.
    for (Round r = 1; r <= a.rounds(); ++r) {
      auto tx = a.transmitters(r);
      for (Vertex v = 0; v < g.size(); ++v) {
        Observation replay = observation(v, tx, g, cd, a.transmitted(r, v));
        Observation stored = a.observation_at(r, v);
        CHECK(replay.kind == stored.kind);
        CHECK(replay.message == stored.message);
      }
    }
  }
}
