#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>
#include <vector>

#include "aamsim/aam.h"
#include "aamsim/analysis.h"
#include "aamsim/errors.h"
#include "aamsim/rng.h"
#include "aamsim/time.h"
#include "doctest.h"
#include "oracles.h"

using namespace aamsim;

namespace {

const DetectorModel kPerfect{1.0, 1.0, 20};

std::vector<PacketRecord> Stream(const std::vector<PacketClass>& cls) {
  std::vector<PacketRecord> s;
  for (std::size_t k = 0; k < cls.size(); ++k)
    s.push_back({static_cast<std::int64_t>(k), static_cast<Nanos>(k) * kNanosPerMilli,
                 cls[k], cls[k] == PacketClass::kAttack ? 9 : 1});
  return s;
}

std::vector<PacketClass> AttackThenBenign(std::int64_t x, std::int64_t benign) {
  std::vector<PacketClass> c(static_cast<std::size_t>(x), PacketClass::kAttack);
  c.resize(static_cast<std::size_t>(x + benign), PacketClass::kBenign);
  return c;
}

AamConfig Config(int w, std::int64_t m, SkippedOnClear skipped = SkippedOnClear::kDrop) {
  return {w, MPolicy::Fixed(m), skipped};
}

std::vector<bool> Truth(const std::vector<PacketClass>& c) {
  std::vector<bool> v(c.size() + 1, false);
  for (std::size_t k = 0; k < c.size(); ++k) v[k + 1] = c[k] == PacketClass::kAttack;
  return v;
}

oracle::Outcome Map(Disposition d) {
  switch (d) {
    case Disposition::kTestedForwarded: return oracle::Outcome::kTested;
    case Disposition::kForwarded: return oracle::Outcome::kForwarded;
    case Disposition::kDropped: return oracle::Outcome::kDropped;
    default: return oracle::Outcome::kNone;
  }
}

void CheckAgainstOracle(const std::vector<PacketClass>& cls, int w, std::int64_t m,
                        SkippedOnClear skipped) {
  RngStream rng(1, 1);
  DetectorModel det{1.0, 1.0, w};
  auto run = RunAam(Stream(cls), det, Config(w, m, skipped), rng);
  auto ref = oracle::StepThroughAam(Truth(cls), static_cast<std::int64_t>(cls.size()), w, m,
                                    skipped == SkippedOnClear::kDrop);
  REQUIRE(run.dispositions.size() == cls.size());
  for (std::size_t k = 0; k < cls.size(); ++k) {
    INFO("packet " << k + 1);
    REQUIRE(Map(run.dispositions[k]) == ref.outcome[k + 1]);
  }
  REQUIRE(run.state.counters.windows_tested == ref.windows);
  REQUIRE(run.state.counters.attack_verdicts == ref.attack_windows);
  REQUIRE(run.state.counters.packets_dropped == ref.dropped);
}

}  // namespace

TEST_CASE("benign stream is never dropped") {
  RngStream rng(2, 1);
  auto run = RunAam(Stream(AttackThenBenign(0, 1000)), kPerfect, Config(20, 100), rng);
  CHECK(run.state.counters.packets_dropped == 0);
  CHECK(run.state.counters.attack_verdicts == 0);
  for (Disposition d : run.dispositions)
    CHECK((d == Disposition::kTestedForwarded || d == Disposition::kForwarded));
}

TEST_CASE("aligned attack of 1000 packets, W = 20, m = 100") {
  const auto cls = AttackThenBenign(1000, 1000);
  RngStream rng(3, 1);
  auto run = RunAam(Stream(cls), kPerfect, Config(20, 100), rng);
  const AamCounters& c = run.state.counters;
  // windows start at 1 + 119 k; the one at 1072 is the first clear one
  // windows of the episode: the first plus those tested under attack, the
  // last of which is the clear one at packet 1072
  CHECK(1 + c.windows_under_attack == 10);
  CHECK(c.attack_verdicts == 9);
  CHECK(c.windows_under_attack == 9);
  CHECK(c.alarms == 1);
  CHECK(c.packets_dropped == 1071);
  CHECK(c.attack_dropped == 1000);
  CHECK(c.benign_dropped == 71);
  CHECK(ExactWindows(1000, 20, 100) == c.windows_under_attack);
  CHECK(std::llabs(c.packets_dropped - ExactDrops(9, 20, 100)) <= 120);

  RngStream rng2(3, 1);
  auto fwd = RunAam(Stream(cls), kPerfect, Config(20, 100, SkippedOnClear::kForward), rng2);
  CHECK(fwd.state.counters.packets_dropped == 972);
  CHECK(fwd.state.counters.windows_under_attack == c.windows_under_attack);

  CheckAgainstOracle(cls, 20, 100, SkippedOnClear::kDrop);
  CheckAgainstOracle(cls, 20, 100, SkippedOnClear::kForward);
}

TEST_CASE("index machine matches the step-through oracle on random streams") {
  RngStream rng(4, 1);
  for (int inst = 0; inst < 400; ++inst) {
    const int w = 1 + static_cast<int>(rng.NextU64() % 25);
    const std::int64_t m = 1 + static_cast<std::int64_t>(rng.NextU64() % 150);
    std::vector<PacketClass> cls;
    const int n = 1 + static_cast<int>(rng.NextU64() % 1500);
    bool attack = rng.Bernoulli(0.5);
    while (static_cast<int>(cls.size()) < n) {
      const int run_len = 1 + static_cast<int>(rng.NextU64() % 300);
      for (int k = 0; k < run_len && static_cast<int>(cls.size()) < n; ++k)
        cls.push_back(attack != rng.Bernoulli(0.1) ? PacketClass::kAttack : PacketClass::kBenign);
      attack = !attack;
    }
    CheckAgainstOracle(cls, w, m, rng.Bernoulli(0.5) ? SkippedOnClear::kDrop
                                                     : SkippedOnClear::kForward);
  }
}

TEST_CASE("short attack cannot reach a majority") {
  // 10 attack packets never make more than half of a 20-packet window
  for (int offset = 0; offset < 40; ++offset) {
    std::vector<PacketClass> cls(500, PacketClass::kBenign);
    std::fill_n(cls.begin() + 100 + offset, 10, PacketClass::kAttack);
    RngStream rng(5, 1);
    auto run = RunAam(Stream(cls), kPerfect, Config(20, 50), rng);
    REQUIRE(run.state.counters.attack_verdicts == 0);
    REQUIRE(run.state.counters.packets_dropped == 0);
  }
}

TEST_CASE("first window under attack drops the first W packets") {
  RngStream rng(6, 1);
  auto run = RunAam(Stream(AttackThenBenign(30, 300)), kPerfect, Config(20, 5), rng);
  for (int k = 0; k < 20; ++k) CHECK(run.dispositions[k] == Disposition::kDropped);
  REQUIRE_FALSE(run.events.empty());
  CHECK(run.events.front().kind == AamEventKind::kWindowAttack);
  CHECK(run.events.front().from_seq == 1);
  CHECK(run.events.front().to_seq == 20);
}

TEST_CASE("trailing window rule") {
  const int w = 20;
  // 20 + 9 packets: the 9-packet tail is below ceil(W/2) and goes untested
  RngStream r1(7, 1);
  auto a = RunAam(Stream(AttackThenBenign(0, w + 9)), kPerfect, Config(w, 10), r1);
  CHECK(a.state.counters.windows_tested == 1);
  for (int k = w; k < w + 9; ++k) CHECK(a.dispositions[k] == Disposition::kForwarded);
  // 20 + 10 packets: the tail is tested
  RngStream r2(7, 1);
  auto b = RunAam(Stream(AttackThenBenign(0, w + 10)), kPerfect, Config(w, 10), r2);
  CHECK(b.state.counters.windows_tested == 2);
  for (int k = w; k < w + 10; ++k) CHECK(b.dispositions[k] == Disposition::kTestedForwarded);
  // an attacking tail is dropped
  std::vector<PacketClass> tail(w, PacketClass::kBenign);
  tail.resize(w + 12, PacketClass::kAttack);
  RngStream r3(7, 1);
  auto c = RunAam(Stream(tail), kPerfect, Config(w, 10), r3);
  for (int k = w; k < w + 12; ++k) CHECK(c.dispositions[k] == Disposition::kDropped);
  CHECK(MinTrailingWindow(20) == 10);
  CHECK(MinTrailingWindow(9) == 5);
}

TEST_CASE("partition and counter invariants with a noisy detector") {
  RngStream rng(8, 1);
  DetectorModel det{0.9973, 0.9848, 9};
  for (int inst = 0; inst < 50; ++inst) {
    std::vector<PacketClass> cls;
    for (int k = 0; k < 3000; ++k)
      cls.push_back(k > 1000 && k < 2000 ? PacketClass::kAttack : PacketClass::kBenign);
    auto run = RunAam(Stream(cls), det, {9, MPolicy::Fixed(40), SkippedOnClear::kDrop}, rng);
    const AamCounters& c = run.state.counters;
    std::int64_t tested = 0, fwd = 0, drop = 0;
    for (Disposition d : run.dispositions) {
      REQUIRE(d != Disposition::kUndecided);
      tested += d == Disposition::kTestedForwarded;
      fwd += d == Disposition::kForwarded;
      drop += d == Disposition::kDropped;
    }
    REQUIRE(tested + fwd + drop == 3000);
    REQUIRE(c.packets_dropped == drop);
    REQUIRE(c.packets_dropped == c.benign_dropped + c.attack_dropped);
    REQUIRE(c.packets_forwarded == tested + fwd);
    REQUIRE(run.state.j <= run.state.i);
  }
}

TEST_CASE("drops only follow an attack verdict") {
  RngStream rng(9, 1);
  DetectorModel det{0.9973, 0.9848, 9};
  std::vector<PacketClass> cls;
  for (int k = 0; k < 5000; ++k)
    cls.push_back(k % 700 < 300 ? PacketClass::kAttack : PacketClass::kBenign);
  auto run = RunAam(Stream(cls), det, {9, MPolicy::Fixed(30), SkippedOnClear::kDrop}, rng);
  // every dropped packet lies in a DROP_RANGE logged at or after an ATTACK verdict
  std::vector<bool> covered(cls.size(), false);
  bool seen_attack = false;
  for (const AamEvent& e : run.events) {
    if (e.kind == AamEventKind::kWindowAttack) seen_attack = true;
    if (e.kind == AamEventKind::kDropRange) {
      REQUIRE(seen_attack);
      for (std::int64_t s = e.from_seq; s <= e.to_seq; ++s) covered[static_cast<std::size_t>(s - 1)] = true;
    }
  }
  for (std::size_t k = 0; k < cls.size(); ++k)
    if (run.dispositions[k] == Disposition::kDropped) REQUIRE(covered[k]);
}

TEST_CASE("optimal m closed form") {
  CHECK(OptimalM(20, 0.05, 10'805) == 127);
  CHECK(OptimalM(20, 0.05, 35'932) == 248);
  CHECK(OptimalM(20, 0.05, 20 + 20.0 * 20 / 2) == 1);  // algebraic zero
  CHECK(OptimalM(20, 0.05, 20) == 1);
  CHECK(OptimalM(20, 0.05, 5) == 1);
  CHECK(OptimalMContinuous(20, 0.05, 10'805) ==
        doctest::Approx(std::sqrt(2 * 0.05 * 20 * 10'785.0) - 20));
  // m* takes neither f nor tau
  static_assert(std::is_same_v<decltype(&OptimalM),
                               std::int64_t (*)(std::int64_t, double, double)>);
  CHECK(EstimateEx(10'805) == 10'805.0);
  CHECK(EstimateEx(0) == 0.0);
}

TEST_CASE("optimal policy recalculates m from the queue estimate") {
  // the attack arrives at once, so the queue estimate at the first alarm is
  // the whole backlog of 10805 packets
  std::vector<PacketRecord> s;
  for (int k = 0; k < 12'000; ++k) {
    const bool attack = k < 10'805;
    s.push_back({k, attack ? 0 : kNanosPerSecond + k * kNanosPerMilli,
                 attack ? PacketClass::kAttack : PacketClass::kBenign, 9});
  }
  RngStream rng(10, 1);
  auto run = RunAam(s, kPerfect, {20, MPolicy::Optimal(0.05), SkippedOnClear::kDrop}, rng);
  std::vector<AamEvent> recalc;
  for (const AamEvent& e : run.events)
    if (e.kind == AamEventKind::kRecalcM) recalc.push_back(e);
  REQUIRE(recalc.size() == 1);
  CHECK(recalc[0].m_value == 127);

  RngStream rng2(10, 1);
  MPolicy every = MPolicy::Optimal(0.05);
  every.cadence = MPolicy::Cadence::kEveryAttack;
  auto run2 = RunAam(s, kPerfect, {20, every, SkippedOnClear::kDrop}, rng2);
  std::int64_t n_recalc = 0;
  for (const AamEvent& e : run2.events) n_recalc += e.kind == AamEventKind::kRecalcM;
  CHECK(n_recalc == run2.state.counters.attack_verdicts);
}

TEST_CASE("tiny queue estimate falls back to m = 1 with a warning") {
  std::vector<PacketRecord> s;
  for (int k = 0; k < 200; ++k)
    s.push_back({k, static_cast<Nanos>(k) * kNanosPerSecond, PacketClass::kAttack, 9});
  RngStream rng(11, 1);
  auto run = RunAam(s, kPerfect, {20, MPolicy::Optimal(0.05), SkippedOnClear::kDrop}, rng);
  CHECK_FALSE(run.warnings.empty());
  CHECK(run.state.m == 1);
}

TEST_CASE("event log csv") {
  RngStream rng(12, 1);
  auto run = RunAam(Stream(AttackThenBenign(100, 100)), kPerfect, Config(20, 10), rng);
  std::ostringstream os;
  WriteEventLogCsv(os, run.events);
  const std::string csv = os.str();
  CHECK(csv.rfind("event_time_s,event,from_seq,to_seq,m_value\n", 0) == 0);
  CHECK(csv.find("WINDOW_ATTACK") != std::string::npos);
  CHECK(csv.find("DROP_RANGE") != std::string::npos);
  CHECK(csv.find("WINDOW_CLEAR") != std::string::npos);
}

TEST_CASE("configuration checks") {
  CHECK_THROWS_AS(Config(0, 10).Validate(), ConfigError);
  CHECK_THROWS_AS(Config(20, 0).Validate(), ConfigError);
  RngStream rng(13, 1);
  CHECK_THROWS_AS(RunAam(std::vector<PacketRecord>{}, kPerfect, Config(20, 10), rng),
                  PreconditionError);
}
