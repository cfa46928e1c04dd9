#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "s2t/engine.hpp"
#include "s2t/partial_action.hpp"

using namespace s2t;
using fixtures::w;

namespace {

constexpr PointId P(std::uint32_t v) { return PointId{v}; }

ActionState initial(const char* name) { return ActionState(fixtures::action(name)); }

using Clause = PreconditionError::Clause;

// Runs `op`, which must be rejected with `clause`, and checks the state is
// untouched.
template <class F>
void expect_rejected(ActionState& st, Clause clause, F&& op) {
  const std::string before = state_hash(st);
  try {
    op();
    FAIL("operation was not rejected");
  } catch (const PreconditionError& e) {
    CHECK_MESSAGE(e.clause() == clause, e.what());
  }
  CHECK(state_hash(st) == before);
}

void check_good(const ActionState& st, std::size_t length) {
  const GoodnessReport r = check_goodness_bounded(st, length);
  CHECK(r.good());
  for (const Violation& v : r.violations) MESSAGE(v.detail);
}

using Entries = std::vector<std::tuple<GeneratorKind, std::uint32_t, PointId, PointId>>;

Entries entries(const ActionState& st) {
  Entries out;
  for (const auto* maps : {&st.s_maps(), &st.r_maps()}) {
    for (const GeneratorMap& m : *maps) {
      for (const auto& [x, y] : m.forward) out.emplace_back(m.kind, m.index, x, y);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("act and pair_act: documented examples") {
  const ActionState st = initial("c2");
  const PointId x = st.base_point(0);
  CHECK(st.act(x, w("")) == x);
  CHECK(st.act(x, w("g1 g1")) == x);
  CHECK(st.act(x, w("g1")) == P(1));
  CHECK_FALSE(st.act(x, w("s0")));
  const PairRef a{x, st.times_t(x)};
  CHECK(st.pair_act(a, w("g1")) == a.flip());
  CHECK(st.pair_act(a, w("")) == a);
  CHECK_THROWS_AS(st.act(P(2), w("")), PreconditionError);
}

TEST_CASE("extend_s: documented examples") {
  ActionState st = initial("c2");
  const PointId x = st.base_point(0);
  st.extend_s(x, 0, 1);
  CHECK(st.point_count() == 4);
  CHECK(st.orbit_count() == 1);
  CHECK(st.act(x, w("s0")) == st.orbit_point(0, st.group().identity()));
  CHECK(st.act(x, w("s0")) == P(2));
  CHECK(st.act(st.times_t(x), w("s0")) == st.orbit_point(0, st.group().t()));
  CHECK(st.act(P(3), w("S0")) == P(1));
  CHECK(st.point_name(P(3)) == "o0.1");
  expect_rejected(st, Clause::AlreadyDefined, [&] { st.extend_s(x, 0, 1); });
  expect_rejected(st, Clause::AlreadyDefined, [&] { st.extend_s(st.times_t(x), 0, 1); });
  expect_rejected(st, Clause::InvalidSign, [&] { st.extend_s(x, 1, 0); });
  expect_rejected(st, Clause::UnknownPoint, [&] { st.extend_s(P(9), 1, 1); });
  check_good(st, 4);
  CHECK(oracles::brute_force_goodness(st, 4).good());

  st.extend_s(P(2), 0, 1);
  CHECK(st.act(x, w("s0 s0")) == P(4));
  st.extend_s(x, 0, -1);
  CHECK(st.act(x, w("S0")) == P(6));
  check_good(st, 6);
}

TEST_CASE("extend_r: documented examples") {
  ActionState st = initial("c2");
  const PointId x = st.base_point(0);
  st.extend_r(x, 0, 1);
  CHECK(st.act(x, w("r0")) == st.orbit_point(0, st.group().identity()));
  CHECK_FALSE(st.act(st.times_t(x), w("r0")));
  CHECK(st.point_count() == 2 + st.group().order());
  expect_rejected(st, Clause::AlreadyDefined, [&] { st.extend_r(x, 0, 1); });
  expect_rejected(st, Clause::AlreadyDefined, [&] { st.extend_r(P(2), 0, -1); });
  check_good(st, 4);
  CHECK(oracles::brute_force_goodness(st, 4).good());

  ActionState s3 = initial("s3");
  s3.extend_r(P(0), 0, -1);
  CHECK(s3.point_count() == 12);
  CHECK(s3.act(P(6), w("r0")) == P(0));
  check_good(s3, 4);
}

TEST_CASE("join_t_pairs: documented examples") {
  ActionState st = initial("c2");
  st.extend_r(P(0), 0, 1);  // isolated t-pair (2, 3)
  const PairRef a{P(0), P(1)};
  const PairRef b{P(2), P(3)};
  REQUIRE_FALSE(connected(st, a, b));
  st.join_t_pairs(a, b, st.next_s());
  CHECK(st.next_s() == 1);
  const auto g = connected(st, a, b);
  REQUIRE(g);
  CHECK(format_word(*g) == "s0");
  CHECK(st.act(P(1), w("s0")) == P(3));
  expect_rejected(st, Clause::AlreadyConnected, [&] { st.join_t_pairs(a, b, 1); });
  expect_rejected(st, Clause::GeneratorNotFresh, [&] { st.join_t_pairs(a, b, 0); });
  expect_rejected(st, Clause::NotTPair, [&] { st.join_t_pairs(a, PairRef{P(0), P(2)}, 1); });
  check_good(st, 6);
  CHECK(oracles::brute_force_goodness(st, 4).good());

  st.extend_r(P(1), 0, 1);  // another isolated t-pair (4, 5)
  expect_rejected(st, Clause::GeneratorNotFresh, [&] { st.join_t_pairs(a, PairRef{P(4), P(5)}, 0); });
  st.join_t_pairs(PairRef{P(5), P(4)}, a, 1);
  check_good(st, 6);
}

TEST_CASE("join_pairs: documented examples") {
  ActionState st = initial("c2");
  st.extend_r(P(0), 0, 1);  // orbit {2, 3}, 0 r0 = 2
  const PairRef a{P(0), P(1)};
  const PairRef b{P(0), P(2)};
  REQUIRE_FALSE(flippable(st, b));
  REQUIRE_FALSE(connected(st, a, b));

  expect_rejected(st, Clause::Flippable, [&] { st.join_pairs(a, PairRef{P(2), P(3)}, 1); });
  expect_rejected(st, Clause::ConnectedToFlip, [&] { st.join_pairs(b, b.flip(), 1); });
  expect_rejected(st, Clause::AlreadyConnected, [&] { st.join_pairs(a, a.flip(), 1); });
  expect_rejected(st, Clause::GeneratorNotFresh, [&] { st.join_pairs(a, b, 0); });
  expect_rejected(st, Clause::UnknownPoint, [&] { st.join_pairs(a, PairRef{P(0), P(0)}, 1); });

  st.join_pairs(a, b, st.next_r());
  CHECK(st.act(P(0), w("r1")) == P(0));
  CHECK(st.act(P(1), w("r1")) == P(2));
  const auto g = flippable(st, b);
  REQUIRE(g);
  CHECK(format_word(*g) == "R1 g1 r1");
  CHECK(is_conjugate_to_t(*g, st.group()));
  CHECK(multiply(*g, *g, st.group()).empty());
  expect_rejected(st, Clause::AlreadyConnected, [&] { st.join_pairs(a, b, 2); });
  check_good(st, 6);
  CHECK(oracles::brute_force_goodness(st, 4).good());
}

TEST_CASE("connected and flippable: documented examples") {
  const ActionState st = initial("c2");
  const PairRef a{P(0), P(1)};
  CHECK(connected(st, a, a) == NormalForm{});
  CHECK(format_word(*connected(st, a, a.flip())) == "g1");
  CHECK(format_word(*flippable(st, a)) == "g1");

  ActionState s3 = initial("s3");
  s3.extend_r(P(0), 0, 1);
  const PointId fresh = s3.orbit_point(0, 0);
  for (ElementId g = 1; g < 6; ++g) {
    CAPTURE(g);
    const PairRef b{fresh, s3.orbit_point(0, g)};
    const auto witness = flippable(s3, b);
    if (s3.group().is_involution(g)) {
      REQUIRE(witness);
      CHECK(format_word(*witness) == "g" + std::to_string(g));
    } else {
      CHECK_FALSE(witness);
    }
  }
}

TEST_CASE("t_pairs: documented examples") {
  ActionState c2 = initial("c2");
  CHECK(t_pairs(c2).size() == 2);
  c2.extend_s(P(0), 0, 1);
  CHECK(t_pairs(c2).size() == 4);
  const ActionState s3 = initial("s3");
  CHECK(t_pairs(s3).size() == 6);
  for (const PairRef& p : t_pairs(s3)) CHECK(s3.is_t_pair(p));
}

TEST_CASE("PairComponents agrees with connected") {
  std::mt19937_64 rng(21);
  ActionState st = initial("c2");
  oracles::random_extensions(st, rng, 12);
  PairComponents pc(st);
  const auto pairs = pairs_in_order(st, 60);
  for (const PairRef& a : pairs) {
    for (const PairRef& b : pairs) {
      CHECK(pc.same(a, b) == connected(st, a, b).has_value());
    }
    CHECK(pc.flippable(a) == flippable(st, a).has_value());
  }
  std::size_t total = 0;
  for (const PairRef& a : pairs) total += pc.size_of(a) > 0;
  CHECK(total == pairs.size());
}

TEST_CASE("broken injectivity is reported as a stabilizer violation") {
  ActionState st = initial("c2");
  st.restore_orbits(1);
  st.restore_entry(GeneratorKind::R, 0, P(0), P(2));
  st.restore_entry(GeneratorKind::R, 0, P(1), P(2));
  const GoodnessReport r = check_goodness_bounded(st, 4);
  REQUIRE_FALSE(r.good());
  CHECK(r.violations.front().clause == 1);
  CHECK(r.violations.front().detail.find("not injective") != std::string::npos);
}

TEST_CASE("pair-level violations are found by the verifier and the brute-force oracle") {
  // x s0 = x fixes the t-pair (x, xt).
  ActionState loop = initial("c2");
  loop.restore_entry(GeneratorKind::S, 0, P(0), P(0));
  loop.restore_entry(GeneratorKind::S, 0, P(1), P(1));
  const GoodnessReport r = check_goodness_bounded(loop, 3);
  REQUIRE_FALSE(r.good());
  const auto stabilized = std::find_if(r.violations.begin(), r.violations.end(), [](const Violation& v) {
    return v.clause == 1 && format_word(v.word) == "s0";
  });
  CHECK(stabilized != r.violations.end());
  CHECK(oracles::brute_force_goodness(loop, 3).stabilizers > 0);

  // r0 swapping 0 and 1 flips (0, 1) by an element of infinite order.
  ActionState swap = initial("c2");
  swap.restore_entry(GeneratorKind::R, 0, P(0), P(1));
  swap.restore_entry(GeneratorKind::R, 0, P(1), P(0));
  const GoodnessReport s = check_goodness_bounded(swap, 3);
  bool clause2 = false;
  for (const Violation& v : s.violations) clause2 = clause2 || v.clause == 2;
  CHECK(clause2);
  CHECK(oracles::brute_force_goodness(swap, 3).bad_flips > 0);

  // t with a fixed point.
  ActionState fixed(BaseAction::validate(fixtures::group("c2"), 3, {0, 1, 1, 0, 2, 2}));
  const GoodnessReport f = check_goodness_bounded(fixed, 2);
  REQUIRE_FALSE(f.good());
  CHECK(f.violations.front().clause == 3);
  CHECK_THROWS_AS(check_goodness_bounded(fixed, 0), std::invalid_argument);
}

TEST_CASE("missing t-compatible entries are reported") {
  ActionState st = initial("c2");
  st.restore_orbits(1);
  st.restore_entry(GeneratorKind::S, 0, P(0), P(2));
  const GoodnessReport r = check_goodness_bounded(st, 2);
  REQUIRE_FALSE(r.good());
  CHECK(r.violations.front().clause == 0);
}

TEST_CASE("violation lists are capped") {
  ActionState st = initial("s3");
  for (std::uint32_t x = 0; x < 6; ++x) st.restore_entry(GeneratorKind::R, 0, P(x), P(x));
  const GoodnessReport r = check_goodness_bounded(st, 3, 5);
  CHECK(r.violations.size() == 5);
  CHECK(r.truncated);
}

TEST_CASE("random extension sequences keep the action good") {
  std::mt19937_64 rng(22);
  for (const char* name : {"c2", "s3"}) {
    for (int trial = 0; trial < 6; ++trial) {
      ActionState st = initial(name);
      oracles::random_extensions(st, rng, name[1] == '2' ? 10 : 4);
      CAPTURE(name);
      CAPTURE(st.point_count());
      check_good(st, 5);
      if (st.point_count() <= 14) CHECK(oracles::brute_force_goodness(st, 4).good());
    }
  }
}

TEST_CASE("extension operations never remove or change entries") {
  std::mt19937_64 rng(23);
  ActionState st = initial("c2");
  for (int i = 0; i < 40; ++i) {
    const Entries before = entries(st);
    oracles::random_extensions(st, rng, 1);
    const Entries after = entries(st);
    for (const auto& e : before) CHECK(std::find(after.begin(), after.end(), e) != after.end());
  }
}

TEST_CASE("map invariants: injectivity, inverse mirror and t-compatibility") {
  std::mt19937_64 rng(24);
  ActionState st = initial("s3");
  oracles::random_extensions(st, rng, 30);
  for (const GeneratorMap& m : st.s_maps()) {
    for (const auto& [x, y] : m.forward) {
      CHECK(m.backward.at(y) == x);
      CHECK(m.image(st.times_t(x), 1) == st.times_t(y));
    }
    CHECK(m.forward.size() == m.backward.size());
  }
  for (const GeneratorMap& m : st.r_maps()) {
    for (const auto& [x, y] : m.forward) CHECK(m.backward.at(y) == x);
    CHECK(m.forward.size() == m.backward.size());
  }
}

TEST_CASE("evaluation depends only on the element and commutes with flips") {
  std::mt19937_64 rng(25);
  for (const char* name : {"c2", "s3"}) {
    ActionState st = initial(name);
    oracles::random_extensions(st, rng, 40);
    const Word letters = oracles::alphabet(st);
    std::size_t defined = 0;
    for (int i = 0; i < 20000; ++i) {
      const PointId x{std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(st.point_count() - 1))(rng)};
      PointId y = x;
      while (y == x) y = PointId{std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(st.point_count() - 1))(rng)};
      // Walk along defined letters so that most samples are defined.
      Word word;
      PointId cur = x;
      const auto len = std::uniform_int_distribution<int>(1, 10)(rng);
      for (int k = 0; k < len; ++k) {
        const Letter l = letters[std::uniform_int_distribution<std::size_t>(0, letters.size() - 1)(rng)];
        if (auto next = st.step(cur, l)) {
          word.push_back(l);
          cur = *next;
        }
      }
      const auto direct = st.act(x, word);
      REQUIRE(direct == cur);
      const auto via_nf = st.act(x, normalize(word, st.group()).letters());
      CHECK(via_nf == direct);
      const PairRef a{x, y};
      if (auto image = st.pair_act(a, word)) {
        ++defined;
        CHECK(st.pair_act(a.flip(), word) == image->flip());
      } else {
        CHECK_FALSE(st.pair_act(a.flip(), word));
      }
    }
    CHECK(defined > 0);
  }
}

TEST_CASE("flip witnesses are involutions conjugate to t") {
  std::mt19937_64 rng(26);
  ActionState st = initial("c2");
  oracles::random_extensions(st, rng, 25);
  std::size_t witnesses = 0;
  for (const PairRef& b : pairs_in_order(st, 200)) {
    if (auto g = flippable(st, b)) {
      ++witnesses;
      CHECK(st.pair_act(b, g->letters()) == b.flip());
      CHECK(is_conjugate_to_t(*g, st.group()));
      CHECK(multiply(*g, *g, st.group()).empty());
    }
  }
  CHECK(witnesses > 0);
}
