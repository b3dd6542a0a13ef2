// JSON loading of finite game instances: schema handling, error reporting
// with positions, and the round trip through serialization.

#include <doctest.h>

#include <string>

#include "abstain/instance_io.hpp"
#include "abstain/oracle.hpp"

using namespace abstain;

namespace {

const char* kMinimal = R"({
  "n": 2,
  "prior": [0.5, 0.5],
  "posterior": [0.2, 0.9],
  "labels_f": [0, 1],
  "positions": [-1.0, 1.0],
  "gamma": 0.5,
  "c": 0.3
})";

}  // namespace

TEST_CASE("a single object parses and positions become squared distances") {
  const auto instances = instance_io::parse_instances(kMinimal, "inline");
  REQUIRE(instances.size() == 1);
  const auto& inst = instances[0];
  CHECK(inst.size() == 2);
  CHECK(inst.d(0, 1) == doctest::Approx(4.0));
  CHECK(inst.d(1, 0) == doctest::Approx(4.0));
  CHECK(inst.d(0, 0) == 0.0);
  CHECK(inst.gamma == 0.5);
  CHECK(inst.c == 0.3);
  CHECK(inst.loss.l01 == 1.0);  // defaults when unspecified
  CHECK(inst.loss.l10 == 1.0);
}

TEST_CASE("an array parses to several instances") {
  const std::string text =
      std::string("[") + kMinimal + ",\n" + kMinimal + "]";
  const auto instances = instance_io::parse_instances(text, "inline");
  CHECK(instances.size() == 2);
}

TEST_CASE("boolean labels are accepted") {
  std::string text = kMinimal;
  text.replace(text.find("[0, 1]"), 6, "[false, true]");
  const auto instances = instance_io::parse_instances(text, "inline");
  CHECK(instances[0].labels_f == oracle::BitVector{0, 1});
}

TEST_CASE("explicit distance matrices and loss weights are honored") {
  const char* text = R"({
    "n": 2,
    "prior": [0.4, 0.6],
    "posterior": [0.1, 0.8],
    "labels_f": [0, 1],
    "dist": [[0.0, 2.5], [2.5, 0.0]],
    "gamma": 1.0,
    "c": 0.25,
    "l01": 0.5,
    "l10": 0.75
  })";
  const auto instances = instance_io::parse_instances(text, "inline");
  const auto& inst = instances[0];
  CHECK(inst.d(0, 1) == 2.5);
  CHECK(inst.loss.l01 == 0.5);
  CHECK(inst.loss.l10 == 0.75);
}

TEST_CASE("malformed JSON reports the origin and a line number") {
  const char* broken = "{\n  \"n\": 2,\n  \"prior\": [0.5,,]\n}";
  try {
    instance_io::parse_instances(broken, "bad.json");
    FAIL("expected a parse error");
  } catch (const instance_io::ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad.json") != std::string::npos);
    CHECK(msg.find(":3") != std::string::npos);  // the offending line
  }
}

TEST_CASE("schema violations are rejected with context") {
  SUBCASE("positions and dist together") {
    std::string text = kMinimal;
    text.insert(text.rfind('}'),
                ", \"dist\": [[0.0, 1.0], [1.0, 0.0]]");
    CHECK_THROWS_WITH_AS(instance_io::parse_instances(text, "inline"),
                         doctest::Contains("exactly one of"),
                         instance_io::ParseError);
  }
  SUBCASE("neither positions nor dist") {
    std::string text = kMinimal;
    const auto at = text.find("\"positions\": [-1.0, 1.0],");
    text.erase(at, std::string("\"positions\": [-1.0, 1.0],").size());
    CHECK_THROWS_WITH_AS(instance_io::parse_instances(text, "inline"),
                         doctest::Contains("exactly one of"),
                         instance_io::ParseError);
  }
  SUBCASE("missing field") {
    std::string text = kMinimal;
    const auto at = text.find("\"gamma\": 0.5,");
    text.erase(at, std::string("\"gamma\": 0.5,").size());
    CHECK_THROWS_AS(instance_io::parse_instances(text, "inline"),
                    instance_io::ParseError);
  }
  SUBCASE("semantic violation in an array carries the instance index") {
    std::string text = kMinimal;
    text.replace(text.find("[0.5, 0.5]"), 10, "[0.9, 0.5]");
    text = "[" + text + "]";
    try {
      instance_io::parse_instances(text, "inline");
      FAIL("expected a parse error");
    } catch (const instance_io::ParseError& e) {
      CHECK(std::string(e.what()).find("instance 0") != std::string::npos);
    }
  }
}

TEST_CASE("serialization round trip preserves the game") {
  const auto original = instance_io::parse_instances(kMinimal, "inline")[0];
  const std::string dumped = instance_io::to_json(original);
  const auto reloaded = instance_io::parse_instances(dumped, "roundtrip")[0];
  CHECK(reloaded.prior == original.prior);
  CHECK(reloaded.posterior == original.posterior);
  CHECK(reloaded.labels_f == original.labels_f);
  CHECK(reloaded.dist == original.dist);
  CHECK(reloaded.gamma == original.gamma);
  CHECK(reloaded.c == original.c);
  CHECK(reloaded.loss.l01 == original.loss.l01);
  CHECK(reloaded.loss.l10 == original.loss.l10);
}

TEST_CASE("the bundled three-point instance loads and is the hand example") {
  const auto instances =
      instance_io::load_instances(std::string(ABSTAIN_DATA_DIR) +
                                  "/three_point.json");
  REQUIRE(instances.size() == 1);
  const auto& inst = instances[0];
  CHECK(inst.size() == 3);
  const auto opt = oracle::optimal_constrained_abstention(inst);
  CHECK(opt.loss == doctest::Approx(0.15).epsilon(1e-13));
  CHECK(opt.minimizers.size() == 3);
  CHECK(oracle::unconstrained_abstention(inst) == oracle::BitVector{1, 0, 1});
}

TEST_CASE("a missing file is a load error") {
  CHECK_THROWS_AS(instance_io::load_instances("/nonexistent/path.json"),
                  instance_io::ParseError);
}
