#include <doctest.h>

#include "qlw/io.hpp"

using qlw::LoopRep;
using qlw::RatFunZ;
using qlw::ScalarQ;
using nlohmann::json;

namespace {

ScalarQ q() { return ScalarQ::q(); }

}  // namespace

TEST_CASE("scalars round trip through JSON") {
  for (const char* s : {"0", "1", "q^2", "-3/2", "(q^2+1)/(q-1)"}) {
    ScalarQ x = ScalarQ::parse(s);
    CHECK(qlw::scalar_from_json(qlw::scalar_to_json(x)) == x);
  }
  CHECK(qlw::scalar_from_json(json(7)) == ScalarQ(7L));
  CHECK_THROWS_AS(qlw::scalar_from_json(json(true)), qlw::InputError);
  CHECK_THROWS_AS(qlw::scalar_from_json(json("q^")), qlw::InputError);
}

TEST_CASE("rational functions round trip through JSON") {
  RatFunZ f = RatFunZ(qlw::ZPoly(std::vector<ScalarQ>{-q(), ScalarQ(1L)})) * RatFunZ::z_power(-2);
  CHECK(qlw::ratfun_from_json(qlw::ratfun_to_json(f)) == f);
  json negative = json::parse(R"({"num": [[1, "1"], [-1, "-q"]], "den": [[0, "1"]]})");
  // z - q/z.
  CHECK(qlw::ratfun_from_json(negative) ==
        RatFunZ(qlw::ZPoly(std::vector<ScalarQ>{-q(), ScalarQ(), ScalarQ(1L)})) * RatFunZ::z_power(-1));
}

TEST_CASE("representations round trip through JSON") {
  for (const ScalarQ& a : {ScalarQ(1L), q().pow(2)}) {
    LoopRep rep = qlw::eval_module(2, a);
    json j = qlw::rep_to_json(rep);
    CHECK(j["dim"] == 3);
    LoopRep back = qlw::rep_from_json(j);
    CHECK(back.space.weights == rep.space.weights);
    for (int k = -3; k <= 3; ++k) {
      CHECK(back.e(k) == rep.e(k));
      CHECK(back.f(k) == rep.f(k));
    }
    CHECK(qlw::rep_to_json(back) == j);
  }
}

TEST_CASE("numeric q is preserved") {
  LoopRep rep = qlw::eval_module(1, ScalarQ(2L), {}, ScalarQ(mpq_class(3, 2)));
  LoopRep back = qlw::rep_from_json(qlw::rep_to_json(rep));
  CHECK(back.q == ScalarQ(mpq_class(3, 2)));
  CHECK(back.e(2) == rep.e(2));
}

TEST_CASE("malformed representation files are rejected") {
  json j = qlw::rep_to_json(qlw::eval_module(1, ScalarQ(1L)));
  json missing = j;
  missing.erase("weights");
  CHECK_THROWS_AS(qlw::rep_from_json(missing), qlw::InputError);
  json bad_k = j;
  bad_k["K"][0][0] = "q^3";
  CHECK_THROWS_AS(qlw::rep_from_json(bad_k), qlw::InputError);
  json wrong_dim = j;
  wrong_dim["dim"] = 3;
  CHECK_THROWS_AS(qlw::rep_from_json(wrong_dim), qlw::InputError);
  CHECK_THROWS_AS(qlw::rep_from_json(json::array()), qlw::InputError);
}

TEST_CASE("a tampered mode fails the relation check") {
  json j = qlw::rep_to_json(qlw::eval_module(1, ScalarQ(1L)));
  j["E"]["2"][0][1] = "17";
  CHECK_THROWS_AS(qlw::rep_from_json(j), qlw::RelationError);
  json seeds = qlw::rep_to_json(qlw::eval_module(1, ScalarQ(1L)));
  seeds["F"]["1"][1][0] = "q^5";
  CHECK_THROWS_AS(qlw::rep_from_json(seeds), qlw::RelationError);
}
