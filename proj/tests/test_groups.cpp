#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nqfa/groups.hpp"

using namespace nqfa;

TEST_CASE("trivial and cyclic tables") {
  FiniteGroup t = FiniteGroup::from_cayley_table({{0}});
  CHECK(t.order() == 1);
  FiniteGroup z2 = FiniteGroup::from_cayley_table({{0, 1}, {1, 0}});
  CHECK(z2.order() == 2);
  CHECK(z2.identity() == 0);
  FiniteGroup c4 = FiniteGroup::builtin("c4");
  CHECK(c4.order() == 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(c4.mul(i, j) == (i + j) % 4);
}

TEST_CASE("invalid tables are rejected with a named axiom") {
  // table[0][0] = 1 on two elements: no identity
  CHECK_THROWS_WITH_AS(FiniteGroup::from_cayley_table({{1, 1}, {1, 1}}),
                       doctest::Contains("identity"), ValidationError);
  // broken associativity (and not a latin square): z2 x z2 table with one bad entry
  std::vector<std::vector<int>> bad = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 0, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_cayley_table(bad), ValidationError);
  CHECK_THROWS_AS(FiniteGroup::builtin("nosuch"), Error);
}

TEST_CASE("s3 is non-abelian, q8 has exactly one element of order 2") {
  FiniteGroup s3 = FiniteGroup::builtin("s3");
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.abelian());
  bool witness = false;
  for (int s = 0; s < 6 && !witness; ++s)
    for (int t = 0; t < 6; ++t)
      if (s3.mul(s, t) != s3.mul(t, s)) { witness = true; break; }
  CHECK(witness);

  FiniteGroup q8 = FiniteGroup::builtin("q8");
  CHECK(q8.order() == 8);
  int order2 = 0;
  for (int s = 0; s < 8; ++s)
    if (q8.element_order(s) == 2) ++order2;
  CHECK(order2 == 1);
}

TEST_CASE("cyclic irreps are the DFT characters") {
  FiniteGroup c2 = FiniteGroup::builtin("c2");
  auto reps = irreps(c2);
  REQUIRE(reps.size() == 2);
  // one trivial, one sign character
  bool has_sign = false, has_triv = false;
  for (const auto& r : reps) {
    if (std::abs(r.character(1) - Cplx(1, 0)) < 1e-12) has_triv = true;
    if (std::abs(r.character(1) - Cplx(-1, 0)) < 1e-12) has_sign = true;
  }
  CHECK(has_triv);
  CHECK(has_sign);

  // cyclic(n): every character is j -> exp(2 pi i k j / n) for some k
  FiniteGroup c5 = FiniteGroup::builtin("c5");
  auto reps5 = irreps(c5);
  REQUIRE(reps5.size() == 5);
  for (const auto& r : reps5) {
    // homomorphism + unit modulus forces the DFT form; find k from chi(1)
    Cplx w = r.character(1);
    for (int j = 0; j < 5; ++j) {
      CHECK(std::abs(r.character(j) - std::pow(w, j)) < 1e-9);
    }
  }
}

TEST_CASE("bundled non-abelian irreps validate") {
  for (const char* name : {"s3", "d4", "q8"}) {
    FiniteGroup g = FiniteGroup::builtin(name);
    auto reps = irreps(g);
    long dimsum = 0;
    for (const auto& r : reps) dimsum += static_cast<long>(r.dim) * r.dim;
    CHECK(dimsum == g.order());
  }
  auto s3reps = irreps(FiniteGroup::builtin("s3"));
  REQUIRE(s3reps.size() == 3);
  CHECK(s3reps[0].dim == 1);
  CHECK(s3reps[1].dim == 1);
  CHECK(s3reps[2].dim == 2);
}

TEST_CASE("non-abelian custom group refuses to invent irreps") {
  // s3 under a fresh (unnamed) table
  FiniteGroup g = FiniteGroup::from_cayley_table(FiniteGroup::builtin("s3").table());
  CHECK_THROWS_WITH_AS(irreps(g), doctest::Contains("supply via file"), Error);
  // but the bundled data round-trips through the irrep file format
  auto s3 = FiniteGroup::builtin("s3");
  auto reps = irreps(s3);
  std::string json = "[";
  for (size_t k = 0; k < reps.size(); ++k) {
    json += std::string(k ? "," : "") + "{\"dim\":" + std::to_string(reps[k].dim) + ",\"matrices\":[";
    for (size_t s = 0; s < reps[k].matrices.size(); ++s)
      json += std::string(s ? "," : "") + matrix_to_json(reps[k].matrices[s]);
    json += "]}";
  }
  json += "]";
  auto loaded = irreps_from_json(g, json);
  CHECK(loaded.size() == reps.size());
}

TEST_CASE("group json round trip") {
  FiniteGroup d4 = FiniteGroup::builtin("d4");
  FiniteGroup back = group_from_json(group_to_json(d4));
  CHECK(back.order() == 8);
  CHECK(back.table() == d4.table());
}
