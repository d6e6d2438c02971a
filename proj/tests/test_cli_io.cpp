#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "qdense/density.hpp"
#include "qdense/families.hpp"
#include "qdense/parser.hpp"
#include "qdense/serialize.hpp"

using namespace qdense;

TEST_CASE("parse_form") {
  auto f = parse_form("x^5 + x^3*y*z + y*z^4 + x^4*z + x*y^4 + y^5");
  CHECK(f.degree() == 5);
  CHECK(f.n_vars() == 3);
  CHECK(f.terms().size() == 6);
  CHECK(parse_form("x^2 - x*y + y^2") == cyclotomic_norm_form(3));
  CHECK(parse_form("(x0 + x1)^2") == parse_form("x0^2 + 2*x0*x1 + x1^2"));
  CHECK(parse_form("x15", 16).n_vars() == 16);
  CHECK(parse_form("-(x - y)*3").evaluate({2, 1}) == -3);

  CHECK_ERROR_CODE(parse_form("x^2 + y"), ErrorCode::NonHomogeneous);
  CHECK_ERROR_CODE(parse_form("x y"), ErrorCode::Syntax);
  CHECK_ERROR_CODE(parse_form("x^2^3"), ErrorCode::Syntax);
  CHECK_ERROR_CODE(parse_form("x^-1"), ErrorCode::Syntax);
  CHECK_ERROR_CODE(parse_form("x16"), ErrorCode::Syntax);
  CHECK_ERROR_CODE(parse_form("(x + y"), ErrorCode::Syntax);
  try {
    parse_form("x + $");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
  try {
    parse_form("x^2 + y");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("x0^2") != std::string::npos);
    CHECK(msg.find("x1") != std::string::npos);
  }
}

TEST_CASE("print and parse round trip") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const unsigned d = static_cast<unsigned>(rng() % 5);
    IntegralForm::Terms t;
    for (int k = 0; k < 6; ++k) {
      Exponents e(n, 0);
      for (unsigned i = 0; i < d; ++i) ++e[rng() % n];
      long c = static_cast<long>(rng() % 2001) - 1000;
      if (c) t[e] = c;
    }
    IntegralForm f(n, d, t);
    CHECK(parse_form(f.to_string(), n) == f);
  }
}

TEST_CASE("parse_factored") {
  auto a = parse_factored("x^3*y^2*(x + 2*y)");
  REQUIRE(std::holds_alternative<LinearSplitForm>(a));
  CHECK(std::get<LinearSplitForm>(a).expand() == parse_form("x^3*y^2*(x + 2*y)"));
  auto b = parse_factored("x^6*(x+1)^10*(x+2)^15");
  REQUIRE(std::holds_alternative<IntegerRootedPoly>(b));
  auto& r = std::get<IntegerRootedPoly>(b);
  CHECK(r.degree() == 31);
  CHECK(r.roots.size() == 3);
  CHECK_THROWS_AS(parse_factored("(2*x + 1)"), Error);
}

TEST_CASE("certificate JSON round trip") {
  std::vector<std::pair<IntegralForm, long>> cases{
      {parse_form("x^5+x^3*y*z+y*z^4+x^4*z+x*y^4+y^5"), 5}, {parse_form("x^3 + x^2*y + y^3"), 2},
      {parse_form("y*(x^2 + x*y + 2*y^2)"), 7},              {parse_form("x^4 + 17*x^3*y + y^4"), 17},
      {parse_form("x0*x1 + x2^2"), 3},                       {parse_form("x^3 + x*y^2 + 2*y^3"), 3}};
  std::set<std::string> kinds;
  for (auto& [f, p] : cases) {
    auto v = decide(f, p);
    if (!v.certificate) continue;
    Json j = to_json(*v.certificate);
    kinds.insert(j.at("kind").get<std::string>());
    auto back = certificate_from_json(Json::parse(j.dump()));
    CHECK(verify_certificate(f, p, back));
    CHECK(to_json(back) == j);
    auto vj = to_json(v);
    CHECK(vj.at("schema") == kSchemaVersion);
  }
  CHECK(kinds.size() >= 3);

  auto cub = cubic_verdict(parse_form("y*(x^2 + x*y + 2*y^2)"), 7);
  auto back = certificate_from_json(to_json(*cub.certificate));
  CHECK(verify_certificate(parse_form("y*(x^2 + x*y + 2*y^2)"), 7, back));

  IntegerRootedPoly f{1, {{0, 6}, {-1, 10}, {-2, 15}}};
  auto ob = obstruction_from_spectrum(valuation_spectrum(f, 7), f);
  auto ob_back = certificate_from_json(Json::parse(to_json(Certificate(*ob)).dump()));
  CHECK(verify_certificate(f.expand(), 7, ob_back));

  for (auto& row : cyclotomic_not_dense_primes(3, 20)) {
    auto c = certificate_from_json(to_json(Certificate(*row.certificate)));
    CHECK(verify_certificate(cyclotomic_norm_form(3), row.p, c));
  }
}

TEST_CASE("malformed JSON is a schema error") {
  CHECK_ERROR_CODE(certificate_from_json(Json::parse(R"({"kind": "nope", "payload": {}})")), ErrorCode::Schema);
  CHECK_ERROR_CODE(certificate_from_json(Json::parse(R"({"kind": "AnisotropicModP"})")), ErrorCode::Schema);
  CHECK_ERROR_CODE(form_from_json(Json::parse(R"({"n_vars": 2, "degree": 2, "terms": [{"exponents": [1], "coefficient": "3"}]})")),
                   ErrorCode::Schema);
  auto f = parse_form("3*x^2 - 7*x*y");
  CHECK(form_from_json(to_json(f)) == f);
}
