#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace reesdual;
using testing_support::P;
using testing_support::random_poly;
using testing_support::ring3x3;

TEST(Field, RationalIsReduced) {
  Rational a(mpz_class(6), mpz_class(-4));
  EXPECT_EQ(a.value().get_num(), -3);
  EXPECT_EQ(a.value().get_den(), 2);
  EXPECT_THROW(Rational(mpz_class(1), mpz_class(0)), std::domain_error);
  EXPECT_TRUE((a * a.inverse()).is_one());
}

TEST(Field, ModPResidues) {
  PrimeField F{101};
  auto a = F.from_int(-1);
  EXPECT_EQ(a.value(), 100u);
  EXPECT_TRUE((a * a).is_one());
  auto h = F.from_ratio(1, 2);
  EXPECT_EQ((h + h).value(), 1u);
  for (long n = 1; n < 101; ++n) EXPECT_TRUE((F.from_int(n) * F.from_int(n).inverse()).is_one());
  EXPECT_THROW(F.from_int(0).inverse(), std::domain_error);
}

TEST(PolyArith, AdditiveCancellation) {
  auto R = ring3x3();
  EXPECT_EQ(P(R, "x1 + T1") + P(R, "-x1"), P(R, "T1"));
}

TEST(PolyArith, SquareOfFiberFactor) {
  auto R = ring3x3();
  auto q = P(R, "T1*T2 - T3^2");
  EXPECT_EQ(q * q, P(R, "T1^2*T2^2 - 2*T1*T2*T3^2 + T3^4"));
}

TEST(PolyArith, MultiplicativeIdentity) {
  auto R = ring3x3();
  std::mt19937_64 rng(11);
  auto one = Poly<Rational>::constant(R, 1);
  for (int k = 0; k < 20; ++k) {
    auto p = random_poly(rng, R, 6, 3);
    EXPECT_EQ(p * one, p);
  }
}

TEST(PolyArith, RingMismatchThrows) {
  auto R = ring3x3();
  auto S = make_ring<Rational>(VarSet(3, 4));
  EXPECT_THROW(P(R, "x1") + P(S, "x1"), RingMismatch);
}

template <class K>
void ring_axioms(FieldOf<K> field, std::uint64_t seed) {
  auto R = ring3x3<K>(field);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 30; ++k) {
    auto a = random_poly(rng, R, 5, 3), b = random_poly(rng, R, 5, 3), c = random_poly(rng, R, 4, 3);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolyArith, RingAxiomsOverQ) { ring_axioms<Rational>({}, 1); }
TEST(PolyArith, RingAxiomsOverF101) { ring_axioms<ModP>(PrimeField{101}, 2); }

TEST(PolyArith, NoZeroTermsStored) {
  auto R = ring3x3();
  auto p = P(R, "x1*T1 + 2*x2") - P(R, "x1*T1");
  ASSERT_EQ(p.size(), 1u);
  for (const auto& t : p.terms()) EXPECT_FALSE(t.c.is_zero());
}

TEST(BiDegree, WorkedExampleGenerators) {
  auto R = ring3x3();
  auto b1 = P(R, "x1^2*(T1*T2 - T3^2)").bidegree();
  ASSERT_TRUE(b1.is_bihomogeneous());
  EXPECT_EQ(b1.deg, (BiDegree{2, 2}));
  auto b3 = P(R, "(T1*T2 - T3^2)^3").bidegree();
  EXPECT_EQ(b3.deg, (BiDegree{0, 6}));
  EXPECT_TRUE(P(R, "x1 + T1").bidegree().is_mixed());
  EXPECT_TRUE(P(R, "0").bidegree().is_zero());
}

TEST(BiDegree, AdditiveUnderProducts) {
  auto R = ring3x3();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 25; ++k) {
    // bihomogeneous: x-part times T-part, each homogeneous
    auto xs = P(R, "x1^2 - 3*x2*x3 + x3^2").scaled(R->field.from_int(static_cast<long>(rng() % 7) + 1));
    auto ts = P(R, "T1*T2 + 2*T3^2");
    auto p = xs * ts, q = P(R, "x1*T3 - x2*T1");
    auto bp = p.bidegree(), bq = q.bidegree(), bpq = (p * q).bidegree();
    ASSERT_TRUE(bpq.is_bihomogeneous());
    EXPECT_EQ(bpq.deg, bp.deg + bq.deg);
  }
}

TEST(Derivative, Examples) {
  auto R = ring3x3();
  const auto& vs = R->vars;
  EXPECT_EQ(P(R, "x1^3").derivative(vs.x(0)), P(R, "3*x1^2"));
  EXPECT_EQ(P(R, "x1^2*(T1*T2 - T3^2)").derivative(vs.x(0)), P(R, "2*x1*(T1*T2 - T3^2)"));
  EXPECT_TRUE(P(R, "T1").derivative(vs.x(0)).is_zero());
}

TEST(Derivative, EulerIdentity) {
  auto R = ring3x3();
  const auto& vs = R->vars;
  std::mt19937_64 rng(17);
  for (int a = 1; a <= 4; ++a) {
    // homogeneous of x-degree a with T-coefficients
    std::vector<Term<Rational>> ts;
    for (int k = 0; k < 8; ++k) {
      Monomial m;
      unsigned left = static_cast<unsigned>(a);
      unsigned e1 = static_cast<unsigned>(rng() % (left + 1));
      left -= e1;
      unsigned e2 = static_cast<unsigned>(rng() % (left + 1));
      m.set(vs.x(0), e1);
      m.set(vs.x(1), e2);
      m.set(vs.x(2), left - e2);
      m.set(vs.t(static_cast<std::size_t>(rng() % 3)), static_cast<unsigned>(rng() % 3));
      ts.push_back({m, Rational(static_cast<long>(rng() % 9) - 4)});
    }
    auto p = Poly<Rational>::from_terms(R, ts);
    Poly<Rational> euler(R);
    for (std::size_t k = 0; k < 3; ++k) euler += Poly<Rational>::variable(R, vs.x(k)) * p.derivative(vs.x(k));
    EXPECT_EQ(euler, p.scaled(Rational(a)));
  }
}

TEST(Parse, Examples) {
  auto R = ring3x3();
  auto p = P(R, "x1^2*(T1*T2 - T3^2)");
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p, P(R, "x1^2*T1*T2") - P(R, "x1^2*T3^2"));
  EXPECT_TRUE(P(R, "0").is_zero());
  EXPECT_TRUE(P(R, "3/2*x1 - 3/2*x1").is_zero());
  EXPECT_EQ(P(R, " 2 * x1 ^ 2 "), P(R, "2*x1^2"));
  EXPECT_EQ(P(R, "-(x1 - x2)"), P(R, "x2 - x1"));
}

TEST(Parse, AuxiliaryBlocks) {
  auto R = make_ring<Rational>(VarSet(3, 4, 4, 1, 1));
  auto p = P(R, "Z1_1*T1 + Z4_1*T4 - Y1");
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.to_string(), "T1*Z1_1 + T4*Z4_1 - Y1");
}

TEST(Parse, Errors) {
  auto R = ring3x3();
  EXPECT_THROW(P(R, "x1 +"), ParseError);
  EXPECT_THROW(P(R, "x4"), ParseError);  // d+1 = 3
  EXPECT_THROW(P(R, "2 x1"), ParseError);  // no implicit multiplication
  EXPECT_THROW(P(R, "(x1"), ParseError);
  EXPECT_THROW(P(R, "1/0"), ParseError);
  try {
    P(R, "x1 + * x2");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
}

TEST(Parse, RoundTrip) {
  auto R = ring3x3();
  std::mt19937_64 rng(23);
  std::vector<std::string> fixtures = {"x1^3", "x1^2*(T1*T2 - T3^2)", "x1*(T1*T2 - T3^2)^2", "(T1*T2 - T3^2)^3",
                                       "-7/3*x1*T2 + 1/2", "x1 - x2 + x3"};
  for (const auto& s : fixtures) {
    auto p = P(R, s);
    EXPECT_EQ(P(R, p.to_string()), p) << s;
  }
  for (int k = 0; k < 30; ++k) {
    auto p = random_poly(rng, R, 7, 4);
    EXPECT_EQ(P(R, p.to_string()), p);
  }
}

TEST(Parse, RoundTripOverFp) {
  auto R = ring3x3<ModP>(PrimeField{7});
  EXPECT_EQ(P(R, "8*x1 - 1/2*T1"), P(R, "x1 + 3*T1"));
  auto p = P(R, "3*x1^2*T3 + 6");
  EXPECT_EQ(P(R, p.to_string()), p);
}

TEST(TermOrder, GrevlexAndLex) {
  auto R = ring3x3();
  auto grev = TermOrder::grevlex(6), lex = TermOrder::lex(6);
  auto m = [&](const char* s) { return P(R, s).leading().m; };
  // grevlex: degree first
  EXPECT_GT(grev.compare(m("x3^2"), m("x1")), 0);
  EXPECT_LT(lex.compare(m("x3^2"), m("x1")), 0);
  // same degree: grevlex prefers the smaller power of the last variable
  EXPECT_GT(grev.compare(m("x2^2"), m("x1*x3")), 0);
  EXPECT_GT(lex.compare(m("x1*x3"), m("x2^2")), 0);
  EXPECT_EQ(grev.compare(m("x1*T1"), m("x1*T1")), 0);
}

TEST(TermOrder, CompatibleWithMultiplication) {
  auto R = ring3x3();
  std::mt19937_64 rng(31);
  std::vector<TermOrder> orders = {TermOrder::grevlex(6), TermOrder::lex(6), TermOrder::elimination(6, {0, 1, 2})};
  for (const auto& ord : orders)
    for (int k = 0; k < 200; ++k) {
      auto a = testing_support::random_monomial(rng, 6, 4), b = testing_support::random_monomial(rng, 6, 4);
      auto c = testing_support::random_monomial(rng, 6, 3);
      auto sign = [](int v) { return (v > 0) - (v < 0); };
      EXPECT_EQ(sign(ord.compare(a * c, b * c)), sign(ord.compare(a, b)));
      EXPECT_GE(ord.compare(a, Monomial()), 0);
    }
}

TEST(TermOrder, EliminationPutsBlockFirst) {
  auto R = ring3x3();
  auto ord = TermOrder::elimination(6, {0, 1, 2});
  auto m = [&](const char* s) { return P(R, s).leading().m; };
  EXPECT_GT(ord.compare(m("x3"), m("T1^5")), 0);
  EXPECT_GT(ord.compare(m("x1*T1"), m("x2*T2^3")), 0);
}

TEST(Matrix, DeterminantMatchesLeibniz) {
  auto R = ring3x3();
  std::mt19937_64 rng(41);
  for (std::size_t n = 1; n <= 4; ++n) {
    PolyMatrix<Rational> M(R, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) M(i, j) = random_poly(rng, R, 2, 2);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Poly<Rational> leibniz(R);
    do {
      int inv = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
      Poly<Rational> t = Poly<Rational>::constant(R, inv % 2 ? -1 : 1);
      for (std::size_t i = 0; i < n; ++i) t *= M(i, perm[i]);
      leibniz += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(M.determinant(), leibniz) << "n = " << n;
  }
}

TEST(Matrix, MaximalMinorsMatchSelections) {
  auto R = ring3x3();
  std::mt19937_64 rng(43);
  PolyMatrix<Rational> M(R, 3, 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 6; ++j) M(i, j) = random_poly(rng, R, 2, 2);
  auto table = maximal_minor_table(M);
  std::vector<std::size_t> rows = {0, 1, 2};
  std::size_t k = 0;
  for_each_subset(6, 3, [&](const std::vector<std::size_t>& cols) {
    ASSERT_LT(k, table.size());
    EXPECT_EQ(table[k++], M.select(rows, cols).determinant());
  });
  EXPECT_EQ(k, table.size());
}

TEST(Matrix, DeclaredBidegreeIsChecked) {
  auto R = ring3x3();
  auto M = testing_support::matrix(R, {{"x1*T1", "T2"}, {"0", "x1"}});
  EXPECT_NO_THROW(M.declare_bidegree(0, {1, 1}));
  EXPECT_THROW(M.declare_bidegree(1, {0, 1}), std::invalid_argument);
}
