#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "twinbld/coxeter.hpp"

using namespace twinbld;

namespace {

WeylElement w(CoxPtr cox, std::initializer_list<int> word) {
  return WeylElement::from_word(cox, std::vector<int>(word));
}

}  // namespace

TEST_CASE("products and involutions") {
  auto a2 = CoxeterMatrix::named("A2");
  auto s1 = WeylElement::generator(a2, 0), s2 = WeylElement::generator(a2, 1);
  CHECK((s1 * s1).is_identity());
  CHECK((s1 * s2).length() == 2);

  auto c2 = CoxeterMatrix::named("C2");
  auto t1 = WeylElement::generator(c2, 0), t2 = WeylElement::generator(c2, 1);
  WeylElement p = WeylElement::identity(c2);
  for (int i = 0; i < 4; ++i) p = p * t1 * t2;
  CHECK(p.is_identity());
  CHECK((t1 * t2).order() == 4);

  CHECK_THROWS_AS(s1 * t1, structural_error);
}

TEST_CASE("lengths against permutation oracles") {
  // the dihedral oracle pins the group order and the longest length
  auto dih3 = oracles::dihedral(3);
  auto dih4 = oracles::dihedral(4);
  CHECK(dih3.order() == 6);
  CHECK(dih4.order() == 8);
  CHECK(dih3.longest() == 3);
  CHECK(dih4.longest() == 4);

  auto a2 = CoxeterMatrix::named("A2");
  CHECK(WeylElement::identity(a2).length() == 0);
  auto wa2 = FiniteWeylGroup::enumerate(a2);
  CHECK(wa2.size() == dih3.order());
  int maxLen = 0;
  for (const auto& e : wa2.elements()) maxLen = std::max(maxLen, e.length());
  CHECK(maxLen == dih3.longest());

  auto c2 = CoxeterMatrix::named("C2");
  auto wc2 = FiniteWeylGroup::enumerate(c2);
  CHECK(wc2.size() == dih4.order());
  CHECK(longest_element(c2, GenSet::full(2)).length() == dih4.longest());

  // A3 = S4, C3 = hyperoctahedral of rank 3
  auto a3 = CoxeterMatrix::named("A3");
  CHECK(FiniteWeylGroup::enumerate(a3).size() == oracles::symmetric(4).order());
  CHECK(longest_element(a3, GenSet::full(3)).length() ==
        oracles::symmetric(4).longest());
  auto c3 = CoxeterMatrix::named("C3");
  auto hyp3 = oracles::hyperoctahedral(3);
  CHECK(FiniteWeylGroup::enumerate(c3).size() == hyp3.order());
  CHECK(longest_element(c3, GenSet::full(3)).length() == hyp3.longest());
}

TEST_CASE("length equals the number of inverted positive roots") {
  for (const char* name : {"A2", "C2", "G2", "A3", "C3"}) {
    auto cox = CoxeterMatrix::named(name);
    FiniteWeylGroup W = FiniteWeylGroup::enumerate(cox);
    std::vector<Root> positives;
    for (const auto& r : W.all_roots())
      if (r.is_positive()) positives.push_back(r);
    for (const auto& e : W.elements()) {
      int inverted = 0;
      for (const auto& r : positives)
        if (!e.act(r.coords()).empty() && !Root(cox, e.act(r.coords())).is_positive())
          ++inverted;
      CHECK(e.length() == inverted);
    }
  }
}

TEST_CASE("ShortLex word is reduced and minimal") {
  auto c3 = CoxeterMatrix::named("C3");
  FiniteWeylGroup W = FiniteWeylGroup::enumerate(c3);
  for (const auto& e : W.elements()) {
    auto word = e.word();
    CHECK(static_cast<int>(word.size()) == e.length());
    CHECK(WeylElement::from_word(c3, word) == e);
  }
}

TEST_CASE("longest elements of spherical subsets") {
  auto a2 = CoxeterMatrix::named("A2");
  CHECK(longest_element(a2, GenSet::single(0)) == WeylElement::generator(a2, 0));
  auto rj = longest_element(a2, GenSet::full(2));
  CHECK(rj.length() == 3);
  CHECK(rj == w(a2, {0, 1, 0}));
  CHECK((rj * rj).is_identity());

  auto c2 = CoxeterMatrix::named("C2");
  auto rc = longest_element(c2, GenSet::full(2));
  CHECK(rc.length() == 4);
  CHECK((rc * rc).is_identity());

  // l(r_J w) = l(r_J) - l(w) on the whole subgroup
  FiniteWeylGroup W = FiniteWeylGroup::enumerate(c2);
  for (const auto& e : W.elements())
    CHECK((rc * e).length() == rc.length() - e.length());

  auto aff = CoxeterMatrix::named("~A2");
  CHECK_THROWS_AS(longest_element(aff, GenSet::full(3)), domain_error);

  // r_J maps simple roots of J to negatives of simple roots of J
  auto c3 = CoxeterMatrix::named("C3");
  for (std::uint32_t bits = 1; bits < 8; ++bits) {
    GenSet J(bits);
    WeylElement r = longest_element(c3, J);
    for (int s : J.members()) {
      Root img(c3, r.act(Root::simple(c3, s).coords()));
      CHECK(!img.is_positive());
      bool isSimple = false;
      for (int t : J.members())
        if (img.negated() == Root::simple(c3, t)) isSimple = true;
      CHECK(isSimple);
    }
  }
}

TEST_CASE("exchange variant dichotomy") {
  auto a2 = CoxeterMatrix::named("A2");
  CHECK(check_exchange_variant(w(a2, {0, 1, 0}), 0, 0) ==
        ExchangeOutcome::LengthDrop2);

  auto a1a1 = CoxeterMatrix::from_orders(2, {2}, "A1xA1");
  CHECK(check_exchange_variant(w(a1a1, {0, 1}), 0, 1) ==
        ExchangeOutcome::LengthDrop2);

  auto c2 = CoxeterMatrix::named("C2");
  CHECK_THROWS_AS(check_exchange_variant(WeylElement::identity(c2), 0, 0),
                  domain_error);

  // exhaustive dichotomy over every valid (w, s, t) in C2 and A3
  for (const char* name : {"C2", "A3"}) {
    auto cox = CoxeterMatrix::named(name);
    FiniteWeylGroup W = FiniteWeylGroup::enumerate(cox);
    int checked = 0;
    for (const auto& e : W.elements())
      for (int s = 0; s < cox->rank(); ++s)
        for (int t = 0; t < cox->rank(); ++t) {
          if (!e.descends_left(s) || !e.descends_right(t)) continue;
          auto out = check_exchange_variant(e, s, t);
          WeylElement swt = WeylElement::generator(cox, s) * e *
                            WeylElement::generator(cox, t);
          if (out == ExchangeOutcome::LengthDrop2)
            CHECK(swt.length() == e.length() - 2);
          else
            CHECK(swt == e);
          ++checked;
        }
    CHECK(checked > 0);
  }
}

TEST_CASE("descent dichotomy and subadditivity") {
  auto c3 = CoxeterMatrix::named("C3");
  FiniteWeylGroup W = FiniteWeylGroup::enumerate(c3);
  for (const auto& e : W.elements())
    for (int s = 0; s < 3; ++s) {
      WeylElement se = WeylElement::generator(c3, s) * e;
      CHECK(std::abs(se.length() - e.length()) == 1);
      CHECK(e.descends_left(s) == (se.length() < e.length()));
    }
  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto& a = W.element(rng.below(W.size()));
    const auto& b = W.element(rng.below(W.size()));
    CHECK((a * b).length() <= a.length() + b.length());
  }
}

TEST_CASE("sign coherence of root images") {
  for (const char* name : {"A2", "C2", "G2", "A3", "C3"}) {
    auto cox = CoxeterMatrix::named(name);
    FiniteWeylGroup W = FiniteWeylGroup::enumerate(cox);
    for (const auto& e : W.elements())
      for (const auto& r : W.all_roots())
        CHECK_NOTHROW(Root(cox, e.act(r.coords())));  // ctor rejects mixed signs
  }
  // depth-bounded balls of the affine types
  for (const char* name : {"~A2", "~C2", "~G2"}) {
    auto cox = CoxeterMatrix::named(name);
    std::vector<WeylElement> ball{WeylElement::identity(cox)};
    std::set<std::string> seen{ball[0].key()};
    for (size_t i = 0; i < ball.size(); ++i) {
      if (ball[i].length() >= 4) continue;
      for (int s = 0; s < 3; ++s) {
        auto nx = ball[i] * WeylElement::generator(cox, s);
        if (seen.insert(nx.key()).second) ball.push_back(nx);
      }
    }
    for (const auto& e : ball)
      for (int s = 0; s < 3; ++s)
        CHECK_NOTHROW(Root(cox, e.act(Root::simple(cox, s).coords())));
  }
}

TEST_CASE("reflection product orders") {
  auto a1a1 = CoxeterMatrix::from_orders(2, {2}, "A1xA1");
  CHECK(reflection_product_order(Root::simple(a1a1, 0), Root::simple(a1a1, 1)) == 2);

  auto aff = CoxeterMatrix::named("~A2");
  CHECK(reflection_product_order(Root::simple(aff, 0), Root::simple(aff, 1)) == 3);

  Root a0 = Root::simple(aff, 0);
  CHECK_THROWS_AS(reflection_product_order(a0, a0), domain_error);
  CHECK_THROWS_AS(reflection_product_order(a0, a0.negated()), domain_error);

  // brute-force cross-check: power iteration of r_a r_b for all root pairs of
  // depth <= 6 in the affine rank-3 types
  for (const char* name : {"~A2", "~C2", "~G2"}) {
    auto cox = CoxeterMatrix::named(name);
    std::vector<Root> roots;
    {
      std::set<std::vector<i64>> seen;
      std::deque<std::pair<Root, int>> q2;
      for (int s = 0; s < 3; ++s) {
        q2.push_back({Root::simple(cox, s), 1});
        seen.insert(Root::simple(cox, s).coords());
      }
      while (!q2.empty()) {
        auto [r, d] = q2.front();
        q2.pop_front();
        roots.push_back(r);
        if (d >= 6) continue;
        for (int s = 0; s < 3; ++s) {
          Root img(cox, WeylElement::generator(cox, s).act(r.coords()));
          Root pos = img.is_positive() ? img : img.negated();
          if (seen.insert(pos.coords()).second) q2.push_back({pos, d + 1});
        }
      }
    }
    bool sawInfinite = false;
    for (size_t i = 0; i < roots.size(); ++i)
      for (size_t j = 0; j < roots.size(); ++j) {
        if (roots[i] == roots[j] || roots[i] == roots[j].negated()) continue;
        int fast = reflection_product_order(roots[i], roots[j]);
        WeylElement prod = roots[i].reflection() * roots[j].reflection();
        int brute = prod.order(6);  // finite orders here are at most 6
        CHECK(fast == brute);
        if (fast == kInfiniteOrder) sawInfinite = true;
      }
    CHECK(sawInfinite);  // parallel walls exist within depth 6
  }
}

TEST_CASE("root intervals by chamber half-sets") {
  auto a2 = CoxeterMatrix::named("A2");
  FiniteWeylGroup W = FiniteWeylGroup::enumerate(a2);
  Root a = Root::simple(a2, 0), b = Root::simple(a2, 1);
  CHECK_THROWS_AS(root_interval(W, a, a), domain_error);
  CHECK_THROWS_AS(root_interval(W, a, a.negated()), domain_error);

  // [alpha_1, alpha_2] is the full positive system of A2
  auto iv = root_interval(W, a, b);
  CHECK(iv.size() == 3);
  for (const auto& r : iv) CHECK(r.is_positive());

  // [alpha_1, alpha_1 + alpha_2] contains only its endpoints
  Root ab(a2, std::vector<i64>{1, 1});
  auto iv2 = root_interval(W, a, ab);
  CHECK(iv2.size() == 2);

  auto c2 = CoxeterMatrix::named("C2");
  FiniteWeylGroup Wc = FiniteWeylGroup::enumerate(c2);
  auto ivc = root_interval(Wc, Root::simple(c2, 0), Root::simple(c2, 1));
  CHECK(ivc.size() == 4);  // all four positive roots of C2
  for (const auto& r : ivc) CHECK(r.is_positive());
}

TEST_CASE("sphericity") {
  auto c2 = CoxeterMatrix::named("C2");
  CHECK(c2->is_spherical(GenSet()));
  CHECK(c2->is_spherical(GenSet::full(2)));
  CHECK(FiniteWeylGroup::enumerate(c2).size() == 8);

  auto aff = CoxeterMatrix::named("~A2");
  CHECK_FALSE(aff->is_spherical(GenSet::full(3)));
  CHECK(aff->is_spherical(GenSet::pair(0, 1)));
  for (const char* name : {"~C2", "~G2"})
    CHECK_FALSE(CoxeterMatrix::named(name)->is_spherical(GenSet::full(3)));
}

TEST_CASE("matrix parser") {
  std::istringstream in("3\n3 2\n4\n");
  auto cox = CoxeterMatrix::parse(in);
  CHECK(cox->rank() == 3);
  CHECK(cox->order(0, 1) == 3);
  CHECK(cox->order(0, 2) == 2);
  CHECK(cox->order(1, 2) == 4);

  std::istringstream inf("2\ninf\n");
  auto cinf = CoxeterMatrix::parse(inf);
  CHECK(cinf->order(0, 1) == kInfiniteOrder);
  CHECK_FALSE(cinf->is_spherical(GenSet::full(2)));

  std::istringstream bad("2\n5\n");
  CHECK_THROWS_AS(CoxeterMatrix::parse(bad), validation_error);
}

TEST_CASE("reflections move their root to its negative") {
  for (const char* name : {"A2", "C2", "G2"}) {
    auto cox = CoxeterMatrix::named(name);
    FiniteWeylGroup W = FiniteWeylGroup::enumerate(cox);
    for (const auto& r : W.all_roots()) {
      WeylElement refl = r.reflection();
      CHECK(Root(cox, refl.act(r.coords())) == r.negated());
      CHECK((refl * refl).is_identity());
      CHECK(r.reflected_by(r) == r.negated());
    }
  }
}
