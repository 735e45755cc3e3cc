#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oscillat/gallery.hpp"
#include "oscillat/maximal.hpp"

using namespace oscillat;

TEST_CASE("example names round-trip") {
  for (const std::string& name : example_names()) CHECK(to_string(parse_example(name)) == name);
  CHECK(example_names().size() == 5);
  CHECK_THROWS_AS(parse_example("no-such-example"), std::invalid_argument);
}

TEST_CASE("closed-form oracle values") {
  ExampleParams p;
  p.n = 0;
  const NamedExample m = build_example(ExampleName::bounded_discont_M, p);
  CHECK(*evaluate_oracle(m, 0.5) == doctest::Approx(1.0 / 3.0));
  CHECK_FALSE(evaluate_oracle(m, 1.5).has_value());

  p.alpha = 0.5;
  const NamedExample ma = build_example(ExampleName::bounded_discont_Malpha, p);
  CHECK(*evaluate_oracle(ma, 0.5) == doctest::Approx(1.0 / (std::pow(2.0, 1.5) * std::sqrt(1.5))));
  p.n = 3;
  const NamedExample ma3 = build_example(ExampleName::bounded_discont_Malpha, p);
  CHECK(*evaluate_oracle(ma3, 0.5) == doctest::Approx(2.75));

  CHECK(tent(0.25) == doctest::Approx(0.5));
  CHECK(tent(0.75) == doctest::Approx(0.5));
  CHECK(tent(0.5) == doctest::Approx(1.0));
}

TEST_CASE("engine reproduces the bounded discontinuity oracle") {
  ExampleParams p;
  p.N = 2048;
  const NamedExample ex = build_example(ExampleName::bounded_discont_M, p);
  const MaximalField m = fractional_maximal(ex.space, ex.f, 0.0, IntervalFamily::full(ex.space));
  double worst = 0.0;
  for (std::size_t k = 0; k < ex.space.cells(); ++k) {
    const double x = ex.space.cell_midpoint(k);
    if (const auto o = evaluate_oracle(ex, x)) worst = std::max(worst, std::fabs(m.values[k] - *o));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("shifting by a constant leaves BMO unchanged") {
  const NamedExample ex = build_example(ExampleName::unbounded_discont);
  const IntervalFamily fam = IntervalFamily::full(ex.space);
  CHECK(bmo_norm(ex.space, ex.function(5) - ex.f, 1.0, fam).value < 1e-12);
  CHECK(ex.space.truncated());
}

TEST_CASE("example construction rejects bad parameters") {
  ExampleParams p;
  p.N = 100;
  CHECK_THROWS_AS(build_example(ExampleName::vmo_not_vmomu, p), std::invalid_argument);
  p.N = 1024;
  p.L = 1.0;
  CHECK_THROWS_AS(build_example(ExampleName::unbounded_discont, p), std::invalid_argument);
  CHECK_THROWS_AS(continuity_experiment(ExampleName::vmo_not_vmomu, {1}, 0.0), std::invalid_argument);
}
