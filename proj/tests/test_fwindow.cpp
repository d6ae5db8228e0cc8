#include "cfs/fwindow.hpp"

#include "cfs/continuant.hpp"
#include "cfs/quadratic.hpp"

#include <doctest.h>

using namespace cfs;

namespace {

bool quad_inside(const QuadraticValue& v, const QInterval& box) {
  return v.compare(box.lo) >= 0 && v.compare(box.hi) <= 0;
}

}  // namespace

TEST_CASE("all-ones window encloses sqrt 5 with the stated width") {
  QInterval r = f_window_range(Word{1, 1, 1}, 1, 1);
  CHECK(quad_inside(QuadraticValue::sqrt_of(5), r));
  // width <= 2 |I(1,1)| = 1/3
  CHECK(r.width() <= Rational(1, 3));
}

TEST_CASE("all-twos window encloses 2 sqrt 2") {
  QInterval r = f_window_range(Word{2, 2, 2}, 1, 2);
  CHECK(quad_inside(QuadraticValue::sqrt_of(8), r));
}

TEST_CASE("(2,2,1,1)-periodic window encloses sqrt(221)/5 at its maximizing shift") {
  // oracle: cf_value over all 4 shifts shows the max is centered on the 2
  // following 1,1; the window of half-width 3 there reads (2,1,1,2,2,1,1).
  QuadraticValue target =
      QuadraticValue::sqrt_of(221) / QuadraticValue::from_rational(Rational(5));
  QuadraticValue best = f_shift_value(Word{2, 2, 1, 1}, 0);
  for (size_t i = 1; i < 4; ++i) {
    QuadraticValue v = f_shift_value(Word{2, 2, 1, 1}, i);
    if (v.compare(best) > 0) best = v;
  }
  CHECK(best == target);

  QInterval r = f_window_range(Word{2, 1, 1, 2, 2, 1, 1}, 3, 2);
  CHECK(quad_inside(target, r));
}

TEST_CASE("window width shrinks geometrically on the all-ones family") {
  Rational prev_width;
  for (int l = 1; l <= 8; ++l) {
    std::vector<int> syms(2 * l + 1, 1);
    QInterval r = f_window_range(Word{syms}, l, 1);
    if (l > 1) CHECK(r.width() <= Rational(7, 10) * prev_width);
    prev_width = r.width();
  }
}

TEST_CASE("tail hull nests as the window deepens") {
  // hull over one more known symbol is contained in the parent hull
  QInterval shallow = tail_hull(Word{1, 2}, 2);
  QInterval deep1 = tail_hull(Word{1, 2, 1}, 2);
  QInterval deep2 = tail_hull(Word{1, 2, 2}, 2);
  CHECK(shallow.contains(deep1));
  CHECK(shallow.contains(deep2));
}

TEST_CASE("marked position errors") {
  CHECK_THROWS_AS(f_window_range(Word{1, 2, 1}, 3, 2), std::out_of_range);
  CHECK_THROWS_AS(f_window_range(Word{1, 3, 1}, 1, 2), std::invalid_argument);
}
