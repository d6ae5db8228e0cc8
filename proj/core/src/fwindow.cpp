#include "cfs/fwindow.hpp"

#include "cfs/continuant.hpp"

#include <stdexcept>

namespace cfs {

QInterval tail_hull(const Word& w, int alphabet) {
  if (alphabet < 1) throw std::invalid_argument("alphabet bound must be >= 1");
  if (!w.empty() && !w.valid(alphabet))
    throw std::invalid_argument("word exceeds alphabet bound");
  Continuants base;
  for (int s : w) base.extend(s);
  bool first = true;
  QInterval hull;
  for (int b = 1; b <= alphabet; ++b) {
    Continuants c = base;
    c.extend(b);
    QInterval ci = cylinder_interval(c).interval();
    hull = first ? ci : QInterval::hull(hull, ci);
    first = false;
  }
  return hull;
}

QInterval f_window_range(const Word& center, size_t pos, int alphabet) {
  if (!center.valid(alphabet)) throw std::invalid_argument("invalid window word");
  if (pos >= center.size()) throw std::out_of_range("marked position outside window");
  Word right, left;
  for (size_t i = pos + 1; i < center.size(); ++i) right.push_back(center[i]);
  for (size_t i = pos; i-- > 0;) left.push_back(center[i]);
  QInterval range = tail_hull(right, alphabet) + tail_hull(left, alphabet);
  return Rational(center[pos]) + range;
}

}  // namespace cfs
