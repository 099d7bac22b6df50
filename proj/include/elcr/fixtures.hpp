#pragma once

#include "elcr/model.hpp"

namespace elcr::fixtures {

/// Six-vertex pursuit graph: the cycle 0..5 plus 2<->4 and a loop at 3.
ArenaPtr g1();
/// Seven-vertex graph s0..s6 with a loop at s6.
ArenaPtr g2();
/// Path s1..s5 with a loop at s5.
ArenaPtr path5();
/// s1->s2->s3->s4->s5 with loops at s2 and s5.
ArenaPtr loop_path5();
/// a->b, a->c, b->b, c->c.
ArenaPtr fork();

struct Pointed {
  KSightModel model;
  Situation actual;
  unsigned k = 0;
};

/// G1 from (0,4), sight 1.
Pointed pursuit();
/// G2 from (s5,s6), sight 2.
Pointed wide_sight();
/// path5 from (s1,s3), sight 1.
Pointed simultaneous();
/// loop_path5 with {(s1,s4),(s2,s5)} and discrete classes, sight 1.
Pointed stability();
/// G1 from (3,5), sight 1.
Pointed stay_at_three();
/// fork from (a,a), sight 0.
Pointed fork_probe();

Situation at(const ArenaPtr& arena, std::string_view x, std::string_view y);

}  // namespace elcr::fixtures
