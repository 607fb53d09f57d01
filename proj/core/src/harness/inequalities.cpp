#include "bmolab/harness/inequalities.hpp"

#include <cmath>

#include "bmolab/maximal.hpp"

namespace bmolab {

double lemma1_constant(double q1, double q2) {
  if (!(q1 > 1.0 && q2 > q1) || !std::isfinite(q2)) {
    throw DomainError("lemma1 needs 1 < q1 < q2 < infinity");
  }
  return 2.0 * std::pow(q1 / (q2 - q1), 1.0 / q2);
}

Lemma1Report check_lemma1(const GridFunction& f, const Weight& w, double q1, double q2,
                          const CubeFamily& cubes) {
  Lemma1Report out;
  out.q1 = q1;
  out.q2 = q2;
  out.constant = lemma1_constant(q1, q2);
  out.strong = bmo_norm(f, w, BmoVariant::strong(q1), cubes);
  out.weak = bmo_norm(f, w, BmoVariant::weak(q2), cubes);
  out.lhs = out.strong.value;
  out.rhs = out.constant * out.weak.value;
  out.passes = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

SharpBoundReport check_pointwise_sharp_bound(const GridFunction& b, const Weight& w,
                                             const BilinearOperator& op, const GridFunction& f1,
                                             const GridFunction& f2, double s, CommutatorSlot slot,
                                             const CubeFamily& cubes) {
  if (b.is_constant()) throw DegenerateError("sharp bound needs a non-constant symbol b");
  if (!(s > 1.0)) throw DomainError("sharp bound needs s > 1");
  SharpBoundReport out;
  out.slot = slot;
  out.s = s;
  out.bmo_b = bmo_norm(b, w, BmoVariant::strong(1.0), cubes).value;
  const double nb = out.bmo_b;

  const GridFunction t = eval_bilinear(op, f1, f2);
  const GridFunction mt = maximal(t, MaximalSpec::hl(), cubes);
  const GridFunction mws1 = maximal(f1, MaximalSpec::weighted_s(s), &w, cubes);
  const GridFunction mws2 = maximal(f2, MaximalSpec::weighted_s(s), &w, cubes);
  const GridFunction& wf = w.function();

  GridFunction lhs = GridFunction::constant(b.grid(), 0.0);
  GridFunction rhs = lhs;
  switch (slot) {
    case CommutatorSlot::first: {
      lhs = maximal(commutator(slot, b, op, f1, f2), MaximalSpec::sharp_delta(0.5), cubes);
      const GridFunction m2 = maximal(f2, MaximalSpec::hl(), cubes);
      rhs = nb * (wf * (mt + mws1 * m2));
      break;
    }
    case CommutatorSlot::second: {
      lhs = maximal(commutator(slot, b, op, f1, f2), MaximalSpec::sharp_delta(0.5), cubes);
      const GridFunction m1 = maximal(f1, MaximalSpec::hl(), cubes);
      rhs = nb * (wf * (mt + m1 * mws2));
      break;
    }
    case CommutatorSlot::iterated: {
      lhs = maximal(commutator(slot, b, op, f1, f2), MaximalSpec::sharp_delta(1.0 / 3.0), cubes);
      const GridFunction c1 =
          maximal(commutator(CommutatorSlot::first, b, op, f1, f2), MaximalSpec::hl_delta(0.5), cubes);
      const GridFunction c2 =
          maximal(commutator(CommutatorSlot::second, b, op, f1, f2), MaximalSpec::hl_delta(0.5), cubes);
      const GridFunction w2 = wf * wf;
      rhs = (nb * nb) * (w2 * mt) + nb * (wf * (c1 + c2)) + (nb * nb) * (w2 * (mws1 * mws2));
      break;
    }
  }
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (rhs[i] > 0.0) {
      ++out.compared;
      const double q = lhs[i] / rhs[i];
      if (q > out.constant) {
        out.constant = q;
        out.worst_cell = i;
      }
    } else if (lhs[i] > 0.0) {
      ++out.hard_failures;
    }
  }
  return out;
}

}  // namespace bmolab
