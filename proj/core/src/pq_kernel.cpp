#include "minsurf/pq_kernel.hpp"

#include <cmath>
#include <string>

namespace minsurf {

namespace {

void require_degree(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "degree must be >= 0, got " + std::to_string(n));
}

void require_finite(ParamPoint pt) {
  if (!pt.finite()) throw Error(ErrorCode::InvalidArgument, "parameter point must be finite");
}

// Integer power by repeated multiplication; pow(0, 0) == 1 as the sums require.
long double ipow(long double x, int e) {
  long double r = 1.0L;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

BinomialInt binomial(int n, int k) {
  if (n < 0 || n > kMaxBinomialDegree) {
    throw Error(ErrorCode::InvalidArgument,
                "binomial degree must lie in [0, " + std::to_string(kMaxBinomialDegree) + "]");
  }
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BinomialInt c = 1;
  // c * (n - k + i) is always divisible by i at step i.
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<BinomialInt>(n - k + i) / static_cast<BinomialInt>(i);
  }
  return c;
}

PQValue pq_eval_direct(int n, ParamPoint pt) {
  require_degree(n);
  require_finite(pt);
  if (n > kMaxBinomialDegree) {
    throw Error(ErrorCode::InvalidArgument,
                "direct summation supports degree <= " + std::to_string(kMaxBinomialDegree));
  }
  // Terms reach C(n, n/2) * max(|u|,|v|)^n and cancel heavily off the axes, so the
  // sums are accumulated in extended precision and rounded once.
  long double p = 0.0L;
  long double q = 0.0L;
  // ceil((n-1)/2) and floor((n-1)/2) for integer n >= 0; for n = 0 the Q range is empty.
  const int p_last = n / 2;
  const int q_last = (n - 1) >= 0 ? (n - 1) / 2 : -1;
  for (int k = 0; k <= p_last; ++k) {
    const long double c = static_cast<long double>(binomial(n, 2 * k));
    const long double term = c * ipow(pt.u, n - 2 * k) * ipow(pt.v, 2 * k);
    p += (k % 2 == 0) ? term : -term;
  }
  for (int k = 0; k <= q_last; ++k) {
    const long double c = static_cast<long double>(binomial(n, 2 * k + 1));
    const long double term = c * ipow(pt.u, n - 2 * k - 1) * ipow(pt.v, 2 * k + 1);
    q += (k % 2 == 0) ? term : -term;
  }
  return {n, static_cast<double>(p), static_cast<double>(q)};
}

void pq_sweep(ParamPoint pt, std::span<PQValue> out) {
  require_finite(pt);
  if (out.empty()) return;
  out[0] = {0, 1.0, 0.0};
  for (std::size_t k = 1; k < out.size(); ++k) {
    const PQValue& prev = out[k - 1];
    out[k] = {static_cast<int>(k), pt.u * prev.p - pt.v * prev.q, pt.v * prev.p + pt.u * prev.q};
  }
}

std::vector<PQValue> pq_eval_recurrence(int n, ParamPoint pt) {
  require_degree(n);
  std::vector<PQValue> out(static_cast<std::size_t>(n) + 1);
  pq_sweep(pt, out);
  return out;
}

PQJet pq_jet_from_table(int n, std::span<const PQValue> table) {
  require_degree(n);
  if (table.size() < static_cast<std::size_t>(n) + 1) {
    throw Error(ErrorCode::InvalidArgument, "pq table too short for requested degree");
  }
  PQJet j;
  j.degree = n;
  j.p = table[n].p;
  j.q = table[n].q;
  if (n >= 1) {
    const double d = n;
    const PQValue& m1 = table[n - 1];
    j.p_u = d * m1.p;
    j.p_v = -d * m1.q;
    j.q_u = d * m1.q;
    j.q_v = d * m1.p;
  }
  if (n >= 2) {
    const double d2 = static_cast<double>(n) * static_cast<double>(n - 1);
    const PQValue& m2 = table[n - 2];
    j.p_uu = d2 * m2.p;
    j.p_uv = -d2 * m2.q;
    j.p_vv = -d2 * m2.p;
    j.q_uu = d2 * m2.q;
    j.q_uv = d2 * m2.p;
    j.q_vv = -d2 * m2.q;
  }
  return j;
}

PQJet pq_jet(int n, ParamPoint pt) {
  const auto table = pq_eval_recurrence(n, pt);
  return pq_jet_from_table(n, table);
}

bool binomial_identity_holds(int n, int k) {
  if (n < 0 || k < 0 || 2 * k + 1 > n + 1) {
    throw Error(ErrorCode::InvalidArgument,
                "binomial identity needs n >= 0 and 0 <= 2k+1 <= n+1");
  }
  if (n + 1 > kMaxBinomialDegree) {
    throw Error(ErrorCode::InvalidArgument, "binomial identity degree out of range");
  }
  return binomial(n, 2 * k) + binomial(n, 2 * k + 1) == binomial(n + 1, 2 * k + 1);
}

}  // namespace minsurf
