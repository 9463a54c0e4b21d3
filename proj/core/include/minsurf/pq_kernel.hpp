#pragma once

// Harmonic polynomial pair
//
//   P_n(u, v) = sum_k (-1)^k C(n, 2k)   u^(n-2k)   v^(2k)
//   Q_n(u, v) = sum_k (-1)^k C(n, 2k+1) u^(n-2k-1) v^(2k+1)
//
// with derivative rules dP_n/du = n P_{n-1}, dP_n/dv = -n Q_{n-1},
// dQ_n/du = n Q_{n-1}, dQ_n/dv = n P_{n-1}, and the step
// P_n = u P_{n-1} - v Q_{n-1}, Q_n = v P_{n-1} + u Q_{n-1}.

#include "minsurf/types.hpp"

#include <span>
#include <vector>

namespace minsurf {

/// Largest degree accepted by the exact-binomial paths.
inline constexpr int kMaxBinomialDegree = 60;

struct PQValue {
  int degree = 0;
  double p = 1.0;
  double q = 0.0;
};

struct PQJet {
  int degree = 0;
  double p = 1.0, q = 0.0;
  double p_u = 0.0, p_v = 0.0, q_u = 0.0, q_v = 0.0;
  double p_uu = 0.0, p_uv = 0.0, p_vv = 0.0;
  double q_uu = 0.0, q_uv = 0.0, q_vv = 0.0;
};

/// Exact integer type for binomial coefficients (C(60, 30) needs 57 bits; the
/// product formed before each division needs more).
__extension__ typedef unsigned __int128 BinomialInt;

/// Exact C(n, k) for 0 <= n <= kMaxBinomialDegree; 0 when k < 0 or k > n.
BinomialInt binomial(int n, int k);

/// Term-by-term summation with exact integer binomial coefficients.
PQValue pq_eval_direct(int n, ParamPoint pt);

/// Degrees 0..n by the complex-multiplication step. This is the hot path.
std::vector<PQValue> pq_eval_recurrence(int n, ParamPoint pt);

/// Allocation-free form of pq_eval_recurrence: fills out[k] for k = 0..out.size()-1.
void pq_sweep(ParamPoint pt, std::span<PQValue> out);

/// Value and first/second partials of (P_n, Q_n), built from lower-degree
/// values through the derivative rules only.
PQJet pq_jet(int n, ParamPoint pt);

/// Jet of degree n from a precomputed sweep covering degrees 0..n.
PQJet pq_jet_from_table(int n, std::span<const PQValue> table);

/// C(n, 2k) + C(n, 2k+1) == C(n+1, 2k+1), evaluated exactly.
bool binomial_identity_holds(int n, int k);

}  // namespace minsurf
