#include "toptri/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace toptri {

PMeanParam PMeanParam::parse(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "max") return plus_inf();
  if (text == "-inf" || text == "min") return minus_inf();
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || std::isnan(v))
    throw Error("bad p value '" + text + "'");
  if (std::isinf(v)) return v > 0 ? plus_inf() : minus_inf();
  return PMeanParam(v);
}

std::string PMeanParam::to_string() const {
  switch (kind_) {
    case Kind::PlusInf: return "inf";
    case Kind::MinusInf: return "-inf";
    case Kind::Finite: break;
  }
  return format_weight(p_);
}

namespace {

void check_weights(std::span<const double> weights) {
  if (weights.empty()) throw Error("p_mean of an empty set");
  for (double w : weights)
    if (!(w > 0.0)) throw Error("p_mean requires positive weights");
}

}  // namespace

double p_mean(std::span<const double> weights, PMeanParam p) {
  check_weights(weights);
  switch (p.kind()) {
    case PMeanParam::Kind::PlusInf: return *std::max_element(weights.begin(), weights.end());
    case PMeanParam::Kind::MinusInf: return *std::min_element(weights.begin(), weights.end());
    case PMeanParam::Kind::Finite: break;
  }
  const double n = static_cast<double>(weights.size());
  const double q = p.value();
  if (q == 0.0) {
    double s = 0.0;
    for (double w : weights) s += std::log(w);
    return std::exp(s / n);
  }
  double max_abs = 0.0;
  for (double w : weights) max_abs = std::max(max_abs, std::abs(q * std::log(w)));
  if (max_abs < 1.0) {
    // Near q = 0 the plain power sum cancels; expm1/log1p does not.
    double s = 0.0;
    for (double w : weights) s += std::expm1(q * std::log(w));
    return std::exp(std::log1p(s / n) / q);
  }
  if (max_abs < 500.0) {
    double s = 0.0;
    for (double w : weights) s += std::pow(w, q);
    return std::pow(s / n, 1.0 / q);
  }
  // log M = (logsumexp(q ln w_i) - ln n) / q, shifted by the largest exponent.
  double shift = -std::numeric_limits<double>::infinity();
  for (double w : weights) shift = std::max(shift, q * std::log(w));
  double acc = 0.0;
  for (double w : weights) acc += std::exp(q * std::log(w) - shift);
  return std::exp((shift + std::log(acc / n)) / q);
}

double unnorm_weight(std::span<const double> weights, double p) {
  check_weights(weights);
  double s = 0.0;
  for (double w : weights) s += std::pow(w, p);
  return s;
}

EdgeScorer::EdgeScorer(PMeanParam p) : p_(p) {}

double EdgeScorer::term(double w) const {
  if (!p_.finite()) return w;
  const double q = p_.value();
  if (q == 0.0) return std::log(w);
  if (q == 1.0) return w;
  // x -> x^(1/q) reverses order for q < 0, so negate to keep "bigger wins".
  return q > 0.0 ? std::pow(w, q) : -std::pow(w, q);
}

double EdgeScorer::fold(double acc, double t) const {
  switch (p_.kind()) {
    case PMeanParam::Kind::PlusInf: return std::max(acc, t);
    case PMeanParam::Kind::MinusInf: return std::min(acc, t);
    case PMeanParam::Kind::Finite: break;
  }
  return acc + t;
}

Triangle make_candidate(NodeId x, NodeId y, NodeId z, ScoredWeight xy, ScoredWeight xz,
                        ScoredWeight yz, const EdgeScorer& scorer) {
  // Three compare-swaps on nodes; each swap also relabels which input edge
  // belongs to which canonical pair.
  if (x > y) {
    std::swap(x, y);
    std::swap(xz, yz);
  }
  if (y > z) {
    std::swap(y, z);
    std::swap(xy, xz);
  }
  if (x > y) {
    std::swap(x, y);
    std::swap(xz, yz);
  }
  Triangle t;
  t.a = x;
  t.b = y;
  t.c = z;
  t.edge_weights = {xy.w, xz.w, yz.w};
  t.score = scorer.triangle(xy.t, xz.t, yz.t);
  return t;
}

Triangle make_candidate(NodeId x, NodeId y, NodeId z, double w_xy, double w_xz, double w_yz,
                        const EdgeScorer& scorer) {
  return make_candidate(x, y, z, {w_xy, scorer.term(w_xy)}, {w_xz, scorer.term(w_xz)},
                        {w_yz, scorer.term(w_yz)}, scorer);
}

Triangle make_triangle(NodeId x, NodeId y, NodeId z, double w_xy, double w_xz, double w_yz,
                       const EdgeScorer& scorer) {
  auto t = make_candidate(x, y, z, w_xy, w_xz, w_yz, scorer);
  fill_weight(t, scorer.p());
  return t;
}

}  // namespace toptri
