#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frax/functionals.hpp"
#include "frax/grid.hpp"
#include "frax/params.hpp"
#include "frax/verify.hpp"

namespace frax {

using Point = std::array<double, 3>;

struct Ball {
  Point center{0.0, 0.0, 0.0};
  double radius = 1.0;
};

struct Box {
  Point lo{0.0, 0.0, 0.0};
  Point hi{0.0, 0.0, 0.0};
};

enum class SetKind { ball, ball_union, box };

/// A finite union of closed balls, or an axis-aligned box. Membership and
/// tent tests use closed sets throughout.
struct OpenSet {
  SetKind kind = SetKind::ball;
  std::vector<Ball> balls;
  Box box;

  static OpenSet single(const Ball& b);
  static OpenSet ball_union(std::vector<Ball> bs);
  static OpenSet make_box(const Box& b);

  void validate(int n) const;
  bool contains(int n, const Point& x) const;
};

struct TentOptions {
  int samples = 0;  // 0: 10 * 3^n boundary points
};

/// (x, t) in T(O), i.e. B(x, t) inside O. Exact for single balls and boxes;
/// ball unions are tested on sample points of B(x, t) and are approximate.
bool tent_contains(const OpenSet& O, int n, const Point& x, double t, const TentOptions& opt = {});

/// True when the tent test for this kind of set is only approximate.
bool tent_is_approximate(const OpenSet& O);

double tent_measure(const DiscreteMeasure& mu, const OpenSet& O, const TentOptions& opt = {});

/// Upper estimate of H^infty_d(E): the least cost sum m_i 2^{-d i} among the
/// single enclosing ball and lattice cube covers of depth <= max_depth.
struct HausdorffResult {
  double value = 0.0;
  std::vector<double> trend;  // best cost after each depth
};

HausdorffResult hausdorff_content(const OpenSet& E, int n, double d, int max_depth = 12);

/// Cost 2^{-d i} of one ball with radius in (2^{-i-1}, 2^{-i}].
double dyadic_ball_cost(double radius, double d);

/// r^{n - p beta}.
double ball_capacity_surrogate(double r, int n, double p, double beta);

/// r^{n - p beta} for single balls, Hausdorff content of order n - p beta otherwise.
double capacity_surrogate(const OpenSet& O, int n, double p, double beta);

struct CapacityParams {
  double p = 1.0;
  double q = 1.0;
  double q0 = 2.0;
  double beta = 0.5;

  static CapacityParams from(const Params& prm);
};

enum class CapacityCase { case1, case2, case3 };
const char* case_name(CapacityCase c);
CapacityCase parse_case(const std::string& name);

/// Throws ParameterError unless the exponents lie in the given case.
void require_case(const CapacityParams& cp, int n, CapacityCase c);

struct ConditionSearch {
  double max_radius = kInfinity;
  int k_min = -8;
  int k_max = 24;
  std::size_t pair_limit = 400;  // pairwise centres only up to this atom count
  std::vector<Ball> extra;
};

struct ConditionResult {
  double sup = 0.0;
  std::optional<Ball> witness;
  std::optional<std::size_t> witness_index;  // condition_v: family member
  std::size_t candidates = 0;
};

/// sup of mu(T(B(x, r)))^{p/q0} / r^{n - p beta} over the search family.
ConditionResult condition_vi(const DiscreteMeasure& mu, const CapacityParams& cp, const ConditionSearch& search = {});

/// sup of mu(T(O))^{p/q0} / H^infty_{n - p beta}(O) over the family.
ConditionResult condition_v(const DiscreteMeasure& mu, const CapacityParams& cp, const std::vector<OpenSet>& family,
                            const TentOptions& opt = {});

struct MinimizingFunction {
  std::vector<double> lambdas;
  std::vector<double> values;  // +infinity when no member carries mass > lambda
};

MinimizingFunction minimizing_function(const DiscreteMeasure& mu, const CapacityParams& cp,
                                       const std::vector<double>& lambdas, const std::vector<OpenSet>& family,
                                       const TentOptions& opt = {});

/// u(x, t) = (2 pi)^{-n} sum_xi C_{n,s} G_s(t |xi|) f^(xi) e^{i x.xi} dxi^n.
std::vector<double> extension_at_atoms(const GridFunction& f, const Params& prm, const DiscreteMeasure& mu,
                                       const LambdaRule& rule = {});

struct EmbeddingOptions {
  LambdaRule rule;
  BesovOptions besov;
  ConditionSearch search;
};

/// sup over the catalog of ||u||_{Lorentz(mu)} / ||f||_{Besov(beta, p, q)},
/// reported next to condition_vi's sup.
Report embedding_test(const DiscreteMeasure& mu, const Params& prm, const std::vector<GridFunction>& catalog,
                      CapacityCase which, const EmbeddingOptions& opt = {});

/// Lorentz indices (main, secondary) used for a case.
std::pair<double, double> lorentz_indices(const CapacityParams& cp, CapacityCase which);

// Grid tents: the mask marks grid points of an open set O; (x_i, t) is in
// T(O) when every grid point y with |y - x_i| < t is marked.
std::vector<char> superlevel_mask(const GridFunction& g, double lambda);
bool grid_tent_contains(const std::vector<char>& mask, const GridSpec& spec, std::size_t x_index, double t);

}  // namespace frax
