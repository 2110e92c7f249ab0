#include "frax/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "frax/errors.hpp"
#include "frax/fft.hpp"
#include "frax/parallel.hpp"

namespace frax {
namespace {

double dist(int n, const Point& a, const Point& b) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) {
    const double v = a[static_cast<std::size_t>(d)] - b[static_cast<std::size_t>(d)];
    s += v * v;
  }
  return std::sqrt(s);
}

bool in_ball(int n, const Ball& b, const Point& x) { return dist(n, b.center, x) <= b.radius; }

std::vector<Point> ball_samples(int n, const Point& x, double t, int count) {
  std::vector<Point> pts;
  pts.push_back(x);
  if (n == 1) {
    // The boundary of an interval is two points; sample the whole interval.
    for (int i = 0; i < count; ++i) {
      Point p = x;
      p[0] = x[0] - t + 2.0 * t * i / (count - 1);
      pts.push_back(p);
    }
    return pts;
  }
  for (const auto& dir : sphere_directions(n, count)) {
    Point p = x;
    for (int d = 0; d < n; ++d) p[static_cast<std::size_t>(d)] += t * dir[static_cast<std::size_t>(d)];
    pts.push_back(p);
  }
  return pts;
}

Ball enclosing_ball(const OpenSet& O, int n) {
  if (O.kind == SetKind::ball) return O.balls.front();
  Point lo{0.0, 0.0, 0.0};
  Point hi{0.0, 0.0, 0.0};
  if (O.kind == SetKind::box) {
    lo = O.box.lo;
    hi = O.box.hi;
  } else {
    for (int d = 0; d < n; ++d) {
      const auto k = static_cast<std::size_t>(d);
      lo[k] = kInfinity;
      hi[k] = -kInfinity;
      for (const auto& b : O.balls) {
        lo[k] = std::min(lo[k], b.center[k] - b.radius);
        hi[k] = std::max(hi[k], b.center[k] + b.radius);
      }
    }
  }
  Ball out;
  for (int d = 0; d < n; ++d) {
    const auto k = static_cast<std::size_t>(d);
    out.center[k] = 0.5 * (lo[k] + hi[k]);
  }
  if (O.kind == SetKind::box) {
    out.radius = dist(n, out.center, hi);
  } else {
    out.radius = 0.0;
    for (const auto& b : O.balls) out.radius = std::max(out.radius, dist(n, out.center, b.center) + b.radius);
  }
  return out;
}

// Distance from x to the closed cube prod [lo_d, lo_d + side].
double dist_to_cube(int n, const Point& x, const std::array<long, 3>& cell, double side) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) {
    const auto k = static_cast<std::size_t>(d);
    const double a = cell[k] * side;
    const double b = a + side;
    const double v = x[k] < a ? a - x[k] : (x[k] > b ? x[k] - b : 0.0);
    s += v * v;
  }
  return std::sqrt(s);
}

// Number of lattice cubes of the given side meeting E, or -1 above the cap.
long long count_cubes(const OpenSet& E, int n, double side, long long cap) {
  if (E.kind == SetKind::box) {
    long long total = 1;
    for (int d = 0; d < n; ++d) {
      const auto k = static_cast<std::size_t>(d);
      const long a = static_cast<long>(std::floor(E.box.lo[k] / side));
      const long b = static_cast<long>(std::ceil(E.box.hi[k] / side)) - 1;
      total *= std::max(1L, b - a + 1);
      if (total > cap) return -1;
    }
    return total;
  }
  std::set<std::array<long, 3>> cells;
  for (const auto& b : E.balls) {
    std::array<long, 3> lo{0, 0, 0};
    std::array<long, 3> hi{0, 0, 0};
    long long box_count = 1;
    for (int d = 0; d < n; ++d) {
      const auto k = static_cast<std::size_t>(d);
      lo[k] = static_cast<long>(std::floor((b.center[k] - b.radius) / side));
      hi[k] = static_cast<long>(std::floor((b.center[k] + b.radius) / side));
      box_count *= hi[k] - lo[k] + 1;
    }
    if (box_count > cap) return -1;
    std::array<long, 3> c{0, 0, 0};
    for (c[0] = lo[0]; c[0] <= hi[0]; ++c[0]) {
      for (c[1] = lo[1]; c[1] <= hi[1]; ++c[1]) {
        for (c[2] = lo[2]; c[2] <= hi[2]; ++c[2]) {
          if (dist_to_cube(n, b.center, c, side) <= b.radius) cells.insert(c);
        }
      }
    }
    if (static_cast<long long>(cells.size()) > cap) return -1;
  }
  return static_cast<long long>(cells.size());
}

void require_exponent(int n, double p, double beta) {
  if (!(n - p * beta > 0.0)) {
    std::ostringstream os;
    os << "capacity exponent n - p beta = " << n - p * beta << " must be positive";
    throw DegenerateExponentError(os.str());
  }
}

// Strictly better in ratio, or equal and lexicographically smaller (radius, centre).
bool better(int n, double ratio, const Ball& b, double best_ratio, const std::optional<Ball>& best) {
  if (!best) return true;
  if (ratio != best_ratio) return ratio > best_ratio;
  if (b.radius != best->radius) return b.radius < best->radius;
  for (int d = 0; d < n; ++d) {
    const auto k = static_cast<std::size_t>(d);
    if (b.center[k] != best->center[k]) return b.center[k] < best->center[k];
  }
  return false;
}

}  // namespace

OpenSet OpenSet::single(const Ball& b) {
  OpenSet o;
  o.kind = SetKind::ball;
  o.balls = {b};
  return o;
}

OpenSet OpenSet::ball_union(std::vector<Ball> bs) {
  OpenSet o;
  o.kind = SetKind::ball_union;
  o.balls = std::move(bs);
  return o;
}

OpenSet OpenSet::make_box(const Box& b) {
  OpenSet o;
  o.kind = SetKind::box;
  o.box = b;
  return o;
}

void OpenSet::validate(int n) const {
  require_dimension(n);
  if (kind == SetKind::box) {
    for (int d = 0; d < n; ++d) {
      const auto k = static_cast<std::size_t>(d);
      if (!(box.hi[k] > box.lo[k])) throw_parameter("box needs lo < hi on every axis");
    }
    return;
  }
  if (balls.empty()) throw_parameter("open set needs at least one ball");
  if (kind == SetKind::ball && balls.size() != 1) throw_parameter("single-ball set must have exactly one ball");
  for (const auto& b : balls) {
    if (!(b.radius > 0.0)) throw_parameter("ball radius must be positive");
  }
}

bool OpenSet::contains(int n, const Point& x) const {
  if (kind == SetKind::box) {
    for (int d = 0; d < n; ++d) {
      const auto k = static_cast<std::size_t>(d);
      if (x[k] < box.lo[k] || x[k] > box.hi[k]) return false;
    }
    return true;
  }
  return std::any_of(balls.begin(), balls.end(), [&](const Ball& b) { return in_ball(n, b, x); });
}

bool tent_is_approximate(const OpenSet& O) { return O.kind == SetKind::ball_union; }

bool tent_contains(const OpenSet& O, int n, const Point& x, double t, const TentOptions& opt) {
  if (!(t > 0.0)) throw_parameter("tent test needs t > 0");
  switch (O.kind) {
    case SetKind::ball:
      return dist(n, x, O.balls.front().center) <= O.balls.front().radius - t;
    case SetKind::box:
      for (int d = 0; d < n; ++d) {
        const auto k = static_cast<std::size_t>(d);
        if (x[k] - t < O.box.lo[k] || x[k] + t > O.box.hi[k]) return false;
      }
      return true;
    case SetKind::ball_union: {
      for (const auto& b : O.balls) {
        if (dist(n, x, b.center) <= b.radius - t) return true;
      }
      int count = opt.samples;
      if (count <= 0) {
        count = 10;
        for (int d = 0; d < n; ++d) count *= 3;
      }
      for (const auto& p : ball_samples(n, x, t, count)) {
        if (!O.contains(n, p)) return false;
      }
      return true;
    }
  }
  return false;
}

double tent_measure(const DiscreteMeasure& mu, const OpenSet& O, const TentOptions& opt) {
  double m = 0.0;
  for (const auto& a : mu.atoms) {
    if (tent_contains(O, mu.n, a.x, a.t, opt)) m += a.w;
  }
  return m;
}

double dyadic_ball_cost(double radius, double d) {
  if (!(radius > 0.0)) throw_parameter("ball radius must be positive");
  const double i = std::floor(-std::log2(radius));
  return std::exp2(-d * i);
}

HausdorffResult hausdorff_content(const OpenSet& E, int n, double d, int max_depth) {
  E.validate(n);
  if (!(d > 0.0) || !(d <= n)) throw_parameter("Hausdorff content needs 0 < d <= n");
  const Ball cover = enclosing_ball(E, n);
  HausdorffResult out;
  out.value = dyadic_ball_cost(cover.radius, d);
  // Cubes of side 2^{1-i}/sqrt(n) have circumradius 2^{-i}.
  const int start = static_cast<int>(std::floor(-std::log2(cover.radius)));
  constexpr long long kCap = 1LL << 20;
  for (int i = start; i <= max_depth; ++i) {
    const double side = std::exp2(1.0 - i) / std::sqrt(static_cast<double>(n));
    const long long cubes = count_cubes(E, n, side, kCap);
    if (cubes < 0) break;
    out.value = std::min(out.value, static_cast<double>(cubes) * std::exp2(-d * i));
    out.trend.push_back(out.value);
  }
  return out;
}

double ball_capacity_surrogate(double r, int n, double p, double beta) {
  require_exponent(n, p, beta);
  if (!(r > 0.0)) throw_parameter("ball radius must be positive");
  return std::pow(r, n - p * beta);
}

double capacity_surrogate(const OpenSet& O, int n, double p, double beta) {
  require_exponent(n, p, beta);
  if (O.kind == SetKind::ball) return ball_capacity_surrogate(O.balls.front().radius, n, p, beta);
  return hausdorff_content(O, n, n - p * beta).value;
}

CapacityParams CapacityParams::from(const Params& prm) { return {prm.p, prm.q, prm.q0, prm.beta}; }

const char* case_name(CapacityCase c) {
  switch (c) {
    case CapacityCase::case1: return "case1";
    case CapacityCase::case2: return "case2";
    case CapacityCase::case3: return "case3";
  }
  return "case1";
}

CapacityCase parse_case(const std::string& name) {
  if (name == "case1") return CapacityCase::case1;
  if (name == "case2") return CapacityCase::case2;
  if (name == "case3") return CapacityCase::case3;
  throw ParameterError("unknown case '" + name + "' (expected case1, case2 or case3)");
}

void require_case(const CapacityParams& cp, int n, CapacityCase c) {
  require_dimension(n);
  const double b = cp.beta;
  if (!(b > 0.0)) throw_parameter("beta must be positive");
  switch (c) {
    case CapacityCase::case1: {
      if (cp.p != cp.q) throw_parameter("case 1 needs p = q");
      if (!(cp.p > n / (n + b)) || !(cp.p <= 1.0)) throw_parameter("case 1 needs n/(n+beta) < p <= 1");
      if (cp.p == 1.0 && !(b < n)) throw_parameter("case 1 with p = 1 needs beta < n");
      if (cp.p < 1.0 && !(b < 1.0)) throw_parameter("case 1 with p < 1 needs beta < 1");
      if (!(cp.q0 >= cp.p) || std::isinf(cp.q0)) throw_parameter("case 1 needs p <= q0 < infinity");
      break;
    }
    case CapacityCase::case2:
      if (!(cp.p > 1.0) || !(cp.p * b < n)) throw_parameter("case 2 needs 1 < p < n/beta");
      if (!(cp.q > 1.0) || std::isinf(cp.q)) throw_parameter("case 2 needs 1 < q < infinity");
      break;
    case CapacityCase::case3:
      if (!(cp.p > 1.0) || !(cp.p * b < n)) throw_parameter("case 3 needs 1 < p < n/beta");
      if (!std::isinf(cp.q)) throw_parameter("case 3 needs q = infinity");
      if (!(cp.q0 > 0.0) || std::isinf(cp.q0)) throw_parameter("case 3 needs a finite q0");
      break;
  }
}

ConditionResult condition_vi(const DiscreteMeasure& mu, const CapacityParams& cp, const ConditionSearch& search) {
  mu.validate();
  const int n = mu.n;
  require_exponent(n, cp.p, cp.beta);
  if (!(cp.q0 > 0.0)) throw_parameter("q0 must be positive");
  ConditionResult out;
  if (mu.atoms.empty()) return out;
  const double e = n - cp.p * cp.beta;
  const double power = cp.p / cp.q0;
  const auto& atoms = mu.atoms;
  const std::size_t A = atoms.size();

  std::vector<Point> centres;
  for (const auto& a : atoms) centres.push_back(a.x);
  if (A <= search.pair_limit) {
    for (std::size_t i = 0; i < A; ++i) {
      for (std::size_t j = i + 1; j < A; ++j) {
        const Point& xi = atoms[i].x;
        const Point& xj = atoms[j].x;
        Point mid{0.0, 0.0, 0.0};
        for (int d = 0; d < n; ++d) mid[static_cast<std::size_t>(d)] = 0.5 * (xi[static_cast<std::size_t>(d)] + xj[static_cast<std::size_t>(d)]);
        centres.push_back(mid);
        // Centre of the smallest ball whose tent holds both atoms:
        // the point c on the segment with |xi - c| + ti = |xj - c| + tj.
        const double L = dist(n, xi, xj);
        if (L > 0.0) {
          const double s = std::clamp(0.5 * (L + atoms[j].t - atoms[i].t) / L, 0.0, 1.0);
          Point c{0.0, 0.0, 0.0};
          for (int d = 0; d < n; ++d) {
            const auto k = static_cast<std::size_t>(d);
            c[k] = xi[k] + s * (xj[k] - xi[k]);
          }
          centres.push_back(c);
        }
      }
    }
  }
  for (const auto& b : search.extra) centres.push_back(b.center);

  std::vector<double> heights;
  for (const auto& a : atoms) heights.push_back(a.t);
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());

  struct Best {
    double ratio = 0.0;
    std::optional<Ball> ball;
    std::size_t candidates = 0;
  };
  std::vector<Best> best(centres.size());
  parallel_for(centres.size(), [&](std::size_t ci) {
    const Point& c = centres[ci];
    // Atom a lies in T(B(c, r)) iff r >= |x_a - c| + t_a.
    std::vector<std::pair<double, double>> reach(A);
    for (std::size_t a = 0; a < A; ++a) reach[a] = {dist(n, atoms[a].x, c) + atoms[a].t, atoms[a].w};
    std::sort(reach.begin(), reach.end());
    std::vector<double> radii;
    for (const auto& [r, w] : reach) radii.push_back(r);
    for (double t : heights) {
      for (int k = search.k_min; k <= search.k_max; ++k) radii.push_back(t * (1.0 + std::exp2(0.5 * k)));
    }
    for (const auto& b : search.extra) {
      if (b.center == c) radii.push_back(b.radius);
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    Best& mine = best[ci];
    std::size_t next = 0;
    double mass = 0.0;
    for (double r : radii) {
      if (r > search.max_radius) break;
      while (next < A && reach[next].first <= r) mass += reach[next++].second;
      ++mine.candidates;
      if (mass == 0.0) continue;
      const double ratio = std::pow(mass, power) / std::pow(r, e);
      const Ball ball{c, r};
      if (better(n, ratio, ball, mine.ratio, mine.ball)) {
        mine.ratio = ratio;
        mine.ball = ball;
      }
    }
  });
  for (const auto& b : best) {
    out.candidates += b.candidates;
    if (b.ball && better(n, b.ratio, *b.ball, out.sup, out.witness)) {
      out.sup = b.ratio;
      out.witness = b.ball;
    }
  }
  return out;
}

ConditionResult condition_v(const DiscreteMeasure& mu, const CapacityParams& cp, const std::vector<OpenSet>& family,
                            const TentOptions& opt) {
  mu.validate();
  const int n = mu.n;
  require_exponent(n, cp.p, cp.beta);
  ConditionResult out;
  if (mu.atoms.empty()) return out;
  const double d = n - cp.p * cp.beta;
  std::vector<double> ratios(family.size(), 0.0);
  parallel_for(family.size(), [&](std::size_t i) {
    const double m = tent_measure(mu, family[i], opt);
    if (m > 0.0) ratios[i] = std::pow(m, cp.p / cp.q0) / hausdorff_content(family[i], n, d).value;
  });
  for (std::size_t i = 0; i < family.size(); ++i) {
    ++out.candidates;
    if (ratios[i] > out.sup) {
      out.sup = ratios[i];
      out.witness_index = i;
      out.witness = enclosing_ball(family[i], n);
    }
  }
  return out;
}

MinimizingFunction minimizing_function(const DiscreteMeasure& mu, const CapacityParams& cp,
                                       const std::vector<double>& lambdas, const std::vector<OpenSet>& family,
                                       const TentOptions& opt) {
  mu.validate();
  const int n = mu.n;
  require_exponent(n, cp.p, cp.beta);
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > lambdas[i - 1])) throw_parameter("lambdas must be increasing");
  }
  std::vector<double> mass(family.size());
  std::vector<double> cap(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    mass[i] = tent_measure(mu, family[i], opt);
    cap[i] = capacity_surrogate(family[i], n, cp.p, cp.beta);
  });
  MinimizingFunction out;
  out.lambdas = lambdas;
  for (double lambda : lambdas) {
    double best = kInfinity;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (mass[i] > lambda) best = std::min(best, cap[i]);
    }
    out.values.push_back(best);
  }
  return out;
}

std::vector<double> extension_at_atoms(const GridFunction& f, const Params& prm, const DiscreteMeasure& mu,
                                       const LambdaRule& rule) {
  prm.validate();
  f.check();
  if (f.spec.n != mu.n || prm.n != mu.n) throw_parameter("measure, grid and parameter dimensions differ");
  const SpectralFunction F = transform(f);
  const GridSpec& spec = f.spec;
  const int n = spec.n;
  const double h = spec.spacing();
  const double dxi = spec.frequency_step();
  const std::size_t size = F.coeffs.size();
  std::vector<int> k2(size);
  std::vector<Point> xi(size);
  for (std::size_t i = 0; i < size; ++i) {
    const Index3 idx = unflatten(spec, i);
    k2[i] = mode_norm2(spec, idx);
    for (int d = 0; d < n; ++d) xi[i][static_cast<std::size_t>(d)] = dxi * signed_mode(idx[static_cast<std::size_t>(d)], spec.points);
  }
  const double scale = std::pow(dxi / (2.0 * std::numbers::pi), n);

  // Grid index of an atom whose projection is a grid node (periodically), if any.
  auto node_of = [&](const Point& x) -> std::optional<std::size_t> {
    Index3 idx{0, 0, 0};
    for (int d = 0; d < n; ++d) {
      const double j = (x[static_cast<std::size_t>(d)] + spec.half_width) / h;
      const double jr = std::round(j);
      if (std::abs(j - jr) > 1e-9 * std::max(1.0, std::abs(j))) return std::nullopt;
      long long w = static_cast<long long>(jr) % spec.points;
      if (w < 0) w += spec.points;
      idx[static_cast<std::size_t>(d)] = static_cast<int>(w);
    }
    return flatten(spec, idx);
  };

  std::vector<double> heights;
  for (const auto& a : mu.atoms) heights.push_back(a.t);
  std::sort(heights.begin(), heights.end());
  heights.erase(std::unique(heights.begin(), heights.end()), heights.end());

  std::vector<double> out(mu.atoms.size());
  for (double t : heights) {
    std::map<int, double> shells;
    for (int v : k2) shells.emplace(v, 0.0);
    for (auto& [v, g] : shells) g = fourier_symbol(prm, t, dxi * std::sqrt(static_cast<double>(v)), rule);
    std::vector<double> symbol(size);
    for (std::size_t i = 0; i < size; ++i) symbol[i] = shells.at(k2[i]);

    std::vector<std::size_t> on_grid;
    std::vector<std::size_t> off_grid;
    std::vector<std::size_t> node(mu.atoms.size());
    for (std::size_t a = 0; a < mu.atoms.size(); ++a) {
      if (mu.atoms[a].t != t) continue;
      if (const auto j = node_of(mu.atoms[a].x)) {
        node[a] = *j;
        on_grid.push_back(a);
      } else {
        off_grid.push_back(a);
      }
    }
    if (!on_grid.empty()) {
      SpectralFunction U = F;
      for (std::size_t i = 0; i < size; ++i) U.coeffs[i] *= symbol[i];
      const GridFunction u = inverse_transform(U);
      for (std::size_t a : on_grid) out[a] = u.values[node[a]];
    }
    parallel_for(off_grid.size(), [&](std::size_t m) {
      const std::size_t a = off_grid[m];
      const auto& x = mu.atoms[a].x;
      double sum = 0.0;
      for (std::size_t i = 0; i < size; ++i) {
        double phase = 0.0;
        for (int d = 0; d < n; ++d) phase += xi[i][static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
        sum += symbol[i] * (F.coeffs[i] * Complex(std::cos(phase), std::sin(phase))).real();
      }
      out[a] = sum * scale;
    });
  }
  return out;
}

std::pair<double, double> lorentz_indices(const CapacityParams& cp, CapacityCase which) {
  switch (which) {
    case CapacityCase::case1: return {cp.q0, cp.p};
    case CapacityCase::case2: return {std::min(cp.p, cp.q), std::max(cp.p, cp.q)};
    case CapacityCase::case3: return {cp.q0, kInfinity};
  }
  return {cp.q0, cp.p};
}

Report embedding_test(const DiscreteMeasure& mu, const Params& prm, const std::vector<GridFunction>& catalog,
                      CapacityCase which, const EmbeddingOptions& opt) {
  prm.validate();
  mu.validate();
  const CapacityParams cp = CapacityParams::from(prm);
  require_case(cp, mu.n, which);
  if (catalog.empty()) throw_parameter("embedding test needs at least one function");
  const auto [main, secondary] = lorentz_indices(cp, which);

  Report r;
  r.name = std::string("embedding/") + case_name(which);
  r.params = prm;
  std::vector<double> ratios;
  for (const auto& f : catalog) {
    double lhs = 0.0;
    if (!mu.atoms.empty()) {
      const auto u = extension_at_atoms(f, prm, mu, opt.rule);
      std::vector<std::pair<double, double>> vals(u.size());
      for (std::size_t a = 0; a < u.size(); ++a) vals[a] = {u[a], mu.atoms[a].w};
      lhs = lorentz_norm(vals, main, secondary);
    }
    const double rhs = besov_seminorm(f, prm.beta, prm.p, prm.q, opt.besov);
    const double ratio = safe_ratio(lhs, rhs);
    ratios.push_back(ratio);
    if (ratio >= r.ratio) {
      r.lhs = lhs;
      r.rhs = rhs;
      r.ratio = ratio;
    }
  }
  const ConditionResult cond = condition_vi(mu, cp, opt.search);
  r.status = std::isfinite(r.ratio) && std::isfinite(cond.sup) ? Status::pass : Status::fail;
  r.values.emplace_back("lorentz_main", main);
  r.values.emplace_back("lorentz_secondary", secondary);
  r.values.emplace_back("condition_sup", cond.sup);
  for (std::size_t i = 0; i < ratios.size(); ++i) r.values.emplace_back("ratio#" + std::to_string(i), ratios[i]);
  r.notes.emplace_back("constant", "empirical");
  if (which != CapacityCase::case1) r.notes.emplace_back("capacity", "ball surrogate r^{n-p beta}");
  return r;
}

std::vector<char> superlevel_mask(const GridFunction& g, double lambda) {
  std::vector<char> mask(g.values.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = g.values[i] > lambda ? 1 : 0;
  return mask;
}

bool grid_tent_contains(const std::vector<char>& mask, const GridSpec& spec, std::size_t x_index, double t) {
  if (mask.size() != spec.size()) throw_parameter("mask size does not match grid");
  const Index3 base = unflatten(spec, x_index);
  const int N = spec.points;
  const double r = t / spec.spacing();
  const int reach = static_cast<int>(std::min<double>(std::ceil(r), N / 2));
  Index3 off{0, 0, 0};
  const int lo = -reach;
  const int hi = std::min(reach, N / 2 - 1);
  std::array<int, 3> from{lo, 0, 0};
  std::array<int, 3> to{hi, 0, 0};
  for (int d = 1; d < spec.n; ++d) {
    from[static_cast<std::size_t>(d)] = lo;
    to[static_cast<std::size_t>(d)] = hi;
  }
  for (off[0] = from[0]; off[0] <= to[0]; ++off[0]) {
    for (off[1] = from[1]; off[1] <= to[1]; ++off[1]) {
      for (off[2] = from[2]; off[2] <= to[2]; ++off[2]) {
        double d2 = 0.0;
        for (int d = 0; d < spec.n; ++d) d2 += static_cast<double>(off[static_cast<std::size_t>(d)]) * off[static_cast<std::size_t>(d)];
        if (d2 >= r * r) continue;
        Index3 idx{0, 0, 0};
        for (int d = 0; d < spec.n; ++d) {
          const auto k = static_cast<std::size_t>(d);
          idx[k] = ((base[k] + off[k]) % N + N) % N;
        }
        if (!mask[flatten(spec, idx)]) return false;
      }
    }
  }
  return true;
}

}  // namespace frax
